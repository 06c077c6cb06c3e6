#pragma once

#include "sylsim/common.hpp"
#include "sylsim/fock.hpp"
#include "sylsim/interference.hpp"
#include "sylsim/io.hpp"
#include "sylsim/laws.hpp"
#include "sylsim/matrices.hpp"
#include "sylsim/parallel.hpp"
#include "sylsim/permanent.hpp"
#include "sylsim/stats.hpp"
