#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sylsim/common.hpp"
#include "sylsim/fock.hpp"
#include "sylsim/interference.hpp"
#include "sylsim/laws.hpp"
#include "sylsim/matrices.hpp"
#include "sylsim/stats.hpp"

namespace sylsim {

using Json = nlohmann::ordered_json;

enum class OutputFormat { csv, json, pretty };

inline OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "pretty") return OutputFormat::pretty;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv, json or pretty)");
}

inline std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// Renders a fraction without reducing it, so counts stay visible (4/10
/// rather than 2/5).
inline std::string format_fraction(const BigInt& num, const BigInt& den) {
  return num.str() + "/" + den.str();
}

inline std::string format_rational(const BigRational& q) {
  return format_fraction(numerator(q), denominator(q));
}

inline std::string format_complex(const std::complex<double>& z) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

inline std::string join_modes(const std::vector<int>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(modes[i]);
  }
  return out;
}

inline std::string probability_string(const BigRational& p) { return format_rational(p); }
inline std::string probability_string(double p) { return format_decimal(p); }
inline double probability_value(const BigRational& p) { return to_double(p); }
inline double probability_value(double p) { return p; }

// --- matrices ---------------------------------------------------------

inline std::string matrix_scale_string(int order) {
  return "1/sqrt(" + std::to_string(order) + ")";
}

inline std::string matrix_to_csv(const SylvesterMatrix& u) {
  std::string out =
      "# sylvester order=" + std::to_string(u.size()) + " scale=" + matrix_scale_string(u.size()) + "\n";
  for (int i = 1; i <= u.size(); ++i) {
    for (int j = 1; j <= u.size(); ++j) {
      if (j > 1) out += ',';
      out += std::to_string(u.entry(i, j));
    }
    out += '\n';
  }
  return out;
}

inline std::string matrix_to_csv(const FourierMatrix& u) {
  std::string out =
      "# fourier order=" + std::to_string(u.size()) + " scale=" + matrix_scale_string(u.size()) + "\n";
  for (int i = 1; i <= u.size(); ++i) {
    for (int j = 1; j <= u.size(); ++j) {
      if (j > 1) out += ',';
      out += format_complex(u.entry(i, j));
    }
    out += '\n';
  }
  return out;
}

inline Json matrix_to_json(const SylvesterMatrix& u) {
  Json rows = Json::array();
  for (int i = 1; i <= u.size(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= u.size(); ++j) row.push_back(u.entry(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"kind", "sylvester"},
              {"order", u.size()},
              {"scale", matrix_scale_string(u.size())},
              {"entries", std::move(rows)}};
}

inline Json matrix_to_json(const FourierMatrix& u) {
  Json rows = Json::array();
  for (int i = 1; i <= u.size(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= u.size(); ++j) {
      const auto z = u.entry(i, j);
      row.push_back(Json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"kind", "fourier"},
              {"order", u.size()},
              {"scale", matrix_scale_string(u.size())},
              {"entries", std::move(rows)}};
}

template <typename Matrix>
std::string matrix_to_pretty(const Matrix& u) {
  std::string out = "order " + std::to_string(u.size()) + " core, physical entries are core * " +
                    matrix_scale_string(u.size()) + "\n";
  for (int i = 1; i <= u.size(); ++i) {
    for (int j = 1; j <= u.size(); ++j) {
      if (j > 1) out += "  ";
      if constexpr (std::is_same_v<typename Matrix::value_type, int>) {
        out += u.entry(i, j) > 0 ? "+1" : "-1";
      } else {
        out += format_complex(u.entry(i, j));
      }
    }
    out += '\n';
  }
  return out;
}

// --- distributions ----------------------------------------------------

template <typename Prob>
std::string distribution_to_csv(const DistributionTable<Prob>& table) {
  std::string out = "output,probability,decimal\n";
  for (const auto& row : table.rows) {
    out += join_modes(row.output.modes());
    out += ',';
    out += probability_string(row.probability);
    out += ',';
    out += format_decimal(probability_value(row.probability));
    out += '\n';
  }
  return out;
}

template <typename Prob>
Json distribution_to_json(const DistributionTable<Prob>& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows)
    rows.push_back(Json{{"output", row.output.modes()},
                        {"probability", probability_string(row.probability)},
                        {"decimal", probability_value(row.probability)}});
  return Json{{"input", table.input.modes()},
              {"mode_count", table.input.mode_count()},
              {"statistics", to_string(table.statistics)},
              {"rows", std::move(rows)},
              {"total", probability_string(table.total)}};
}

template <typename Prob>
std::string distribution_to_pretty(const DistributionTable<Prob>& table) {
  std::string out = "input " + join_modes(table.input.modes()) + " on " +
                    std::to_string(table.input.mode_count()) + " modes, " +
                    to_string(table.statistics) + " statistics\n";
  for (const auto& row : table.rows) {
    out += "  ";
    out += join_modes(row.output.modes());
    out += "  ";
    out += probability_string(row.probability);
    out += "  ";
    out += format_decimal(probability_value(row.probability));
    out += '\n';
  }
  out += "total " + probability_string(table.total) + "\n";
  return out;
}

// --- suppression reports ------------------------------------------------

inline Json report_to_json(const SuppressionReport& r) {
  Json mismatches = Json::array();
  for (const auto& s : r.mismatches) mismatches.push_back(s.modes());
  Json j{{"n", r.particles},
         {"m", r.mode_count},
         {"c", r.block_offset},
         {"statistics", to_string(r.statistics)},
         {"input", r.input.modes()},
         {"suppressed", checked_u64(r.suppressed, "suppressed count")},
         {"pauli_suppressed", checked_u64(r.pauli_suppressed, "pauli count")},
         {"total", checked_u64(r.total, "total count")},
         {"fraction", format_fraction(r.suppressed, r.total)},
         {"fraction_decimal", to_double(r.fraction)},
         {"mismatch_count", r.mismatch_count},
         {"mismatches", std::move(mismatches)}};
  if (r.probability_checked) j["total_probability"] = format_rational(r.total_probability);
  return j;
}

inline std::string report_to_pretty(const SuppressionReport& r) {
  std::string out = "n=" + std::to_string(r.particles) + " m=" + std::to_string(r.mode_count) +
                    " c=" + std::to_string(r.block_offset) + " " + to_string(r.statistics) + "\n";
  out += "  input: " + join_modes(r.input.modes()) + "\n";
  out += "  suppressed: " + r.suppressed.str() + " of " + r.total.str() + " (" +
         format_fraction(r.suppressed, r.total) + " = " + format_decimal(to_double(r.fraction)) +
         ")\n";
  if (r.statistics == Statistics::fermion)
    out += "  suppressed by exclusion alone: " + r.pauli_suppressed.str() + "\n";
  out += "  mismatches: " + std::to_string(r.mismatch_count) + "\n";
  if (r.probability_checked)
    out += "  total probability: " + format_rational(r.total_probability) + "\n";
  return out;
}

/// One table of suppressed-state cells in long CSV form, with one asymptote
/// row per particle count after its cells.
inline std::string table_to_csv(Statistics st, const std::vector<SuppressionReport>& cells) {
  std::string out = "# statistics=" + to_string(st) + "\n";
  out += "n,m,suppressed,total,fraction,decimal\n";
  auto limit_row = [&](int n) {
    const BigRational limit =
        st == Statistics::boson ? boson_limit_fraction(n) : fermion_limit_fraction(n);
    out += std::to_string(n) + ",limit,,," + format_rational(limit) + "," +
           format_decimal(to_double(limit)) + "\n";
  };
  int current_n = 0;
  for (const auto& cell : cells) {
    if (current_n != 0 && cell.particles != current_n) limit_row(current_n);
    current_n = cell.particles;
    out += std::to_string(cell.particles) + "," + std::to_string(cell.mode_count) + "," +
           cell.suppressed.str() + "," + cell.total.str() + "," +
           format_fraction(cell.suppressed, cell.total) + "," +
           format_decimal(to_double(cell.fraction)) + "\n";
  }
  if (current_n != 0) limit_row(current_n);
  return out;
}

// --- occupancy statistics ---------------------------------------------

template <typename Prob>
void append_occupancy_csv(std::string& out, const std::string& label,
                          const OccupancyProfile<Prob>& profile) {
  for (std::size_t k = 0; k < profile.histogram.size(); ++k) {
    out += label + "," + std::to_string(k + 1) + "," +
           format_decimal(probability_value(profile.histogram[k])) + "\n";
  }
  out += label + ",mean," + format_decimal(probability_value(profile.mean)) + "\n";
}

inline std::string ratio_curves_to_csv(
    const std::vector<std::pair<int, std::vector<RatioPoint>>>& curves) {
  std::string out = "n,m,boson_mean,distinguishable_mean,ratio\n";
  for (const auto& [n, points] : curves) {
    for (const auto& point : points) {
      out += std::to_string(n) + "," + std::to_string(point.mode_count) + "," +
             format_decimal(to_double(point.boson_mean)) + "," +
             format_decimal(to_double(point.distinguishable_mean)) + "," +
             format_decimal(to_double(point.ratio)) + "\n";
    }
  }
  return out;
}

}  // namespace sylsim
