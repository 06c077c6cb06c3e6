#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sylsim/sylsim.hpp"

namespace {

struct Options {
  std::string format = "csv";
  std::string out_path;
  std::uint64_t budget = sylsim::kDefaultEnumerationBudget;
  bool budget_explicit = false;
  int threads = 0;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + opt.out_path);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string render_json(const sylsim::Json& j) { return j.dump(2) + "\n"; }

int run_matrix(const Options& opt, const std::string& kind, int size) {
  using namespace sylsim;
  const auto format = output_format_from_string(opt.format);
  if (kind == "sylvester") {
    const auto u = build_sylvester(size);
    if (format == OutputFormat::csv) emit(opt, matrix_to_csv(u));
    if (format == OutputFormat::json) emit(opt, render_json(matrix_to_json(u)));
    if (format == OutputFormat::pretty) emit(opt, matrix_to_pretty(u));
    return 0;
  }
  const auto u = build_fourier(size);
  if (format == OutputFormat::csv) emit(opt, matrix_to_csv(u));
  if (format == OutputFormat::json) emit(opt, render_json(matrix_to_json(u)));
  if (format == OutputFormat::pretty) emit(opt, matrix_to_pretty(u));
  return 0;
}

int run_dist(const Options& opt, int n, int m, int c, const std::string& stat_name) {
  using namespace sylsim;
  const auto st = statistics_from_string(stat_name);
  const auto input = standard_input(n, c, m);
  const auto u = build_sylvester(log2_exact(static_cast<std::uint64_t>(m)));
  const auto table = distribution(u, input, st, opt.budget, opt.threads);
  switch (output_format_from_string(opt.format)) {
    case OutputFormat::csv: emit(opt, distribution_to_csv(table)); break;
    case OutputFormat::json: emit(opt, render_json(distribution_to_json(table))); break;
    case OutputFormat::pretty: emit(opt, distribution_to_pretty(table)); break;
  }
  return 0;
}

int run_verify(const Options& opt, int n, int m, int c, const std::string& stat_name) {
  using namespace sylsim;
  const auto st = statistics_from_string(stat_name);
  const auto report = verify_law(n, m, c, st, opt.budget, opt.threads);
  if (output_format_from_string(opt.format) == OutputFormat::pretty)
    emit(opt, report_to_pretty(report));
  else
    emit(opt, render_json(report_to_json(report)));
  return report.mismatch_count == 0 ? 0 : 1;
}

int run_tables(const Options& opt) {
  using namespace sylsim;
  const auto bosons = suppression_table(Statistics::boson);
  const auto fermions = suppression_table(Statistics::fermion);
  if (output_format_from_string(opt.format) == OutputFormat::json) {
    Json boson_cells = Json::array();
    for (const auto& cell : bosons) boson_cells.push_back(report_to_json(cell));
    Json fermion_cells = Json::array();
    for (const auto& cell : fermions) fermion_cells.push_back(report_to_json(cell));
    emit(opt, render_json(Json{{"boson", std::move(boson_cells)},
                               {"fermion", std::move(fermion_cells)}}));
  } else {
    emit(opt, table_to_csv(Statistics::boson, bosons) + table_to_csv(Statistics::fermion, fermions));
  }
  return 0;
}

int run_figure2(const Options& opt, const std::string& part) {
  using namespace sylsim;
  const auto format = output_format_from_string(opt.format);
  if (part == "a") {
    std::vector<std::pair<int, std::vector<RatioPoint>>> curves;
    std::uint64_t needed = 0;
    for (int n = 2; n <= 8; n *= 2)
      needed = std::max(needed, output_state_count_u64(n, 32));
    const std::uint64_t budget = opt.budget_explicit ? opt.budget : std::max(opt.budget, needed);
    for (int n = 2; n <= 8; n *= 2) {
      std::vector<int> mode_counts;
      for (int m = n; m <= 32; m *= 2) mode_counts.push_back(m);
      curves.emplace_back(n, occupancy_ratio_curve(n, mode_counts, budget, opt.threads));
    }
    if (format == OutputFormat::json) {
      Json out = Json::array();
      for (const auto& [n, points] : curves) {
        Json rows = Json::array();
        for (const auto& point : points)
          rows.push_back(Json{{"m", point.mode_count},
                              {"boson_mean", to_double(point.boson_mean)},
                              {"distinguishable_mean", to_double(point.distinguishable_mean)},
                              {"ratio", to_double(point.ratio)}});
        out.push_back(Json{{"n", n}, {"points", std::move(rows)}});
      }
      emit(opt, render_json(out));
    } else {
      emit(opt, ratio_curves_to_csv(curves));
    }
    return 0;
  }
  const auto u = build_sylvester(3);
  const auto f = build_fourier(8);
  const FockState input = standard_input(8, 0, 8);
  const auto sylvester_bosons = occupancy_profile(u, input, Statistics::boson, opt.budget, opt.threads);
  const auto fourier_bosons = occupancy_profile(f, input, Statistics::boson, opt.budget, opt.threads);
  const auto baseline = occupancy_profile(u, input, Statistics::distinguishable, opt.budget, opt.threads);
  if (format == OutputFormat::json) {
    auto profile_json = [](const std::string& label, const auto& p) {
      Json histogram = Json::array();
      for (const auto& v : p.histogram) histogram.push_back(probability_value(v));
      return Json{{"statistics", label},
                  {"histogram", std::move(histogram)},
                  {"mean", probability_value(p.mean)}};
    };
    emit(opt, render_json(Json::array({profile_json("boson-sylvester", sylvester_bosons),
                                       profile_json("boson-fourier", fourier_bosons),
                                       profile_json("distinguishable", baseline)})));
  } else {
    std::string out = "statistics,occupied_modes,probability\n";
    append_occupancy_csv(out, "boson-sylvester", sylvester_bosons);
    append_occupancy_csv(out, "boson-fourier", fourier_bosons);
    append_occupancy_csv(out, "distinguishable", baseline);
    emit(opt, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact simulator and verifier of multi-particle interference in Sylvester and Fourier "
      "interferometers"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}))
      ->capture_default_str();
  app.add_option("--out", opt.out_path, "write output to this file instead of stdout");
  auto* budget_option =
      app.add_option("--budget", opt.budget, "enumeration budget in output states")
          ->envname("SYLSIM_BUDGET")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
  app.add_option("--threads", opt.threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* cmd_matrix = app.add_subcommand("matrix", "emit a Sylvester or Fourier matrix core");
  cmd_matrix->fallthrough();
  std::string matrix_kind;
  int matrix_size = 0;
  cmd_matrix->add_option("kind", matrix_kind, "sylvester or fourier")
      ->required()
      ->check(CLI::IsMember({"sylvester", "fourier"}));
  cmd_matrix
      ->add_option("size", matrix_size,
                   "exponent p for sylvester (order 2^p), mode count m for fourier")
      ->required();

  int n = 0, m = 0, c = 0;
  std::string stat_name;
  auto add_transition_options = [&](CLI::App* cmd, bool with_distinguishable) {
    cmd->add_option("n", n, "particle count (power of two)")->required();
    cmd->add_option("m", m, "mode count (power of two, m >= n)")->required();
    cmd->add_option("c,--c", c, "input block offset in [0, m/n - 1]")->required();
    const std::vector<std::string> kinds =
        with_distinguishable ? std::vector<std::string>{"boson", "fermion", "distinguishable"}
                             : std::vector<std::string>{"boson", "fermion"};
    cmd->add_option("statistics", stat_name, "particle kind")
        ->required()
        ->check(CLI::IsMember(kinds));
  };

  auto* cmd_dist =
      app.add_subcommand("dist", "full output distribution for a standard block input");
  cmd_dist->fallthrough();
  add_transition_options(cmd_dist, true);
  auto* cmd_verify = app.add_subcommand(
      "verify", "check the suppression predicate against exact amplitudes for every output");
  cmd_verify->fallthrough();
  add_transition_options(cmd_verify, false);

  auto* cmd_tables = app.add_subcommand(
      "tables", "suppressed-state counts for n in {2,4,8} and m a power of two up to 64");
  cmd_tables->fallthrough();
  auto* cmd_figure2 = app.add_subcommand(
      "figure2", "occupancy data: part a (mean-occupancy ratio curves), part b (n=m=8 histograms)");
  cmd_figure2->fallthrough();
  std::string part;
  cmd_figure2->add_option("part", part, "a or b")->required()->check(CLI::IsMember({"a", "b"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.budget_explicit = budget_option->count() > 0;

  try {
    if (*cmd_matrix) return run_matrix(opt, matrix_kind, matrix_size);
    if (*cmd_dist) return run_dist(opt, n, m, c, stat_name);
    if (*cmd_verify) return run_verify(opt, n, m, c, stat_name);
    if (*cmd_tables) return run_tables(opt);
    if (*cmd_figure2) return run_figure2(opt, part);
  } catch (const sylsim::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const sylsim::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
