// Copyright 2026 The treeamalg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// treeamalg: batch CLI over the library. Exit codes: 0 ok, 1 an
// expectation failed, 2 an error (kind printed on stderr).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeamalg/amalgam.hpp"
#include "treeamalg/boundary.hpp"
#include "treeamalg/error.hpp"
#include "treeamalg/experiment.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/graph_io.hpp"
#include "treeamalg/hyperbolic.hpp"
#include "treeamalg/qi.hpp"
#include "treeamalg/reports.hpp"
#include "treeamalg/spec_io.hpp"

namespace ta = treeamalg;
using nlohmann::json;

namespace {

constexpr const char* kCacheEnv = "TREEAMALG_CACHE_DIR";

struct Output {
  std::string path;
  std::string format = "json";
};

void emit(const Output& out, const json& doc) {
  const std::string text = ta::export_artifact(doc, out.format);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    ta::write_text_file(out.path, text);
  }
}

void add_output(CLI::App* cmd, Output& out, bool allow_table = true) {
  cmd->add_option("--out", out.path, "Write here instead of stdout");
  std::vector<std::string> formats = {"json", "table"};
  if (!allow_table) formats = {"json"};
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats));
}

// "grid", "tree:P1,P2", "cayley:NAME", or a JSON descriptor file.
json generator_descriptor(const std::string& text) {
  if (text == "grid") return {{"generator", "grid"}};
  if (text.rfind("tree:", 0) == 0) {
    const auto body = text.substr(5);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ta::InputError("tree generator needs tree:P1,P2");
    auto degree = [](const std::string& s) -> json {
      if (s == "inf") return "inf";
      return std::stoi(s);
    };
    return {{"generator", "tree"}, {"p1", degree(body.substr(0, comma))}, {"p2", degree(body.substr(comma + 1))}};
  }
  if (text.rfind("cayley:", 0) == 0) return {{"generator", "cayley"}, {"presentation", text.substr(7)}};
  if (std::filesystem::exists(text)) return ta::read_json_file(text);
  throw ta::InputError("unknown generator \"" + text + "\" (grid, tree:P1,P2, cayley:NAME or a JSON file)");
}

// Generation is deterministic, so balls keyed by descriptor and radius can
// be reused across invocations when the cache directory is set.
ta::FiniteBall cached_ball(const json& descriptor, int radius) {
  const char* dir = std::getenv(kCacheEnv);
  const auto make = [&] { return ta::generator_from_json(descriptor).make(radius); };
  if (dir == nullptr || *dir == '\0') return make();
  const json key = {{"descriptor", descriptor}, {"radius", radius}, {"version", ta::kToolVersion}};
  const auto file = std::filesystem::path(dir) / ("ball-" + ta::config_hash(key) + ".json");
  if (std::filesystem::exists(file)) return ta::ball_from_json(ta::read_json_file(file.string()));
  ta::FiniteBall ball = make();
  std::filesystem::create_directories(dir);
  ta::write_text_file(file.string(), ta::ball_to_json(ball).dump() + "\n");
  return ball;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ta::InputError("\"" + text + "\" is not a comma-separated integer list");
    }
  }
  return out;
}

ta::FiniteBall load_ball(const std::string& path) { return ta::ball_from_json(ta::read_json_file(path)); }

int finish_experiment(const ta::ExperimentReport& report, const std::string& out_dir) {
  if (!out_dir.empty()) ta::write_report_bundle(report, out_dir);
  std::cout << ta::to_table(report.doc);
  if (report.has_errors()) {
    for (const auto& e : report.errors.at("errors")) {
      std::cerr << "step " << e.at("id").get<std::string>() << " failed (" << e.at("kind").get<std::string>()
                << "): " << e.at("message").get<std::string>() << "\n";
    }
    return 2;
  }
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree amalgamations of locally finite graphs: construction and desk-scale checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ta::kToolVersion));
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  int exit_code = 0;
  Output out;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate balls")->require_subcommand(1);
  std::string pres;
  int radius = 0, depth = 0;
  auto* gen_cayley = gen->add_subcommand("cayley", "Ball of a Cayley graph");
  gen_cayley->add_option("--pres", pres, "Presentation JSON file or built-in name")->required();
  gen_cayley->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  add_output(gen_cayley, out);
  gen_cayley->callback([&] {
    const json p = std::filesystem::exists(pres) ? ta::read_json_file(pres) : json(pres);
    emit(out, ta::ball_to_json(ta::cayley_ball(ta::presentation_from_json(p), radius)));
  });
  std::string p1_text = "3", p2_text = "3";
  auto* gen_tree = gen->add_subcommand("tree", "Ball of a semiregular tree");
  gen_tree->add_option("--p1", p1_text, "Degree of class 1 (integer or inf)");
  gen_tree->add_option("--p2", p2_text, "Degree of class 2 (integer or inf)");
  gen_tree->add_option("--depth", depth)->required()->check(CLI::NonNegativeNumber);
  add_output(gen_tree, out);
  gen_tree->callback([&] {
    const json d = {{"generator", "tree"}, {"p1", p1_text == "inf" ? json("inf") : json(std::stoi(p1_text))},
                    {"p2", p2_text == "inf" ? json("inf") : json(std::stoi(p2_text))}, {"depth", depth}};
    emit(out, ta::ball_to_json(ta::factor_from_json(d, "tree")));
  });
  auto* gen_grid = gen->add_subcommand("grid", "Ball of the square grid");
  gen_grid->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  add_output(gen_grid, out);
  gen_grid->callback([&] { emit(out, ta::ball_to_json(ta::grid_ball(radius))); });

  // amalg
  auto* amalg = app.add_subcommand("amalg", "Build tree amalgamations")->require_subcommand(1);
  std::string spec_path, dot_path;
  bool plus_only = false;
  auto* build = amalg->add_subcommand("build", "Build the plus graph and the contracted amalgam");
  build->add_option("--spec", spec_path)->required()->check(CLI::ExistingFile);
  build->add_option("--out", out.path, "Bundle JSON destination (stdout if omitted)");
  build->add_option("--dot", dot_path, "Also write a DOT rendering of the plus graph");
  build->add_flag("--plus-only", plus_only, "Skip the contraction");
  build->callback([&] {
    ta::AmalgamBundle b = ta::build_plus(ta::spec_from_json(ta::read_json_file(spec_path)));
    if (!plus_only) b = ta::contract(std::move(b));
    emit(out, ta::bundle_to_json(b));
    if (!dot_path.empty()) ta::write_text_file(dot_path, ta::bundle_to_dot(b, false));
  });
  std::string g_path, h_path, f1_path, f2_path;
  auto* map = amalg->add_subcommand("map", "Swap-map construction between two bundles");
  map->set_help_flag("--help", "Print this help message and exit");  // --h names bundle H
  map->add_option("--g", g_path)->required()->check(CLI::ExistingFile);
  map->add_option("--h", h_path)->required()->check(CLI::ExistingFile);
  map->add_option("--f1", f1_path)->required()->check(CLI::ExistingFile);
  map->add_option("--f2", f2_path)->required()->check(CLI::ExistingFile);
  add_output(map, out, false);
  map->callback([&] {
    const auto g = ta::bundle_from_json(ta::read_json_file(g_path));
    const auto h = ta::bundle_from_json(ta::read_json_file(h_path));
    const auto f1 = ta::vertex_map_from_json(ta::read_json_file(f1_path), g.spec.factor1.size());
    const auto f2 = ta::vertex_map_from_json(ta::read_json_file(f2_path), g.spec.factor2.size());
    const auto m = ta::build_swapped_map(g, h, f1, f2);
    emit(out, ta::swap_to_json(m, ta::unmatched_identifications(g, h, m)));
  });

  // hyp
  auto* hyp = app.add_subcommand("hyp", "Hyperbolicity constants")->require_subcommand(1);
  std::string in_path, mode = "exhaustive", gen_text, radii_text;
  std::uint64_t seed = 0;
  auto* delta = hyp->add_subcommand("delta", "Thin-triangle delta and the four-point proxy");
  delta->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  delta->add_option("--mode", mode, "exhaustive | sampled:N");
  delta->add_option("--seed", seed, "Seed for sampled mode");
  add_output(delta, out);
  delta->callback([&] {
    const auto ball = load_ball(in_path);
    const auto report = ta::delta_thin(ball, ta::DeltaMode::parse(mode, seed), {ta::kExhaustiveVertexCap, threads});
    const auto it = ball.meta().find("generator");
    emit(out, ta::delta_to_json(report, it == ball.meta().end() ? "ball" : it->second, ball.radius()));
  });
  auto* growth = hyp->add_subcommand("growth", "delta4 over increasing radii");
  growth->add_option("--gen", gen_text, "grid | tree:P1,P2 | cayley:NAME | descriptor.json")->required();
  growth->add_option("--radii", radii_text, "Comma-separated, strictly increasing")->required();
  add_output(growth, out);
  growth->callback([&] {
    const json d = generator_descriptor(gen_text);
    const ta::BallGenerator base = ta::generator_from_json(d);
    const ta::BallGenerator cached{base.name, [&](int r) { return cached_ball(d, r); }};
    emit(out, ta::delta_growth_to_json(ta::delta_growth(cached, parse_int_list(radii_text), threads), base.name));
  });

  // bnd
  auto* bnd = app.add_subcommand("bnd", "Ends and boundary")->require_subcommand(1);
  std::vector<int> ks;
  int t = 0, r_opt = -1;
  auto* ends = bnd->add_subcommand("ends", "Frontier components after removing k-balls");
  ends->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  ends->add_option("--k", ks, "Removal radii (repeatable)")->required();
  add_output(ends, out);
  ends->callback([&] {
    const auto ball = load_ball(in_path);
    std::vector<ta::EndProfile> series;
    for (int k : ks) series.push_back(ta::end_profile(ball, k));
    emit(out, ta::end_series_to_json(series, in_path));
  });
  auto* profile = bnd->add_subcommand("profile", "Sphere clusters under a Gromov-product threshold");
  profile->add_option("--in", in_path, "Window ball")->required()->check(CLI::ExistingFile);
  profile->add_option("--t", t)->required()->check(CLI::NonNegativeNumber);
  profile->add_option("--r", r_opt, "Sphere radius (default: largest the window decides)");
  add_output(profile, out);
  profile->callback([&] {
    const auto window = load_ball(in_path);
    int r = r_opt;
    if (r < 0) {
      r = window.is_whole() ? window.radius() : std::min(window.radius() / 2, (window.radius() + 2 * t) / 3);
    }
    emit(out, ta::boundary_to_json(ta::boundary_profile(window, r, t, threads), in_path));
  });
  std::string bundle_path, ray_path;
  double cutoff = 0.5;
  auto* classify = bnd->add_subcommand("classify", "FactorType or TreeType for a geodesic ray prefix");
  classify->add_option("--bundle", bundle_path)->required()->check(CLI::ExistingFile);
  classify->add_option("--ray", ray_path)->required()->check(CLI::ExistingFile);
  classify->add_option("--cutoff", cutoff, "Share of the ray the final segment must cover")
      ->check(CLI::Range(0.0, 1.0));
  add_output(classify, out, false);
  classify->callback([&] {
    const auto b = ta::bundle_from_json(ta::read_json_file(bundle_path));
    emit(out, ta::ray_to_json(ta::classify_ray(b, ta::path_from_json(ta::read_json_file(ray_path)), cutoff)));
  });
  int k_single = 1;
  auto* compare = bnd->add_subcommand("compare", "Ends against coarse boundary clusters");
  compare->add_option("--k", k_single)->required();
  compare->add_option("--t", t)->required();
  compare->add_option("--r", r_opt, "Sphere radius")->required();
  auto* src_in = compare->add_option("--in", in_path, "Window ball")->check(CLI::ExistingFile);
  compare->add_option("--gen", gen_text, "Generate the window instead")->excludes(src_in);
  add_output(compare, out);
  compare->callback([&] {
    if (in_path.empty() && gen_text.empty()) throw ta::InputError("bnd compare needs --in or --gen");
    const auto window = in_path.empty()
                            ? cached_ball(generator_descriptor(gen_text), ta::required_window_radius(r_opt, t))
                            : load_ball(in_path);
    emit(out, ta::comparison_to_json(ta::components_vs_ends(window, r_opt, k_single, t, threads)));
  });

  // qi
  auto* qi = app.add_subcommand("qi", "Quasi-isometry checks")->require_subcommand(1);
  std::string map_path, dom_path, cod_path;
  auto* fit = qi->add_subcommand("fit", "Fit (gamma, c) for a vertex map");
  fit->add_option("--map", map_path)->required()->check(CLI::ExistingFile);
  fit->add_option("--dom", dom_path)->required()->check(CLI::ExistingFile);
  fit->add_option("--cod", cod_path)->required()->check(CLI::ExistingFile);
  add_output(fit, out);
  fit->callback([&] {
    const auto dom = load_ball(dom_path);
    const auto cod = load_ball(cod_path);
    const auto m = ta::vertex_map_from_json(ta::read_json_file(map_path), dom.size());
    emit(out, ta::qi_fit_to_json(ta::qi_constants(m, dom, cod, {{}, threads})));
  });
  auto* preserve = qi->add_subcommand("preserve", "Factor geodesics stay geodesic in the amalgam");
  preserve->add_option("--bundle", bundle_path)->required()->check(CLI::ExistingFile);
  add_output(preserve, out);
  preserve->callback([&] {
    const auto b = ta::bundle_from_json(ta::read_json_file(bundle_path));
    const auto report = ta::check_geodesic_preservation(b, threads);
    emit(out, ta::preservation_to_json(report, b));
    if (!report.violations.empty()) exit_code = 1;
  });
  auto* psi = qi->add_subcommand("psi", "Fit (gamma, c) for the contraction map");
  psi->add_option("--bundle", bundle_path)->required()->check(CLI::ExistingFile);
  add_output(psi, out);
  psi->callback([&] {
    const auto b = ta::bundle_from_json(ta::read_json_file(bundle_path));
    emit(out, ta::psi_to_json(ta::check_plus_vs_contracted(b, threads), b.spec.tree_depth));
  });

  // run / suite / export
  std::string config_path, out_dir;
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Directory for report.json, report.txt, errors.json");
  run->add_option("--seed", run_seed, "Overrides the config seed");
  run->callback([&] {
    exit_code = finish_experiment(ta::run_experiment(ta::read_json_file(config_path), {run_seed, threads}), out_dir);
  });
  std::string suite_name;
  bool list = false;
  auto* suite = app.add_subcommand("suite", "Run a built-in suite");
  suite->add_option("name", suite_name, "Suite name");
  suite->add_flag("--list", list, "List suite names");
  suite->add_option("--out", out_dir, "Directory for report.json, report.txt, errors.json");
  suite->add_option("--seed", run_seed, "Overrides the suite seed");
  suite->callback([&] {
    if (list || suite_name.empty()) {
      for (const auto& n : ta::builtin_suite_names()) std::cout << n << "\n";
      return;
    }
    exit_code = finish_experiment(ta::run_experiment(ta::builtin_suite(suite_name), {run_seed, threads}), out_dir);
  });
  std::string format = "json";
  auto* exp = app.add_subcommand("export", "Render a JSON artifact");
  exp->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  exp->add_option("--format", format, "dot | json | table")->required();
  exp->add_option("--out", out.path);
  exp->callback([&] {
    const std::string text = ta::export_artifact(ta::read_json_file(in_path), format);
    if (out.path.empty()) {
      std::cout << text;
    } else {
      ta::write_text_file(out.path, text);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ta::Error& e) {
    std::cerr << "error (" << ta::to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error (schema): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
