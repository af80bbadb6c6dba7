#include <omp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netcover/compatibility.hpp"
#include "netcover/coverage.hpp"
#include "netcover/ilp_seed.hpp"
#include "netcover/model_export.hpp"
#include "netcover/network.hpp"
#include "netcover/placement.hpp"
#include "netcover/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netcover;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  std::string network;
  double scale_radius = 5.0;
  bool no_scale = false;
  std::string norm = "l2";
  double radius = 0.5;
  uint64_t rng_seed = 0;
  std::string out = ".";
  int threads = 0;
  int random_seeds = 200;
  double step_tol = 0.0;
};

struct Cli {
  GlobalOpts g;
  std::string argv_line;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Network load() const {
    Network net = load_network(g.network);
    if (!g.no_scale) net = scale_to_disk(net, g.scale_radius);
    return net;
  }
  Ball ball() const { return {norm_from_name(g.norm), g.radius}; }

  fs::path out_path(const std::string& name) {
    fs::create_directories(g.out);
    fs::path p = fs::path(g.out) / name;
    outputs.push_back(p.string());
    return p;
  }

  void write(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
  }

  void manifest(const std::string& subcommand) {
    json j;
    j["command"] = argv_line;
    j["outputs"] = outputs;
    j["rng_seed"] = g.rng_seed;
    j["subcommand"] = subcommand;
    j["version"] = kVersion;
    j["wall_time_sec"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    fs::path p = fs::path(g.out) / (subcommand + "_manifest.json");
    write(p, j.dump(2) + "\n");
  }
};

json report_json(const CoverageReport& rep) {
  json j;
  j["covered_weighted_length"] = rep.covered_weighted_length;
  j["total_weighted_length"] = rep.total_weighted_length;
  j["fraction"] = rep.fraction;
  j["per_edge"] = rep.per_edge;
  return j;
}

json placement_json(const Placement& placed, const CoverageReport& rep) {
  json j;
  j["devices"] = json::array();
  for (const Device& d : placed.devices)
    j["devices"].push_back({{"x", d.position.x},
                            {"y", d.position.y},
                            {"radius", d.ball.radius},
                            {"norm", norm_name(d.ball.norm)}});
  j["report"] = report_json(rep);
  return j;
}

std::vector<Device> parse_devices(const std::string& text) {
  json j = json::parse(text);
  std::vector<Device> devices;
  for (const auto& d : j.at("devices"))
    devices.push_back({{d.at("x").get<double>(), d.at("y").get<double>()},
                       {norm_from_name(d.value("norm", "l2")),
                        d.value("radius", 0.5)}});
  return devices;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Strategy strategy_from(const std::string& s) {
  if (s == "heuristic") return Strategy::Heuristic;
  if (s == "seed_polish") return Strategy::SeedPolish;
  if (s == "baseline_nodes") return Strategy::BaselineNodes;
  return Strategy::BaselineEdges;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coverage planning for leak detection devices on pipeline networks"};
  app.require_subcommand(1);
  app.fallthrough();

  Cli cli;
  {
    std::ostringstream line;
    for (int i = 0; i < argc; ++i) line << (i ? " " : "") << argv[i];
    cli.argv_line = line.str();
  }
  GlobalOpts& g = cli.g;
  app.add_option("--network", g.network, "network JSON file");
  app.add_option("--scale-radius", g.scale_radius,
                 "scale the network to fit a disk of this radius first")
      ->capture_default_str();
  app.add_flag("--no-scale", g.no_scale, "use the input coordinates as-is");
  app.add_option("--norm", g.norm, "coverage ball norm: l1, l2, linf")
      ->check(CLI::IsMember({"l1", "l2", "linf"}))
      ->capture_default_str();
  app.add_option("--radius", g.radius, "coverage radius R")
      ->capture_default_str();
  app.add_option("--rng-seed", g.rng_seed, "seed for randomized starts")
      ->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = library default)");
  app.add_option("--random-seeds", g.random_seeds,
                 "random multistart points for the inner solver")
      ->capture_default_str();
  app.add_option("--step-tol", g.step_tol,
                 "compass search step tolerance (0 = 1e-6 * R)");

  CLI::App* c_scale = app.add_subcommand("scale", "rescale a network file");

  CLI::App* c_compat =
      app.add_subcommand("compat", "dump pair/triple incompatibility tables");

  CLI::App* c_seed =
      app.add_subcommand("seed", "edge-cluster seed via branch-and-bound");
  int seed_p = 1;
  std::string seed_mode = "exact";
  bool seed_polish = false;
  c_seed->add_option("--p", seed_p, "number of devices")->required();
  c_seed->add_option("--mode", seed_mode, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  c_seed->add_flag("--polish", seed_polish, "compass-polish seed positions");

  CLI::App* c_solve = app.add_subcommand("solve", "place devices");
  std::string problem = "mnlclp";
  std::string strategy = "heuristic";
  int solve_p = -1;
  double gamma = -1.0;
  double edge_grid_step = 0.0;
  std::string svg_out;
  c_solve->add_option("--problem", problem, "mnlclp or psnlclp")
      ->check(CLI::IsMember({"mnlclp", "psnlclp"}))
      ->capture_default_str();
  c_solve->add_option("--p", solve_p, "device count (mnlclp)");
  c_solve->add_option("--gamma", gamma, "coverage fraction target (psnlclp)");
  c_solve
      ->add_option("--strategy", strategy,
                   "heuristic, seed_polish, baseline_nodes, baseline_edges")
      ->check(CLI::IsMember(
          {"heuristic", "seed_polish", "baseline_nodes", "baseline_edges"}))
      ->capture_default_str();
  c_solve->add_option("--edge-grid-step", edge_grid_step,
                      "candidate spacing for the edge-restricted baseline");
  c_solve->add_option("--svg", svg_out, "also render the solution to this file");

  CLI::App* c_eval =
      app.add_subcommand("evaluate", "coverage report for a placement file");
  std::string placement_file, model_file, assignment_file;
  c_eval->add_option("--placement", placement_file, "placement JSON");
  c_eval->add_option("--model", model_file,
                     "check a solver assignment against this .cmodel instead");
  c_eval->add_option("--assignment", assignment_file,
                     "variable assignment file for --model");

  CLI::App* c_export =
      app.add_subcommand("export", "write conic models for external solvers");
  std::string ex_problem = "single";
  int ex_p = 1;
  double ex_gamma = -1.0;
  std::vector<double> ex_costs;
  std::string ex_format = "conic_text";
  c_export->add_option("--problem", ex_problem, "single, mnlclp or psnlclp")
      ->check(CLI::IsMember({"single", "mnlclp", "psnlclp"}))
      ->capture_default_str();
  c_export->add_option("--p", ex_p, "device count");
  c_export->add_option("--gamma", ex_gamma, "coverage target (psnlclp)");
  c_export->add_option("--costs", ex_costs,
                       "per-device set-up costs (psnlclp objective)")
      ->delimiter(',');
  c_export->add_option("--format", ex_format, "output format")
      ->check(CLI::IsMember({"conic_text"}));

  CLI::App* c_compare = app.add_subcommand(
      "compare", "free placement vs node- and edge-restricted baselines");
  std::vector<int> grid_p{2, 5, 8};
  std::vector<double> grid_r{0.1, 0.25, 0.5};
  c_compare->add_option("--p-grid", grid_p, "device counts")
      ->delimiter(',')
      ->capture_default_str();
  c_compare->add_option("--radius-grid", grid_r, "radii")
      ->delimiter(',')
      ->capture_default_str();

  CLI::App* c_plot =
      app.add_subcommand("plot", "render network (and placement) as SVG");
  std::string plot_placement;
  c_plot->add_option("--placement", plot_placement, "placement JSON to overlay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    if (g.network.empty()) {
      std::cerr << "error: --network is required\n";
      return 2;
    }

    if (c_scale->parsed()) {
      const Network net = scale_to_disk(load_network(g.network), g.scale_radius);
      cli.write(cli.out_path("scaled.json"), network_to_json(net));
      cli.manifest("scale");
      return 0;
    }

    if (c_compat->parsed()) {
      const Network net = cli.load();
      const IncompatibilityTable table =
          build_incompatibility_table(net, cli.ball());
      json j;
      j["radius"] = table.radius;
      j["norm"] = norm_name(table.norm);
      j["pairs"] = json::array();
      for (const auto& [a, b] : table.pairs)
        j["pairs"].push_back({net.edges[static_cast<size_t>(a)].id,
                              net.edges[static_cast<size_t>(b)].id});
      j["triples"] = json::array();
      for (const auto& t : table.triples)
        j["triples"].push_back({net.edges[static_cast<size_t>(t[0])].id,
                                net.edges[static_cast<size_t>(t[1])].id,
                                net.edges[static_cast<size_t>(t[2])].id});
      cli.write(cli.out_path("compat.json"), j.dump(2) + "\n");
      cli.manifest("compat");
      return 0;
    }

    if (c_seed->parsed()) {
      const Network net = cli.load();
      const Ball ball = cli.ball();
      const IncompatibilityTable table = build_incompatibility_table(net, ball);
      const SeedAssignment seed = solve_seed_ilp(
          net, ball, seed_p, table,
          seed_mode == "exact" ? SeedMode::ExactBnB : SeedMode::Greedy);
      const Placement placed = seed_to_placement(seed, net, ball, seed_polish);
      const CoverageReport rep = evaluate(net, placed.devices);
      json j;
      j["ilp_value"] = seed.ilp_value;
      j["optimal"] = seed.optimal;
      j["certified"] = seed.certified;
      j["clusters"] = json::array();
      for (const auto& cluster : seed.clusters) {
        json c = json::array();
        for (int e : cluster) c.push_back(net.edges[static_cast<size_t>(e)].id);
        j["clusters"].push_back(c);
      }
      j["placement"] = placement_json(placed, rep);
      cli.write(cli.out_path("seed.json"), j.dump(2) + "\n");
      cli.manifest("seed");
      return 0;
    }

    if (c_solve->parsed()) {
      const Network net = cli.load();
      RunConfig cfg;
      cfg.ball = cli.ball();
      cfg.solver.random_seeds = g.random_seeds;
      cfg.solver.rng_seed = g.rng_seed;
      cfg.solver.step_tol = g.step_tol;
      cfg.edge_grid_step = edge_grid_step;
      if (problem == "mnlclp") {
        if (solve_p < 0) {
          std::cerr << "error: --problem mnlclp requires --p\n";
          return 2;
        }
        cfg.problem = Problem::MNLCLP;
        cfg.p = solve_p;
      } else {
        if (!(gamma > 0.0 && gamma <= 1.0)) {
          std::cerr << "error: --problem psnlclp requires --gamma in (0,1]\n";
          return 2;
        }
        cfg.problem = Problem::PSNLCLP;
        cfg.gamma = gamma;
      }
      const SolveResult res = solve(net, cfg, strategy_from(strategy));
      if (!res.warning.empty()) std::cerr << "warning: " << res.warning << "\n";
      cli.write(cli.out_path("placement.json"),
                placement_json(res.placement, res.report).dump(2) + "\n");
      if (!svg_out.empty()) {
        cli.outputs.push_back(svg_out);
        cli.write(svg_out, render_svg(net, &res.placement));
      }
      cli.manifest("solve");
      return 0;
    }

    if (c_eval->parsed()) {
      const Network net = cli.load();
      if (!model_file.empty()) {
        if (assignment_file.empty()) {
          std::cerr << "error: --model needs --assignment\n";
          return 2;
        }
        const ConicModel model = parse_model(slurp(model_file));
        const VerifyResult r = verify_solution(
            model, net, parse_assignment(slurp(assignment_file)));
        json j;
        j["feasible"] = r.feasible;
        j["violations"] = r.violations;
        j["model_objective"] = r.model_objective;
        j["linearization_slack"] = r.linearization_slack;
        j["w_flags"] = r.w_flags;
        j["report"] = report_json(r.geometric);
        cli.write(cli.out_path("verify.json"), j.dump(2) + "\n");
        cli.manifest("evaluate");
        return r.feasible ? 0 : 3;
      }
      if (placement_file.empty()) {
        std::cerr << "error: evaluate needs --placement (or --model)\n";
        return 2;
      }
      const std::vector<Device> devices = parse_devices(slurp(placement_file));
      const CoverageReport rep = evaluate(net, devices);
      cli.write(cli.out_path("report.json"), report_json(rep).dump(2) + "\n");
      cli.manifest("evaluate");
      return 0;
    }

    if (c_export->parsed()) {
      const Network net = cli.load();
      const std::string instance = fs::path(g.network).stem().string();
      ConicModel model;
      if (ex_problem == "single") {
        model = build_single(net, cli.ball(), instance);
      } else if (ex_problem == "mnlclp") {
        model = build_multi(
            net, std::vector<Ball>(static_cast<size_t>(ex_p), cli.ball()),
            Problem::MNLCLP, std::nullopt, {}, instance);
      } else {
        if (!(ex_gamma > 0.0 && ex_gamma <= 1.0)) {
          std::cerr << "error: --problem psnlclp requires --gamma in (0,1]\n";
          return 2;
        }
        int p = ex_p;
        if (c_export->count("--p") == 0)
          p = p_upper_bound(net, cli.ball(), ex_gamma);
        model = build_multi(
            net, std::vector<Ball>(static_cast<size_t>(p), cli.ball()),
            Problem::PSNLCLP, ex_gamma, ex_costs, instance);
      }
      cli.write(cli.out_path(instance + "_" + ex_problem + ".cmodel"),
                serialize(model));
      cli.manifest("export");
      return 0;
    }

    if (c_compare->parsed()) {
      const Network net = cli.load();
      struct Row {
        int p;
        double r;
        double unrestricted, edges, nodes;
      };
      std::vector<std::pair<int, double>> cells;
      for (int p : grid_p)
        for (double r : grid_r) cells.emplace_back(p, r);
      std::vector<Row> rows(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (long long i = 0; i < static_cast<long long>(cells.size()); ++i) {
        const auto [p, r] = cells[static_cast<size_t>(i)];
        RunConfig cfg;
        cfg.problem = Problem::MNLCLP;
        cfg.p = p;
        cfg.ball = {norm_from_name(g.norm), r};
        cfg.solver.random_seeds = g.random_seeds;
        cfg.solver.rng_seed = g.rng_seed;
        Row row{p, r, 0, 0, 0};
        row.unrestricted =
            solve(net, cfg, Strategy::Heuristic).report.covered_weighted_length;
        row.edges = solve(net, cfg, Strategy::BaselineEdges)
                        .report.covered_weighted_length;
        row.nodes = solve(net, cfg, Strategy::BaselineNodes)
                        .report.covered_weighted_length;
        rows[static_cast<size_t>(i)] = row;
      }
      std::ostringstream csv;
      csv << "network,p,R,unrestricted,edge_restricted,node_restricted,"
             "dev_edges_pct,dev_nodes_pct\n";
      json jrows = json::array();
      const std::string name = fs::path(g.network).stem().string();
      for (const Row& row : rows) {
        // positive deviation = the free placement covers more
        const double de =
            row.unrestricted > 0
                ? 100.0 * (row.unrestricted - row.edges) / row.unrestricted
                : 0.0;
        const double dn =
            row.unrestricted > 0
                ? 100.0 * (row.unrestricted - row.nodes) / row.unrestricted
                : 0.0;
        csv << name << "," << row.p << "," << row.r << "," << row.unrestricted
            << "," << row.edges << "," << row.nodes << "," << de << "," << dn
            << "\n";
        jrows.push_back({{"network", name},
                         {"p", row.p},
                         {"R", row.r},
                         {"unrestricted", row.unrestricted},
                         {"edge_restricted", row.edges},
                         {"node_restricted", row.nodes},
                         {"dev_edges_pct", de},
                         {"dev_nodes_pct", dn}});
      }
      cli.write(cli.out_path("compare.csv"), csv.str());
      cli.write(cli.out_path("compare.json"), jrows.dump(2) + "\n");
      cli.manifest("compare");
      return 0;
    }

    if (c_plot->parsed()) {
      const Network net = cli.load();
      if (plot_placement.empty()) {
        cli.write(cli.out_path("plot.svg"), render_svg(net, nullptr));
      } else {
        const Placement placed =
            make_placement(net, parse_devices(slurp(plot_placement)));
        cli.write(cli.out_path("plot.svg"), render_svg(net, &placed));
      }
      cli.manifest("plot");
      return 0;
    }
  } catch (const SolverGuardError& e) {
    std::cerr << "solver guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
