// kroute: k-route cut toolbox
//
// Subcommands: solve, lp, verify, brute, reduce, gen, check-region.
// Reports are ordered JSON, byte-identical across runs up to wall_ms.
// Exit codes: 0 ok, 1 infeasible, 2 usage error, 3 internal assertion.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "kroute/report.hpp"
#include "kroute/reductions.hpp"

using namespace kroute;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
  }
}

int env_jobs() {
  const char* env = std::getenv("KROUTE_JOBS");
  if (!env) return 1;
  int j = std::atoi(env);
  return j >= 1 ? j : 1;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-route cut algorithms, relaxations and reductions"};
  app.require_subcommand(1);

  // ---- solve
  auto* solve = app.add_subcommand("solve", "run an algorithm on an instance");
  std::string s_alg, s_in, s_out;
  double s_gamma = 3.0, s_eps = 0.01;
  uint64_t s_seed = 0;
  bool s_trace = false, s_exact = false;
  solve->add_option("--alg", s_alg, "kmwc-unit|kmwc|2mc|kmc|ed2nmc|ndknmc|allpairs")->required();
  solve->add_option("--in", s_in, "instance document")->required();
  solve->add_option("--out", s_out, "write the report here instead of stdout");
  solve->add_option("--gamma", s_gamma, "connectivity violation factor");
  solve->add_option("--epsilon", s_eps, "cost-guess granularity (kmwc)");
  solve->add_option("--seed", s_seed, "seed echoed into the report");
  solve->add_flag("--trace", s_trace, "include per-carve trace records");
  solve->add_flag("--exact-lp", s_exact, "solve the relaxation with exact rational arithmetic");

  // ---- lp
  auto* lp_cmd = app.add_subcommand("lp", "build and solve a relaxation");
  std::string l_rel, l_in, l_out, l_dump;
  bool l_exact = false;
  lp_cmd->add_option("--relaxation", l_rel, "P|Pprime|P2|P3")->required();
  lp_cmd->add_option("--in", l_in, "instance document")->required();
  lp_cmd->add_option("--out", l_out, "report destination");
  lp_cmd->add_option("--dump-model", l_dump, "write the LP in text math-programming format");
  lp_cmd->add_flag("--exact-lp", l_exact, "use exact rational arithmetic");

  // ---- verify
  auto* verify = app.add_subcommand("verify", "check a solution report against an instance");
  std::string v_in, v_solution, v_out;
  int v_threshold = -1;
  verify->add_option("--in", v_in, "instance document")->required();
  verify->add_option("--solution", v_solution, "report produced by solve/brute")->required();
  verify->add_option("--threshold", v_threshold, "connectivity threshold (default: the report's own)");
  verify->add_option("--out", v_out, "report destination");

  // ---- brute
  auto* brute = app.add_subcommand("brute", "exact optimum by exhaustive search");
  std::string b_in, b_out;
  int b_threshold = 0, b_jobs = env_jobs();
  brute->add_option("--in", b_in, "instance document")->required();
  brute->add_option("--threshold", b_threshold, "connectivity threshold")->required();
  brute->add_option("--jobs", b_jobs, "parallel enumeration workers");
  brute->add_option("--out", b_out, "report destination");

  // ---- reduce
  auto* reduce = app.add_subcommand("reduce", "generate a hardness-reduction instance");
  std::string r_from, r_in, r_out, r_report;
  int r_k = 3;
  reduce->add_option("--from", r_from, "ssve|minrep|vc3")->required();
  reduce->add_option("--in", r_in, "source-problem document")->required();
  reduce->add_option("--k", r_k, "route parameter for vc3 (>= 3)");
  reduce->add_option("--out", r_out, "write the generated instance document here");
  reduce->add_option("--report", r_report, "report destination");

  // ---- gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  GenParams gp;
  std::string g_model = "gnp", g_variant = "edge", g_out;
  uint64_t g_seed = 0;
  bool g_weighted = false;
  gen->add_option("--model", g_model, "gnp|grid|planted");
  gen->add_option("--variant", g_variant, "edge|ednc|ndnc|multiway|allpairs|singlepair");
  gen->add_option("--n", gp.n, "node count (gnp)");
  gen->add_option("--p", gp.p, "edge probability (gnp)");
  gen->add_option("--width", gp.width, "grid width");
  gen->add_option("--height", gp.height, "grid height");
  gen->add_option("--cluster1", gp.cluster1, "planted cluster size");
  gen->add_option("--cluster2", gp.cluster2, "planted cluster size");
  gen->add_option("--crossing", gp.crossing, "planted crossing edges");
  gen->add_option("--r", gp.r, "commodity count");
  gen->add_option("--k", gp.k, "route parameter");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_flag("--weighted", g_weighted, "random decimal costs instead of unit");
  gen->add_option("--cost-lo", gp.cost_lo, "cost range low");
  gen->add_option("--cost-hi", gp.cost_hi, "cost range high");
  gen->add_option("--inf-prob", gp.inf_prob, "probability an edge is undeletable");
  gen->add_option("--out", g_out, "instance destination (default stdout)");

  // ---- check-region
  auto* check = app.add_subcommand("check-region", "region-growing integral check sweeps");
  int c_n = 8, c_count = 100;
  uint64_t c_seed = 0;
  std::string c_out;
  check->add_option("--n", c_n, "nodes per random configuration");
  check->add_option("--count", c_count, "number of configurations");
  check->add_option("--seed", c_seed, "sweep seed");
  check->add_option("--out", c_out, "report destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Timer timer;
  try {
    if (*solve) {
      CutInstance inst = parse_instance(slurp(s_in));
      json report;
      report["command"] = "solve";
      report["instance"] = instance_digest(inst);
      report["algorithm"] = s_alg;
      json params;
      params["gamma"] = s_gamma;
      params["epsilon"] = s_eps;
      report["parameters"] = params;
      report["seed"] = s_seed;

      CutSolution sol;
      bool lp_based = s_alg == "2mc" || s_alg == "kmc" || s_alg == "ed2nmc" || s_alg == "ndknmc";
      if (lp_based) {
        Relaxation rel = relaxation_for_variant(inst.variant);
        FractionalSolution frac = solve_relaxation(inst, rel, s_exact);
        report["lp_value"] = frac.objective;
        if (s_alg == "2mc")
          sol = two_mc(inst, frac);
        else if (s_alg == "kmc")
          sol = kmc_unit(inst, s_gamma, frac);
        else if (s_alg == "ed2nmc")
          sol = ed_two_nmc(inst, frac);
        else
          sol = nd_knmc_unit(inst, s_gamma, frac);
      } else if (s_alg == "kmwc-unit") {
        sol = kmwc_unit(inst, s_gamma);
      } else if (s_alg == "kmwc") {
        sol = kmwc_general(inst, s_gamma, s_eps);
      } else if (s_alg == "allpairs") {
        sol = allpairs_exact(inst);
      } else {
        std::cerr << "unknown algorithm '" << s_alg << "'\n";
        return 2;
      }
      auto rep = check_feasible(inst, sol, sol.declared_threshold);
      report["solution"] = solution_json(sol);
      report["feasibility"] = feasibility_json(rep);
      report["certificates"] = certificates_json(sol);
      if (s_trace) report["trace"] = trace_json(sol);
      report["wall_ms"] = timer.ms();
      emit(report, s_out);
      return rep.feasible ? 0 : 1;
    }

    if (*lp_cmd) {
      CutInstance inst = parse_instance(slurp(l_in));
      auto rel = relaxation_from_token(l_rel);
      if (!rel) {
        std::cerr << "unknown relaxation '" << l_rel << "'\n";
        return 2;
      }
      RelaxationModel model = build_relaxation(inst, *rel);
      if (!l_dump.empty()) {
        std::ofstream dump(l_dump, std::ios::binary);
        dump << dump_lp_format(model.lp);
      }
      LpResult res = l_exact ? solve_lp_exact(model.lp) : solve_lp_auto(model.lp);
      json report;
      report["command"] = "lp";
      report["instance"] = instance_digest(inst);
      report["relaxation"] = l_rel;
      if (res.status == LpStatus::Infeasible) {
        report["status"] = "infeasible";
        report["wall_ms"] = timer.ms();
        emit(report, l_out);
        return 1;
      }
      report["status"] = "optimal";
      report["lp_value"] = res.objective;
      report["exact"] = res.exact;
      FractionalSolution frac = decode_solution(model, res);
      frac.beta = res.objective / std::max(1, inst.r());
      auto val = validate_fractional(inst, frac, *rel);
      json vj;
      vj["feasible"] = val.feasible;
      vj["worst_path_slack"] = val.worst_path_slack;
      vj["worst_budget_slack"] = val.worst_budget_slack;
      report["validation"] = vj;
      report["wall_ms"] = timer.ms();
      emit(report, l_out);
      return 0;
    }

    if (*verify) {
      CutInstance inst = parse_instance(slurp(v_in));
      json solrep = json::parse(slurp(v_solution));
      if (!solrep.contains("solution")) throw parse_error("solution report lacks a 'solution' object");
      CutSolution sol;
      sol.node_deletion = solrep["solution"].value("node_deletion", false);
      sol.removed = solrep["solution"]["removed"].get<std::vector<int>>();
      int thr = v_threshold >= 0 ? v_threshold : solrep["solution"].value("declared_threshold", inst.k - 1);
      auto rep = check_feasible(inst, sol, thr);
      json report;
      report["command"] = "verify";
      report["instance"] = instance_digest(inst);
      report["feasibility"] = feasibility_json(rep);
      report["wall_ms"] = timer.ms();
      emit(report, v_out);
      return rep.feasible ? 0 : 1;
    }

    if (*brute) {
      CutInstance inst = parse_instance(slurp(b_in));
      BruteOptions opts;
      opts.jobs = b_jobs;
      CutSolution sol = brute_force_cut(inst, b_threshold, opts);
      json report;
      report["command"] = "brute";
      report["instance"] = instance_digest(inst);
      report["threshold"] = b_threshold;
      report["solution"] = solution_json(sol);
      report["feasibility"] = feasibility_json(check_feasible(inst, sol, b_threshold));
      report["wall_ms"] = timer.ms();
      emit(report, b_out);
      return 0;
    }

    if (*reduce) {
      json report;
      report["command"] = "reduce";
      report["from"] = r_from;
      CutInstance inst;
      if (r_from == "ssve") {
        SsveArtifact art = ssve_to_kmic(parse_ssve(slurp(r_in)));
        inst = art.instance;
        report["N"] = art.N;
        report["k"] = inst.k;
      } else if (r_from == "minrep") {
        MinRepArtifact art = minrep_to_edknmc(parse_minrep(slurp(r_in)));
        inst = art.instance;
        report["k"] = inst.k;
        report["r"] = static_cast<int>(inst.commodities.size());
      } else if (r_from == "vc3") {
        VcSource src = parse_vc(slurp(r_in));
        VcArtifact art = vc_to_allpairs(src.n, src.edges, r_k);
        inst = art.instance;
        report["k"] = inst.k;
      } else {
        std::cerr << "unknown reduction '" << r_from << "'\n";
        return 2;
      }
      report["instance"] = instance_digest(inst);
      std::string doc = write_instance(inst);
      if (r_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream out(r_out, std::ios::binary);
        out << doc;
      }
      report["wall_ms"] = timer.ms();
      if (!r_report.empty()) emit(report, r_report);
      return 0;
    }

    if (*gen) {
      if (g_model == "gnp")
        gp.model = GenModel::Gnp;
      else if (g_model == "grid")
        gp.model = GenModel::Grid;
      else if (g_model == "planted")
        gp.model = GenModel::Planted;
      else {
        std::cerr << "unknown model '" << g_model << "'\n";
        return 2;
      }
      auto var = variant_from_token(g_variant);
      if (!var) {
        std::cerr << "unknown variant '" << g_variant << "'\n";
        return 2;
      }
      gp.variant = *var;
      gp.unit_costs = !g_weighted;
      CutInstance inst = generate_instance(gp, g_seed);
      std::string doc = write_instance(inst);
      if (g_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream out(g_out, std::ios::binary);
        out << doc;
      }
      return 0;
    }

    if (*check) {
      std::mt19937_64 rng(c_seed * 65599 + 17);
      auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
      int passes = 0;
      for (int iter = 0; iter < c_count; ++iter) {
        CutInstance inst;
        inst.variant = Variant::EdgeMulticut;
        inst.k = 2;
        inst.graph.node_count = c_n;
        for (int u = 0; u < c_n; ++u)
          for (int v = u + 1; v < c_n; ++v)
            if (unit() < 0.5) inst.graph.add_edge(u, v, 0.25 + 2.0 * unit());
        if (inst.graph.edge_count() == 0) inst.graph.add_edge(0, 1);
        inst.commodities = {{0, c_n - 1}, {1, c_n - 1}};
        FractionalSolution frac;
        frac.which = Relaxation::P;
        frac.objective = 1.0;
        frac.beta = 0.25 + unit();
        int r = static_cast<int>(inst.commodities.size());
        frac.x.resize(inst.graph.edge_count());
        for (double& x : frac.x) x = unit();
        frac.y.assign(r, std::vector<double>(inst.graph.edge_count()));
        for (auto& row : frac.y)
          for (double& y : row) y = 0.5 * unit();
        GeometrySource src = make_geometry(inst, frac);
        std::vector<char> all(src.node_count(), 1);
        auto rep = region_growing_integral_check(src, iter % r, 0, all, frac.beta);
        if (rep.pass) ++passes;
      }
      json report;
      report["command"] = "check-region";
      report["count"] = c_count;
      report["passes"] = passes;
      report["wall_ms"] = timer.ms();
      emit(report, c_out);
      return passes == c_count ? 0 : 3;
    }
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const contract_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 2;
  } catch (const size_error& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return 2;
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
