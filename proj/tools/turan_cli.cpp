#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "turan/constants.hpp"
#include "turan/constructor.hpp"
#include "turan/errors.hpp"
#include "turan/exact.hpp"
#include "turan/io.hpp"
#include "turan/verifier.hpp"

namespace {

using ojson = nlohmann::ordered_json;
using namespace turan;

// exit codes: 0 ok, 1 construction/feasibility failure, 2 covering failure,
// 3 parse/usage error, 4 budget or size limit

struct ConstructArgs {
  int n = 0, r = 0, R = 1;
  std::string beta, c, mu;     // decimal strings; empty = default
  std::string lemma;           // empty = main for R=1, general otherwise
  std::string mode = "derandomized";
  std::string preset;
  std::uint64_t seed = 0;
  int max_resamples = 64;
  int threads = 0;
  std::string out;
  bool json = false;
};

struct VerifyArgs {
  std::string in;
  std::string mode = "full";
  std::uint64_t samples = 100000;
  std::uint64_t budget = 10000000;
  std::uint64_t seed = 12345;
  int s_override = -1;
  int threads = 0;
  bool json = false;
};

struct ConstantsArgs {
  int R = 1;
  double tol = 1e-12;
  bool json = false;
};

struct ExactArgs {
  int n = 0, s = 0, r = 0;
  std::uint64_t budget = 100000000ull;
  bool json = false;
};

struct TableArgs {
  int R = 1;
  int r_min = 0, r_max = 0;
  int n_min = -1, n_max = 0;
  std::string mode = "derandomized";
  std::string lemma;
  std::string preset;
  std::uint64_t seed = 0;
  bool exact_compare = false;
  int threads = 0;
  bool json = false;
};

ConstructionConfig resolve_config(int R, const std::string& lemma_flag,
                                  const std::string& preset, const std::string& beta,
                                  const std::string& c, const std::string& mu,
                                  const std::string& mode, std::uint64_t seed,
                                  int max_resamples) {
  std::string lemma = lemma_flag.empty() ? (R == 1 ? "main" : "general") : lemma_flag;
  ConstructionConfig cfg;
  if (!preset.empty()) {
    if (preset != "all-r") throw std::invalid_argument("unknown preset: " + preset);
    if (R != 1 || lemma != "main")
      throw std::invalid_argument("--preset all-r requires R = 1 and the main lemma");
    cfg = ConstructionConfig::preset_all_r();
  } else if (lemma == "main") {
    if (R != 1) throw std::invalid_argument("--lemma main requires R = 1");
    cfg = ConstructionConfig::preset_all_r();
  } else {
    cfg = ConstructionConfig::optimal(R);
  }
  if (!beta.empty()) cfg.beta = rat_from_decimal(beta);
  if (!c.empty()) cfg.c = rat_from_decimal(c);
  if (!mu.empty()) cfg.mu = rat_from_decimal(mu);
  cfg.mode = mode == "random" ? BuildMode::kRandom : BuildMode::kDerandomized;
  cfg.seed = seed;
  cfg.max_resamples = max_resamples;
  return cfg;
}

ojson report_to_json(const DensityReport& rep) {
  ojson j;
  j["n"] = rep.n;
  j["s"] = rep.s;
  j["r"] = rep.r;
  j["size"] = rep.size;
  j["density"] = rat_to_decimal(rep.density, 6);
  j["density_exact"] = rat_to_fraction(rep.density);
  j["normalized_trivial"] = rat_to_decimal(rep.normalized_trivial, 6);
  j["decaen_ratio"] = rat_to_decimal(rep.decaen_ratio, 6);
  if (rep.mu_target) {
    j["mu_target"] = *rep.mu_target;
    j["meets_mu_target"] = rep.meets_mu_target;
  }
  return j;
}

void print_report(const DensityReport& rep) {
  std::printf("system        (n=%d, s=%d, r=%d)\n", rep.n, rep.s, rep.r);
  std::printf("size          %llu\n", static_cast<unsigned long long>(rep.size));
  std::printf("density       %s\n", rat_to_decimal(rep.density, 6).c_str());
  std::printf("normalized    %s  (size*C(s,s-r)/C(n,r))\n",
              rat_to_decimal(rep.normalized_trivial, 6).c_str());
  std::printf("de Caen ratio %s  (reported only)\n",
              rat_to_decimal(rep.decaen_ratio, 6).c_str());
  if (rep.mu_target)
    std::printf("mu target     %.6f  met: %s\n", *rep.mu_target,
                rep.meets_mu_target ? "yes" : "no");
}

int run_construct(const ConstructArgs& a) {
  ConstructionConfig cfg = resolve_config(a.R, a.lemma, a.preset, a.beta, a.c, a.mu,
                                          a.mode, a.seed, a.max_resamples);
  BuildOptions opts;
  opts.threads = a.threads;
  Builder builder(cfg, opts);
  auto sys = builder.construct(a.n, a.r);
  if (!sys->materialized())
    throw InstanceTooLarge("system too large to export as an edge list");
  std::string out = a.out.empty() ? "system_n" + std::to_string(a.n) + "_r" +
                                        std::to_string(a.r) + ".json"
                                  : a.out;
  SystemFile f = make_system_file(*sys, cfg, now_utc_iso8601());
  write_system_file(f, out);
  DensityReport rep = density_report(sys->graph(), sys->s(), cfg.mu_d());
  if (a.json) {
    ojson j = report_to_json(rep);
    j["ledger_bound"] = rat_to_fraction(sys->bound());
    j["out"] = out;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    print_report(rep);
    std::printf("ledger bound  %s\n", rat_to_decimal(sys->bound(), 6).c_str());
    std::printf("written       %s\n", out.c_str());
  }
  return 0;
}

int run_verify(const VerifyArgs& a) {
  SystemFile f = read_system_file(a.in);
  RGraph g = graph_from_file(f);
  int s = a.s_override >= 0 ? a.s_override : f.s;
  VerifyResult vr;
  if (a.mode == "full") {
    vr = verify_full(g, s, a.budget, a.threads);
  } else {
    vr = verify_sampled(g, s, a.samples, a.seed);
  }
  DensityReport rep = density_report(g, s);
  if (a.json) {
    ojson j;
    j["status"] = to_string(vr.status);
    j["checked"] = vr.checked;
    if (vr.samples) j["samples"] = *vr.samples;
    if (vr.failure_rate_bound) j["failure_rate_bound_95"] = *vr.failure_rate_bound;
    if (vr.counterexample) j["counterexample"] = *vr.counterexample;
    j["report"] = report_to_json(rep);
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("status   %s\n", to_string(vr.status));
    std::printf("checked  %llu\n", static_cast<unsigned long long>(vr.checked));
    if (vr.failure_rate_bound)
      std::printf("uncovered rate <= %.3g (95%% one-sided)\n", *vr.failure_rate_bound);
    if (vr.counterexample) {
      std::printf("counterexample  {");
      for (std::size_t i = 0; i < vr.counterexample->size(); ++i)
        std::printf("%s%d", i ? "," : "", (*vr.counterexample)[i]);
      std::printf("}\n");
    } else {
      print_report(rep);
    }
  }
  return vr.status == VerifyStatus::kCounterexample ? 2 : 0;
}

int run_constants(const ConstantsArgs& a) {
  if (a.R < 1) throw std::invalid_argument("--R must be >= 1");
  ConstantsReport rep = solve_c0(a.R, a.tol);
  if (a.json) {
    ojson j;
    j["R"] = rep.R;
    j["c0"] = rep.c0;
    j["beta0"] = rep.beta0;
    j["mu"] = rep.mu;
    j["residual"] = rep.residual;
    j["residual_rel"] = rep.residual_rel;
    j["feasible_general"] = rep.feasible_general;
    j["sandwich_lower"] = rep.sandwich_lower;
    j["sandwich_upper"] = rep.sandwich_upper;
    j["mu_cap"] = rep.mu_cap;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("R            %d\n", rep.R);
    std::printf("c0           %.12f\n", rep.c0);
    std::printf("beta0        %.12f\n", rep.beta0);
    std::printf("mu           %.12f\n", rep.mu);
    std::printf("residual     %.3g   (e^c0 - (c0+1)^{R+1})\n", rep.residual);
    std::printf("residual_rel %.3g\n", rep.residual_rel);
    std::printf("feasible     %s\n", rep.feasible_general ? "yes" : "no");
    if (a.R >= 3)
      std::printf("sandwich     [%.6f, %.6f]  mu_cap %.6f\n", rep.sandwich_lower,
                  rep.sandwich_upper, rep.mu_cap);
  }
  return 0;
}

int run_exact(const ExactArgs& a) {
  ExactResult er = solve_exact(a.n, a.s, a.r, a.budget);
  if (a.json) {
    ojson j;
    j["n"] = er.n;
    j["s"] = er.s;
    j["r"] = er.r;
    j["optimum"] = er.optimum;
    j["nodes_explored"] = er.nodes_explored;
    j["proof_of_optimality"] = er.proof_of_optimality;
    ojson edges = ojson::array();
    for (const auto& e : er.witness.edges()) edges.push_back(e);
    j["witness"] = edges;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("T(%d,%d,%d) = %llu\n", er.n, er.s, er.r,
                static_cast<unsigned long long>(er.optimum));
    std::printf("nodes    %llu\n", static_cast<unsigned long long>(er.nodes_explored));
    std::printf("optimal  %s\n", er.proof_of_optimality ? "proven" : "not proven");
    std::printf("witness  ");
    bool first = true;
    for (const auto& e : er.witness.edges()) {
      std::printf("%s{", first ? "" : " ");
      for (std::size_t i = 0; i < e.size(); ++i)
        std::printf("%s%d", i ? "," : "", e[i]);
      std::printf("}");
      first = false;
    }
    std::printf("\n");
  }
  return 0;
}

int run_table(const TableArgs& a) {
  ConstructionConfig cfg = resolve_config(a.R, a.lemma, a.preset, "", "", "", a.mode,
                                          a.seed, 64);
  BuildOptions bopts;
  bopts.threads = a.threads;
  TableOptions topts;
  topts.threads = a.threads;
  int n_min = a.n_min >= 0 ? a.n_min : a.r_min + 1;
  auto cells = bound_table(cfg, a.r_min, a.r_max, n_min, a.n_max, bopts, topts);
  if (a.json) {
    ojson rows = ojson::array();
    for (const auto& cell : cells) {
      ojson j;
      j["r"] = cell.r;
      j["n"] = cell.n;
      j["ok"] = cell.ok;
      if (!cell.error.empty()) {
        j["error"] = cell.error;
      } else {
        j["size"] = cell.size;
        j["ledger_bound"] = rat_to_fraction(cell.ledger_bound);
        j["normalized_trivial"] = rat_to_decimal(cell.report->normalized_trivial, 6);
        j["mu_norm"] = rat_to_decimal(cell.report->normalized_trivial, 6);
        j["status"] = cell.verify_status;
      }
      if (a.exact_compare) {
        try {
          if (binom64(cell.n, cell.r + a.R) <= 20000 && binom64(cell.n, cell.r) <= 20000)
            j["exact"] = solve_exact(cell.n, cell.r + a.R, cell.r, 2000000).optimum;
        } catch (const std::exception&) {
        }
      }
      rows.push_back(std::move(j));
    }
    std::printf("%s\n", rows.dump(2).c_str());
    return 0;
  }
  std::printf("r\tn\tsize\tledger_bound\tnormalized_trivial\tmu_norm\tstatus%s\n",
              a.exact_compare ? "\texact" : "");
  for (const auto& cell : cells) {
    if (!cell.error.empty()) {
      std::printf("%d\t%d\t-\t-\t-\t-\terror: %s", cell.r, cell.n, cell.error.c_str());
    } else {
      std::printf("%d\t%d\t%llu\t%s\t%s\t%s\t%s", cell.r, cell.n,
                  static_cast<unsigned long long>(cell.size),
                  rat_to_decimal(cell.ledger_bound, 3).c_str(),
                  rat_to_decimal(cell.report->normalized_trivial, 6).c_str(),
                  rat_to_decimal(cell.report->normalized_trivial, 6).c_str(),
                  cell.verify_status.c_str());
    }
    if (a.exact_compare) {
      std::string ex = "-";
      try {
        if (binom64(cell.n, cell.r + a.R) <= 20000 && binom64(cell.n, cell.r) <= 20000)
          ex = std::to_string(solve_exact(cell.n, cell.r + a.R, cell.r, 2000000).optimum);
      } catch (const std::exception&) {
      }
      std::printf("\t%s", ex.c_str());
    }
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turan: recursive randomized covering-system toolkit"};
  app.require_subcommand(1);

  ConstructArgs ca;
  CLI::App* c = app.add_subcommand("construct", "Build a covering system and write it");
  c->add_option("--n", ca.n, "ground set size")->required();
  c->add_option("--r", ca.r, "edge uniformity")->required();
  c->add_option("--R", ca.R, "gap s - r (default 1)");
  c->add_option("--beta", ca.beta, "split fraction (exact decimal)");
  c->add_option("--c", ca.c, "sampling constant (exact decimal)");
  c->add_option("--mu", ca.mu, "density target (exact decimal)");
  c->add_option("--lemma", ca.lemma, "split rule: main | general")
      ->check(CLI::IsMember({"main", "general"}));
  c->add_option("--mode", ca.mode, "random | derandomized")
      ->check(CLI::IsMember({"random", "derandomized"}));
  c->add_option("--preset", ca.preset, "all-r: the (0.784, 2.89, 6.239) constants");
  c->add_option("--seed", ca.seed, "random-mode seed");
  c->add_option("--max-resamples", ca.max_resamples, "random-mode retry cap");
  c->add_option("--threads", ca.threads, "worker threads (0 = auto)");
  c->add_option("--out", ca.out, "output path (default system_n<n>_r<r>.json)");
  c->add_flag("--json", ca.json, "machine-readable output");

  VerifyArgs va;
  CLI::App* v = app.add_subcommand("verify", "Check the covering property of a file");
  v->add_option("--in", va.in, "system file (JSON or plain text)")->required();
  v->add_option("--mode", va.mode, "full | sample")
      ->check(CLI::IsMember({"full", "sample"}));
  v->add_option("--samples", va.samples, "sample count (sample mode)");
  v->add_option("--budget", va.budget, "full-enumeration budget on C(n,s)");
  v->add_option("--seed", va.seed, "sampling seed");
  v->add_option("--s", va.s_override, "override subset size s");
  v->add_option("--threads", va.threads, "worker threads (0 = auto)");
  v->add_flag("--json", va.json, "machine-readable output");

  ConstantsArgs ka;
  CLI::App* k = app.add_subcommand("constants", "Optimal constants for a given gap");
  k->add_option("--R", ka.R, "gap (>= 1)");
  k->add_option("--tol", ka.tol, "bracket tolerance (default 1e-12)");
  k->add_flag("--json", ka.json, "machine-readable output");

  ExactArgs ea;
  CLI::App* e = app.add_subcommand("exact", "Exact minimum by branch-and-bound");
  e->add_option("--n", ea.n, "ground set size")->required();
  e->add_option("--s", ea.s, "subset size to cover")->required();
  e->add_option("--r", ea.r, "edge uniformity")->required();
  e->add_option("--budget", ea.budget, "node budget (default 1e8)");
  e->add_flag("--json", ea.json, "machine-readable output");

  TableArgs ta;
  CLI::App* t = app.add_subcommand("table", "Sweep (r, n) cells and report densities");
  t->add_option("--R", ta.R, "gap s - r (default 1)");
  t->add_option("--r-min", ta.r_min, "first uniformity")->required();
  t->add_option("--r-max", ta.r_max, "last uniformity")->required();
  t->add_option("--n-min", ta.n_min, "first ground size (default r-min + 1)");
  t->add_option("--n-max", ta.n_max, "last ground size")->required();
  t->add_option("--mode", ta.mode, "random | derandomized")
      ->check(CLI::IsMember({"random", "derandomized"}));
  t->add_option("--lemma", ta.lemma, "split rule: main | general")
      ->check(CLI::IsMember({"main", "general"}));
  t->add_option("--preset", ta.preset, "all-r: the (0.784, 2.89, 6.239) constants");
  t->add_option("--seed", ta.seed, "random-mode seed");
  t->add_flag("--exact-compare", ta.exact_compare, "add an exact-oracle column");
  t->add_option("--threads", ta.threads, "worker threads (0 = auto)");
  t->add_flag("--json", ta.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 3;
  }

  try {
    if (*c) return run_construct(ca);
    if (*v) return run_verify(va);
    if (*k) return run_constants(ka);
    if (*e) return run_exact(ea);
    if (*t) return run_table(ta);
  } catch (const SystemFileError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 3;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "usage error: %s\n", err.what());
    return 3;
  } catch (const InstanceTooLarge& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 4;
  } catch (const BudgetExhausted& err) {
    std::fprintf(stderr, "error: %s (best upper %llu, proven lower %llu)\n", err.what(),
                 static_cast<unsigned long long>(err.best_upper),
                 static_cast<unsigned long long>(err.proven_lower));
    return 4;
  } catch (const ConfigInfeasible& err) {
    std::fprintf(stderr, "infeasible: %s\n", err.what());
    return 1;
  } catch (const ResampleExhausted& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
