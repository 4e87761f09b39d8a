// Command-line front end: solve instances, run the exact oracle, generate
// instances, run benchmarks, run the reduced self-test suite.
//
// Exit codes: 0 success, 2 usage or parse/validation errors, 3 resource caps,
// 1 internal errors or self-test failure. Stdout carries only the
// machine-readable payload (JSON or CSV); diagnostics go to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssr/generators.hpp"
#include "ssr/io.hpp"
#include "ssr/reduction.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ssr::ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ssr::Instance load_instance(const std::string& path, double eps_flag, bool eps_flag_set) {
  ssr::ParsedInstance parsed = ssr::parse_instance_auto(read_input(path));
  double eps = eps_flag_set          ? eps_flag
               : parsed.epsilon      ? *parsed.epsilon
                                     : eps_flag;  // flag default
  return ssr::validate_instance(std::move(parsed.items), eps);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// solve / exact
// ---------------------------------------------------------------------------

int run_solve(const std::string& path, double eps, bool eps_set, int threads) {
  ssr::Instance inst = load_instance(path, eps, eps_set);
  ssr::SolveTrace trace;
  ssr::Solution sol = ssr::solve_ssr(inst, &trace, threads);
  emit(ssr::solve_result_json(inst, sol, trace));
  return kExitOk;
}

int run_exact(const std::string& path, double eps, bool eps_set, const std::string& variant,
              int cap) {
  ssr::Instance inst = load_instance(path, eps, eps_set);
  ssr::Solution sol =
      variant == "opt_l" ? ssr::brute_force_opt_l(inst, cap) : ssr::brute_force_opt(inst, cap);
  emit(ssr::exact_result_json(inst, sol, variant));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::string out = "-";
  std::string format = "text";
  bool epsilon_set = false;
  double epsilon = 0.1;
};

int write_instance(const ssr::Instance& inst, const GenOptions& opt, const std::string& name,
                   json meta_extra) {
  std::string payload;
  if (opt.format == "json") {
    json j;
    j["items"] = inst.items;
    if (opt.epsilon_set) j["epsilon"] = inst.epsilon;
    json meta = std::move(meta_extra);
    meta["generator"] = name;
    meta["algorithm"] = ssr::kGeneratorAlgorithm;
    j["meta"] = std::move(meta);
    payload = j.dump(2) + "\n";
  } else {
    payload = ssr::instance_to_text(inst.items);
  }
  if (opt.out == "-") {
    std::cout << payload;
  } else {
    std::ofstream out(opt.out);
    if (!out) throw ssr::ParseError("cannot open output file: " + opt.out);
    out << payload;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

std::uint64_t bench_seed(std::uint64_t base, std::size_t gen_idx, int n, int rep) {
  std::uint64_t s = base;
  s ^= 0x9e3779b97f4a7c15ull * (gen_idx + 1);
  s ^= 0xbf58476d1ce4e5b9ull * static_cast<std::uint64_t>(n);
  s ^= 0x94d049bb133111ebull * static_cast<std::uint64_t>(rep + 1);
  return s;
}

int run_bench(const std::vector<int>& n_list, const std::vector<double>& eps_list, int reps,
              std::uint64_t seed, std::vector<std::string> generators, int oracle_cap) {
  std::cout << "generator,n,epsilon,rep,wall_nanos,windows,branch_a,branch_b_pigeonhole,"
               "branch_b_geometric,ratio,oracle_ratio\n";
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const std::string& name = generators[g];
    for (int n : n_list) {
      for (double eps : eps_list) {
        for (int rep = 0; rep < reps; ++rep) {
          std::uint64_t s = bench_seed(seed, g, n, rep);
          ssr::Instance inst;
          if (name == "uniform") {
            inst = ssr::gen_uniform(n, 1.0, 1e6, s, eps);
          } else if (name == "paper") {
            inst = ssr::gen_paper_family(std::max(n, 3), eps);
          } else if (name == "geometric") {
            if (n > 600) {
              std::cerr << "bench: skipping geometric n=" << n
                        << " (progression exceeds double range)\n";
              continue;
            }
            inst = ssr::gen_geometric(n, 2.0, s, 0.01, eps);
          } else {
            throw CLI::ValidationError("--generators", "unknown generator '" + name + "'");
          }
          ssr::SolveTrace trace;
          auto t0 = std::chrono::steady_clock::now();
          ssr::Solution sol = ssr::solve_ssr(inst, &trace);
          auto t1 = std::chrono::steady_clock::now();
          auto nanos = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
          int windows = 0, a = 0, bp = 0, bg = 0;
          for (const auto& w : trace.windows) {
            if (w.lo == 0) continue;
            ++windows;
            if (w.path == ssr::SsrlPath::kGeometricA) ++a;
            if (w.path == ssr::SsrlPath::kPigeonhole) ++bp;
            if (w.path == ssr::SsrlPath::kGeometricBFallback) ++bg;
          }
          std::string oracle;
          if (inst.size() <= oracle_cap) {
            oracle = ssr::format_item(ssr::brute_force_opt(inst, oracle_cap).ratio.value());
          }
          std::cout << name << ',' << inst.size() << ',' << ssr::format_item(eps) << ',' << rep
                    << ',' << nanos << ',' << windows << ',' << a << ',' << bp << ',' << bg << ','
                    << ssr::format_item(sol.ratio.value()) << ',' << oracle << "\n";
        }
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest: reduced-scale oracle equivalence and invariant suites
// ---------------------------------------------------------------------------

struct Suite {
  std::string name;
  int checks = 0;
  int failures = 0;
  void check(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
};

Suite selftest_solver_guarantees() {
  Suite s{"solver_guarantees"};
  std::mt19937_64 rng(101);
  for (double eps : {0.5, 0.1}) {
    for (int trial = 0; trial < 60; ++trial) {
      int n = 2 + static_cast<int>(rng() % 8);
      std::vector<double> items;
      for (int i = 0; i < n; ++i) items.push_back(1.0 + static_cast<double>(rng() % 500));
      ssr::Instance inst = ssr::validate_instance(items, eps);
      double opt = ssr::brute_force_opt(inst).ratio.value();
      double opt_l = ssr::brute_force_opt_l(inst).ratio.value();
      s.check(ssr::solve_ssr(inst).ratio.value() <= (1 + eps) * opt * (1 + 1e-9));
      s.check(ssr::solve_ssrl(inst).ratio.value() <= (1 + eps) * opt_l * (1 + 1e-9));
      double root = ssr::sqrt2_approx(inst).ratio.value();
      s.check(root <= std::max(std::sqrt(2.0), opt_l) + 1e-9);
    }
  }
  return s;
}

Suite selftest_geometry() {
  Suite s{"geometry_vs_bruteforce"};
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 120; ++trial) {
    auto draw = [&](bool diag) {
      int n = 1 + static_cast<int>(rng() % 25);
      std::vector<ssr::GridPoint> pts(static_cast<std::size_t>(n));
      for (auto& p : pts) {
        p.x = static_cast<std::int64_t>(rng() % 201) - 100;
        p.y = diag ? std::abs(p.x) + static_cast<std::int64_t>(rng() % 101)
                   : static_cast<std::int64_t>(rng() % 201) - 100;
      }
      return pts;
    };
    auto P = draw(false), Q = draw(false);
    ssr::Rat expect = ssr::Rat::neg_infinity();
    for (auto& p : P) {
      for (auto& q : Q) {
        ssr::Rat r = p.x == q.x ? ssr::Rat::pos_infinity()
                                : ssr::Rat::finite(q.y - p.y, std::abs(q.x - p.x));
        if (expect < r) expect = r;
      }
    }
    s.check(ssr::max_abs_slope(P, Q).value == expect);

    auto Pd = draw(true), Qd = draw(true);
    ssr::Rat best = ssr::Rat::pos_infinity();
    for (auto& p : Pd) {
      for (auto& q : Qd) {
        std::int64_t sum = p.y + q.y, d = std::abs(p.x + q.x);
        ssr::Rat r = sum - d == 0 ? ssr::Rat::pos_infinity() : ssr::Rat::finite(sum + d, sum - d);
        if (r < best) best = r;
      }
    }
    s.check(ssr::min_pair_ratio(Pd, Qd).value == best);
  }
  return s;
}

Suite selftest_pigeonhole() {
  Suite s{"pigeonhole"};
  std::mt19937_64 rng(103);
  int done = 0;
  while (done < 60) {
    int n = 5 + static_cast<int>(rng() % 8);
    std::vector<std::int64_t> items(static_cast<std::size_t>(n));
    for (auto& v : items) v = 1 + static_cast<std::int64_t>(rng() % 40);
    std::int64_t total = 0;
    for (auto v : items) total += v;
    if (!(std::pow(2.0, n) > static_cast<double>(total) + 1.0)) continue;
    auto pair = ssr::equal_sum_pair(items);
    s.check(pair.has_value());
    if (pair) {
      std::int64_t sx = 0, sy = 0;
      for (int i : pair->x_indices) sx += items[static_cast<std::size_t>(i)];
      for (int i : pair->y_indices) sy += items[static_cast<std::size_t>(i)];
      s.check(sx == sy && sx > 0);
    }
    ++done;
  }
  return s;
}

Suite selftest_points() {
  Suite s{"point_sets"};
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    std::vector<std::int64_t> items(static_cast<std::size_t>(n));
    for (auto& v : items) v = 1 + static_cast<std::int64_t>(rng() % 20);
    // Exhaustive 3^n enumeration with domination pruning.
    std::map<std::int64_t, std::int64_t> best;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    for (;;) {
      std::int64_t sx = 0, sy = 0;
      for (int i = 0; i < n; ++i) {
        if (assign[static_cast<std::size_t>(i)] == 1) sx += items[static_cast<std::size_t>(i)];
        if (assign[static_cast<std::size_t>(i)] == 2) sy += items[static_cast<std::size_t>(i)];
      }
      auto [it, ins] = best.try_emplace(sx - sy, sx + sy);
      if (!ins && sx + sy > it->second) it->second = sx + sy;
      int i = 0;
      while (i < n && assign[static_cast<std::size_t>(i)] == 2) {
        assign[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == n) break;
      ++assign[static_cast<std::size_t>(i)];
    }
    std::vector<ssr::GridPoint> expect;
    for (auto [x, y] : best) expect.push_back({x, y});
    s.check(ssr::gen_points(items, ssr::PointVariant::kAll).points() == expect);
  }
  return s;
}

Suite selftest_rounding() {
  Suite s{"rounding_transfers"};
  std::mt19937_64 rng(105);
  int done = 0;
  while (done < 60) {
    int n = 4 + static_cast<int>(rng() % 5);
    std::vector<double> items;
    for (int i = 0; i < n; ++i) items.push_back(1.0 + static_cast<double>(rng() % 300));
    ssr::Instance inst = ssr::validate_instance(items, 0.5);
    double opt_l = ssr::brute_force_opt_l(inst).ratio.value();
    if (opt_l > 2.0) continue;
    double eps = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
    double delta = eps / (9.0 * n) * inst.max_item() * 0.8;
    ssr::GridInstance g = ssr::round_up(inst, delta);
    ssr::MitmResult m = ssr::generalized_mitm({}, g.units);
    try {
      s.check(ssr::check_rounding_two(g, m.x_indices, m.y_indices, eps, opt_l).pass);
    } catch (const ssr::PreconditionError&) {
      s.check(false);
    }
    ++done;
  }
  return s;
}

int run_selftest(bool inject_fault) {
  std::vector<Suite> suites = {
      selftest_solver_guarantees(), selftest_geometry(), selftest_pigeonhole(),
      selftest_points(), selftest_rounding(),
  };
  if (inject_fault) {
    Suite fault{"fault_injection_hook"};
    fault.check(false);
    suites.push_back(fault);
  }
  json out;
  out["suites"] = json::array();
  bool ok = true;
  for (const Suite& s : suites) {
    out["suites"].push_back({{"name", s.name}, {"checks", s.checks}, {"failures", s.failures}});
    ok &= s.failures == 0;
    std::cerr << "selftest: " << s.name << " " << (s.checks - s.failures) << "/" << s.checks
              << " ok\n";
  }
  out["ok"] = ok;
  emit(out);
  return ok ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset Sum Ratio approximation toolkit"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Approximate SSR on an instance file (or - for stdin)");
  std::string solve_path = "-";
  double solve_eps = 0.1;
  int solve_threads = 1;
  solve->add_option("path", solve_path, "instance file, or - for stdin");
  auto* solve_eps_opt = solve->add_option("--epsilon", solve_eps, "approximation parameter in (0,1)");
  solve->add_option("--threads", solve_threads, "window-level parallelism")->default_val(1);

  // exact
  auto* exact = app.add_subcommand("exact", "Exhaustive oracle (small instances only)");
  std::string exact_path = "-";
  std::string exact_variant = "opt";
  int exact_cap = ssr::kOracleCapDefault;
  double exact_eps = 0.1;
  exact->add_option("path", exact_path, "instance file, or - for stdin");
  exact->add_option("--variant", exact_variant, "opt or opt_l")
      ->check(CLI::IsMember({"opt", "opt_l"}));
  exact->add_option("--cap", exact_cap, "max instance size for the 3^n enumeration");
  auto* exact_eps_opt = exact->add_option("--epsilon", exact_eps, "epsilon recorded on the instance");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  GenOptions gen_opt;
  int gen_n = 8;
  std::uint64_t gen_seed = 1;
  double gen_lo = 1.0, gen_hi = 1e6, gen_base = 2.0, gen_jitter = 0.01;
  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--n", gen_n, "number of items")->required();
    sub->add_option("--out", gen_opt.out, "output path, or - for stdout");
    sub->add_option("--format", gen_opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--epsilon", gen_opt.epsilon, "epsilon to embed (json format only)")
        ->each([&](const std::string&) { gen_opt.epsilon_set = true; });
    if (with_seed) sub->add_option("--seed", gen_seed, "PRNG seed");
  };
  auto* gen_uni = gen->add_subcommand("uniform", "uniform reals on [lo, hi]");
  add_common(gen_uni, true);
  gen_uni->add_option("--lo", gen_lo, "lower bound");
  gen_uni->add_option("--hi", gen_hi, "upper bound");
  auto* gen_paper = gen->add_subcommand("paper", "1..n-1 plus n(n-1)/2");
  add_common(gen_paper, false);
  auto* gen_geo = gen->add_subcommand("geometric", "base^0..base^(n-1) with jitter");
  add_common(gen_geo, true);
  gen_geo->add_option("--base", gen_base, "progression base > 1");
  gen_geo->add_option("--jitter", gen_jitter, "multiplicative jitter in [0, 0.5)");

  // bench
  auto* bench = app.add_subcommand("bench", "CSV benchmark harness");
  std::vector<int> bench_n = {8, 10, 12};
  std::vector<double> bench_eps = {0.5, 0.1};
  int bench_reps = 3;
  std::uint64_t bench_seed_v = 1;
  std::vector<std::string> bench_gens = {"uniform", "geometric", "paper"};
  int bench_cap = ssr::kOracleCapDefault;
  bench->add_option("--n-list", bench_n, "instance sizes");
  bench->add_option("--eps-list", bench_eps, "epsilon values");
  bench->add_option("--reps", bench_reps, "repetitions per configuration");
  bench->add_option("--seed", bench_seed_v, "base seed");
  bench->add_option("--generators", bench_gens, "subset of uniform, geometric, paper");
  bench->add_option("--oracle-cap", bench_cap, "skip oracle column above this size");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "reduced oracle-equivalence suites");
  bool inject_fault = false;
  selftest->add_flag("--inject-fault", inject_fault, "force one failing check (test hook)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_path, solve_eps, solve_eps_opt->count() > 0, solve_threads);
    if (*exact) {
      return run_exact(exact_path, exact_eps, exact_eps_opt->count() > 0, exact_variant,
                       exact_cap);
    }
    if (*gen) {
      if (*gen_uni) {
        return write_instance(
            ssr::gen_uniform(gen_n, gen_lo, gen_hi, gen_seed,
                             gen_opt.epsilon_set ? gen_opt.epsilon : 0.1),
            gen_opt, "uniform",
            json{{"seed", gen_seed}, {"lo", gen_lo}, {"hi", gen_hi}, {"n", gen_n}});
      }
      if (*gen_paper) {
        return write_instance(
            ssr::gen_paper_family(gen_n, gen_opt.epsilon_set ? gen_opt.epsilon : 0.1), gen_opt,
            "paper", json{{"n", gen_n}});
      }
      return write_instance(
          ssr::gen_geometric(gen_n, gen_base, gen_seed, gen_jitter,
                             gen_opt.epsilon_set ? gen_opt.epsilon : 0.1),
          gen_opt, "geometric",
          json{{"seed", gen_seed}, {"base", gen_base}, {"jitter", gen_jitter}, {"n", gen_n}});
    }
    if (*bench) {
      return run_bench(bench_n, bench_eps, bench_reps, bench_seed_v, bench_gens, bench_cap);
    }
    if (*selftest) return run_selftest(inject_fault);
  } catch (const ssr::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ssr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ssr::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
