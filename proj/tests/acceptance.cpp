// Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.
//
// usage: acceptance <path to anfkit binary>

#include <sys/wait.h>

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anfkit/error.hpp"
#include "anfkit/experiments.hpp"
#include "anfkit/generators.hpp"
#include "anfkit/io.hpp"
#include "anfkit/pipeline.hpp"
#include "anfkit/quadratic.hpp"
#include "anfkit/restriction.hpp"
#include "oracles.hpp"

using namespace anfkit;

namespace {

std::string g_cli;

// Collects the first failure message; later checks are still evaluated.
struct Check {
  std::string failure;

  void expect(bool cond, const std::string& what) {
    if (!cond && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Check&)> body;
};

Anf random_quadratic(std::size_t n, Rng& rng) {
  std::vector<std::vector<std::size_t>> ms;
  if (rng.bernoulli(0.5)) ms.push_back({});
  const double density = rng.uniform01();
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(0.5)) ms.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(density)) ms.push_back({i, j});
    }
  }
  return Anf::from_index_sets(n, ms);
}

Anf random_small(std::size_t n, Rng& rng) {
  std::vector<BitVec> ms;
  const double density = 0.05 + 0.5 * rng.uniform01();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (rng.bernoulli(density)) ms.push_back(BitVec::from_word(m, n));
  }
  return Anf::from_monomials(n, ms);
}

std::string run_cli(const std::string& args, int* status = nullptr) {
  const std::string cmd = "'" + g_cli + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int rc = pclose(pipe);
  if (status) *status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

// 1
void moebius_round_trip(Check& c) {
  Rng rng(1001);
  for (std::size_t n = 1; n <= 10; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      TruthTable t(n);
      for (std::uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bernoulli(0.5));
      const Anf f = truth_table_to_anf(t);
      c.expect(anf_to_truth_table(f) == t, "round trip differs at n=" + std::to_string(n));
      for (std::uint64_t x = 0; x < t.size(); ++x) {
        c.expect(evaluate(f, BitVec::from_word(x, n)) == t.get(x), "pointwise mismatch at n=" + std::to_string(n));
      }
    }
  }
}

// 2
void six_variable_cubic(Check& c) {
  const Anf f = prop6_base();
  const auto s = greedy_restrict(f, StopRule::until_no_crucial());
  c.expect(s.trace.size() == 2, "greedy took " + std::to_string(s.trace.size()) + " steps");
  c.expect(s.current.is_zero(), "residual is not the zero polynomial");
  const auto h = exhaustive_hitting_set(f, 6);
  c.expect(h && h->size() == 2, "hitting set optimum is not 2");
  for (auto o : occurrence_counts(f, BitVec::from_string("111111"))) c.expect(o == 2, "occurrence count != 2");
}

// 3
void third_rule_block_sums(Check& c) {
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto s = greedy_restrict(prop6_family(m), StopRule::until_third_of_alive());
    const std::string tag = " for m=" + std::to_string(m);
    c.expect(s.trace.size() == 6 * m, "steps " + std::to_string(s.trace.size()) + tag);
    c.expect(s.alive_count() == 24 * m, "alive " + std::to_string(s.alive_count()) + tag);
    c.expect(crucial_count(s.current) == 8 * m, "crucial " + std::to_string(crucial_count(s.current)) + tag);
  }
}

// 4
void trace_invariants(Check& c) {
  Rng rng(1004);
  for (int trial = 0; trial < 200; ++trial) {
    Anf f;
    if (trial % 2 == 0) {
      f = random_degree3_half(3 + rng.below(12), rng.next_u64());
    } else {
      const Degree3SamplerConfig cfg{8 + rng.below(57), 2.0 + rng.uniform01(), rng.bernoulli(0.5) ? 0.5 : 1.0,
                                     rng.next_u64()};
      f = random_degree3_sparse(cfg);
    }
    const std::size_t n = f.num_vars();
    const double t0 = static_cast<double>(crucial_count(f));
    const auto s = greedy_restrict(f, StopRule::until_no_crucial());
    auto decay_ok = [&](std::size_t k, std::size_t crucial) {
      const double r = static_cast<double>(n - k) / static_cast<double>(n);
      // Counts are integers; the bound is compared with a rounding guard only.
      return static_cast<double>(crucial) <= t0 * r * r * r + 1e-9;
    };
    for (std::size_t k = 0; k < s.trace.size(); ++k) {
      const auto& step = s.trace[k];
      const std::size_t alive = n - k;
      c.expect(step.occ >= (3 * step.crucial_before + alive - 1) / alive, "occurrence bound violated");
      c.expect(decay_ok(k, step.crucial_before), "decay bound violated");
    }
    c.expect(decay_ok(s.trace.size(), crucial_count(s.current)), "decay bound violated at the end");
  }
}

// 5
void dickson_recomposition(Check& c) {
  Rng rng(1005);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    const Anf f = random_quadratic(n, rng);
    const auto d = dickson_decompose(f);
    c.expect(compose_affine(canonical_anf(d, n), d.map) == f, "recomposition differs");
    for (int k = 0; k < 5; ++k) {
      const Anf g = compose_affine(f, AffineMap::random(n, rng));
      c.expect(dickson_decompose(g).t == d.t, "t changed under an affine bijection");
    }
  }
}

// 6
void end_to_end(Check& c) {
  Rng rng(1006);
  for (std::size_t n : {16u, 32u, 64u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Anf g = random_degree3_sparse({n, 2.0, 0.5, rng.next_u64()});
      c.expect(crucial_count(g) <= n * n, "sample exceeds n^2 crucial terms");
      const FlatReport r = find_constant_flat(FunctionInput(g), 1.0);
      const std::size_t dim = r.flat.dimension();
      if (dim <= kMaxFlatDimension) {
        c.expect(r.verification.exhaustive && r.verification.kind == Verdict::Kind::Constant,
                 "flat not verified exhaustively");
      } else {
        c.expect(r.verification.ok(), "sampled verification failed");
      }
      c.expect(static_cast<double>(dim) >= guaranteed_dimension(n, 1.0), "dimension below the guarantee");
      const std::size_t accounted =
          n - r.trace.size() - r.dickson.t / 2 - (r.dickson.type == FormType::II ? 1 : 0);
      c.expect(dim == accounted, "dimension accounting differs");
    }
  }
}

// 7
void oracle_consistency(Check& c) {
  Rng rng(1007);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const Anf f = random_small(n, rng);
    const auto flat = find_constant_flat(FunctionInput(f));
    c.expect(flat.flat.dimension() <= brute_force_normality(f, 8, 4).normality, "pipeline beats normality");
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t lin = 1; lin < (std::uint64_t{1} << n); ++lin) {
      for (bool one : {false, true}) {
        std::vector<BitVec> ms;
        if (one) ms.emplace_back(n);
        for (std::size_t j = 0; j < n; ++j) {
          if ((lin >> j) & 1u) ms.push_back(BitVec::unit(n, j));
        }
        const Anf f = Anf::from_monomials(n, ms);
        c.expect(brute_force_normality(f).normality == n - 1, "affine normality != n-1");
        if (n <= 3) c.expect(brute_force_thickness(f) == 1, "affine thickness != 1");
      }
    }
  }
  c.expect(brute_force_thickness(parse_anf("x1*x2 + x1", 2)) == 1, "thickness of x1*x2 + x1 != 1");
}

// 8
void sampler_statistics(Check& c) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SamplerStats;
  cfg.n = 20;
  cfg.s = 2.5;
  cfg.trials = 2000;
  cfg.master_seed = 8;
  cfg.threads = 4;
  const auto sparse = run_experiment(cfg);
  const double p = 1.0 / (2.0 * std::sqrt(20.0));
  c.expect(std::abs(sparse.sampler.expected_mean - p * 1140.0) < 1e-9, "expected mean differs from p*C(20,3)");
  c.expect(sparse.sampler.within_4sigma, "sparse sampler mean outside 4 sigma");
  cfg.n = 10;
  cfg.sampler = SamplerKind::Half;
  const auto half = run_experiment(cfg);
  c.expect(half.sampler.expected_mean == 60.0, "expected mean differs from 60");
  c.expect(half.sampler.within_4sigma, "half sampler mean outside 4 sigma");
}

// 9
void disclosure(Check& c) {
  for (auto kind : {ExperimentKind::DisperserFlats, ExperimentKind::DisperserZeroRestrictions,
                    ExperimentKind::SamplerStats}) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.n = 12;
    cfg.trials = 2;
    cfg.k = 3;
    c.expect(experiment_report_to_json(run_experiment(cfg))["asymptotic_claim"] == true,
             "report lacks asymptotic_claim");
  }
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::DisperserFlats;
  cfg.n = 12;
  cfg.s = 2.5;
  cfg.k = 3;
  cfg.trials = 500;
  cfg.per_trial = 50;
  cfg.master_seed = 9;
  cfg.threads = 4;
  const auto report = run_experiment(cfg);
  const Json j = experiment_report_to_json(report);
  c.expect(j.contains("rate") && j.contains("wilson95") && j["samples"] == 25000, "disperser report incomplete");
  const Interval ci = wilson_interval(report.total_hits, report.total_samples);
  c.expect(ci.lo <= report.rate && report.rate <= ci.hi, "rate outside its interval");
  cfg.threads = 1;
  c.expect(experiment_report_to_json(run_experiment(cfg)).dump() == j.dump(), "report not byte-stable");
  std::cout << "     disperser n=12 k=3: constancy rate " << report.rate << " in [" << ci.lo << ", " << ci.hi
            << "] over " << report.total_samples << " flats\n";
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<int> t(std::size_t{1} << n);
    for (oracle::Mask x = 0; x < t.size(); ++x) t[x] = 2 * std::popcount(x) >= static_cast<int>(n);
    c.expect(sparsity(majority(n)) == oracle::anf_from_table(t).size(),
             "majority sparsity differs at n=" + std::to_string(n));
  }
}

// 10
void determinism(Check& c) {
  int rc = 0;
  auto same = [&](const std::string& a, const std::string& b, const std::string& what) {
    const std::string x = run_cli(a, &rc);
    c.expect(rc == 0, what + ": exit " + std::to_string(rc));
    c.expect(!x.empty() && x == run_cli(b), what + " differs on rerun");
  };
  same("gen rand3-sparse --n 20 --s 2.5 --seed 7", "gen rand3-sparse --n 20 --s 2.5 --seed 0x7", "gen rand3-sparse");
  same("gen rand3-half --n 12 --seed 11 --json", "gen rand3-half --n 12 --seed 11 --json", "gen rand3-half");

  // Unseeded runs print their seed; feeding it back reproduces the output.
  const std::string fresh = run_cli("gen rand3-half --n 10");
  const auto nl = fresh.find('\n');
  const std::string seed_line = fresh.substr(0, nl);
  c.expect(seed_line.rfind("seed: ", 0) == 0, "no seed printed");
  const std::string seed = seed_line.substr(6);
  c.expect(run_cli("gen rand3-half --n 10 --seed " + seed) == fresh.substr(nl + 1), "printed seed does not reproduce");

  for (const char* kind : {"disperser-flats --k 3 --per-trial 20", "disperser-zero --per-trial 20", "sampler-stats"}) {
    const std::string base = std::string("experiment ") + kind + " --n 14 --trials 60 --seed 42 --json";
    const std::string one = run_cli(base + " --threads 1");
    for (const char* t : {" --threads 2", " --threads 5", " --threads 8"}) {
      c.expect(one == run_cli(base + t), std::string(kind) + " differs across thread counts");
    }
  }

  const std::string fn = run_cli("gen rand3-sparse --n 40 --s 2.2 --seed 3 --json");
  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/anfkit-acceptance.json";
  if (FILE* out = std::fopen(path.c_str(), "w")) {
    std::fputs(fn.c_str(), out);
    std::fclose(out);
  }
  same("find-flat " + path + " --json --samples 64 --seed 5", "find-flat " + path + " --json --samples 64 --seed 0x5",
       "find-flat");
  std::remove(path.c_str());
  if (FILE* out = std::fopen(path.c_str(), "w")) {
    std::fputs("x1*x2*x3 + x4*x5 + x6", out);
    std::fclose(out);
  }
  same("oracle normality " + path + " --threads 1 --json", "oracle normality " + path + " --threads 6 --json",
       "oracle normality");
  std::remove(path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <anfkit binary>\n";
    return 2;
  }
  g_cli = argv[1];

  const std::vector<Criterion> criteria = {
      {1, "moebius round trip", 10, moebius_round_trip},
      {2, "six-variable cubic: greedy, hitting set, occurrences", 1, six_variable_cubic},
      {3, "third-of-alive rule on block sums", 5, third_rule_block_sums},
      {4, "greedy occurrence and decay bounds", 60, trace_invariants},
      {5, "quadratic recomposition and rank invariance", 60, dickson_recomposition},
      {6, "end-to-end constant flats at n = 16, 32, 64", 120, end_to_end},
      {7, "pipeline vs exact oracles at small n", 300, oracle_consistency},
      {8, "sampler statistics", 30, sampler_statistics},
      {9, "asymptotic claims disclosed, desk-scale substitutes", 60, disclosure},
      {10, "seeded determinism across reruns and thread counts", 60, determinism},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) check.expect(false, "time limit exceeded");
    const bool pass = check.ok();
    failed += !pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS" : "FAIL") << ' ' << cr.id << ". " << cr.name << " (" << secs << " s, limit "
         << cr.limit_seconds << " s)";
    if (!pass) line << ": " << check.failure;
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
