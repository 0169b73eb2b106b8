#include "anfkit/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "anfkit/error.hpp"
#include "anfkit/generators.hpp"

namespace anfkit {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DisperserFlats: return "disperser-flats";
    case ExperimentKind::DisperserZeroRestrictions: return "disperser-zero";
    case ExperimentKind::SamplerStats: return "sampler-stats";
  }
  return "unknown";
}

const char* to_string(SamplerKind kind) { return kind == SamplerKind::Half ? "half" : "sparse"; }

double ExperimentConfig::resolved_multiplier() const {
  if (multiplier) return *multiplier;
  return kind == ExperimentKind::DisperserZeroRestrictions ? 1.0 : 0.5;
}

double ExperimentConfig::probability() const {
  if (sampler == SamplerKind::Half) return 0.5;
  return Degree3SamplerConfig{n, s, resolved_multiplier(), 0}.probability();
}

std::size_t ExperimentConfig::resolved_k() const {
  if (k) return *k;
  const double nd = static_cast<double>(n);
  double dim = 0;
  if (kind == ExperimentKind::DisperserFlats) {
    dim = flat_constant * std::pow(nd, 2.0 - s / 2.0);
  } else if (kind == ExperimentKind::DisperserZeroRestrictions) {
    dim = restriction_constant * std::sqrt(std::log(nd)) * std::pow(nd, (3.0 - s) / 2.0);
  }
  return std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(std::max(0.0, dim))));
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
  if (sampler == SamplerKind::Sparse) {
    Degree3SamplerConfig{n, s, resolved_multiplier(), 0}.validate();
  } else if (n == 0) {
    throw Error(ErrorCode::InvalidConfig, "n must be positive");
  }
  if (kind != ExperimentKind::SamplerStats) {
    const std::size_t dim = resolved_k();
    if (dim > n) throw Error(ErrorCode::InvalidConfig, "k exceeds n");
    if (kind == ExperimentKind::DisperserFlats && dim > kMaxFlatDimension) {
      throw Error(ErrorCode::InvalidConfig, "flat dimension above 20 cannot be checked exhaustively");
    }
    if (per_trial == 0) throw Error(ErrorCode::InvalidConfig, "need at least one sample per trial");
  }
}

Interval wilson_interval(std::size_t successes, std::size_t total, double z) {
  if (total == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(total);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return stable_hash(master_seed, trial);
}

Flat sample_flat(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw Error(ErrorCode::InvalidConfig, "flat dimension exceeds n");
  std::vector<BitVec> basis;
  while (basis.size() < k) {
    basis.push_back(BitVec::random(n, rng));
    if (rank(basis) < basis.size()) basis.pop_back();
  }
  BitVec offset = BitVec::random(n, rng);
  return Flat(std::move(offset), std::move(basis));
}

std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> items(n);
  std::iota(items.begin(), items.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  std::sort(items.begin(), items.end());
  return items;
}

bool is_constant_on(const Anf& f, const Flat& flat) {
  const AnfEvaluator eval(f);
  const std::size_t k = flat.dimension();
  const std::uint64_t total = std::uint64_t{1} << k;
  if (f.num_vars() <= 64) {
    std::uint64_t cur = flat.offset().to_word();
    const bool v0 = eval(cur);
    for (std::uint64_t i = 1; i < total; ++i) {
      cur ^= flat.basis()[static_cast<std::size_t>(std::countr_zero(i))].to_word();
      if (eval(cur) != v0) return false;
    }
    return true;
  }
  BitVec cur = flat.offset();
  const bool v0 = eval(cur);
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= flat.basis()[static_cast<std::size_t>(std::countr_zero(i))];
    if (eval(cur) != v0) return false;
  }
  return true;
}

namespace {

Anf sample_function(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.sampler == SamplerKind::Half) return random_degree3_half(cfg.n, seed);
  return random_degree3_sparse({cfg.n, cfg.s, cfg.resolved_multiplier(), seed});
}

// Stream for the flats/subsets of a trial, distinct from the sampler's stream.
Rng trial_rng(std::uint64_t seed) { return Rng(splitmix64(seed ^ 0xa5a5a5a5a5a5a5a5ULL)); }

ExperimentReport run_trials(const ExperimentConfig& cfg,
                            const std::function<TrialOutcome(std::uint64_t)>& trial) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = cfg;
  report.probability = cfg.probability();
  report.k = cfg.kind == ExperimentKind::SamplerStats ? 0 : cfg.resolved_k();
  report.trials.resize(cfg.trials);

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(cfg.threads, 1, cfg.trials));
  auto worker = [&](unsigned id) {
    const std::size_t lo = cfg.trials * id / threads;
    const std::size_t hi = cfg.trials * (id + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) report.trials[i] = trial(trial_seed(cfg.master_seed, i));
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }

  for (const auto& t : report.trials) {
    report.total_hits += t.hits;
    report.total_samples += t.samples;
  }
  if (report.total_samples > 0) {
    report.rate = static_cast<double>(report.total_hits) / static_cast<double>(report.total_samples);
    report.ci = wilson_interval(report.total_hits, report.total_samples);
  }

  SamplerSummary& sum = report.sampler;
  const double trials = static_cast<double>(cfg.trials);
  const double c3 = static_cast<double>(cfg.n) * static_cast<double>(cfg.n - 1) *
                    static_cast<double>(cfg.n >= 2 ? cfg.n - 2 : 0) / 6.0;
  double total = 0;
  for (const auto& t : report.trials) total += static_cast<double>(t.sparsity);
  sum.mean = total / trials;
  double sq = 0;
  for (const auto& t : report.trials) sq += std::pow(static_cast<double>(t.sparsity) - sum.mean, 2);
  sum.variance = cfg.trials > 1 ? sq / (trials - 1.0) : 0.0;
  const double p = report.probability;
  sum.expected_mean = p * c3;
  sum.sigma_of_mean = std::sqrt(c3 * p * (1.0 - p) / trials);
  const double dev = std::abs(sum.mean - sum.expected_mean);
  sum.deviation_sigmas = sum.sigma_of_mean > 0 ? dev / sum.sigma_of_mean : (dev == 0 ? 0.0 : INFINITY);
  sum.within_4sigma = dev <= 4.0 * sum.sigma_of_mean;
  const double limit = std::pow(static_cast<double>(cfg.n), cfg.s);
  sum.above_n_pow_s = static_cast<std::size_t>(std::count_if(
      report.trials.begin(), report.trials.end(),
      [&](const TrialOutcome& t) { return static_cast<double>(t.sparsity) > limit; }));
  sum.tail_rate = static_cast<double>(sum.above_n_pow_s) / trials;

  report.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentConfig with_kind(ExperimentConfig cfg, ExperimentKind kind) {
  cfg.kind = kind;
  return cfg;
}

}  // namespace

ExperimentReport run_disperser_flats(const ExperimentConfig& config) {
  const ExperimentConfig cfg = with_kind(config, ExperimentKind::DisperserFlats);
  const std::size_t k = cfg.resolved_k();
  return run_trials(cfg, [&](std::uint64_t seed) {
    const Anf f = sample_function(cfg, seed);
    Rng rng = trial_rng(seed);
    TrialOutcome out{seed, sparsity(f), 0, cfg.per_trial};
    for (std::size_t j = 0; j < cfg.per_trial; ++j) {
      if (is_constant_on(f, sample_flat(cfg.n, k, rng))) ++out.hits;
    }
    return out;
  });
}

ExperimentReport run_disperser_zero_restrictions(const ExperimentConfig& config) {
  const ExperimentConfig cfg = with_kind(config, ExperimentKind::DisperserZeroRestrictions);
  const std::size_t k = cfg.resolved_k();
  return run_trials(cfg, [&](std::uint64_t seed) {
    const Anf f = sample_function(cfg, seed);
    Rng rng = trial_rng(seed);
    TrialOutcome out{seed, sparsity(f), 0, cfg.per_trial};
    for (std::size_t j = 0; j < cfg.per_trial; ++j) {
      BitVec kept(cfg.n);
      for (auto v : sample_subset(cfg.n, k, rng)) kept.set(v);
      const bool cubic_survives = std::any_of(f.terms().begin(), f.terms().end(), [&](const BitVec& m) {
        return m.popcount() >= 3 && kept.contains(m);
      });
      if (!cubic_survives) ++out.hits;
    }
    return out;
  });
}

ExperimentReport run_sampler_stats(const ExperimentConfig& config) {
  const ExperimentConfig cfg = with_kind(config, ExperimentKind::SamplerStats);
  return run_trials(cfg, [&](std::uint64_t seed) {
    return TrialOutcome{seed, sparsity(sample_function(cfg, seed)), 0, 0};
  });
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::DisperserFlats: return run_disperser_flats(cfg);
    case ExperimentKind::DisperserZeroRestrictions: return run_disperser_zero_restrictions(cfg);
    case ExperimentKind::SamplerStats: return run_sampler_stats(cfg);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown experiment kind");
}

}  // namespace anfkit
