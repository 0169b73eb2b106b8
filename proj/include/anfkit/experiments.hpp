#pragma once

// Seeded Monte-Carlo harness for random cubic functions. The asymptotic
// statements these runs relate to cannot be checked at this scale; reports
// only record empirical rates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "anfkit/anf.hpp"
#include "anfkit/flat.hpp"
#include "anfkit/rng.hpp"

namespace anfkit {

enum class ExperimentKind { DisperserFlats, DisperserZeroRestrictions, SamplerStats };
enum class SamplerKind { Sparse, Half };

const char* to_string(ExperimentKind kind);
const char* to_string(SamplerKind kind);

inline constexpr double kFlatDimensionConstant = 6.12;
inline constexpr double kRestrictionDimensionConstant = 3.0;
inline constexpr std::size_t kMaxFlatDimension = 20;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SamplerStats;
  std::size_t n = 12;
  double s = 2.5;
  // Defaults to 1/2 for flats and sampler statistics, 1 for zero restrictions.
  std::optional<double> multiplier;
  SamplerKind sampler = SamplerKind::Sparse;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  // Flats or restrictions examined per sampled function.
  std::size_t per_trial = 1;
  // Dimension under test; defaults to the constant times n^(2 - s/2) for flats, sqrt(ln n) * n^((3 - s)/2) for restrictions.
  std::optional<std::size_t> k;
  double flat_constant = kFlatDimensionConstant;
  double restriction_constant = kRestrictionDimensionConstant;
  unsigned threads = 1;

  double resolved_multiplier() const;
  double probability() const;
  std::size_t resolved_k() const;
  // Throws InvalidConfig.
  void validate() const;
};

struct TrialOutcome {
  std::uint64_t seed;
  std::size_t sparsity;
  std::size_t hits;     // constant flats, or restrictions that lost degree 3
  std::size_t samples;  // flats or restrictions examined
};

struct Interval {
  double lo;
  double hi;
};

// Wilson score interval; z = 1.96 gives 95% coverage.
Interval wilson_interval(std::size_t successes, std::size_t total, double z = 1.959963984540054);

struct SamplerSummary {
  double mean;
  double variance;  // unbiased; 0 for a single trial
  double expected_mean;
  double sigma_of_mean;
  double deviation_sigmas;
  bool within_4sigma;
  std::size_t above_n_pow_s;  // samples with more than n^s terms
  double tail_rate;
};

struct ExperimentReport {
  ExperimentConfig config;
  double probability = 0;
  std::size_t k = 0;
  std::vector<TrialOutcome> trials;
  std::size_t total_hits = 0;
  std::size_t total_samples = 0;
  double rate = 0;
  Interval ci{0, 0};
  SamplerSummary sampler{};
  double wall_clock_ms = 0;
};

// Seed of trial i: stable_hash(master_seed, i).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

// Uniform k-dimensional flat of F2^n: independent uniform vectors until k are
// independent, then a uniform offset.
Flat sample_flat(std::size_t n, std::size_t k, Rng& rng);
// Uniform k-subset of {0..n-1}, ascending.
std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, Rng& rng);

bool is_constant_on(const Anf& f, const Flat& flat);

ExperimentReport run_disperser_flats(const ExperimentConfig& cfg);
ExperimentReport run_disperser_zero_restrictions(const ExperimentConfig& cfg);
ExperimentReport run_sampler_stats(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace anfkit
