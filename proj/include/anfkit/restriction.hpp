#pragma once

// Greedy 0-restrictions: repeatedly zero the variable that occurs in the most
// crucial (degree >= 3) terms.

#include <cstddef>
#include <optional>
#include <vector>

#include "anfkit/anf.hpp"

namespace anfkit {

struct TraceStep {
  std::size_t var;             // 0-based
  std::size_t crucial_before;  // crucial terms before this step
  std::size_t occ;             // crucial terms containing `var`

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using RestrictionTrace = std::vector<TraceStep>;

struct StopRule {
  enum class Kind { UntilNoCrucial, UntilCrucialAtMostThirdOfAlive, UntilSteps };

  Kind kind = Kind::UntilNoCrucial;
  std::size_t steps = 0;  // UntilSteps only

  static StopRule until_no_crucial() { return {Kind::UntilNoCrucial, 0}; }
  static StopRule until_third_of_alive() { return {Kind::UntilCrucialAtMostThirdOfAlive, 0}; }
  static StopRule until_steps(std::size_t k) { return {Kind::UntilSteps, k}; }

  // Never asks for a step when no crucial term remains.
  bool satisfied(std::size_t crucial, std::size_t alive, std::size_t steps_taken) const;
};

struct RestrictionState {
  Anf current;
  BitVec alive;
  RestrictionTrace trace;

  static RestrictionState start(const Anf& f);
  std::size_t alive_count() const { return alive.popcount(); }
};

// Entry v counts the crucial terms containing v; dead variables report 0.
std::vector<std::size_t> occurrence_counts(const Anf& f, const BitVec& alive);

// One greedy move with ties broken by lowest index. Throws NoCrucialTerms.
RestrictionState greedy_step(RestrictionState state);

// Runs greedy moves until `rule` holds, with incremental occurrence counting.
RestrictionState greedy_restrict(const Anf& f, StopRule rule);

inline constexpr std::size_t kDefaultHittingSetNodeLimit = 50'000'000;

// Minimum set of variables (0-based, ascending) whose zeroing removes every
// crucial term, or nullopt when the optimum exceeds `budget`. Throws TooLarge
// once the search visits more than `node_limit` nodes.
std::optional<std::vector<std::size_t>> exhaustive_hitting_set(
    const Anf& f, std::size_t budget, std::size_t node_limit = kDefaultHittingSetNodeLimit);

}  // namespace anfkit
