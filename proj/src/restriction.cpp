#include "anfkit/restriction.hpp"

#include <algorithm>
#include <set>

#include "anfkit/error.hpp"

namespace anfkit {

bool StopRule::satisfied(std::size_t crucial, std::size_t alive, std::size_t steps_taken) const {
  if (crucial == 0) return true;
  switch (kind) {
    case Kind::UntilNoCrucial: return false;
    case Kind::UntilCrucialAtMostThirdOfAlive: return 3 * crucial <= alive;
    case Kind::UntilSteps: return steps_taken >= steps;
  }
  return true;
}

RestrictionState RestrictionState::start(const Anf& f) {
  BitVec alive(f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i) alive.set(i);
  return {f, std::move(alive), {}};
}

std::vector<std::size_t> occurrence_counts(const Anf& f, const BitVec& alive) {
  std::vector<std::size_t> counts(f.num_vars(), 0);
  for (const auto& m : f.terms()) {
    if (m.popcount() < 3) continue;
    for (std::size_t v = m.first_set(); v < m.size(); v = m.next_set(v + 1)) {
      if (alive.get(v)) ++counts[v];
    }
  }
  return counts;
}

RestrictionState greedy_step(RestrictionState state) {
  const std::size_t crucial = crucial_count(state.current);
  if (crucial == 0) throw Error(ErrorCode::NoCrucialTerms, "greedy step needs a crucial term");
  const auto counts = occurrence_counts(state.current, state.alive);
  std::size_t best = state.current.num_vars();
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (state.alive.get(v) && (best == counts.size() || counts[v] > counts[best])) best = v;
  }
  state.trace.push_back({best, crucial, counts[best]});
  state.current = substitute_zero(state.current, best);
  state.alive.set(best, false);
  return state;
}

namespace {

// Occurrence counts bucketed by value; each bucket ordered by variable index.
class CountBuckets {
 public:
  explicit CountBuckets(const std::vector<std::size_t>& counts)
      : counts_(counts), buckets_(*std::max_element(counts.begin(), counts.end()) + 1) {
    for (std::size_t v = 0; v < counts_.size(); ++v) buckets_[counts_[v]].insert(v);
    top_ = buckets_.size() - 1;
  }

  std::size_t count(std::size_t v) const { return counts_[v]; }

  // Lowest-index variable with the maximum count.
  std::size_t argmax() {
    while (top_ > 0 && buckets_[top_].empty()) --top_;
    return *buckets_[top_].begin();
  }

  void decrement(std::size_t v) {
    buckets_[counts_[v]].erase(v);
    buckets_[--counts_[v]].insert(v);
  }

  void remove(std::size_t v) { buckets_[counts_[v]].erase(v); }

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::set<std::size_t>> buckets_;
  std::size_t top_;
};

}  // namespace

RestrictionState greedy_restrict(const Anf& f, StopRule rule) {
  const std::size_t n = f.num_vars();
  RestrictionState state = RestrictionState::start(f);
  if (n == 0) return state;

  std::vector<std::vector<std::size_t>> term_vars;
  std::vector<std::vector<std::size_t>> var_terms(n);
  for (const auto& m : f.terms()) {
    if (m.popcount() < 3) continue;
    const std::size_t id = term_vars.size();
    term_vars.push_back(m.set_bits());
    for (auto v : term_vars.back()) var_terms[v].push_back(id);
  }
  std::vector<bool> term_live(term_vars.size(), true);
  std::size_t live = term_vars.size();

  std::vector<std::size_t> initial(n);
  for (std::size_t v = 0; v < n; ++v) initial[v] = var_terms[v].size();
  CountBuckets buckets(initial);

  BitVec dead(n);
  std::size_t alive = n;
  while (!rule.satisfied(live, alive, state.trace.size())) {
    const std::size_t v = buckets.argmax();
    state.trace.push_back({v, live, buckets.count(v)});
    for (auto t : var_terms[v]) {
      if (!term_live[t]) continue;
      term_live[t] = false;
      --live;
      for (auto u : term_vars[t]) {
        if (u != v) buckets.decrement(u);
      }
    }
    buckets.remove(v);
    dead.set(v);
    state.alive.set(v, false);
    --alive;
  }

  std::vector<BitVec> kept;
  for (const auto& m : f.terms()) {
    if (!m.intersects(dead)) kept.push_back(m);
  }
  state.current = Anf::from_monomials(n, std::move(kept));
  return state;
}

namespace {

class HittingSetSearch {
 public:
  HittingSetSearch(const Anf& f, std::size_t node_limit) : node_limit_(node_limit) {
    for (const auto& m : f.terms()) {
      if (m.popcount() >= 3) terms_.push_back(m);
    }
    // Highest degree first; branching takes the first unhit term.
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const BitVec& a, const BitVec& b) { return a.popcount() > b.popcount(); });
    chosen_ = BitVec(f.num_vars());
  }

  std::optional<std::vector<std::size_t>> solve(std::size_t budget) {
    for (std::size_t k = 0; k <= budget; ++k) {
      if (search(k)) return chosen_.set_bits();
    }
    return std::nullopt;
  }

 private:
  // Size of a greedy packing of pairwise disjoint unhit terms.
  std::size_t lower_bound() const {
    BitVec used(chosen_.size());
    std::size_t packed = 0;
    for (const auto& t : terms_) {
      if (t.intersects(chosen_) || t.intersects(used)) continue;
      used |= t;
      ++packed;
    }
    return packed;
  }

  bool search(std::size_t depth) {
    if (++nodes_ > node_limit_) {
      throw Error(ErrorCode::TooLarge, "hitting set search exceeded its node limit");
    }
    const BitVec* open = nullptr;
    for (const auto& t : terms_) {
      if (!t.intersects(chosen_)) {
        open = &t;
        break;
      }
    }
    if (open == nullptr) return true;
    if (depth == 0 || lower_bound() > depth) return false;
    for (std::size_t v = open->first_set(); v < open->size(); v = open->next_set(v + 1)) {
      chosen_.set(v);
      if (search(depth - 1)) return true;
      chosen_.set(v, false);
    }
    return false;
  }

  std::vector<BitVec> terms_;
  BitVec chosen_;
  std::size_t nodes_ = 0;
  std::size_t node_limit_;
};

}  // namespace

std::optional<std::vector<std::size_t>> exhaustive_hitting_set(const Anf& f, std::size_t budget,
                                                               std::size_t node_limit) {
  return HittingSetSearch(f, node_limit).solve(budget);
}

}  // namespace anfkit
