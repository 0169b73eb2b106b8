#include "anfkit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "anfkit/error.hpp"
#include "anfkit/rng.hpp"

namespace anfkit {

AffineEmbedding::AffineEmbedding(BitMatrix matrix, BitVec offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (offset_.size() != matrix_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "embedding offset length differs from codomain");
  }
  if (rank(matrix_) != matrix_.cols()) {
    throw Error(ErrorCode::Inconsistent, "embedding matrix lacks full column rank");
  }
}

AffineEmbedding AffineEmbedding::identity(std::size_t n) {
  return AffineEmbedding(BitMatrix::identity(n), BitVec(n));
}

AffineEmbedding embed_zero_restriction(const AffineEmbedding& e, std::size_t dead_var) {
  if (dead_var >= e.domain_dim()) {
    throw Error(ErrorCode::IndexOutOfRange, "no domain coordinate " + std::to_string(dead_var + 1));
  }
  std::vector<BitVec> rows;
  rows.reserve(e.codomain_dim());
  for (std::size_t i = 0; i < e.codomain_dim(); ++i) rows.push_back(e.matrix().row(i).erase(dead_var));
  return AffineEmbedding(BitMatrix::from_rows(std::move(rows), e.domain_dim() - 1), e.offset());
}

AffineEmbedding compose_embedding(const AffineEmbedding& e, const AffineMap& a) {
  if (a.dimension() != e.domain_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "affine map does not match the embedding domain");
  }
  return AffineEmbedding(e.matrix() * a.matrix(), (e.matrix() * a.offset()) ^ e.offset());
}

Flat flat_of_embedding(const AffineEmbedding& e,
                       const std::vector<std::pair<std::size_t, bool>>& fixed) {
  const std::size_t m = e.domain_dim();
  std::vector<int> value(m, -1);
  for (const auto& [coord, bit] : fixed) {
    if (coord >= m) {
      throw Error(ErrorCode::Inconsistent, "fixed coordinate " + std::to_string(coord + 1) +
                                               " outside the embedding domain");
    }
    if (value[coord] >= 0 && value[coord] != static_cast<int>(bit)) {
      throw Error(ErrorCode::Inconsistent, "coordinate " + std::to_string(coord + 1) +
                                               " fixed to both 0 and 1");
    }
    value[coord] = bit;
  }
  BitVec offset = e.offset();
  std::vector<BitVec> basis;
  for (std::size_t j = 0; j < m; ++j) {
    if (value[j] < 0) {
      basis.push_back(e.matrix().column(j));
    } else if (value[j] == 1) {
      offset ^= e.matrix().column(j);
    }
  }
  return Flat(std::move(offset), std::move(basis));
}

AffineEmbedding zero_restriction_embedding(std::size_t n, const RestrictionTrace& trace) {
  AffineEmbedding e = AffineEmbedding::identity(n);
  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = i;
  for (const auto& step : trace) {
    const auto it = std::find(alive.begin(), alive.end(), step.var);
    if (it == alive.end()) {
      throw Error(ErrorCode::Inconsistent, "trace zeroes x" + std::to_string(step.var + 1) + " twice");
    }
    e = embed_zero_restriction(e, static_cast<std::size_t>(it - alive.begin()));
    alive.erase(it);
  }
  return e;
}

Anf compress_to_alive(const Anf& f, const BitVec& alive) {
  const std::size_t n = f.num_vars();
  std::vector<std::size_t> position(n, 0);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alive.get(i)) position[i] = m++;
  }
  std::vector<BitVec> terms;
  for (const auto& t : f.terms()) {
    BitVec c(m);
    for (std::size_t v = t.first_set(); v < n; v = t.next_set(v + 1)) {
      if (!alive.get(v)) {
        throw Error(ErrorCode::Inconsistent, "term mentions zeroed variable x" + std::to_string(v + 1));
      }
      c.set(position[v]);
    }
    terms.push_back(std::move(c));
  }
  return Anf::from_monomials(m, std::move(terms));
}

const char* to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Constant: return "Constant";
    case Verdict::Kind::NotConstant: return "NotConstant";
    case Verdict::Kind::WrongConstant: return "WrongConstant";
    case Verdict::Kind::SampledOk: return "SampledOk";
  }
  return "Unknown";
}

Verdict verify_flat(const FunctionInput& input, const Flat& flat, bool claimed,
                    std::uint64_t sample_cap, std::uint64_t seed) {
  const std::size_t n = input.num_vars();
  if (flat.ambient() != n) {
    throw Error(ErrorCode::DimensionMismatch, "flat ambient dimension differs from n");
  }
  // f(p) = g(A^{-1} p), so checking f on the flat is checking g on A^{-1}(flat).
  const Flat g_flat = input.inverse() ? map_flat(*input.inverse(), flat) : flat;
  const AnfEvaluator g(input.g());
  const bool narrow = n <= 64;
  auto eval = [&](const BitVec& p) { return narrow ? g(p.to_word()) : g(p); };

  Verdict v;
  v.seed = seed;
  v.value = eval(g_flat.offset());
  const std::size_t k = flat.dimension();
  v.exhaustive = k < 64 && (std::uint64_t{1} << k) <= std::max<std::uint64_t>(sample_cap, 1);

  auto mismatch = [&](const BitVec& f_point) {
    v.kind = Verdict::Kind::NotConstant;
    v.witness = std::make_pair(flat.offset(), f_point);
    return v;
  };

  if (v.exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << k;
    v.points_checked = total;
    if (narrow) {
      std::vector<std::uint64_t> basis;
      for (const auto& b : g_flat.basis()) basis.push_back(b.to_word());
      std::uint64_t cur = g_flat.offset().to_word();
      for (std::uint64_t i = 1; i < total; ++i) {
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        if (g(cur) != v.value) return mismatch(flat.point(i ^ (i >> 1)));
      }
    } else {
      BitVec cur = g_flat.offset();
      for (std::uint64_t i = 1; i < total; ++i) {
        cur ^= g_flat.basis()[static_cast<std::size_t>(std::countr_zero(i))];
        if (g(cur) != v.value) return mismatch(flat.point(i ^ (i >> 1)));
      }
    }
  } else {
    Rng rng(seed);
    v.points_checked = sample_cap;
    for (std::uint64_t s = 1; s < sample_cap; ++s) {
      const BitVec coords = BitVec::random(k, rng);
      BitVec p = g_flat.offset();
      BitVec fp = flat.offset();
      for (std::size_t i = coords.first_set(); i < k; i = coords.next_set(i + 1)) {
        p ^= g_flat.basis()[i];
        fp ^= flat.basis()[i];
      }
      if (eval(p) != v.value) return mismatch(fp);
    }
  }
  if (v.value != claimed) {
    v.kind = Verdict::Kind::WrongConstant;
  } else {
    v.kind = v.exhaustive ? Verdict::Kind::Constant : Verdict::Kind::SampledOk;
  }
  return v;
}

double guaranteed_dimension(std::size_t n, double epsilon) {
  const double bound =
      (4.0 / 15.0) * std::sqrt((2.0 / 3.0) * std::pow(static_cast<double>(n), epsilon)) - 3.0;
  return std::max(0.0, bound);
}

FlatReport find_constant_flat(const FunctionInput& input, std::optional<double> epsilon,
                              const PipelineOptions& options) {
  const std::size_t n = input.num_vars();
  RestrictionState state = greedy_restrict(input.g(), StopRule::until_no_crucial());
  const AffineEmbedding restriction = zero_restriction_embedding(n, state.trace);
  const Anf residual = compress_to_alive(state.current, state.alive);

  FlatReport report;
  report.dickson = dickson_decompose(residual);
  const DicksonForm& d = report.dickson;
  // y -> x: undo the Dickson change of variables, then re-insert the zeroed coordinates.
  const AffineEmbedding total = compose_embedding(restriction, d.map.inverse());
  std::vector<std::pair<std::size_t, bool>> fixed;
  for (std::size_t k = 0; k < d.t; k += 2) fixed.emplace_back(k, false);
  if (d.type == FormType::II) fixed.emplace_back(d.t, false);
  const Flat g_flat = flat_of_embedding(total, fixed);

  report.flat = input.bijection() ? map_flat(*input.bijection(), g_flat) : g_flat;
  report.constant = d.type == FormType::I && d.c;
  report.trace = std::move(state.trace);
  if (epsilon) {
    report.epsilon = epsilon;
    report.guaranteed_dim = guaranteed_dimension(n, *epsilon);
  }
  report.verification = verify_flat(input, report.flat, report.constant, options.sample_cap,
                                    options.seed);
  if (!report.verification.ok()) {
    throw Error(ErrorCode::VerificationFailed,
                std::string("pipeline flat failed verification: ") +
                    to_string(report.verification.kind));
  }
  return report;
}

namespace {

using Point = std::uint32_t;

struct SubspaceList {
  std::size_t k;
  std::vector<Point> rows;  // k rows per subspace, reduced row echelon form
  std::vector<Point> pivots;

  std::size_t count() const { return pivots.size(); }
};

// All k-dimensional subspaces of F2^n, ordered by pivot set (lexicographic)
// and then by the free entries read as a binary counter.
SubspaceList enumerate_subspaces(std::size_t n, std::size_t k) {
  SubspaceList list{k, {}, {}};
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    Point pivot_mask = 0;
    for (auto p : piv) pivot_mask |= Point{1} << p;
    std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, column)
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = piv[r] + 1; c < n; ++c) {
        if (!((pivot_mask >> c) & 1u)) free.emplace_back(r, c);
      }
    }
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << free.size()); ++a) {
      std::vector<Point> rows(k);
      for (std::size_t r = 0; r < k; ++r) rows[r] = Point{1} << piv[r];
      for (std::size_t f = 0; f < free.size(); ++f) {
        if ((a >> f) & 1u) rows[free[f].first] |= Point{1} << free[f].second;
      }
      list.rows.insert(list.rows.end(), rows.begin(), rows.end());
      list.pivots.push_back(pivot_mask);
    }
    // Next k-combination of {0..n-1}.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return list;
}

Point deposit(std::uint64_t bits, Point mask) {
  Point out = 0;
  for (Point m = mask; m != 0; m &= m - 1, bits >>= 1) {
    if (bits & 1u) out |= m & (~m + 1);
  }
  return out;
}

}  // namespace

NormalityResult brute_force_normality(const Anf& f, std::size_t cap, unsigned threads) {
  const std::size_t n = f.num_vars();
  if (n > cap || n > 16) {
    throw Error(ErrorCode::TooLarge, "exact normality is limited to n <= " + std::to_string(cap));
  }
  const TruthTable table = anf_to_truth_table(f);
  const std::size_t points = std::size_t{1} << n;
  std::vector<std::uint8_t> tt(points);
  for (std::size_t x = 0; x < points; ++x) tt[x] = table.get(x);
  if (std::all_of(tt.begin(), tt.end(), [&](std::uint8_t v) { return v == tt[0]; })) {
    return {n, Flat::whole_space(n)};
  }

  auto to_flat = [n](Point offset, std::span<const Point> rows) {
    std::vector<BitVec> basis;
    for (auto r : rows) basis.push_back(BitVec::from_word(r, n));
    return Flat(BitVec::from_word(offset, n), std::move(basis));
  };

  threads = std::max(1u, threads);
  for (std::size_t k = n - 1; k >= 1 && k < n; --k) {
    const SubspaceList list = enumerate_subspaces(n, k);
    const std::size_t count = list.count();
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> best{none};

    // Returns the first coset offset on which f is constant, if any.
    auto check = [&](std::size_t idx, std::vector<Point>& span) -> std::optional<Point> {
      const Point* rows = &list.rows[idx * k];
      span[0] = 0;
      for (std::size_t i = 1; i < span.size(); ++i) {
        span[i] = span[i - 1] ^ rows[std::countr_zero(i)];
      }
      const Point complement = static_cast<Point>(points - 1) & ~list.pivots[idx];
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n - k)); ++r) {
        const Point w = deposit(r, complement);
        const std::uint8_t v0 = tt[w];
        bool constant = true;
        for (std::size_t i = 1; i < span.size() && constant; ++i) constant = tt[w ^ span[i]] == v0;
        if (constant) return w;
      }
      return std::nullopt;
    };

    auto worker = [&](unsigned id) {
      std::vector<Point> span(std::size_t{1} << k);
      const std::size_t lo = count * id / threads;
      const std::size_t hi = count * (id + 1) / threads;
      for (std::size_t idx = lo; idx < hi && idx < best.load(); ++idx) {
        if (check(idx, span)) {
          std::size_t cur = best.load();
          while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
          }
          return;
        }
      }
    };

    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
      for (auto& t : pool) t.join();
    }
    const std::size_t idx = best.load();
    if (idx != none) {
      std::vector<Point> span(std::size_t{1} << k);
      const Point offset = *check(idx, span);
      return {k, to_flat(offset, std::span<const Point>(&list.rows[idx * k], k))};
    }
  }
  return {0, Flat(BitVec(n), {})};
}

std::size_t brute_force_thickness(const Anf& f, std::size_t cap) {
  const std::size_t n = f.num_vars();
  if (n > cap || n > 5) {
    throw Error(ErrorCode::TooLarge, "exact thickness is limited to n <= " + std::to_string(cap));
  }
  if (f.is_zero()) return 0;
  const TruthTable table = anf_to_truth_table(f);
  const std::size_t points = std::size_t{1} << n;
  std::vector<std::uint8_t> tt(points);
  for (std::size_t x = 0; x < points; ++x) tt[x] = table.get(x);

  std::size_t best = sparsity(f);
  std::vector<Point> image(points);
  TruthTable composed(n);
  const std::uint64_t patterns = std::uint64_t{1} << (n * n);
  for (std::uint64_t pattern = 0; pattern < patterns && best > 1; ++pattern) {
    std::vector<Point> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i] = static_cast<Point>((pattern >> (i * n)) & ((std::uint64_t{1} << n) - 1));
    }
    // Invertibility by elimination on a copy.
    std::vector<Point> echelon = rows;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = r;
      while (p < n && !((echelon[p] >> c) & 1u)) ++p;
      if (p == n) continue;
      std::swap(echelon[r], echelon[p]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != r && ((echelon[i] >> c) & 1u)) echelon[i] ^= echelon[r];
      }
      ++r;
    }
    if (r != n) continue;

    for (std::size_t x = 0; x < points; ++x) {
      Point y = 0;
      for (std::size_t i = 0; i < n; ++i) {
        y |= static_cast<Point>(std::popcount(rows[i] & static_cast<Point>(x)) & 1) << i;
      }
      image[x] = y;
    }
    for (std::size_t b = 0; b < points; ++b) {
      for (std::size_t x = 0; x < points; ++x) composed.set(x, tt[image[x] ^ b]);
      moebius_transform(composed);
      std::size_t weight = 0;
      for (auto w : composed.words()) weight += static_cast<std::size_t>(std::popcount(w));
      best = std::min(best, weight);
    }
  }
  return best;
}

}  // namespace anfkit
