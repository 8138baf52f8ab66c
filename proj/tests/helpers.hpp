#ifndef BRATTELI_TESTS_HELPERS_HPP
#define BRATTELI_TESTS_HELPERS_HPP

#include "bratteli/dsl.hpp"
#include "bratteli/fd_algebra.hpp"
#include "bratteli/iso.hpp"
#include "bratteli/k0.hpp"
#include "bratteli/uhf.hpp"

#include <random>

namespace bratteli::testing {

inline IntMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<BigInt>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return make_matrix(r);
}

inline IntVector vec(std::initializer_list<long> xs) {
  IntVector v(xs.size());
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

inline DiagramPtr finite(std::vector<LevelVector> levels, std::vector<IntMatrix> edges) {
  DiagramPresentation p;
  p.levels = std::move(levels);
  p.edges = std::move(edges);
  return share(Diagram::validate(std::move(p)));
}

inline DiagramPtr with_tail(std::vector<LevelVector> levels, std::vector<IntMatrix> edges,
                            std::vector<LevelVector> tail_levels, std::vector<IntMatrix> tail_edges,
                            IntMatrix glue, long scale = 1) {
  DiagramPresentation p;
  p.levels = std::move(levels);
  p.edges = std::move(edges);
  p.tail = PeriodicTail{std::move(tail_levels), std::move(tail_edges), std::move(glue), scale};
  return share(Diagram::validate(std::move(p)));
}

/// The worked example: levels (1), (2,2), (6) with edges (2,1)^T and (1 2).
inline DiagramPtr worked_example(const IntMatrix& first = M({{2}, {1}})) {
  return finite({{1}, {2, 2}, {6}}, {first, M({{1, 2}})});
}

/// 1x1 levels: k_1 = 1, prefix ratios, then a glue ratio and a cyclic tail
/// of ratios.
inline DiagramPtr uhf_diagram(const std::vector<long>& prefix, long glue,
                              const std::vector<long>& tail) {
  std::vector<LevelVector> levels{{1}};
  std::vector<IntMatrix> edges;
  BigInt k = 1;
  for (long r : prefix) {
    k *= r;
    edges.push_back(IntMatrix::Constant(1, 1, r));
    levels.push_back(LevelVector(IntVector::Constant(1, k)));
  }
  std::vector<LevelVector> tail_levels;
  std::vector<IntMatrix> tail_edges;
  BigInt t = k * glue;
  long scale = 1;
  for (long r : tail) {
    tail_levels.push_back(LevelVector(IntVector::Constant(1, t)));
    tail_edges.push_back(IntMatrix::Constant(1, 1, r));
    t *= r;
    scale *= r;
  }
  return with_tail(levels, edges, tail_levels, tail_edges, IntMatrix::Constant(1, 1, glue), scale);
}

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Nonnegative matrix with entries <= max_entry and no zero column.
inline IntMatrix random_embedding(Rng& rng, Eigen::Index rows, Eigen::Index cols, long max_entry) {
  IntMatrix e(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) e(i, j) = uniform(rng, 0, max_entry);
  for (Eigen::Index j = 0; j < cols; ++j)
    if (is_zero_matrix(e.col(j))) e(uniform(rng, 0, rows - 1), j) = uniform(rng, 1, max_entry);
  return e;
}

/// E V plus a random slack in {0, 1}.
inline LevelVector next_level(Rng& rng, const IntMatrix& e, const LevelVector& v) {
  IntVector w = e * v.vector();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) += uniform(rng, 0, 1);
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) == 0) w(i) = 1;
  return LevelVector(std::move(w));
}

inline LevelVector random_level(Rng& rng, Eigen::Index width, long max_entry = 3) {
  IntVector v(width);
  for (Eigen::Index i = 0; i < width; ++i) v(i) = uniform(rng, 1, max_entry);
  return LevelVector(std::move(v));
}

/// Eventually periodic diagram: prefix of 1-2 levels, tail of period 1-2,
/// at most `max_width` summands per level and entries <= 3. The tail scale
/// is the smallest one closing the cycle.
inline DiagramPtr random_periodic(Rng& rng, long max_width = 3) {
  DiagramPresentation p;
  const long prefix = uniform(rng, 1, 2), period = uniform(rng, 1, 2);
  p.levels.push_back(random_level(rng, uniform(rng, 1, max_width)));
  for (long i = 1; i < prefix; ++i) {
    const IntMatrix e = random_embedding(rng, uniform(rng, 1, max_width), p.levels.back().size(), 3);
    p.edges.push_back(e);
    p.levels.push_back(next_level(rng, e, p.levels.back()));
  }
  PeriodicTail tail;
  tail.glue = random_embedding(rng, uniform(rng, 1, max_width), p.levels.back().size(), 3);
  tail.levels.push_back(next_level(rng, tail.glue, p.levels.back()));
  for (long i = 1; i < period; ++i) {
    const IntMatrix e = random_embedding(rng, uniform(rng, 1, max_width), tail.levels.back().size(), 3);
    tail.edges.push_back(e);
    tail.levels.push_back(next_level(rng, e, tail.levels.back()));
  }
  const IntMatrix last = random_embedding(rng, tail.levels.front().size(), tail.levels.back().size(), 3);
  tail.edges.push_back(last);
  const IntVector image = last * tail.levels.back().vector();
  BigInt scale = 1;
  for (Eigen::Index i = 0; i < image.size(); ++i) {
    const BigInt need = (image(i) + tail.levels.front()[i] - 1) / tail.levels.front()[i];
    scale = std::max(scale, need);
  }
  tail.scale = scale;
  p.tail = std::move(tail);
  return share(Diagram::validate(std::move(p)));
}

/// f_n = n + shift, F_n = E_{n, n+shift}; periodic when d has a tail.
inline Premorphism shift_premorphism(const DiagramPtr& d, Index shift, Index depth = 1) {
  PremorphismWindow w{d, d, {}, {}, std::nullopt};
  Index length = std::max<Index>(depth, 1);
  if (d->has_tail()) {
    length = std::max(length, d->periodic_from() + d->period());
    w.rule = PeriodicRule{d->period(), d->period()};
  }
  for (Index n = 1; n <= length; ++n) {
    w.indices.push_back(n + shift);
    w.matrices.push_back(d->telescope_matrix(n, n + shift));
  }
  return Premorphism::validate(std::move(w));
}

/// The same diagram with its first tail level moved into the prefix.
inline DiagramPtr unroll(const Diagram& d) {
  DiagramPresentation p = d.presentation();
  PeriodicTail& t = *p.tail;
  p.levels.push_back(t.levels.front());
  p.edges.push_back(t.glue);
  t.glue = t.edges.front();
  t.levels.push_back(t.levels.front().scaled(t.scale));
  t.levels.erase(t.levels.begin());
  t.edges.push_back(t.edges.front());
  t.edges.erase(t.edges.begin());
  return share(Diagram::validate(std::move(p)));
}

/// Direct sum of `copies` copies of d.
inline DiagramPtr direct_sum(const Diagram& d, int copies) {
  auto stack_level = [&](const LevelVector& v) {
    IntVector out(v.size() * copies);
    for (int c = 0; c < copies; ++c) out.segment(c * v.size(), v.size()) = v.vector();
    return LevelVector(std::move(out));
  };
  auto stack_edge = [&](const IntMatrix& e) {
    IntMatrix out = IntMatrix::Zero(e.rows() * copies, e.cols() * copies);
    for (int c = 0; c < copies; ++c) out.block(c * e.rows(), c * e.cols(), e.rows(), e.cols()) = e;
    return out;
  };
  const DiagramPresentation& p = d.presentation();
  DiagramPresentation q;
  for (const auto& v : p.levels) q.levels.push_back(stack_level(v));
  for (const auto& e : p.edges) q.edges.push_back(stack_edge(e));
  if (p.tail) {
    PeriodicTail t;
    for (const auto& v : p.tail->levels) t.levels.push_back(stack_level(v));
    for (const auto& e : p.tail->edges) t.edges.push_back(stack_edge(e));
    t.glue = stack_edge(p.tail->glue);
    t.scale = p.tail->scale;
    q.tail = std::move(t);
  }
  return share(Diagram::validate(std::move(q)));
}

/// F_n = [x_1 E; ...; x_c E] with E = E_{n, n+shift} into the direct sum.
inline Premorphism diagonal_premorphism(const DiagramPtr& d, const DiagramPtr& sum,
                                        const std::vector<int>& pattern, Index shift) {
  const Index copies = pattern.size();
  PremorphismWindow w{d, sum, {}, {}, std::nullopt};
  Index length = d->periodic_from() + d->period();
  w.rule = PeriodicRule{d->period(), d->period()};
  for (Index n = 1; n <= length; ++n) {
    const IntMatrix e = d->telescope_matrix(n, n + shift);
    IntMatrix f = IntMatrix::Zero(e.rows() * copies, e.cols());
    for (Index c = 0; c < copies; ++c) f.block(c * e.rows(), 0, e.rows(), e.cols()) = pattern[c] * e;
    w.indices.push_back(n + shift);
    w.matrices.push_back(f);
  }
  return Premorphism::validate(std::move(w));
}

/// Random 0/1 pattern with at most one 1 per row.
inline std::vector<std::vector<int>> random_pattern(Rng& rng, int rows, int cols) {
  std::vector<std::vector<int>> p(rows, std::vector<int>(cols, 0));
  for (auto& row : p)
    if (long c = uniform(rng, -1, cols - 1); c >= 0) row[c] = 1;
  return p;
}

/// Block (i, j) of F_n is pattern[i][j] E_{n, n+shift}, between direct sums of d.
/// Rows of `pattern` with more than one 1 would break the multiplicity bound.
inline Premorphism block_premorphism(const DiagramPtr& d, const DiagramPtr& src,
                                     const DiagramPtr& tgt,
                                     const std::vector<std::vector<int>>& pattern, Index shift) {
  PremorphismWindow w{src, tgt, {}, {}, std::nullopt};
  const Index length = d->periodic_from() + d->period();
  w.rule = PeriodicRule{d->period(), d->period()};
  const Index rows = pattern.size(), cols = pattern.front().size();
  for (Index n = 1; n <= length; ++n) {
    const IntMatrix e = d->telescope_matrix(n, n + shift);
    IntMatrix f = IntMatrix::Zero(e.rows() * rows, e.cols() * cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        if (pattern[i][j]) f.block(i * e.rows(), j * e.cols(), e.rows(), e.cols()) = e;
    w.indices.push_back(n + shift);
    w.matrices.push_back(f);
  }
  return Premorphism::validate(std::move(w));
}

}  // namespace bratteli::testing

#endif  // BRATTELI_TESTS_HELPERS_HPP
