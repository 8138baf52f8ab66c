#include "bratteli/morphism.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bratteli {

namespace {

std::string at(Index n) { return " at n=" + std::to_string(n); }

bool all_zero(const std::vector<IntMatrix>& ms, Index from, Index to) {
  for (Index n = from; n < to; ++n)
    if (!is_zero_matrix(ms[n - 1])) return false;
  return true;
}

void check_rule(const PremorphismWindow& w) {
  const PeriodicRule& r = *w.rule;
  const Diagram &src = *w.source, &tgt = *w.target;
  const Index depth = w.indices.size();
  auto fail = [](const std::string& why) { throw Error(ErrorKind::PeriodicRuleInvalid, why); };
  if (r.period < 1) fail("period must be positive");
  if (r.shift < 1) fail("target shift must be positive (cofinality)");
  if (!src.has_tail() || !tgt.has_tail()) fail("both diagrams need periodic tails");
  if (depth <= r.period) fail("window must extend one full period past the base");
  if (r.period % src.period() != 0) fail("period must be a multiple of the source tail period");
  if (r.shift % tgt.period() != 0) fail("shift must be a multiple of the target tail period");
  const Index base = depth - r.period;
  if (base < src.periodic_from()) fail("rule base lies inside the source prefix");
  if (w.indices[base - 1] < tgt.periodic_from()) fail("f_base lies inside the target prefix");
  if (w.indices[depth - 1] != w.indices[base - 1] + r.shift)
    fail("f at the window end must equal f_base + shift");
  if (!same_matrix(w.matrices[depth - 1], w.matrices[base - 1]))
    fail("F at the window end must equal F_base");
  const BigInt grow_src = ipow(src.scale(), r.period / src.period());
  const BigInt grow_tgt = ipow(tgt.scale(), r.shift / tgt.period());
  if (grow_src > grow_tgt && !all_zero(w.matrices, base, depth))
    throw Error(ErrorKind::MultiplicityViolation,
                "source levels outgrow target levels under the periodic rule");
}

}  // namespace

Premorphism Premorphism::validate(PremorphismWindow w) {
  if (!w.source || !w.target) throw Error(ErrorKind::DimensionMismatch, "missing diagram");
  Premorphism p;
  p.source_ = w.source;
  p.target_ = w.target;
  if (w.source->is_zero() || w.target->is_zero()) {
    if (!w.indices.empty() || !w.matrices.empty() || w.rule)
      throw Error(ErrorKind::DimensionMismatch,
                  "premorphisms to or from the zero diagram carry no data");
    p.zero_ = true;
    p.window_ = std::move(w);
    return p;
  }
  const Index depth = w.indices.size();
  if (depth == 0) throw Error(ErrorKind::EmptyWindow, "premorphism window is empty");
  if (w.matrices.size() != depth)
    throw Error(ErrorKind::DimensionMismatch, "indices and matrices differ in length");
  const Diagram &src = *w.source, &tgt = *w.target;
  for (Index n = 1; n <= depth; ++n) {
    const Index f = w.indices[n - 1];
    if (!src.resolvable(n))
      throw Error(ErrorKind::OutOfRange, "source level" + at(n), static_cast<long>(n));
    if (!tgt.resolvable(f))
      throw Error(ErrorKind::OutOfRange, "target level " + std::to_string(f) + at(n),
                  static_cast<long>(n));
    if (n > 1 && f < w.indices[n - 2])
      throw Error(ErrorKind::MonotonicityFails,
                  "f_" + std::to_string(n) + " < f_" + std::to_string(n - 1),
                  static_cast<long>(n - 1));
    try {
      check_multiplicity(w.matrices[n - 1], src.level(n), tgt.level(f));
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail() + at(n), static_cast<long>(n));
    }
  }
  for (Index n = 1; n < depth; ++n) {
    const IntMatrix lhs = w.matrices[n] * src.edge_matrix(n);
    const IntMatrix rhs = tgt.telescope_matrix(w.indices[n - 1], w.indices[n]) * w.matrices[n - 1];
    if (!same_matrix(lhs, rhs))
      throw Error(ErrorKind::SquareFails,
                  "F_{n+1}E_n = " + format_matrix(lhs) + " but S F_n = " + format_matrix(rhs) +
                      at(n),
                  static_cast<long>(n));
  }
  if (w.rule) check_rule(w);
  p.zero_ = all_zero(w.matrices, 1, depth + 1);
  p.window_ = std::move(w);
  return p;
}

void Premorphism::check(Index n) const {
  if (is_trivial()) throw Error(ErrorKind::OutOfWindow, "premorphism carries no data");
  if (!covers(n))
    throw Error(ErrorKind::OutOfWindow,
                "n=" + std::to_string(n) + " outside window of depth " +
                    std::to_string(window_depth()),
                static_cast<long>(n));
}

Index Premorphism::index_at(Index n) const {
  check(n);
  if (n <= window_depth()) return window_.indices[n - 1];
  const Index b = base(), p = window_.rule->period;
  const Index t = n - b;
  return window_.indices[b + t % p - 1] + (t / p) * window_.rule->shift;
}

const IntMatrix& Premorphism::matrix_at(Index n) const {
  check(n);
  if (n <= window_depth()) return window_.matrices[n - 1];
  const Index b = base(), p = window_.rule->period;
  return window_.matrices[b + (n - b) % p - 1];
}

Premorphism Premorphism::extended(Index depth) const {
  if (!is_periodic() || depth <= window_depth()) return *this;
  const Index p = window_.rule->period;
  const Index turns = (depth - window_depth() + p - 1) / p;
  PremorphismWindow w;
  w.source = source_;
  w.target = target_;
  w.rule = window_.rule;
  const Index total = window_depth() + turns * p;
  for (Index n = 1; n <= total; ++n) {
    w.indices.push_back(index_at(n));
    w.matrices.push_back(matrix_at(n));
  }
  Premorphism out = *this;
  out.window_ = std::move(w);
  return out;
}

Premorphism Premorphism::zero(DiagramPtr source, DiagramPtr target, Index depth) {
  PremorphismWindow w;
  w.source = std::move(source);
  w.target = std::move(target);
  if (w.source->is_zero() || w.target->is_zero()) return validate(std::move(w));
  const Diagram &s = *w.source, &t = *w.target;
  Index length = std::max<Index>(depth, 1);
  if (s.has_tail() && t.has_tail()) {
    const Index p = std::lcm(s.period(), t.period());
    const Index b = std::max(s.periodic_from(), t.periodic_from());
    length = std::max(length, b + p);
    w.rule = PeriodicRule{p, p};
  } else {
    if (!s.has_tail()) length = std::min(length, s.depth());
    if (!t.has_tail()) length = std::min(length, t.depth());
  }
  for (Index n = 1; n <= length; ++n) {
    w.indices.push_back(n);
    w.matrices.push_back(IntMatrix::Zero(t.width(n), s.width(n)));
  }
  return validate(std::move(w));
}

Premorphism compose(const Premorphism& g, const Premorphism& f) {
  if (!(f.target() == g.source()))
    throw Error(ErrorKind::ComposabilityMismatch, "target of f differs from source of g");
  if (f.is_trivial() || g.is_trivial()) return Premorphism::zero(f.source_ptr(), g.target_ptr());

  PremorphismWindow w;
  w.source = f.source_ptr();
  w.target = g.target_ptr();
  Index length = 0;
  if (f.is_periodic() && g.is_periodic()) {
    const PeriodicRule rf = *f.rule(), rg = *g.rule();
    Index base = f.base();
    while (f.index_at(base) < g.base()) ++base;
    const Index k = rg.period / std::gcd(rf.shift, rg.period);
    const Index period = rf.period * k;
    const Index shift = (rf.shift * k / rg.period) * rg.shift;
    w.rule = PeriodicRule{period, shift};
    length = base + period;
  } else {
    while (f.covers(length + 1) && g.covers(f.index_at(length + 1))) ++length;
  }
  if (length == 0) throw Error(ErrorKind::EmptyWindow, "no index of f lands inside g's window");
  for (Index n = 1; n <= length; ++n) {
    const Index fn = f.index_at(n);
    w.indices.push_back(g.index_at(fn));
    w.matrices.push_back(g.matrix_at(fn) * f.matrix_at(n));
  }
  return Premorphism::validate(std::move(w));
}

Premorphism identity_premorphism(DiagramPtr d, Index depth) {
  if (d->is_zero()) return Premorphism::zero(d, d);
  PremorphismWindow w;
  w.source = d;
  w.target = d;
  Index length = std::max<Index>(depth, 1);
  if (d->has_tail()) {
    length = std::max(length, d->periodic_from() + d->period());
    w.rule = PeriodicRule{d->period(), d->period()};
  } else if (length > d->depth()) {
    throw Error(ErrorKind::OutOfRange,
                "identity of depth " + std::to_string(length) + " exceeds the presentation");
  }
  for (Index n = 1; n <= length; ++n) {
    w.indices.push_back(n);
    w.matrices.push_back(identity(d->width(n)));
  }
  return Premorphism::validate(std::move(w));
}

bool same_data(const Premorphism& a, const Premorphism& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
  if (a.is_trivial()) return true;
  if (a.is_periodic() != b.is_periodic()) return false;
  Index last = std::max(a.window_depth(), b.window_depth());
  if (a.is_periodic()) {
    if (a.window_depth() != b.window_depth() && a.rule()->shift * b.rule()->period !=
                                                    b.rule()->shift * a.rule()->period)
      return false;
    last += 2 * std::lcm(a.rule()->period, b.rule()->period);
  } else if (a.window_depth() != b.window_depth()) {
    return false;
  }
  for (Index n = 1; n <= last; ++n)
    if (a.index_at(n) != b.index_at(n) || !same_matrix(a.matrix_at(n), b.matrix_at(n)))
      return false;
  return true;
}

}  // namespace bratteli
