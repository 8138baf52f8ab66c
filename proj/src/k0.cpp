#include "bratteli/k0.hpp"

#include <algorithm>

namespace bratteli {

namespace {

IntMatrix as_column(const IntVector& v) { return IntMatrix(v); }

/// E_n V_n = V_{n+1} for every n >= from that the presentation resolves.
bool unital_from(const Diagram& d, Index from) {
  const Index last = d.has_tail() ? std::max(from, d.periodic_from()) + d.period()
                                  : d.prefix_length() - 1;
  for (Index n = from; n <= last; ++n)
    if (!same_matrix(IntVector(d.edge_matrix(n) * d.level(n).vector()), d.level(n + 1).vector()))
      return false;
  return true;
}

/// Searches pushes of c for a level satisfying `accept`.
template <typename Accept>
std::optional<Index> search_pushes(const Diagram& d, const K0Class& c, Index bound, Accept accept) {
  IntVector y = c.vector;
  const Index last = d.has_tail() ? std::max(bound, c.level)
                                  : std::min(std::max(bound, c.level), d.prefix_length());
  for (Index m = c.level;; ++m) {
    if (accept(m, y)) return m;
    if (m >= last) return std::nullopt;
    y = d.edge_matrix(m) * y;
  }
}

bool nonpositive(const IntVector& y) {
  return std::all_of(y.begin(), y.end(), [](const BigInt& v) { return v <= 0; });
}

/// A nonzero class that stays on one side of zero forever. The level is
/// chosen past `from` and the certificate comes from the residual machinery.
std::optional<NonVanishing> never_vanishes(const Diagram& d, Index level, const IntVector& y,
                                           Index bound) {
  const VanishingDecision v = decide_vanishing(d, level, as_column(y), bound);
  if (v.verdict != Verdict::Fails) return std::nullopt;
  return v.certificate;
}

}  // namespace

K0Class make_class(const Diagram& d, Index level, IntVector vector) {
  if (d.is_zero() || !d.resolvable(level))
    throw Error(ErrorKind::OutOfRange, "level " + std::to_string(level) + " is not resolvable",
                static_cast<long>(level));
  if (vector.size() != d.width(level))
    throw Error(ErrorKind::DimensionMismatch,
                "class has " + std::to_string(vector.size()) + " entries but level " +
                    std::to_string(level) + " has " + std::to_string(d.width(level)) + " summands");
  return {level, std::move(vector)};
}

std::string to_string(const K0Class& c) {
  return "K0@" + std::to_string(c.level) + " " + format_vector(c.vector);
}

K0Class push(const Diagram& d, const K0Class& c, Index m) {
  if (m < c.level || !d.resolvable(m))
    throw Error(ErrorKind::OutOfRange,
                "cannot push " + to_string(c) + " to level " + std::to_string(m),
                static_cast<long>(m));
  return {m, d.telescope_matrix(c.level, m) * c.vector};
}

K0Decision class_equal(const Diagram& d, const K0Class& a, const K0Class& b, Index bound) {
  const Index top = std::max(a.level, b.level);
  const IntVector diff = push(d, a, top).vector - push(d, b, top).vector;
  const VanishingDecision v = decide_vanishing(d, top, as_column(diff), bound);
  K0Decision out;
  out.verdict = v.verdict;
  out.level = v.level;
  out.certificate = v.certificate;
  if (v.verdict == Verdict::Holds) out.note = "pushes agree at level " + std::to_string(v.level);
  else if (v.verdict == Verdict::Fails) out.note = "difference never vanishes";
  else out.note = "pushes still differ at the bound";
  return out;
}

K0Decision class_positive(const Diagram& d, const K0Class& c, Index bound) {
  K0Decision out;
  std::optional<std::pair<Index, IntVector>> negative;
  const auto hit = search_pushes(d, c, bound, [&](Index m, const IntVector& y) {
    if (std::all_of(y.begin(), y.end(), [](const BigInt& v) { return v >= 0; })) return true;
    if (!negative && nonpositive(y)) negative.emplace(m, y);
    return false;
  });
  if (hit) {
    out.verdict = Verdict::Holds;
    out.level = *hit;
    out.note = "push to level " + std::to_string(*hit) + " is nonnegative";
    return out;
  }
  // Nonnegative edges keep a nonpositive vector nonpositive, so it can only
  // become nonnegative by vanishing.
  if (negative) {
    if (auto cert = never_vanishes(d, negative->first, negative->second, bound)) {
      out.verdict = Verdict::Fails;
      out.certificate = cert;
      out.note = "push to level " + std::to_string(negative->first) +
                 " is nonpositive and never vanishes";
      return out;
    }
  }
  out.note = "no nonnegative push up to the bound";
  return out;
}

K0Decision class_in_scale(const Diagram& d, const K0Class& c, Index bound) {
  K0Decision out;
  std::optional<std::pair<Index, IntVector>> excess;
  const auto hit = search_pushes(d, c, bound, [&](Index m, const IntVector& y) {
    const IntVector z = y - d.level(m).vector();
    const bool low = std::all_of(y.begin(), y.end(), [](const BigInt& v) { return v >= 0; });
    if (low && nonpositive(z)) return true;
    if (!excess && std::all_of(z.begin(), z.end(), [](const BigInt& v) { return v >= 0; }) &&
        unital_from(d, m))
      excess.emplace(m, z);
    return false;
  });
  if (hit) {
    out.verdict = Verdict::Holds;
    out.level = *hit;
    out.note = "push to level " + std::to_string(*hit) + " lies in [0, V]";
    return out;
  }
  // With unital edges V pushes to V, so a nonnegative excess over V that
  // never vanishes keeps every push above the scale.
  if (excess) {
    if (auto cert = never_vanishes(d, excess->first, excess->second, bound)) {
      out.verdict = Verdict::Fails;
      out.certificate = cert;
      out.note = "excess over V at level " + std::to_string(excess->first) + " never vanishes";
      return out;
    }
  }
  const K0Decision positive = class_positive(d, c, bound);
  if (positive.verdict == Verdict::Fails) {
    out.verdict = Verdict::Fails;
    out.certificate = positive.certificate;
    out.note = "class is not positive";
    return out;
  }
  out.note = "no push in [0, V] up to the bound";
  return out;
}

K0Class induced_map(const Premorphism& f, const K0Class& c) {
  if (c.vector.size() != f.source().width(c.level))
    throw Error(ErrorKind::DimensionMismatch, "class does not match the source level");
  const IntMatrix& m = f.matrix_at(c.level);
  return {f.index_at(c.level), m * c.vector};
}

}  // namespace bratteli
