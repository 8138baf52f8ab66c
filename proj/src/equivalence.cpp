#include "bratteli/morphism.hpp"

#include <algorithm>
#include <numeric>

namespace bratteli {

const char* to_string(EquivalenceDefinition d) {
  switch (d) {
    case EquivalenceDefinition::Interleaving: return "25";
    case EquivalenceDefinition::Pointwise: return "29";
    case EquivalenceDefinition::Shifted: return "210";
  }
  return "?";
}

namespace {

void check_pair(const Premorphism& f, const Premorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw Error(ErrorKind::SourceTargetMismatch, "premorphisms have different source or target");
}

/// Range of n that has to be examined and whether a clean pass over it
/// decides the relation.
struct CheckRange {
  Index last = 0;
  bool infinite = false;
  bool decisive = true;
  Index joint_base = 0;
  Index joint_period = 0;
  std::string note;
};

CheckRange check_range(const Premorphism& f, const Premorphism& g) {
  CheckRange r;
  if (f.is_periodic() && g.is_periodic()) {
    const Index p = std::lcm(f.rule()->period, g.rule()->period);
    const Index sf = p / f.rule()->period * f.rule()->shift;
    const Index sg = p / g.rule()->period * g.rule()->shift;
    r.joint_base = std::max(f.base(), g.base());
    r.joint_period = p;
    if (sf == sg) {
      r.last = r.joint_base + p - 1;
      r.infinite = true;
    } else {
      r.last = std::max(f.window_depth(), g.window_depth());
      r.decisive = false;
      r.note = "periodic rules drift apart in the target; only the window was examined";
    }
    return r;
  }
  if (f.is_periodic()) r.last = g.window_depth();
  else if (g.is_periodic()) r.last = f.window_depth();
  else r.last = std::min(f.window_depth(), g.window_depth());
  r.note = "window-only verdict";
  return r;
}

/// S_{f_n top} F_n - S_{g_k top} G_k E_{nk} at top = max(f_n, g_k).
struct Residual {
  Index top;
  IntMatrix value;
};

Residual residual(const Premorphism& f, const Premorphism& g, Index n, Index k) {
  const Diagram &src = f.source(), &tgt = f.target();
  const Index a = f.index_at(n), b = g.index_at(k);
  const Index top = std::max(a, b);
  IntMatrix lhs = tgt.telescope_matrix(a, top) * f.matrix_at(n);
  IntMatrix rhs = tgt.telescope_matrix(b, top) * g.matrix_at(k);
  if (k > n) rhs = rhs * src.telescope_matrix(n, k);
  return {top, lhs - rhs};
}

EquivalenceResult trivial_result(EquivalenceDefinition def) {
  EquivalenceResult r;
  r.definition = def;
  r.verdict = Verdict::Holds;
  r.infinite = true;
  r.note = "hom-set to or from the zero diagram is a singleton";
  return r;
}

EquivalenceResult pairwise(const Premorphism& f, const Premorphism& g, Index bound, bool shifted) {
  EquivalenceResult out;
  out.definition = shifted ? EquivalenceDefinition::Shifted : EquivalenceDefinition::Pointwise;
  const CheckRange range = check_range(f, g);
  out.infinite = range.infinite;
  out.note = range.note;
  bool unknown = false;
  for (Index k = 1; k <= range.last; ++k) {
    for (Index n = shifted ? 1 : k; n <= k; ++n) {
      const Residual res = residual(f, g, n, k);
      const VanishingDecision d = decide_vanishing(f.target(), res.top, res.value, bound);
      if (d.verdict == Verdict::Holds) {
        out.identities.push_back({n, k, d.level});
      } else if (d.verdict == Verdict::Fails) {
        out.verdict = Verdict::Fails;
        out.infinite = true;
        out.identities.clear();
        out.obstruction = EquivalenceObstruction{n, k, *d.certificate};
        out.note = "residual at n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                   " never vanishes";
        return out;
      } else {
        unknown = true;
      }
    }
  }
  if (unknown) {
    out.verdict = Verdict::Unknown;
    out.infinite = false;
    out.note = "no vanishing level found within bound " + std::to_string(bound);
  } else {
    out.verdict = range.decisive && range.last > 0 ? Verdict::Holds : Verdict::Unknown;
    if (!range.decisive) out.infinite = false;
  }
  return out;
}

/// G_m E_{nm} = S_{f_n g_m} F_n.
bool forward_square(const Premorphism& f, const Premorphism& g, Index n, Index m) {
  const IntMatrix lhs = g.matrix_at(m) * f.source().telescope_matrix(n, m);
  const IntMatrix rhs = f.target().telescope_matrix(f.index_at(n), g.index_at(m)) * f.matrix_at(n);
  return same_matrix(lhs, rhs);
}

/// F_n E_{mn} = S_{g_m f_n} G_m.
bool backward_square(const Premorphism& f, const Premorphism& g, Index m, Index n) {
  return forward_square(g, f, m, n);
}

}  // namespace

EquivalenceResult equivalent_def29(const Premorphism& f, const Premorphism& g, Index bound) {
  check_pair(f, g);
  if (f.is_trivial()) return trivial_result(EquivalenceDefinition::Pointwise);
  return pairwise(f, g, bound, false);
}

EquivalenceResult equivalent_def210(const Premorphism& f, const Premorphism& g, Index bound) {
  check_pair(f, g);
  if (f.is_trivial()) return trivial_result(EquivalenceDefinition::Shifted);
  return pairwise(f, g, bound, true);
}

EquivalenceResult equivalent_def25(const Premorphism& f, const Premorphism& g, Index bound) {
  check_pair(f, g);
  if (f.is_trivial()) return trivial_result(EquivalenceDefinition::Interleaving);
  EquivalenceResult out;
  out.definition = EquivalenceDefinition::Interleaving;
  const CheckRange range = check_range(f, g);
  const bool periodic = f.is_periodic() && g.is_periodic();
  // Source indices available: the common window unless both are periodic.
  const Index source_limit = periodic ? 0 : range.last;
  auto in_source = [&](Index i) { return source_limit == 0 || i <= source_limit; };

  InterleavingWitness& w = out.interleaving;
  w.n_seq.push_back(1);
  bool exhausted = false;
  while (true) {
    // Periodic closure: the state "choose the next m after n" recurs.
    if (periodic && range.decisive) {
      const Index nk = w.n_seq.back();
      for (Index j = 0; j + 1 < w.n_seq.size(); ++j) {
        const Index nj = w.n_seq[j];
        if (nj >= range.joint_base && (nk - nj) % range.joint_period == 0) {
          w.closure_from = j;
          out.verdict = Verdict::Holds;
          out.infinite = true;
          return out;
        }
      }
    }
    const Index n = w.n_seq.back();
    const Index fn = f.index_at(n);
    std::optional<Index> m;
    bool candidate_seen = false, hit_bound = false;
    for (Index c = n + 1; in_source(c); ++c) {
      const Index gc = g.index_at(c);
      if (gc > bound) { hit_bound = true; break; }
      if (gc <= fn) continue;
      candidate_seen = true;
      if (forward_square(f, g, n, c)) { m = c; break; }
    }
    if (!m) { exhausted = !candidate_seen && !hit_bound; break; }
    w.m_seq.push_back(*m);
    const Index gm = g.index_at(*m);
    std::optional<Index> next;
    candidate_seen = hit_bound = false;
    for (Index c = *m + 1; in_source(c); ++c) {
      const Index fc = f.index_at(c);
      if (fc > bound) { hit_bound = true; break; }
      if (fc <= gm) continue;
      candidate_seen = true;
      if (backward_square(f, g, *m, c)) { next = c; break; }
    }
    if (!next) { exhausted = !candidate_seen && !hit_bound; break; }
    w.n_seq.push_back(*next);
  }
  const Index placed = w.m_seq.size() + w.n_seq.size();
  const Index last_placed = w.m_seq.size() == w.n_seq.size() ? w.m_seq.back() : w.n_seq.back();
  if (!periodic && exhausted && placed >= 2 && last_placed == range.last) {
    out.verdict = Verdict::Holds;
    out.infinite = false;
    out.note = "interleaving covers the whole window";
  } else {
    out.verdict = Verdict::Unknown;
    out.note = "interleaving stalled at index " + std::to_string(last_placed) + " within bound " +
               std::to_string(bound);
  }
  return out;
}

EquivalenceResult equivalent(const Premorphism& f, const Premorphism& g, EquivalenceDefinition def,
                             Index bound) {
  switch (def) {
    case EquivalenceDefinition::Interleaving: return equivalent_def25(f, g, bound);
    case EquivalenceDefinition::Pointwise: return equivalent_def29(f, g, bound);
    case EquivalenceDefinition::Shifted: return equivalent_def210(f, g, bound);
  }
  return {};
}

bool reverify(const EquivalenceResult& r, const Premorphism& f, const Premorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) return false;
  if (f.is_trivial()) return r.verdict == Verdict::Holds;
  const Diagram &src = f.source(), &tgt = f.target();
  for (const IdentityWitness& w : r.identities) {
    if (w.n > w.k || !f.covers(w.n) || !g.covers(w.k)) return false;
    const Index a = f.index_at(w.n), b = g.index_at(w.k);
    if (w.m < a || w.m < b) return false;
    const IntMatrix lhs = tgt.telescope_matrix(a, w.m) * f.matrix_at(w.n);
    const IntMatrix rhs = tgt.telescope_matrix(b, w.m) * g.matrix_at(w.k) * src.telescope_matrix(w.n, w.k);
    if (!same_matrix(lhs, rhs)) return false;
  }
  const InterleavingWitness& iw = r.interleaving;
  for (Index k = 0; k < iw.m_seq.size(); ++k) {
    const Index n = iw.n_seq[k], m = iw.m_seq[k];
    if (!(n < m) || !(f.index_at(n) < g.index_at(m))) return false;
    if (!forward_square(f, g, n, m)) return false;
    if (k + 1 < iw.n_seq.size()) {
      const Index next = iw.n_seq[k + 1];
      if (!(m < next) || !(g.index_at(m) < f.index_at(next))) return false;
      if (!backward_square(f, g, m, next)) return false;
    }
  }
  if (r.obstruction) {
    const EquivalenceObstruction& ob = *r.obstruction;
    Residual res = residual(f, g, ob.n, ob.k);
    if (ob.proof.level < res.top) return false;
    IntMatrix pushed = tgt.telescope_matrix(res.top, ob.proof.level) * res.value;
    if (!same_matrix(pushed, ob.proof.residual)) return false;
    if (!check_non_vanishing(tgt, ob.proof)) return false;
  }
  return true;
}

}  // namespace bratteli
