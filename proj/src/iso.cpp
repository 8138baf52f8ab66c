#include "bratteli/iso.hpp"

#include "bratteli/uhf.hpp"

#include <algorithm>
#include <set>

namespace bratteli {

const char* to_string(ClosureKind k) {
  switch (k) {
    case ClosureKind::None: return "none";
    case ClosureKind::Periodic: return "periodic";
    case ClosureKind::Uhf: return "uhf";
  }
  return "?";
}

namespace {

using RowVisit = std::function<bool(const IntMatrix&)>;
/// Called once per candidate; false stops the enumeration.
using Tick = std::function<bool()>;

/// Nonnegative integer rows x with x a = c, x.w <= cap and x_i <= bound_i,
/// ascending lexicographically.
std::vector<IntVector> row_solutions(const IntMatrix& a, const IntVector& c, const IntVector& w,
                                     const BigInt& cap, const IntVector& bound, std::size_t limit) {
  const Eigen::Index n = a.rows(), m = a.cols();
  std::vector<IntVector> out;
  Eigen::Index last_nz = -1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!is_zero_matrix(a.row(i))) last_nz = i;
  if (last_nz < 0 && !is_zero_matrix(c)) return out;
  IntVector x = IntVector::Zero(n);
  IntVector resid = c;
  std::function<void(Eigen::Index, const BigInt&)> rec = [&](Eigen::Index i, const BigInt& cap_left) {
    if (out.size() >= limit) return;
    if (i == n) {
      out.push_back(x);
      return;
    }
    BigInt hi = std::min(BigInt(bound(i)), BigInt(cap_left / w(i)));
    for (Eigen::Index j = 0; j < m; ++j)
      if (a(i, j) > 0) hi = std::min(hi, BigInt(resid(j) / a(i, j)));
    if (i == last_nz) {
      Eigen::Index j = 0;
      while (a(i, j) == 0) ++j;
      if (resid(j) % a(i, j) != 0) return;
      const BigInt v = resid(j) / a(i, j);
      if (v > hi) return;
      if (!same_matrix(IntVector(resid - v * a.row(i).transpose()), IntVector::Zero(m))) return;
      x(i) = v;
      const IntVector saved = resid;
      resid.setZero();
      rec(i + 1, cap_left - v * w(i));
      resid = saved;
      x(i) = 0;
      return;
    }
    for (BigInt v = 0; v <= hi && out.size() < limit; ++v) {
      x(i) = v;
      const IntVector saved = resid;
      resid -= v * a.row(i).transpose();
      rec(i + 1, cap_left - v * w(i));
      resid = saved;
    }
    x(i) = 0;
  };
  rec(0, cap);
  return out;
}

/// Embedding matrices X with X a = c, X w <= caps rowwise, X_ij <= bound_j.
/// Rows vary with row 0 most significant.
bool for_each_solution(const IntMatrix& a, const IntMatrix& c, const IntVector& w,
                       const IntVector& caps, const IntVector& bound, const RowVisit& visit,
                       const Tick& tick = {}, std::size_t limit = 1 << 14) {
  const Eigen::Index p = c.rows();
  std::vector<std::vector<IntVector>> rows(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    rows[i] = row_solutions(a, c.row(i).transpose(), w, caps(i), bound, limit);
    if (rows[i].empty()) return true;
  }
  IntMatrix x(p, w.size());
  std::function<bool(Eigen::Index)> rec = [&](Eigen::Index i) {
    if (i == p) {
      if (tick && !tick()) return false;
      return is_embedding(x) ? visit(x) : true;
    }
    for (const IntVector& row : rows[i]) {
      x.row(i) = row.transpose();
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> low, high;
  for (BigInt d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      low.push_back(d);
      if (d * d != n) high.push_back(n / d);
    }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

bool fits(const IntMatrix& x, const LevelVector& from, const LevelVector& to) {
  return x.rows() == to.size() && x.cols() == from.size() && is_nonnegative(x) &&
         is_embedding(x) && leq_componentwise(IntVector(x * from.vector()), to.vector());
}

/// Same tail phases, same R, and both level scalings agree.
bool closes(const Diagram& b, const Diagram& d, Index rj, Index tj, Index rk, Index tk,
            const IntMatrix& Rj, const IntMatrix& Rk) {
  if (!b.has_tail() || !d.has_tail()) return false;
  if (rj < b.periodic_from() || tj < d.periodic_from() || rk <= rj || tk <= tj) return false;
  if (b.phase(rj) != b.phase(rk) || d.phase(tj) != d.phase(tk)) return false;
  if (!same_matrix(Rj, Rk)) return false;
  return ipow(b.scale(), (rk - rj) / b.period()) == ipow(d.scale(), (tk - tj) / d.period());
}

BigInt k_of(const Diagram& d, Index n) { return d.level(n)[0]; }

/// Appends unital steps T, R until the certificate reaches the requested
/// indices. Requires UHF shape and equal invariants.
void extend_unital(IntertwiningCertificate& c, const Diagram& b, const Diagram& d, Index min_r,
                   Index min_t) {
  constexpr Index kScan = 1 << 12;
  auto next_index = [&](const Diagram& x, Index from, const BigInt& divisor) {
    for (Index n = from + 1; n <= from + kScan; ++n)
      if (k_of(x, n) % divisor == 0) return n;
    throw Error(ErrorKind::LimitExceeded, "divisibility not reached while extending");
  };
  if (c.r.empty()) {
    c.r.push_back(1);
    c.t.push_back(next_index(d, 0, k_of(b, 1)));
    c.R.push_back(IntMatrix::Constant(1, 1, k_of(d, c.t[0]) / k_of(b, 1)));
  }
  while (c.R.size() < 2 || c.r.back() < min_r || c.t[c.t.size() - 2] < min_t) {
    const BigInt m = k_of(d, c.t.back());
    const Index r = next_index(b, c.r.back(), m);
    c.T.push_back(IntMatrix::Constant(1, 1, k_of(b, r) / m));
    c.r.push_back(r);
    const Index t = next_index(d, c.t.back(), k_of(b, r));
    c.R.push_back(IntMatrix::Constant(1, 1, k_of(d, t) / k_of(b, r)));
    c.t.push_back(t);
  }
}

IntVector uniform_bound(Eigen::Index n, const IntMatrix& m) {
  return IntVector::Constant(n, std::max(max_entry(m), BigInt(1)));
}

/// T R = E with T an embedding forces R_kj <= max_i E_ij.
void factor_each(const MultiplicityMatrix& e, const LevelVector& v_mid,
                 const std::function<bool(const Factorization&)>& visit, const Tick& tick) {
  const LevelVector &v = e.domain(), &v2 = e.codomain();
  if (v.size() == 1 && v_mid.size() == 1 && v2.size() == 1) {
    for (const BigInt& r : divisors(e.matrix()(0, 0))) {
      if (tick && !tick()) return;
      const IntMatrix R = IntMatrix::Constant(1, 1, r);
      const IntMatrix T = IntMatrix::Constant(1, 1, e.matrix()(0, 0) / r);
      if (fits(R, v, v_mid) && fits(T, v_mid, v2) && !visit({R, T})) return;
    }
    return;
  }
  IntVector column_max(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j)
    column_max(j) = std::max(BigInt(e.matrix().col(j).maxCoeff()), BigInt(1));
  const IntMatrix none(v.size(), 0);
  const IntMatrix empty(v_mid.size(), 0);
  for_each_solution(none, empty, v.vector(), v_mid.vector(), column_max, [&](const IntMatrix& R) {
    return for_each_solution(R, e.matrix(), v_mid.vector(), v2.vector(),
                             uniform_bound(v_mid.size(), e.matrix()),
                             [&](const IntMatrix& T) { return visit({R, T}); }, tick);
  }, tick);
}

class Searcher {
 public:
  Searcher(const Diagram& b, const Diagram& d, std::size_t budget)
      : b_(b), d_(d), budget_(budget) {}

  std::optional<IntertwiningCertificate> run(Index depth) {
    for (Index top = 1; top <= depth && !out_of_budget(); ++top) {
      failed_.clear();
      limit_ = top;
      if (start()) return cert_;
    }
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }
  bool out_of_budget() const { return nodes_ >= budget_; }

 private:
  Tick tick() {
    return [this] {
      ++nodes_;
      return !out_of_budget();
    };
  }

  bool start() {
    for (Index r1 = 1; r1 <= limit_; ++r1)
      for (Index t1 = 1; t1 <= limit_; ++t1)
        for (Index r2 = r1 + 1; r2 <= limit_; ++r2) {
          bool found = false;
          factor_each(b_.telescope(r1, r2), d_.level(t1), [&](const Factorization& f) {
            cert_ = IntertwiningCertificate{{r1, r2}, {t1}, {f.R}, {f.T}, ClosureKind::None, 0};
            found = after_t();
            return !found;
          }, tick());
          if (found) return true;
          if (out_of_budget()) return false;
        }
    return false;
  }

  std::string key(char side) const {
    const IntMatrix& m = side == 'R' ? cert_.R.back() : cert_.T.back();
    return side + std::to_string(cert_.r.back()) + ":" + std::to_string(cert_.t.back()) + ":" +
           format_matrix(m);
  }

  /// Next R after T_k; r has one more entry than t.
  bool after_t() {
    const std::string k = key('T');
    if (failed_.count(k)) return false;
    const Index r = cert_.r.back(), t = cert_.t.back();
    const LevelVector v = b_.level(r);
    for (Index t2 = t + 1; t2 <= limit_; ++t2) {
      const IntMatrix f = d_.telescope_matrix(t, t2);
      bool found = false;
      for_each_solution(cert_.T.back(), f, v.vector(), d_.level(t2).vector(),
                        uniform_bound(v.size(), f), [&](const IntMatrix& x) {
                          cert_.t.push_back(t2);
                          cert_.R.push_back(x);
                          found = closure() || after_r();
                          if (!found) {
                            cert_.t.pop_back();
                            cert_.R.pop_back();
                          }
                          return !found;
                        }, tick());
      if (found) return true;
      if (out_of_budget()) return false;
    }
    failed_.insert(k);
    return false;
  }

  /// Next T after R_k; r and t have equal length.
  bool after_r() {
    const std::string k = key('R');
    if (failed_.count(k)) return false;
    const Index r = cert_.r.back(), t = cert_.t.back();
    const LevelVector w = d_.level(t);
    for (Index r2 = r + 1; r2 <= limit_; ++r2) {
      const IntMatrix e = b_.telescope_matrix(r, r2);
      bool found = false;
      for_each_solution(cert_.R.back(), e, w.vector(), b_.level(r2).vector(),
                        uniform_bound(w.size(), e), [&](const IntMatrix& x) {
                          cert_.r.push_back(r2);
                          cert_.T.push_back(x);
                          found = after_t();
                          if (!found) {
                            cert_.r.pop_back();
                            cert_.T.pop_back();
                          }
                          return !found;
                        }, tick());
      if (found) return true;
      if (out_of_budget()) return false;
    }
    failed_.insert(k);
    return false;
  }

  bool closure() {
    const Index k = cert_.R.size();
    for (Index j = 1; j < k; ++j)
      if (closes(b_, d_, cert_.r[j - 1], cert_.t[j - 1], cert_.r[k - 1], cert_.t[k - 1],
                 cert_.R[j - 1], cert_.R[k - 1])) {
        cert_.closure = ClosureKind::Periodic;
        cert_.closure_from = j;
        return true;
      }
    return false;
  }

  const Diagram& b_;
  const Diagram& d_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  Index limit_ = 0;
  IntertwiningCertificate cert_;
  std::set<std::string> failed_;
};

/// r = t = 1, 2, ..., one period past the prefix; R = identity, T = edges.
IntertwiningCertificate identity_certificate(const Diagram& b) {
  IntertwiningCertificate c;
  const Index last = b.periodic_from() + b.period();
  for (Index n = 1; n <= last; ++n) {
    c.r.push_back(n);
    c.t.push_back(n);
    c.R.push_back(identity(b.width(n)));
    if (n < last) c.T.push_back(b.edge_matrix(n));
  }
  c.closure = ClosureKind::Periodic;
  c.closure_from = b.periodic_from();
  return c;
}

std::string describe_exponent(unsigned long e) {
  return e == ULONG_MAX ? std::string("∞") : std::to_string(e);
}

std::optional<IsoObstruction> uhf_obstruction(const Diagram& b, const Diagram& d) {
  const SupernaturalNumber x = uhf_invariant(b), y = uhf_invariant(d);
  if (sn_equal(x, y)) return std::nullopt;
  std::set<BigInt> primes(x.infinite_primes.begin(), x.infinite_primes.end());
  primes.insert(y.infinite_primes.begin(), y.infinite_primes.end());
  for (const auto& [p, e] : x.finite_part) primes.insert(p);
  for (const auto& [p, e] : y.finite_part) primes.insert(p);
  for (const BigInt& p : primes)
    if (x.exponent(p) != y.exponent(p))
      return IsoObstruction{"uhf-invariant", "UHF invariant: ε differs at prime " + p.str() + " (" +
                                                 describe_exponent(x.exponent(p)) + " vs " +
                                                 describe_exponent(y.exponent(p)) + ")"};
  return std::nullopt;
}

}  // namespace

void factor_as_product(const MultiplicityMatrix& e, const LevelVector& v_mid,
                       const std::function<bool(const Factorization&)>& visit) {
  factor_each(e, v_mid, visit, {});
}

std::vector<Factorization> factor_as_product(const MultiplicityMatrix& e, const LevelVector& v_mid,
                                             std::size_t limit) {
  std::vector<Factorization> out;
  factor_as_product(e, v_mid, [&](const Factorization& f) {
    out.push_back(f);
    return out.size() < limit;
  });
  return out;
}

bool verify_certificate(const IntertwiningCertificate& c, const Diagram& b, const Diagram& d) {
  if (b.is_zero() || d.is_zero())
    return b.is_zero() && d.is_zero() && c.r.empty() && c.t.empty() && c.R.empty() && c.T.empty();
  const Index k = c.R.size();
  if (k == 0 || c.r.size() != k || c.t.size() != k || c.T.size() + 1 != k) return false;
  for (Index i = 0; i < k; ++i) {
    if (!b.resolvable(c.r[i]))
      throw Error(ErrorKind::OutOfRange, "r index " + std::to_string(c.r[i]) + " not resolvable");
    if (!d.resolvable(c.t[i]))
      throw Error(ErrorKind::OutOfRange, "t index " + std::to_string(c.t[i]) + " not resolvable");
    if (i > 0 && (c.r[i] <= c.r[i - 1] || c.t[i] <= c.t[i - 1])) return false;
  }
  for (Index i = 0; i < k; ++i) {
    if (!fits(c.R[i], b.level(c.r[i]), d.level(c.t[i]))) return false;
    if (i + 1 == k) break;
    if (!fits(c.T[i], d.level(c.t[i]), b.level(c.r[i + 1]))) return false;
    if (!same_matrix(IntMatrix(c.T[i] * c.R[i]), b.telescope_matrix(c.r[i], c.r[i + 1])))
      return false;
    if (!same_matrix(IntMatrix(c.R[i + 1] * c.T[i]), d.telescope_matrix(c.t[i], c.t[i + 1])))
      return false;
  }
  switch (c.closure) {
    case ClosureKind::None: return true;
    case ClosureKind::Periodic: {
      const Index j = c.closure_from;
      if (j < 1 || j >= k) return false;
      return closes(b, d, c.r[j - 1], c.t[j - 1], c.r[k - 1], c.t[k - 1], c.R[j - 1], c.R[k - 1]);
    }
    case ClosureKind::Uhf: {
      if (!b.has_tail() || !d.has_tail() || !is_uhf_shape(b) || !is_uhf_shape(d)) return false;
      const IntVector image = c.R.back() * b.level(c.r.back()).vector();
      if (!same_matrix(image, d.level(c.t.back()).vector())) return false;
      return check_interleaving(b, d, 0).verdict == Verdict::Holds;
    }
  }
  return false;
}

bool check_obstruction(const IsoObstruction& o, const Diagram& b, const Diagram& d) {
  if (o.kind == "zero-mismatch") return b.is_zero() != d.is_zero();
  if (o.kind == "uhf-invariant")
    return b.has_tail() && d.has_tail() && is_uhf_shape(b) && is_uhf_shape(d) &&
           check_interleaving(b, d, 0).verdict == Verdict::Fails;
  return false;
}

IsoResult search_intertwining(const Diagram& b, const Diagram& d, const IsoSearchOptions& options) {
  IsoResult out;
  if (b.is_zero() || d.is_zero()) {
    if (b.is_zero() && d.is_zero()) {
      out.verdict = Verdict::Holds;
      out.certificate = IntertwiningCertificate{};
      out.note = "both diagrams are zero";
    } else {
      out.verdict = Verdict::Fails;
      out.obstruction = IsoObstruction{"zero-mismatch", "exactly one diagram is zero"};
    }
    return out;
  }
  if (!b.has_tail() || !d.has_tail()) {
    out.note = "a truncated presentation admits no closing certificate";
    return out;
  }
  const bool uhf = is_uhf_shape(b) && is_uhf_shape(d);
  if (uhf) {
    if (auto ob = uhf_obstruction(b, d)) {
      out.verdict = Verdict::Fails;
      out.obstruction = ob;
      return out;
    }
  }
  if (b == d && b.periodic_from() + b.period() <= options.depth) {
    IntertwiningCertificate c = identity_certificate(b);
    if (verify_certificate(c, b, d)) {
      out.verdict = Verdict::Holds;
      out.certificate = std::move(c);
      out.note = "identical presentations";
      return out;
    }
  }
  Searcher searcher(b, d, uhf ? options.uhf_node_budget : options.node_budget);
  auto cert = searcher.run(options.depth);
  out.nodes = searcher.nodes();
  if (cert) {
    out.verdict = Verdict::Holds;
    out.certificate = std::move(cert);
    out.note = "periodic closure";
    return out;
  }
  if (uhf) {
    IntertwiningCertificate c;
    extend_unital(c, b, d, 1, 1);
    c.closure = ClosureKind::Uhf;
    out.verdict = Verdict::Holds;
    out.certificate = std::move(c);
    out.note = "equal supernatural invariants";
    return out;
  }
  out.note = searcher.out_of_budget() ? "search budget exhausted"
                                      : "no certificate with indices up to " +
                                            std::to_string(options.depth);
  return out;
}

IsoResult search_intertwining(const Diagram& b, const Diagram& d, Index depth) {
  IsoSearchOptions options;
  options.depth = depth;
  return search_intertwining(b, d, options);
}

std::pair<Premorphism, Premorphism> morphisms_from_certificate(const IntertwiningCertificate& cert,
                                                               DiagramPtr b, DiagramPtr d,
                                                               Index depth) {
  if (!verify_certificate(cert, *b, *d))
    throw Error(ErrorKind::InvalidCertificate, "certificate does not verify");
  if (b->is_zero()) return {Premorphism::zero(b, d), Premorphism::zero(d, b)};
  IntertwiningCertificate c = cert;
  if (c.closure == ClosureKind::Uhf) extend_unital(c, *b, *d, depth, depth);
  if (c.closure == ClosureKind::Periodic) {
    // Continue one step past the repeat so that T_k and r_{k+1} exist.
    const Index j = c.closure_from, k = c.R.size();
    c.T.push_back(c.T[j - 1]);
    c.r.push_back(c.r[j] + (c.r[k - 1] - c.r[j - 1]));
  }
  const Index k = c.R.size();
  PremorphismWindow f{b, d, {}, {}, std::nullopt};
  for (Index i = 0, n = 1; i < k; ++i)
    for (; n <= c.r[i]; ++n) {
      f.indices.push_back(c.t[i]);
      f.matrices.push_back(c.R[i] * b->telescope_matrix(n, c.r[i]));
    }
  PremorphismWindow g{d, b, {}, {}, std::nullopt};
  for (Index i = 0, m = 1; i < c.T.size(); ++i)
    for (; m <= c.t[i]; ++m) {
      g.indices.push_back(c.r[i + 1]);
      g.matrices.push_back(c.T[i] * d->telescope_matrix(m, c.t[i]));
    }
  if (c.closure == ClosureKind::Periodic) {
    const Index j = c.closure_from;
    const Index dr = c.r[k - 1] - c.r[j - 1], dt = c.t[k - 1] - c.t[j - 1];
    f.rule = PeriodicRule{dr, dt};
    g.rule = PeriodicRule{dt, dr};
  }
  return {Premorphism::validate(std::move(f)), Premorphism::validate(std::move(g))};
}

}  // namespace bratteli
