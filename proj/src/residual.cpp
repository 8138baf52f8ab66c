#include "bratteli/residual.hpp"

#include <algorithm>

namespace bratteli {

namespace {

IntMatrix period_product(const Diagram& d, Index aligned) {
  return d.telescope_matrix(aligned, aligned + d.period());
}

IntMatrix power_apply(const IntMatrix& m, IntMatrix x, Index times) {
  for (Index i = 0; i < times && !is_zero_matrix(x); ++i) x = m * x;
  return x;
}

}  // namespace

VanishingDecision decide_vanishing(const Diagram& d, Index start, const IntMatrix& residual,
                                   Index bound) {
  VanishingDecision out;
  IntMatrix x = residual;
  Index m = start;
  const Index limit = d.has_tail() ? std::max(bound, start) : std::min(std::max(bound, start), d.depth());
  while (true) {
    if (is_zero_matrix(x)) {
      out.verdict = Verdict::Holds;
      out.level = m;
      return out;
    }
    if (m >= limit) break;
    x = d.edge_matrix(m) * x;
    ++m;
  }
  if (!d.has_tail()) return out;

  // Align to the tail and test the stabilized kernel of the period product.
  while (m < d.periodic_from()) {
    x = d.edge_matrix(m) * x;
    ++m;
    if (is_zero_matrix(x)) {
      out.verdict = Verdict::Holds;
      out.level = m;
      return out;
    }
  }
  const auto powers = static_cast<Index>(d.width(m));
  const IntMatrix stable = power_apply(period_product(d, m), x, powers);
  if (!is_zero_matrix(stable)) {
    out.verdict = Verdict::Fails;
    out.certificate = NonVanishing{m, x, powers};
    return out;
  }
  // Vanishing is now guaranteed within powers periods; locate the level.
  while (!is_zero_matrix(x)) {
    x = d.edge_matrix(m) * x;
    ++m;
  }
  out.verdict = Verdict::Holds;
  out.level = m;
  return out;
}

bool check_non_vanishing(const Diagram& d, const NonVanishing& cert) {
  if (!d.has_tail() || cert.level < d.periodic_from()) return false;
  if (cert.residual.rows() != d.width(cert.level)) return false;
  if (cert.powers < static_cast<Index>(d.width(cert.level))) return false;
  return !is_zero_matrix(power_apply(period_product(d, cert.level), cert.residual, cert.powers));
}

}  // namespace bratteli
