#include "bratteli/uhf.hpp"

#include <climits>

namespace bratteli {

namespace {

/// Number of bits of n > 0; p^bits(n) > n for every p >= 2.
std::size_t bit_length(const BigInt& n) { return n <= 0 ? 0 : mp::msb(n) + 1; }

/// Value k_n of a 1x1 level.
BigInt scalar(const Diagram& d, Index n) { return d.level(n)[0]; }

/// Level from which the level values repeat up to the tail scale, and the
/// last level of its period.
Index last_of_first_period(const Diagram& d) { return d.prefix_length() + d.period(); }

void require_shape(const Diagram& d) {
  if (d.is_zero()) throw Error(ErrorKind::NotUhfShape, "the zero diagram is not of UHF type");
  const Index last = d.has_tail() ? last_of_first_period(d) + 1 : d.prefix_length();
  for (Index n = 1; n <= last; ++n)
    if (d.width(n) != 1)
      throw Error(ErrorKind::NotUhfShape, "level " + std::to_string(n) + " has " +
                                              std::to_string(d.width(n)) + " summands",
                  static_cast<long>(n));
  for (Index n = 1; n < last; ++n) {
    const BigInt k = scalar(d, n), next = scalar(d, n + 1);
    if (next % k != 0)
      throw Error(ErrorKind::NotUhfShape,
                  "k_" + std::to_string(n) + " = " + k.str() + " does not divide k_" +
                      std::to_string(n + 1) + " = " + next.str(),
                  static_cast<long>(n));
    if (d.edge_matrix(n)(0, 0) * k != next)
      throw Error(ErrorKind::NotUhfShape, "edge " + std::to_string(n) + " is not unital",
                  static_cast<long>(n));
  }
}

/// True when every prime factor of a divides b.
bool radical_divides(const BigInt& a, const BigInt& b) {
  if (a == 1) return true;
  if (b <= 1) return false;
  return ipow(b, bit_length(a)) % a == 0;
}

/// Whether k divides some level of d, reading d up to `bound` when truncated.
Verdict divides_some_level(const BigInt& k, const Diagram& d, Index bound) {
  if (d.has_tail()) {
    const BigInt top = scalar(d, last_of_first_period(d));
    return (top * ipow(d.scale(), bit_length(k))) % k == 0 ? Verdict::Holds : Verdict::Fails;
  }
  const Index last = std::min(bound, d.prefix_length());
  return scalar(d, last) % k == 0 ? Verdict::Holds : Verdict::Unknown;
}

/// Every k_n of d1 divides some level of d2.
UhfInterleaving one_side(const Diagram& d1, const Diagram& d2, Index bound, const std::string& a,
                         const std::string& b) {
  UhfInterleaving out;
  if (d1.has_tail()) {
    const BigInt top = scalar(d1, last_of_first_period(d1));
    const Verdict head = divides_some_level(top, d2, bound);
    if (head != Verdict::Holds) {
      out.verdict = head;
      out.note = a + " level " + top.str() + " divides no level of " + b;
      return out;
    }
    if (!d2.has_tail() && d1.scale() != 1) {
      out.note = b + " is truncated while " + a + " keeps growing";
      return out;
    }
    if (!radical_divides(d1.scale(), d2.has_tail() ? d2.scale() : BigInt(1))) {
      out.verdict = Verdict::Fails;
      out.note = "a prime of the " + a + " tail ratio " + d1.scale().str() +
                 " does not divide the " + b + " tail ratio " +
                 (d2.has_tail() ? d2.scale() : BigInt(1)).str();
      return out;
    }
    out.verdict = Verdict::Holds;
    return out;
  }
  const Index last = std::min(bound, d1.prefix_length());
  out.verdict = divides_some_level(scalar(d1, last), d2, bound);
  if (out.verdict == Verdict::Fails)
    out.note = a + " level " + scalar(d1, last).str() + " divides no level of " + b;
  else if (out.verdict == Verdict::Holds)
    out.verdict = Verdict::Unknown;
  if (out.verdict == Verdict::Unknown && out.note.empty())
    out.note = a + " is truncated; only levels up to " + std::to_string(last) + " were examined";
  return out;
}

}  // namespace

unsigned long SupernaturalNumber::exponent(const BigInt& p) const {
  if (infinite_primes.count(p)) return ULONG_MAX;
  auto it = finite_part.find(p);
  return it == finite_part.end() ? 0 : it->second;
}

std::string to_string(const SupernaturalNumber& s) {
  std::map<BigInt, std::string> parts;
  for (const auto& [p, e] : s.finite_part) parts[p] = p.str() + "^" + std::to_string(e);
  for (const BigInt& p : s.infinite_primes) parts[p] = p.str() + "^∞";
  if (parts.empty()) return "1";
  std::string out;
  for (const auto& [p, text] : parts) {
    if (!out.empty()) out += " · ";
    out += text;
  }
  return out;
}

bool sn_equal(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return a.finite_part == b.finite_part && a.infinite_primes == b.infinite_primes;
}

std::map<BigInt, unsigned long> factorize(BigInt n) {
  std::map<BigInt, unsigned long> out;
  if (n < 0) n = -n;
  for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

bool is_uhf_shape(const Diagram& d) {
  try {
    require_shape(d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

SupernaturalNumber uhf_invariant(const Diagram& d) {
  require_shape(d);
  SupernaturalNumber s;
  const Index last = d.has_tail() ? last_of_first_period(d) : d.prefix_length();
  s.truncated = !d.has_tail();
  if (d.has_tail())
    for (const auto& [p, e] : factorize(d.scale())) s.infinite_primes.insert(p);
  for (const auto& [p, e] : factorize(scalar(d, last)))
    if (!s.infinite_primes.count(p)) s.finite_part[p] = e;
  return s;
}

UhfInterleaving check_interleaving(const Diagram& d1, const Diagram& d2, Index bound) {
  require_shape(d1);
  require_shape(d2);
  UhfInterleaving forward = one_side(d1, d2, bound, "first", "second");
  if (forward.verdict == Verdict::Fails) return forward;
  UhfInterleaving backward = one_side(d2, d1, bound, "second", "first");
  if (backward.verdict == Verdict::Fails) return backward;
  if (forward.verdict == Verdict::Unknown) return forward;
  if (backward.verdict == Verdict::Unknown) return backward;
  return {Verdict::Holds, "mutual divisibility holds at every level"};
}

}  // namespace bratteli
