#ifndef BRATTELI_UHF_HPP
#define BRATTELI_UHF_HPP

#include "bratteli/diagram.hpp"

#include <map>
#include <set>
#include <string>

namespace bratteli {

/// Formal product of primes with exponents in N or infinity.
struct SupernaturalNumber {
  std::map<BigInt, unsigned long> finite_part;
  std::set<BigInt> infinite_primes;
  /// Computed from a presentation without a tail: exponents are lower bounds.
  bool truncated = false;

  /// Exponent of p, with ULONG_MAX standing for infinity.
  unsigned long exponent(const BigInt& p) const;
};

/// Ascending prime order, e.g. `2^∞ · 3^1 · 5^∞`; "1" when empty.
std::string to_string(const SupernaturalNumber& s);

/// Equal finite parts and equal sets of infinite primes.
bool sn_equal(const SupernaturalNumber& a, const SupernaturalNumber& b);

/// Trial division; keys ascending.
std::map<BigInt, unsigned long> factorize(BigInt n);

/// Every level 1x1 and k_n | k_{n+1}.
bool is_uhf_shape(const Diagram& d);

/// Throws NotUhfShape.
SupernaturalNumber uhf_invariant(const Diagram& d);

struct UhfInterleaving {
  Verdict verdict = Verdict::Unknown;
  std::string note;
};

/// Mutual divisibility: every k_n divides some m_l and every m_l divides some
/// k_n. Exact on tails; truncated presentations are examined up to `bound`.
/// Throws NotUhfShape.
UhfInterleaving check_interleaving(const Diagram& d1, const Diagram& d2, Index bound);

}  // namespace bratteli

#endif  // BRATTELI_UHF_HPP
