#ifndef BRATTELI_K0_HPP
#define BRATTELI_K0_HPP

#include "bratteli/morphism.hpp"

#include <optional>
#include <string>

namespace bratteli {

/// Element of the inductive limit of Z^{k_n}, represented at a finite level.
struct K0Class {
  Index level = 0;
  IntVector vector;
};

/// Throws OutOfRange or DimensionMismatch.
K0Class make_class(const Diagram& d, Index level, IntVector vector);

/// `K0@n [x1,...,xk]`.
std::string to_string(const K0Class& c);

/// (n, x) -> (m, E_{nm} x). Throws OutOfRange.
K0Class push(const Diagram& d, const K0Class& c, Index m);

struct K0Decision {
  Verdict verdict = Verdict::Unknown;
  /// Level where the property was observed when Holds.
  Index level = 0;
  /// Never-vanishing residual behind a Fails verdict.
  std::optional<NonVanishing> certificate;
  std::string note;
};

K0Decision class_equal(const Diagram& d, const K0Class& a, const K0Class& b, Index bound);

/// Some push is componentwise nonnegative.
K0Decision class_positive(const Diagram& d, const K0Class& c, Index bound);

/// Some push y satisfies 0 <= y <= V_m componentwise.
K0Decision class_in_scale(const Diagram& d, const K0Class& c, Index bound);

/// (n, x) -> (f_n, F_n x). Throws OutOfWindow or DimensionMismatch.
K0Class induced_map(const Premorphism& f, const K0Class& c);

}  // namespace bratteli

#endif  // BRATTELI_K0_HPP
