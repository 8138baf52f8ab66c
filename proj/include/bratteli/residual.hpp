#ifndef BRATTELI_RESIDUAL_HPP
#define BRATTELI_RESIDUAL_HPP

#include "bratteli/diagram.hpp"

#include <optional>

namespace bratteli {

/// Proof that S_{a,m} * residual never vanishes: at the tail-aligned level
/// `level`, M^powers * residual != 0 where M is the product of one tail
/// period and `powers` is the summand count, so the kernel chain of M has
/// stabilized.
struct NonVanishing {
  Index level = 0;
  IntMatrix residual;
  Index powers = 0;
};

struct VanishingDecision {
  Verdict verdict = Verdict::Unknown;  ///< Holds: vanishes, Fails: never vanishes
  Index level = 0;                     ///< smallest vanishing level when Holds
  std::optional<NonVanishing> certificate;
};

/// Decides whether the matrix `residual` living at level `start` of `d`
/// is eventually annihilated by the edges. Levels up to `bound` are searched
/// directly. Diagrams with a tail are decided exactly; the reported level is
/// always the smallest vanishing one.
VanishingDecision decide_vanishing(const Diagram& d, Index start, const IntMatrix& residual,
                                   Index bound);

/// Re-derives a NonVanishing certificate from scratch.
bool check_non_vanishing(const Diagram& d, const NonVanishing& cert);

}  // namespace bratteli

#endif  // BRATTELI_RESIDUAL_HPP
