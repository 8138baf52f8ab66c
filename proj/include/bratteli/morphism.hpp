#ifndef BRATTELI_MORPHISM_HPP
#define BRATTELI_MORPHISM_HPP

#include "bratteli/diagram.hpp"
#include "bratteli/residual.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bratteli {

/// F_{n+period} = F_n and f_{n+period} = f_n + shift for n >= base, where
/// base = window depth - period.
struct PeriodicRule {
  Index period = 1;
  Index shift = 1;

  friend bool operator==(const PeriodicRule&, const PeriodicRule&) = default;
};

struct PremorphismWindow {
  DiagramPtr source;
  DiagramPtr target;
  std::vector<Index> indices;        ///< f_1..f_L
  std::vector<IntMatrix> matrices;   ///< F_1..F_L
  std::optional<PeriodicRule> rule;
};

/// Validated premorphism. Window-only premorphisms (no rule) are defined up
/// to their window depth; with a rule they are defined at every level and
/// cofinality is certified by the positive shift.
class Premorphism {
 public:
  /// Throws SquareFails, MonotonicityFails, MultiplicityViolation,
  /// PeriodicRuleInvalid, OutOfRange or DimensionMismatch.
  static Premorphism validate(PremorphismWindow w);
  /// The zero premorphism. Between two non-zero diagrams it is the family of
  /// zero matrices with f_n = n.
  static Premorphism zero(DiagramPtr source, DiagramPtr target, Index depth = 1);

  bool is_zero() const { return zero_; }
  /// Touches the zero diagram, hence carries no data.
  bool is_trivial() const { return source_->is_zero() || target_->is_zero(); }
  bool is_periodic() const { return window_.rule.has_value(); }
  bool window_only() const { return !is_periodic(); }

  const Diagram& source() const { return *source_; }
  const Diagram& target() const { return *target_; }
  const DiagramPtr& source_ptr() const { return source_; }
  const DiagramPtr& target_ptr() const { return target_; }
  const PremorphismWindow& window() const { return window_; }
  const std::optional<PeriodicRule>& rule() const { return window_.rule; }

  Index window_depth() const { return window_.indices.size(); }
  /// First index from which the rule applies.
  Index base() const { return window_depth() - window_.rule->period; }
  bool covers(Index n) const { return n >= 1 && (is_periodic() || n <= window_depth()); }

  /// f_n; throws OutOfWindow.
  Index index_at(Index n) const;
  /// F_n; throws OutOfWindow.
  const IntMatrix& matrix_at(Index n) const;

  /// Same premorphism with its window unrolled to at least `depth`.
  Premorphism extended(Index depth) const;

 private:
  Premorphism() = default;
  void check(Index n) const;

  DiagramPtr source_;
  DiagramPtr target_;
  PremorphismWindow window_;
  bool zero_ = false;
};

/// H_n = G_{f_n} F_n, h_n = g_{f_n}. Throws ComposabilityMismatch, EmptyWindow.
Premorphism compose(const Premorphism& g, const Premorphism& f);

/// F_n = I, f_n = n. With a tail the result carries a periodic rule.
Premorphism identity_premorphism(DiagramPtr d, Index depth);

/// Exact equality of the data of two premorphisms at every n covered by both
/// windows (after unrolling periodic rules to a common depth).
bool same_data(const Premorphism& a, const Premorphism& b);

enum class EquivalenceDefinition { Interleaving, Pointwise, Shifted };

const char* to_string(EquivalenceDefinition d);

/// S_{f_n m} F_n = S_{g_k m} G_k E_{nk}; k == n for the pointwise form.
struct IdentityWitness {
  Index n = 0;
  Index k = 0;
  Index m = 0;
};

struct InterleavingWitness {
  std::vector<Index> n_seq;
  std::vector<Index> m_seq;
  /// Index into n_seq whose state recurs at the end (periodic continuation).
  std::optional<Index> closure_from;
};

struct EquivalenceObstruction {
  Index n = 0;
  Index k = 0;
  NonVanishing proof;
};

struct EquivalenceResult {
  Verdict verdict = Verdict::Unknown;
  EquivalenceDefinition definition = EquivalenceDefinition::Pointwise;
  /// Holds covers every n (periodic data) rather than the common window.
  bool infinite = false;
  std::vector<IdentityWitness> identities;
  InterleavingWitness interleaving;
  std::optional<EquivalenceObstruction> obstruction;
  std::string note;
};

EquivalenceResult equivalent_def29(const Premorphism& f, const Premorphism& g, Index bound);
EquivalenceResult equivalent_def25(const Premorphism& f, const Premorphism& g, Index bound);
EquivalenceResult equivalent_def210(const Premorphism& f, const Premorphism& g, Index bound);
EquivalenceResult equivalent(const Premorphism& f, const Premorphism& g, EquivalenceDefinition def,
                             Index bound);

/// Re-checks every recorded identity, square and obstruction by direct
/// matrix arithmetic.
bool reverify(const EquivalenceResult& r, const Premorphism& f, const Premorphism& g);

}  // namespace bratteli

#endif  // BRATTELI_MORPHISM_HPP
