#ifndef BRATTELI_ISO_HPP
#define BRATTELI_ISO_HPP

#include "bratteli/morphism.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bratteli {

enum class ClosureKind { None, Periodic, Uhf };

const char* to_string(ClosureKind k);

/// R_k: V_{r_k} -> W_{t_k} and T_k: W_{t_k} -> V_{r_{k+1}} with
/// T_k R_k = E_{r_k r_{k+1}} and R_{k+1} T_k = F_{t_k t_{k+1}}.
/// T has one entry fewer than R.
struct IntertwiningCertificate {
  std::vector<Index> r;
  std::vector<Index> t;
  std::vector<IntMatrix> R;
  std::vector<IntMatrix> T;
  ClosureKind closure = ClosureKind::None;
  /// Periodic: the state after R_k (last) equals the state after R_j,
  /// shifted by whole tail periods of equal scale. 1-based.
  Index closure_from = 0;
};

/// Checks both families of identities, the multiplicity conditions and the
/// closure. Throws OutOfRange for unresolvable indices.
bool verify_certificate(const IntertwiningCertificate& c, const Diagram& b, const Diagram& d);

struct Factorization {
  IntMatrix R;
  IntMatrix T;
};

/// All embedding pairs R: V -> V_mid, T: V_mid -> V' with T R = E, in
/// lexicographic order, entries bounded by the largest entry of E. `visit`
/// returns false to stop.
void factor_as_product(const MultiplicityMatrix& e, const LevelVector& v_mid,
                       const std::function<bool(const Factorization&)>& visit);
std::vector<Factorization> factor_as_product(const MultiplicityMatrix& e, const LevelVector& v_mid,
                                             std::size_t limit = 1 << 16);

struct IsoObstruction {
  std::string kind;  ///< "zero-mismatch" or "uhf-invariant"
  std::string detail;
};

/// Re-derives an obstruction from the diagrams.
bool check_obstruction(const IsoObstruction& o, const Diagram& b, const Diagram& d);

struct IsoResult {
  Verdict verdict = Verdict::Unknown;  ///< Holds: Found, Fails: NonIsomorphic
  std::optional<IntertwiningCertificate> certificate;
  std::optional<IsoObstruction> obstruction;
  std::string note;
  std::size_t nodes = 0;
};

struct IsoSearchOptions {
  Index depth = 12;
  std::size_t node_budget = 200000;
  /// Budget for the periodic attempt on UHF pairs before the uhf closure.
  std::size_t uhf_node_budget = 5000;
};

IsoResult search_intertwining(const Diagram& b, const Diagram& d, const IsoSearchOptions& options);
IsoResult search_intertwining(const Diagram& b, const Diagram& d, Index depth);

/// Premorphisms f: B -> C and g: C -> B read off the certificate. Periodic
/// closures give periodic rules; other certificates give windows covering
/// at least `depth`. Throws InvalidCertificate.
std::pair<Premorphism, Premorphism> morphisms_from_certificate(const IntertwiningCertificate& c,
                                                               DiagramPtr b, DiagramPtr d,
                                                               Index depth = 1);

}  // namespace bratteli

#endif  // BRATTELI_ISO_HPP
