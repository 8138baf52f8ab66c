#ifndef BRATTELI_DIAGRAM_HPP
#define BRATTELI_DIAGRAM_HPP

#include "bratteli/core.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace bratteli {

/// Sizes n_1..n_k of the matrix summands at one level. Entries are >= 1.
class LevelVector {
 public:
  LevelVector() = default;
  explicit LevelVector(IntVector sizes);
  LevelVector(std::initializer_list<long> sizes);

  Eigen::Index size() const { return sizes_.size(); }
  const BigInt& operator[](Eigen::Index i) const { return sizes_(i); }
  const IntVector& vector() const { return sizes_; }
  LevelVector scaled(const BigInt& factor) const;

  friend bool operator==(const LevelVector& a, const LevelVector& b) {
    return same_matrix(a.sizes_, b.sizes_);
  }

 private:
  IntVector sizes_;
};

/// Nonnegative integer matrix E: V -> W with E*V <= W.
class MultiplicityMatrix {
 public:
  /// Throws DimensionMismatch or MultiplicityViolation (with the row index).
  MultiplicityMatrix(IntMatrix entries, LevelVector domain, LevelVector codomain);

  const IntMatrix& matrix() const { return entries_; }
  const LevelVector& domain() const { return domain_; }
  const LevelVector& codomain() const { return codomain_; }
  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }
  bool is_embedding() const { return bratteli::is_embedding(entries_); }

  friend bool operator==(const MultiplicityMatrix& a, const MultiplicityMatrix& b) {
    return same_matrix(a.entries_, b.entries_) && a.domain_ == b.domain_ &&
           a.codomain_ == b.codomain_;
  }

 private:
  IntMatrix entries_;
  LevelVector domain_;
  LevelVector codomain_;
};

/// Checks E*V <= W; throws MultiplicityViolation naming the first bad row.
void check_multiplicity(const IntMatrix& e, const LevelVector& v, const LevelVector& w);

/// Eventually periodic continuation of a diagram. Level P+1+j+k*q equals
/// scale^k * levels[j]; edge P+1+j+k*q equals edges[j]. The last edge maps
/// levels[q-1] into scale*levels[0].
struct PeriodicTail {
  std::vector<LevelVector> levels;
  std::vector<IntMatrix> edges;
  IntMatrix glue;
  BigInt scale = 1;
};

struct DiagramPresentation {
  std::vector<LevelVector> levels;
  std::vector<IntMatrix> edges;
  std::optional<PeriodicTail> tail;
  bool zero = false;

  static DiagramPresentation zero_diagram() {
    DiagramPresentation p;
    p.zero = true;
    return p;
  }
};

/// Validated, immutable Bratteli diagram.
class Diagram {
 public:
  /// Throws DimensionMismatch, NotEmbedding or MultiplicityViolation.
  static Diagram validate(DiagramPresentation p);

  bool is_zero() const { return pres_.zero; }
  bool has_tail() const { return pres_.tail.has_value(); }
  /// Number of prefix levels P.
  Index prefix_length() const { return pres_.levels.size(); }
  /// Tail period q (0 without a tail).
  Index period() const { return has_tail() ? pres_.tail->levels.size() : 0; }
  const BigInt& scale() const;
  /// Largest resolvable level; 0 means unbounded.
  Index depth() const { return has_tail() ? 0 : prefix_length(); }
  bool resolvable(Index n) const { return n >= 1 && (has_tail() || n <= prefix_length()); }

  /// First level from which levels and edges repeat with the period.
  Index periodic_from() const { return prefix_length() + 1; }
  /// Phase of a level inside the tail; requires n >= periodic_from().
  Index phase(Index n) const { return (n - periodic_from()) % period(); }

  LevelVector level(Index n) const;
  MultiplicityMatrix edge(Index n) const;
  /// Raw entries of edge n without attaching level vectors.
  const IntMatrix& edge_matrix(Index n) const;
  /// E_{nm} = E_{m-1}...E_n, identity for n == m.
  MultiplicityMatrix telescope(Index n, Index m) const;
  IntMatrix telescope_matrix(Index n, Index m) const;
  /// Summand count k_n.
  Eigen::Index width(Index n) const;

  bool is_unital() const;

  const DiagramPresentation& presentation() const { return pres_; }

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  explicit Diagram(DiagramPresentation p) : pres_(std::move(p)) {}
  void check_index(Index n) const;

  DiagramPresentation pres_;
};

bool operator==(const DiagramPresentation& a, const DiagramPresentation& b);

using DiagramPtr = std::shared_ptr<const Diagram>;

inline DiagramPtr share(Diagram d) { return std::make_shared<const Diagram>(std::move(d)); }

}  // namespace bratteli

#endif  // BRATTELI_DIAGRAM_HPP
