#ifndef BRATTELI_FD_ALGEBRA_HPP
#define BRATTELI_FD_ALGEBRA_HPP

#include "bratteli/diagram.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <variant>
#include <vector>

namespace bratteli {

using SparseRat = Eigen::SparseMatrix<Rational>;

/// M_{n_1} (+) ... (+) M_{n_k}.
class FdAlgebra {
 public:
  explicit FdAlgebra(LevelVector sizes) : sizes_(std::move(sizes)) {}

  const LevelVector& sizes() const { return sizes_; }
  Eigen::Index summands() const { return sizes_.size(); }
  Eigen::Index block_size(Eigen::Index i) const { return sizes_[i].convert_to<Eigen::Index>(); }

  friend bool operator==(const FdAlgebra& a, const FdAlgebra& b) { return a.sizes_ == b.sizes_; }

 private:
  LevelVector sizes_;
};

/// Element of an FdAlgebra: one square block per summand.
struct MatrixTuple {
  std::vector<SparseRat> blocks;

  static MatrixTuple zero(const FdAlgebra& a);
  static MatrixTuple unit(const FdAlgebra& a);
  /// Matrix unit e^{summand}_{row,col}.
  static MatrixTuple matrix_unit(const FdAlgebra& a, Eigen::Index summand, Eigen::Index row,
                                 Eigen::Index col);

  bool fits(const FdAlgebra& a) const;
  bool is_zero() const;

  friend MatrixTuple operator+(const MatrixTuple& x, const MatrixTuple& y);
  friend MatrixTuple operator*(const MatrixTuple& x, const MatrixTuple& y);
  MatrixTuple adjoint() const;
  friend bool operator==(const MatrixTuple& x, const MatrixTuple& y);
};

/// Where source block j lands inside target block i, in canonical order.
struct BlockPlacement {
  std::vector<std::pair<Eigen::Index, BigInt>> copies;  ///< (source block, a_ij)
  BigInt slack;                                         ///< zero padding s_i
};

/// The canonical *-homomorphism h(E): C*(V) -> C*(W).
class BlockMap {
 public:
  explicit BlockMap(const MultiplicityMatrix& e);

  const FdAlgebra& source() const { return source_; }
  const FdAlgebra& target() const { return target_; }
  const MultiplicityMatrix& multiplicity() const { return multiplicity_; }
  const std::vector<BlockPlacement>& placement() const { return placement_; }

 private:
  FdAlgebra source_;
  FdAlgebra target_;
  MultiplicityMatrix multiplicity_;
  std::vector<BlockPlacement> placement_;
};

/// Permutation per block: position q of block i moves to blocks[i][q].
struct BlockPermutation {
  std::vector<std::vector<Eigen::Index>> blocks;

  static BlockPermutation identity(const FdAlgebra& a);
  bool is_identity() const;
};

/// x -> u x u^T.
MatrixTuple conjugate(const BlockPermutation& u, const MatrixTuple& x);

/// Composite of canonical block maps and permutation conjugations, applied
/// left to right.
class StarMap {
 public:
  explicit StarMap(BlockMap first);

  StarMap then(BlockMap next) const;
  StarMap conjugated(BlockPermutation u) const;

  const FdAlgebra& source() const;
  const FdAlgebra& target() const;

  MatrixTuple operator()(const MatrixTuple& x) const;

 private:
  using Step = std::variant<BlockMap, BlockPermutation>;
  std::vector<Step> steps_;
  FdAlgebra target_;
};

BlockMap h_of(const MultiplicityMatrix& e);

/// Throws ShapeMismatch when x is not in the source algebra.
MatrixTuple apply(const BlockMap& m, const MatrixTuple& x);
MatrixTuple apply(const StarMap& m, const MatrixTuple& x);

/// a_ij = rank of block i of the image of e^j_{11}.
MultiplicityMatrix recover_multiplicity(const StarMap& m);
MultiplicityMatrix recover_multiplicity(const BlockMap& m);

bool is_injective_matrix(const IntMatrix& e);
bool is_unital_matrix(const IntMatrix& e, const LevelVector& v, const LevelVector& w);
IntVector slack(const IntMatrix& e, const LevelVector& v, const LevelVector& w);

/// Blockwise permutation u with u psi(x) u^T = phi(x), or nothing when the
/// multiplicities differ or the images are not monomial.
std::optional<BlockPermutation> find_permutation_intertwiner(const StarMap& phi,
                                                             const StarMap& psi);

/// Checks u psi(e) u^T = phi(e) on every matrix unit e of the source.
bool verify_intertwiner(const BlockPermutation& u, const StarMap& phi, const StarMap& psi);

std::size_t rank(const SparseRat& a);

}  // namespace bratteli

#endif  // BRATTELI_FD_ALGEBRA_HPP
