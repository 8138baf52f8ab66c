#ifndef BRATTELI_CORE_HPP
#define BRATTELI_CORE_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bratteli {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer. Expression templates are off so the type
/// behaves as a plain value inside Eigen expressions.
using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<BigInt>;
using IntVector = DenseVector<BigInt>;
using RatMatrix = DenseMatrix<Rational>;

/// Levels are 1-based throughout.
using Index = std::size_t;

enum class ErrorKind {
  DimensionMismatch,
  NotEmbedding,
  MultiplicityViolation,
  InvalidLevel,
  OutOfRange,
  OutOfWindow,
  SquareFails,
  MonotonicityFails,
  PeriodicRuleInvalid,
  ComposabilityMismatch,
  EmptyWindow,
  SourceTargetMismatch,
  ShapeMismatch,
  NotUhfShape,
  InvalidCertificate,
  SyntaxError,
  SemanticError,
  LimitExceeded,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, long index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index),
        detail_(what) {}

  ErrorKind kind() const { return kind_; }
  /// Offending row/column/level index where one applies, else -1.
  long index() const { return index_; }
  /// Message without the kind prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  long index_;
  std::string detail_;
};

/// Three-valued outcome of a bounded semi-decision procedure.
enum class Verdict { Holds, Fails, Unknown };

const char* to_string(Verdict v);

// ---------------------------------------------------------------------------
// Free functions on dense matrices.

template <typename Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) < 0) return false;
  return true;
}

/// Every column carries a nonzero entry.
template <typename Derived>
bool is_embedding(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    bool hit = false;
    for (Eigen::Index i = 0; i < a.rows() && !hit; ++i) hit = a(i, j) != 0;
    if (!hit) return false;
  }
  return true;
}

/// Index of the first column that is entirely zero, or -1.
template <typename Derived>
Eigen::Index first_zero_column(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    bool hit = false;
    for (Eigen::Index i = 0; i < a.rows() && !hit; ++i) hit = a(i, j) != 0;
    if (!hit) return j;
  }
  return -1;
}

template <typename DerivedA, typename DerivedB>
bool leq_componentwise(const Eigen::MatrixBase<DerivedA>& a,
                       const Eigen::MatrixBase<DerivedB>& b) {
  eigen_assert(a.rows() == b.rows() && a.cols() == b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) > b(i, j)) return false;
  return true;
}

template <typename DerivedA, typename DerivedB>
bool same_matrix(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) return false;
  return true;
}

template <typename Derived>
typename Derived::Scalar max_entry(const Eigen::MatrixBase<Derived>& a) {
  typename Derived::Scalar best = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) > best) best = a(i, j);
  return best;
}

/// Rank by fraction-free (Bareiss) elimination. Exact for integer input.
std::size_t rank(IntMatrix a);
/// Rank of a rational matrix after clearing denominators row by row.
std::size_t rank(const RatMatrix& a);

IntMatrix make_matrix(const std::vector<std::vector<BigInt>>& rows,
                      Eigen::Index cols_if_empty = 0);
IntMatrix identity(Eigen::Index n);

/// Row-major text `[[a,b],[c,d]]`; column vectors print as `[a,b]`.
std::string format_matrix(const IntMatrix& a);
std::string format_vector(const IntVector& v);

BigInt ipow(const BigInt& base, std::size_t exponent);

}  // namespace bratteli

#endif  // BRATTELI_CORE_HPP
