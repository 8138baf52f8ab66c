#include "bratteli/core.hpp"

#include <sstream>
#include <utility>

namespace bratteli {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotEmbedding: return "NotEmbedding";
    case ErrorKind::MultiplicityViolation: return "MultiplicityViolation";
    case ErrorKind::InvalidLevel: return "InvalidLevel";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::SquareFails: return "SquareFails";
    case ErrorKind::MonotonicityFails: return "MonotonicityFails";
    case ErrorKind::PeriodicRuleInvalid: return "PeriodicRuleInvalid";
    case ErrorKind::ComposabilityMismatch: return "ComposabilityMismatch";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotUhfShape: return "NotUhfShape";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
  }
  return "Error";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::size_t rank(IntMatrix a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  BigInt prev = 1;
  for (Eigen::Index col = 0; col < cols && static_cast<Eigen::Index>(r) < rows; ++col) {
    const auto pr = static_cast<Eigen::Index>(r);
    Eigen::Index pivot = -1;
    for (Eigen::Index i = pr; i < rows; ++i)
      if (a(i, col) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    if (pivot != pr) a.row(pivot).swap(a.row(pr));
    for (Eigen::Index i = pr + 1; i < rows; ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j)
        a(i, j) = (a(pr, col) * a(i, j) - a(i, col) * a(pr, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(pr, col);
    ++r;
  }
  return r;
}

std::size_t rank(const RatMatrix& a) {
  IntMatrix scaled(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    BigInt l = 1;
    for (Eigen::Index j = 0; j < a.cols(); ++j) l = mp::lcm(l, BigInt(mp::denominator(a(i, j))));
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      scaled(i, j) = BigInt(mp::numerator(a(i, j))) * (l / BigInt(mp::denominator(a(i, j))));
  }
  return rank(std::move(scaled));
}

IntMatrix make_matrix(const std::vector<std::vector<BigInt>>& rows, Eigen::Index cols_if_empty) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = rows.empty() ? cols_if_empty : static_cast<Eigen::Index>(rows.front().size());
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c)
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows", static_cast<long>(i));
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix identity(Eigen::Index n) {
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::string format_matrix(const IntMatrix& a) {
  std::ostringstream out;
  out << '[';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (i) out << ',';
    out << '[';
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

std::string format_vector(const IntVector& v) {
  std::ostringstream out;
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v(i);
  }
  out << ']';
  return out.str();
}

BigInt ipow(const BigInt& base, std::size_t exponent) {
  BigInt result = 1, b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace bratteli
