#include "bratteli/fd_algebra.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace bratteli {

namespace {

using Triplet = Eigen::Triplet<Rational>;

constexpr Eigen::Index kMaxBlock = 1 << 16;

SparseRat square(Eigen::Index n, const std::vector<Triplet>& entries) {
  SparseRat m(n, n);
  const bool sorted = std::adjacent_find(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
                        return a.col() != b.col() ? a.col() > b.col() : a.row() >= b.row();
                      }) == entries.end();
  const bool nonzero = std::all_of(entries.begin(), entries.end(),
                                   [](const Triplet& t) { return t.value() != 0; });
  if (!sorted || !nonzero) {
    m.setFromTriplets(entries.begin(), entries.end());
    m.prune(Rational(0));
    return m;
  }
  m.reserve(static_cast<Eigen::Index>(entries.size()));
  std::size_t k = 0;
  for (Eigen::Index col = 0; col < n; ++col) {
    m.startVec(col);
    for (; k < entries.size() && entries[k].col() == col; ++k)
      m.insertBack(entries[k].row(), col) = entries[k].value();
  }
  m.finalize();
  return m;
}

void check_sizes(const LevelVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] > kMaxBlock)
      throw Error(ErrorKind::LimitExceeded, "block of size " + v[i].str() + " is too large to realize");
}

}  // namespace

MatrixTuple MatrixTuple::zero(const FdAlgebra& a) {
  MatrixTuple t;
  for (Eigen::Index i = 0; i < a.summands(); ++i) t.blocks.emplace_back(a.block_size(i), a.block_size(i));
  return t;
}

MatrixTuple MatrixTuple::unit(const FdAlgebra& a) {
  MatrixTuple t;
  for (Eigen::Index i = 0; i < a.summands(); ++i) {
    std::vector<Triplet> diag;
    for (Eigen::Index k = 0; k < a.block_size(i); ++k) diag.emplace_back(k, k, Rational(1));
    t.blocks.push_back(square(a.block_size(i), diag));
  }
  return t;
}

MatrixTuple MatrixTuple::matrix_unit(const FdAlgebra& a, Eigen::Index summand, Eigen::Index row,
                                     Eigen::Index col) {
  MatrixTuple t = zero(a);
  t.blocks[summand] = square(a.block_size(summand), {Triplet(row, col, Rational(1))});
  return t;
}

bool MatrixTuple::fits(const FdAlgebra& a) const {
  if (static_cast<Eigen::Index>(blocks.size()) != a.summands()) return false;
  for (Eigen::Index i = 0; i < a.summands(); ++i)
    if (blocks[i].rows() != a.block_size(i) || blocks[i].cols() != a.block_size(i)) return false;
  return true;
}

bool MatrixTuple::is_zero() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const SparseRat& b) {
    for (Eigen::Index k = 0; k < b.outerSize(); ++k)
      for (SparseRat::InnerIterator it(b, k); it; ++it)
        if (it.value() != 0) return false;
    return true;
  });
}

MatrixTuple operator+(const MatrixTuple& x, const MatrixTuple& y) {
  MatrixTuple t;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) t.blocks.push_back(x.blocks[i] + y.blocks[i]);
  return t;
}

MatrixTuple operator*(const MatrixTuple& x, const MatrixTuple& y) {
  MatrixTuple t;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    SparseRat p = x.blocks[i] * y.blocks[i];
    p.prune(Rational(0));
    t.blocks.push_back(std::move(p));
  }
  return t;
}

MatrixTuple MatrixTuple::adjoint() const {
  MatrixTuple t;
  for (const SparseRat& b : blocks) t.blocks.push_back(b.transpose());
  return t;
}

bool operator==(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.blocks.size() != y.blocks.size()) return false;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    if (x.blocks[i].rows() != y.blocks[i].rows() || x.blocks[i].cols() != y.blocks[i].cols())
      return false;
    SparseRat d = x.blocks[i] - y.blocks[i];
    for (Eigen::Index k = 0; k < d.outerSize(); ++k)
      for (SparseRat::InnerIterator it(d, k); it; ++it)
        if (it.value() != 0) return false;
  }
  return true;
}

BlockMap::BlockMap(const MultiplicityMatrix& e)
    : source_(e.domain()), target_(e.codomain()), multiplicity_(e) {
  check_sizes(e.domain());
  check_sizes(e.codomain());
  const IntVector filled = e.matrix() * e.domain().vector();
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    BlockPlacement p;
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      if (e.matrix()(i, j) != 0) p.copies.emplace_back(j, e.matrix()(i, j));
    p.slack = e.codomain()[i] - filled(i);
    if (p.slack < 0)
      throw Error(ErrorKind::MultiplicityViolation, "negative slack", static_cast<long>(i));
    placement_.push_back(std::move(p));
  }
}

BlockMap h_of(const MultiplicityMatrix& e) { return BlockMap(e); }

MatrixTuple apply(const BlockMap& m, const MatrixTuple& x) {
  if (!x.fits(m.source())) throw Error(ErrorKind::ShapeMismatch, "tuple is not in the source algebra");
  MatrixTuple out;
  for (Eigen::Index i = 0; i < m.target().summands(); ++i) {
    std::vector<Triplet> entries;
    Eigen::Index offset = 0;
    for (const auto& [j, count] : m.placement()[i].copies) {
      const SparseRat& block = x.blocks[j];
      const Eigen::Index n = block.rows();
      for (BigInt c = 0; c < count; ++c, offset += n)
        for (Eigen::Index k = 0; k < block.outerSize(); ++k)
          for (SparseRat::InnerIterator it(block, k); it; ++it)
            entries.emplace_back(offset + it.row(), offset + it.col(), it.value());
    }
    out.blocks.push_back(square(m.target().block_size(i), entries));
  }
  return out;
}

BlockPermutation BlockPermutation::identity(const FdAlgebra& a) {
  BlockPermutation u;
  for (Eigen::Index i = 0; i < a.summands(); ++i) {
    std::vector<Eigen::Index> p(a.block_size(i));
    for (Eigen::Index k = 0; k < a.block_size(i); ++k) p[k] = k;
    u.blocks.push_back(std::move(p));
  }
  return u;
}

bool BlockPermutation::is_identity() const {
  for (const auto& b : blocks)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k] != static_cast<Eigen::Index>(k)) return false;
  return true;
}

MatrixTuple conjugate(const BlockPermutation& u, const MatrixTuple& x) {
  if (u.blocks.size() != x.blocks.size())
    throw Error(ErrorKind::ShapeMismatch, "permutation does not match the algebra");
  MatrixTuple out;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    const SparseRat& b = x.blocks[i];
    const auto& p = u.blocks[i];
    if (static_cast<Eigen::Index>(p.size()) != b.rows())
      throw Error(ErrorKind::ShapeMismatch, "permutation block has the wrong size");
    std::vector<Triplet> entries;
    for (Eigen::Index k = 0; k < b.outerSize(); ++k)
      for (SparseRat::InnerIterator it(b, k); it; ++it)
        entries.emplace_back(p[it.row()], p[it.col()], it.value());
    out.blocks.push_back(square(b.rows(), entries));
  }
  return out;
}

StarMap::StarMap(BlockMap first) : target_(first.target()) { steps_.emplace_back(std::move(first)); }

StarMap StarMap::then(BlockMap next) const {
  if (!(next.source() == target_))
    throw Error(ErrorKind::ShapeMismatch, "composite does not chain");
  StarMap out = *this;
  out.target_ = next.target();
  out.steps_.emplace_back(std::move(next));
  return out;
}

StarMap StarMap::conjugated(BlockPermutation u) const {
  StarMap out = *this;
  out.steps_.emplace_back(std::move(u));
  return out;
}

const FdAlgebra& StarMap::source() const { return std::get<BlockMap>(steps_.front()).source(); }
const FdAlgebra& StarMap::target() const { return target_; }

MatrixTuple StarMap::operator()(const MatrixTuple& x) const {
  MatrixTuple y = x;
  for (const Step& s : steps_) {
    if (const auto* m = std::get_if<BlockMap>(&s)) y = bratteli::apply(*m, y);
    else y = conjugate(std::get<BlockPermutation>(s), y);
  }
  return y;
}

MatrixTuple apply(const StarMap& m, const MatrixTuple& x) { return m(x); }

std::size_t rank(const SparseRat& a) {
  // Compress to the nonzero rows and columns before eliminating.
  std::map<Eigen::Index, Eigen::Index> rows, cols;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k)
    for (SparseRat::InnerIterator it(a, k); it; ++it)
      if (it.value() != 0) {
        rows.emplace(it.row(), 0);
        cols.emplace(it.col(), 0);
      }
  std::size_t nonzeros = 0;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k)
    for (SparseRat::InnerIterator it(a, k); it; ++it) nonzeros += it.value() != 0;
  // At most one nonzero per row and column: rank is the count.
  if (rows.size() == nonzeros && cols.size() == nonzeros) return nonzeros;
  Eigen::Index r = 0, c = 0;
  for (auto& [key, slot] : rows) slot = r++;
  for (auto& [key, slot] : cols) slot = c++;
  RatMatrix dense = RatMatrix::Zero(r, c);
  for (Eigen::Index k = 0; k < a.outerSize(); ++k)
    for (SparseRat::InnerIterator it(a, k); it; ++it)
      if (it.value() != 0) dense(rows[it.row()], cols[it.col()]) = it.value();
  return rank(dense);
}

MultiplicityMatrix recover_multiplicity(const StarMap& m) {
  const FdAlgebra &src = m.source(), &tgt = m.target();
  IntMatrix e(tgt.summands(), src.summands());
  for (Eigen::Index j = 0; j < src.summands(); ++j) {
    const MatrixTuple image = m(MatrixTuple::matrix_unit(src, j, 0, 0));
    for (Eigen::Index i = 0; i < tgt.summands(); ++i) e(i, j) = static_cast<unsigned long>(rank(image.blocks[i]));
  }
  return MultiplicityMatrix(std::move(e), src.sizes(), tgt.sizes());
}

MultiplicityMatrix recover_multiplicity(const BlockMap& m) { return recover_multiplicity(StarMap(m)); }

bool is_injective_matrix(const IntMatrix& e) { return is_embedding(e); }

bool is_unital_matrix(const IntMatrix& e, const LevelVector& v, const LevelVector& w) {
  return same_matrix(IntVector(e * v.vector()), w.vector());
}

IntVector slack(const IntMatrix& e, const LevelVector& v, const LevelVector& w) {
  check_multiplicity(e, v, w);
  return w.vector() - e * v.vector();
}

namespace {

/// One embedded copy of a source block: the positions it occupies in a target block.
struct Copy {
  Eigen::Index source;
  std::vector<Eigen::Index> positions;
};

/// Splits each target block into copies of source blocks plus slack.
/// Fails when the images of matrix units are not 0/1 monomial.
std::optional<std::vector<std::vector<Copy>>> decompose(const StarMap& m) {
  const FdAlgebra &src = m.source(), &tgt = m.target();
  std::vector<std::vector<Copy>> out(tgt.summands());
  for (Eigen::Index j = 0; j < src.summands(); ++j) {
    std::vector<MatrixTuple> column_units;
    for (Eigen::Index a = 0; a < src.block_size(j); ++a)
      column_units.push_back(m(MatrixTuple::matrix_unit(src, j, a, 0)));
    for (Eigen::Index i = 0; i < tgt.summands(); ++i) {
      const RatMatrix first = RatMatrix(column_units[0].blocks[i]);
      for (Eigen::Index p = 0; p < first.cols(); ++p) {
        if (first(p, p) == 0) continue;
        Copy copy{j, {}};
        for (const MatrixTuple& u : column_units) {
          const RatMatrix b = RatMatrix(u.blocks[i]);
          Eigen::Index hit = -1;
          for (Eigen::Index q = 0; q < b.rows(); ++q) {
            if (b(q, p) == 0) continue;
            if (b(q, p) != 1 || hit >= 0) return std::nullopt;
            hit = q;
          }
          if (hit < 0) return std::nullopt;
          copy.positions.push_back(hit);
        }
        out[i].push_back(std::move(copy));
      }
    }
  }
  return out;
}

}  // namespace

std::optional<BlockPermutation> find_permutation_intertwiner(const StarMap& phi, const StarMap& psi) {
  if (!(phi.source() == psi.source()) || !(phi.target() == psi.target())) return std::nullopt;
  if (!(recover_multiplicity(phi) == recover_multiplicity(psi))) return std::nullopt;
  const auto dphi = decompose(phi), dpsi = decompose(psi);
  if (!dphi || !dpsi) return std::nullopt;
  const FdAlgebra& tgt = phi.target();
  BlockPermutation u;
  for (Eigen::Index i = 0; i < tgt.summands(); ++i) {
    const Eigen::Index size = tgt.block_size(i);
    std::vector<Eigen::Index> map(size, -1);
    std::vector<bool> used_phi(size, false), used_psi(size, false);
    const auto &cphi = (*dphi)[i], &cpsi = (*dpsi)[i];
    if (cphi.size() != cpsi.size()) return std::nullopt;
    for (std::size_t c = 0; c < cphi.size(); ++c) {
      if (cphi[c].source != cpsi[c].source) return std::nullopt;
      for (std::size_t a = 0; a < cphi[c].positions.size(); ++a) {
        const Eigen::Index from = cpsi[c].positions[a], to = cphi[c].positions[a];
        if (used_psi[from] || used_phi[to]) return std::nullopt;
        map[from] = to;
        used_psi[from] = used_phi[to] = true;
      }
    }
    // Slack positions pair up in increasing order.
    Eigen::Index next = 0;
    for (Eigen::Index from = 0; from < size; ++from) {
      if (used_psi[from]) continue;
      while (used_phi[next]) ++next;
      map[from] = next++;
    }
    u.blocks.push_back(std::move(map));
  }
  if (!verify_intertwiner(u, phi, psi)) return std::nullopt;
  return u;
}

bool verify_intertwiner(const BlockPermutation& u, const StarMap& phi, const StarMap& psi) {
  const FdAlgebra& src = phi.source();
  for (Eigen::Index j = 0; j < src.summands(); ++j)
    for (Eigen::Index a = 0; a < src.block_size(j); ++a)
      for (Eigen::Index b = 0; b < src.block_size(j); ++b) {
        const MatrixTuple e = MatrixTuple::matrix_unit(src, j, a, b);
        if (!(conjugate(u, psi(e)) == phi(e))) return false;
      }
  return true;
}

}  // namespace bratteli
