#include "bratteli/diagram.hpp"

#include <string>

namespace bratteli {

LevelVector::LevelVector(IntVector sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 1) throw Error(ErrorKind::InvalidLevel, "level vector must be non-empty");
  for (Eigen::Index i = 0; i < sizes_.size(); ++i)
    if (sizes_(i) < 1)
      throw Error(ErrorKind::InvalidLevel, "level entries must be positive", static_cast<long>(i));
}

LevelVector::LevelVector(std::initializer_list<long> sizes) {
  IntVector v(static_cast<Eigen::Index>(sizes.size()));
  Eigen::Index i = 0;
  for (long s : sizes) v(i++) = s;
  *this = LevelVector(std::move(v));
}

LevelVector LevelVector::scaled(const BigInt& factor) const {
  IntVector v = sizes_;
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= factor;
  return LevelVector(std::move(v));
}

void check_multiplicity(const IntMatrix& e, const LevelVector& v, const LevelVector& w) {
  if (e.cols() != v.size() || e.rows() != w.size())
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(e.rows()) + "x" + std::to_string(e.cols()) +
                    " but levels have " + std::to_string(v.size()) + " -> " +
                    std::to_string(w.size()) + " summands");
  if (!is_nonnegative(e)) throw Error(ErrorKind::MultiplicityViolation, "negative entry");
  const IntVector image = e * v.vector();
  for (Eigen::Index i = 0; i < image.size(); ++i)
    if (image(i) > w[i])
      throw Error(ErrorKind::MultiplicityViolation,
                  "row " + std::to_string(i) + " has E*V = " + image(i).str() + " > " + w[i].str(),
                  static_cast<long>(i));
}

MultiplicityMatrix::MultiplicityMatrix(IntMatrix entries, LevelVector domain, LevelVector codomain)
    : entries_(std::move(entries)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  check_multiplicity(entries_, domain_, codomain_);
}

namespace {

void check_edge(const IntMatrix& e, const LevelVector& v, const LevelVector& w,
                const std::string& where) {
  try {
    check_multiplicity(e, v, w);
  } catch (const Error& err) {
    throw Error(err.kind(), where + ": " + err.detail(), err.index());
  }
  const auto col = first_zero_column(e);
  if (col >= 0)
    throw Error(ErrorKind::NotEmbedding, where + ": column " + std::to_string(col) + " is zero",
                static_cast<long>(col));
}

}  // namespace

Diagram Diagram::validate(DiagramPresentation p) {
  if (p.zero) {
    if (!p.levels.empty() || !p.edges.empty() || p.tail)
      throw Error(ErrorKind::DimensionMismatch, "zero diagram carries no levels or edges");
    return Diagram(std::move(p));
  }
  if (p.levels.empty()) throw Error(ErrorKind::DimensionMismatch, "diagram needs at least one level");
  if (p.edges.size() + 1 != p.levels.size())
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(p.levels.size()) + " levels need " +
                    std::to_string(p.levels.size() - 1) + " edges, got " +
                    std::to_string(p.edges.size()));
  for (std::size_t i = 0; i < p.edges.size(); ++i)
    check_edge(p.edges[i], p.levels[i], p.levels[i + 1], "edge " + std::to_string(i + 1));
  if (p.tail) {
    const PeriodicTail& t = *p.tail;
    if (t.levels.empty()) throw Error(ErrorKind::DimensionMismatch, "tail needs at least one level");
    if (t.edges.size() != t.levels.size())
      throw Error(ErrorKind::DimensionMismatch, "tail needs one edge per level");
    if (t.scale < 1) throw Error(ErrorKind::InvalidLevel, "tail scale must be positive");
    check_edge(t.glue, p.levels.back(), t.levels.front(), "glue edge");
    const std::size_t q = t.levels.size();
    for (std::size_t j = 0; j < q; ++j) {
      const LevelVector next = j + 1 < q ? t.levels[j + 1] : t.levels.front().scaled(t.scale);
      check_edge(t.edges[j], t.levels[j], next, "tail edge " + std::to_string(j + 1));
    }
  }
  return Diagram(std::move(p));
}

const BigInt& Diagram::scale() const {
  static const BigInt one = 1;
  return has_tail() ? pres_.tail->scale : one;
}

void Diagram::check_index(Index n) const {
  if (is_zero()) throw Error(ErrorKind::OutOfRange, "the zero diagram has no levels");
  if (!resolvable(n))
    throw Error(ErrorKind::OutOfRange,
                "level " + std::to_string(n) + " outside presentation of depth " +
                    std::to_string(prefix_length()),
                static_cast<long>(n));
}

LevelVector Diagram::level(Index n) const {
  check_index(n);
  if (n <= prefix_length()) return pres_.levels[n - 1];
  const Index offset = n - periodic_from();
  const Index q = period();
  const LevelVector& base = pres_.tail->levels[offset % q];
  const Index turns = offset / q;
  return turns == 0 ? base : base.scaled(ipow(pres_.tail->scale, turns));
}

Eigen::Index Diagram::width(Index n) const {
  check_index(n);
  if (n <= prefix_length()) return pres_.levels[n - 1].size();
  return pres_.tail->levels[phase(n)].size();
}

const IntMatrix& Diagram::edge_matrix(Index n) const {
  check_index(n);
  check_index(n + 1);
  if (n < prefix_length()) return pres_.edges[n - 1];
  if (n == prefix_length()) return pres_.tail->glue;
  return pres_.tail->edges[phase(n)];
}

MultiplicityMatrix Diagram::edge(Index n) const {
  return MultiplicityMatrix(edge_matrix(n), level(n), level(n + 1));
}

IntMatrix Diagram::telescope_matrix(Index n, Index m) const {
  if (n > m) throw Error(ErrorKind::OutOfRange, "telescope needs n <= m");
  check_index(n);
  check_index(m);
  IntMatrix acc = identity(width(n));
  for (Index k = n; k < m; ++k) acc = edge_matrix(k) * acc;
  return acc;
}

MultiplicityMatrix Diagram::telescope(Index n, Index m) const {
  return MultiplicityMatrix(telescope_matrix(n, m), level(n), level(m));
}

bool Diagram::is_unital() const {
  if (is_zero()) return true;
  const Index last = has_tail() ? prefix_length() + period() : prefix_length() - 1;
  for (Index n = 1; n <= last; ++n) {
    const IntVector image = edge_matrix(n) * level(n).vector();
    if (!same_matrix(image, level(n + 1).vector())) return false;
  }
  return true;
}

bool operator==(const DiagramPresentation& a, const DiagramPresentation& b) {
  if (a.zero != b.zero || a.levels != b.levels || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (!same_matrix(a.edges[i], b.edges[i])) return false;
  if (a.tail.has_value() != b.tail.has_value()) return false;
  if (!a.tail) return true;
  const PeriodicTail &x = *a.tail, &y = *b.tail;
  if (x.levels != y.levels || x.scale != y.scale || !same_matrix(x.glue, y.glue) ||
      x.edges.size() != y.edges.size())
    return false;
  for (std::size_t i = 0; i < x.edges.size(); ++i)
    if (!same_matrix(x.edges[i], y.edges[i])) return false;
  return true;
}

bool operator==(const Diagram& a, const Diagram& b) { return a.pres_ == b.pres_; }

}  // namespace bratteli
