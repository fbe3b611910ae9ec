#pragma once

// Dense exact linear algebra over a coefficient ring Scalar (rationals or a
// prime field): plain Gaussian elimination with first-nonzero pivoting.
// Every routine is deterministic.

#include <optional>
#include <utility>
#include <vector>

#include "monodec/errors.hpp"
#include "monodec/scalars.hpp"

namespace monodec {

class ScalarMat {
 public:
  ScalarMat() : ring_(CoeffRing::rationals()), rows_(0), cols_(0) {}
  ScalarMat(const CoeffRing& ring, size_t rows, size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(ring)) {}

  static ScalarMat identity(const CoeffRing& ring, size_t n) {
    ScalarMat m(ring, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(ring);
    return m;
  }

  const CoeffRing& ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const Scalar& s : a_)
      if (!s.is_zero()) return false;
    return true;
  }

  friend ScalarMat operator*(const ScalarMat& x, const ScalarMat& y) {
    require(x.ring_ == y.ring_, ErrorCode::CtxMismatch, "matrix product across rings");
    require(x.cols_ == y.rows_, ErrorCode::DimensionMismatch, "matrix product shapes");
    ScalarMat z(x.ring_, x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t t = 0; t < x.cols_; ++t) {
        const Scalar& v = x.at(i, t);
        if (v.is_zero()) continue;
        for (size_t j = 0; j < y.cols_; ++j) {
          const Scalar& w = y.at(t, j);
          if (!w.is_zero()) z.at(i, j) += v * w;
        }
      }
    return z;
  }
  friend ScalarMat operator+(const ScalarMat& x, const ScalarMat& y) {
    require(x.rows_ == y.rows_ && x.cols_ == y.cols_, ErrorCode::DimensionMismatch, "matrix sum shapes");
    ScalarMat z = x;
    for (size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }
  friend ScalarMat operator-(const ScalarMat& x, const ScalarMat& y) {
    require(x.rows_ == y.rows_ && x.cols_ == y.cols_, ErrorCode::DimensionMismatch, "matrix diff shapes");
    ScalarMat z = x;
    for (size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }
  ScalarMat scaled(const Scalar& c) const {
    ScalarMat z = *this;
    for (Scalar& s : z.a_) s *= c;
    return z;
  }
  ScalarMat transposed() const {
    ScalarMat t(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  Scalar trace() const {
    Scalar t = Scalar::zero(ring_);
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
  }
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    require(v.size() == cols_, ErrorCode::DimensionMismatch, "matvec shape");
    std::vector<Scalar> out(rows_, Scalar::zero(ring_));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
  }
  std::vector<Scalar> row(size_t i) const {
    return std::vector<Scalar>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  std::vector<Scalar> col(size_t j) const {
    std::vector<Scalar> c(rows_, Scalar::zero(ring_));
    for (size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  friend bool operator==(const ScalarMat& x, const ScalarMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  CoeffRing ring_;
  size_t rows_, cols_;
  std::vector<Scalar> a_;
};

struct RrefResult {
  ScalarMat r;                   // reduced row echelon form, zero rows kept
  std::vector<size_t> pivots;    // pivot column per nonzero row
};

inline RrefResult rref(ScalarMat m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(p, j));
    Scalar inv = m.at(r, c).inv();
    for (size_t j = 0; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline size_t rank_of(const ScalarMat& m) { return rref(m).pivots.size(); }

inline ScalarMat inverse_of(const ScalarMat& m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  size_t n = m.rows();
  ScalarMat aug(m.ring(), n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Scalar::one(m.ring());
  }
  RrefResult rr = rref(std::move(aug));
  require(rr.pivots.size() == n && (n == 0 || rr.pivots[n - 1] == n - 1), ErrorCode::NotInvertible,
          "matrix is singular");
  ScalarMat inv(m.ring(), n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = rr.r.at(i, n + j);
  return inv;
}

// Rows form a basis of the nullspace {x : m x = 0}.
inline ScalarMat nullspace(const ScalarMat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t c : rr.pivots) is_piv[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  ScalarMat ns(m.ring(), free_cols.size(), m.cols());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    ns.at(t, free_cols[t]) = Scalar::one(m.ring());
    for (size_t i = 0; i < rr.pivots.size(); ++i) ns.at(t, rr.pivots[i]) = -rr.r.at(i, free_cols[t]);
  }
  return ns;
}

// Solve m x = b. Returns the solution with free variables set to zero, or
// nullopt when inconsistent.
inline std::optional<std::vector<Scalar>> solve(const ScalarMat& m, const std::vector<Scalar>& b) {
  require(b.size() == m.rows(), ErrorCode::DimensionMismatch, "solve shapes");
  ScalarMat aug(m.ring(), m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  RrefResult rr = rref(std::move(aug));
  for (size_t i = 0; i < rr.pivots.size(); ++i)
    if (rr.pivots[i] == m.cols()) return std::nullopt;
  std::vector<Scalar> x(m.cols(), Scalar::zero(m.ring()));
  for (size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.r.at(i, m.cols());
  return x;
}

// Solve with an infeasibility certificate: on failure returns a row vector
// lambda with lambda^T m = 0 and lambda^T b = 1.
struct LinOutcome {
  std::optional<std::vector<Scalar>> solution;
  std::vector<Scalar> certificate;
  bool unique = false;
};

inline LinOutcome solve_with_certificate(const ScalarMat& m, const std::vector<Scalar>& b) {
  require(b.size() == m.rows(), ErrorCode::DimensionMismatch, "solve shapes");
  size_t rows = m.rows(), cols = m.cols();
  // [m | b | I]: the identity block tracks the row combination each final row
  // is of the original system.
  ScalarMat aug(m.ring(), rows, cols + 1 + rows);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, cols) = b[i];
    aug.at(i, cols + 1 + i) = Scalar::one(m.ring());
  }
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && aug.at(p, c).is_zero()) ++p;
    if (p == rows) continue;
    for (size_t j = 0; j < aug.cols(); ++j) std::swap(aug.at(r, j), aug.at(p, j));
    Scalar inv = aug.at(r, c).inv();
    for (size_t j = 0; j < aug.cols(); ++j) aug.at(r, j) *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || aug.at(i, c).is_zero()) continue;
      Scalar f = aug.at(i, c);
      for (size_t j = 0; j < aug.cols(); ++j) aug.at(i, j) -= f * aug.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  // rows >= r have zeros in the first `cols` columns; a nonzero b-entry there
  // certifies infeasibility
  for (size_t i = r; i < rows; ++i) {
    if (!aug.at(i, cols).is_zero()) {
      Scalar inv = aug.at(i, cols).inv();
      LinOutcome out;
      out.certificate.resize(rows, Scalar::zero(m.ring()));
      for (size_t t = 0; t < rows; ++t) out.certificate[t] = aug.at(i, cols + 1 + t) * inv;
      return out;
    }
  }
  LinOutcome out;
  std::vector<Scalar> x(cols, Scalar::zero(m.ring()));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols);
  out.solution = std::move(x);
  out.unique = pivots.size() == cols;
  return out;
}

// Incremental row span with reduced rows; deterministic insertion order.
class SpanBuilder {
 public:
  SpanBuilder(const CoeffRing& ring, size_t dim) : ring_(ring), dim_(dim) {}

  // Returns true when v enlarged the span.
  bool add(std::vector<Scalar> v) {
    require(v.size() == dim_, ErrorCode::DimensionMismatch, "span vector size");
    reduce(v);
    size_t lead = leading(v);
    if (lead == dim_) return false;
    Scalar inv = v[lead].inv();
    for (Scalar& s : v) s *= inv;
    // keep rows sorted by leading index and reduce existing rows against v
    for (auto& row : rows_) {
      if (!row[lead].is_zero()) {
        Scalar f = row[lead];
        for (size_t j = 0; j < dim_; ++j) row[j] -= f * v[j];
      }
    }
    size_t pos = 0;
    while (pos < rows_.size() && leads_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + long(pos), std::move(v));
    leads_.insert(leads_.begin() + long(pos), lead);
    return true;
  }
  bool contains(std::vector<Scalar> v) const {
    reduce(v);
    return leading(v) == dim_;
  }
  size_t dim() const { return rows_.size(); }
  size_t ambient() const { return dim_; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

 private:
  void reduce(std::vector<Scalar>& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Scalar& c = v[leads_[i]];
      if (c.is_zero()) continue;
      Scalar f = c;
      for (size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[i][j];
    }
  }
  size_t leading(const std::vector<Scalar>& v) const {
    for (size_t j = 0; j < dim_; ++j)
      if (!v[j].is_zero()) return j;
    return dim_;
  }
  CoeffRing ring_;
  size_t dim_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<size_t> leads_;
};

// Column space basis in reduced column echelon form: basis columns restricted
// to pivot_rows form an identity, so coordinates of any vector in the space
// are read off at pivot_rows without solving.
struct ColSpace {
  ScalarMat basis;                // ambient x dim
  std::vector<size_t> pivot_rows;
};

inline ColSpace column_space(const ScalarMat& m) {
  RrefResult rr = rref(m.transposed());
  ColSpace cs;
  cs.pivot_rows = rr.pivots;
  cs.basis = ScalarMat(m.ring(), m.rows(), rr.pivots.size());
  for (size_t i = 0; i < rr.pivots.size(); ++i)
    for (size_t j = 0; j < m.rows(); ++j) cs.basis.at(j, i) = rr.r.at(i, j);
  return cs;
}

inline std::vector<Scalar> coords_in(const ColSpace& cs, const std::vector<Scalar>& v) {
  std::vector<Scalar> c(cs.pivot_rows.size(), Scalar::zero(cs.basis.ring()));
  for (size_t i = 0; i < cs.pivot_rows.size(); ++i) c[i] = v[cs.pivot_rows[i]];
  return c;
}

// Membership-checked variant used where the caller must not silently project.
inline std::vector<Scalar> coords_in_checked(const ColSpace& cs, const std::vector<Scalar>& v) {
  std::vector<Scalar> c = coords_in(cs, v);
  std::vector<Scalar> back = cs.basis.apply(c);
  require(back == v, ErrorCode::VerificationFailed, "vector not in the recorded column space");
  return c;
}

}  // namespace monodec
