#pragma once

// Matrices over F_q and the combinatorics built on them: Hom-set enumeration,
// rank strata, subspaces in reduced row echelon form, Gaussian binomials,
// GL-conjugation orbits and semi-idempotents.
//
// An m x n matrix is identified with a linear map F^n -> F^m acting on column
// vectors. The canonical total order on matrices of a common shape is
// lexicographic on the row-major entry codes; every enumeration below emits
// that order so repeated runs are byte-identical.

#include <algorithm>
#include <cstdint>
#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monodec/errors.hpp"
#include "monodec/scalars.hpp"

namespace monodec {

inline constexpr uint64_t kDefaultBudget = uint64_t(1) << 20;

class Mat {
 public:
  Mat() : f_(nullptr), rows_(0), cols_(0) {}
  Mat(const GaloisField& f, unsigned rows, unsigned cols)
      : f_(&f), rows_(uint16_t(rows)), cols_(uint16_t(cols)), e_(size_t(rows) * cols, 0) {}

  static Mat identity(const GaloisField& f, unsigned n) {
    Mat m(f, n, n);
    for (unsigned i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }
  static Mat from_codes(const GaloisField& f, unsigned rows, unsigned cols,
                        std::initializer_list<int> codes) {
    Mat m(f, rows, cols);
    require(codes.size() == size_t(rows) * cols, ErrorCode::DimensionMismatch, "entry count");
    size_t i = 0;
    for (int c : codes) m.e_[i++] = uint8_t(c);
    return m;
  }

  const GaloisField& field() const { return *f_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  uint8_t at(unsigned i, unsigned j) const { return e_[size_t(i) * cols_ + j]; }
  void set(unsigned i, unsigned j, uint8_t code) { e_[size_t(i) * cols_ + j] = code; }
  const std::vector<uint8_t>& entries() const { return e_; }

  bool is_zero() const {
    for (uint8_t x : e_)
      if (x) return false;
    return true;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.f_ == b.f_, ErrorCode::CtxMismatch, "matrix product across fields");
    require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "matrix product shapes");
    const GaloisField& f = *a.f_;
    Mat c(f, a.rows_, b.cols_);
    for (unsigned i = 0; i < a.rows_; ++i)
      for (unsigned t = 0; t < a.cols_; ++t) {
        uint8_t x = a.at(i, t);
        if (!x) continue;
        for (unsigned j = 0; j < b.cols_; ++j) {
          uint8_t y = b.at(t, j);
          if (y) c.set(i, j, f.add(c.at(i, j), f.mul(x, y)));
        }
      }
    return c;
  }

  Mat transposed() const {
    Mat t(*f_, cols_, rows_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
  }

  Mat pow(unsigned k) const {
    require(rows_ == cols_, ErrorCode::DimensionMismatch, "powers need a square matrix");
    Mat r = identity(*f_, rows_), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }

  friend auto operator<=>(const Mat& a, const Mat& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.e_ <=> b.e_;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  // Base-q row-major integer code; shape must satisfy q^(rows*cols) <= 2^63.
  uint64_t encode() const {
    uint64_t v = 0;
    for (uint8_t x : e_) v = v * f_->q() + x;
    return v;
  }
  static Mat decode(const GaloisField& f, unsigned rows, unsigned cols, uint64_t code) {
    Mat m(f, rows, cols);
    for (size_t i = m.e_.size(); i-- > 0;) {
      m.e_[i] = uint8_t(code % f.q());
      code /= f.q();
    }
    return m;
  }

  // Row-major concatenation of base-p digit strings (e digits per entry).
  std::string digits() const {
    std::string s;
    s.reserve(e_.size() * f_->e());
    for (uint8_t x : e_) s += f_->elem_str(x);
    return s;
  }
  static Mat from_digits(const GaloisField& f, unsigned rows, unsigned cols, const std::string& s) {
    require(s.size() == size_t(rows) * cols * f.e(), ErrorCode::UsageError, "digit string length");
    Mat m(f, rows, cols);
    for (size_t i = 0; i < size_t(rows) * cols; ++i)
      m.e_[i] = f.elem_from_str(s.substr(i * f.e(), f.e()));
    return m;
  }

 private:
  const GaloisField* f_;
  uint16_t rows_, cols_;
  std::vector<uint8_t> e_;
};

namespace detail {
// In-place row reduction to reduced row echelon form; returns pivot columns.
inline std::vector<unsigned> rref_in_place(const GaloisField& f, std::vector<std::vector<uint8_t>>& rows,
                                           unsigned cols) {
  std::vector<unsigned> pivots;
  unsigned r = 0;
  for (unsigned c = 0; c < cols && r < rows.size(); ++c) {
    unsigned piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    uint8_t inv = f.inv(rows[r][c]);
    for (unsigned j = 0; j < cols; ++j) rows[r][j] = f.mul(rows[r][j], inv);
    for (unsigned i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      uint8_t fac = rows[i][c];
      for (unsigned j = 0; j < cols; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(fac, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(pivots.size());
  return pivots;
}

inline std::vector<std::vector<uint8_t>> mat_rows(const Mat& m) {
  std::vector<std::vector<uint8_t>> rows(m.rows(), std::vector<uint8_t>(m.cols()));
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}
}  // namespace detail

// A subspace of F^n represented by its unique reduced-row-echelon basis
// (rows of `basis`, no zero rows; dim 0 has an empty 0 x n basis).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Mat rref_basis) : basis_(std::move(rref_basis)) {}

  static Subspace row_space(const Mat& m) {
    auto rows = detail::mat_rows(m);
    detail::rref_in_place(m.field(), rows, m.cols());
    Mat b(m.field(), unsigned(rows.size()), m.cols());
    for (unsigned i = 0; i < rows.size(); ++i)
      for (unsigned j = 0; j < m.cols(); ++j) b.set(i, j, rows[i][j]);
    return Subspace(b);
  }
  static Subspace column_space(const Mat& m) { return row_space(m.transposed()); }
  static Subspace kernel(const Mat& m) {
    auto rows = detail::mat_rows(m);
    auto pivots = detail::rref_in_place(m.field(), rows, m.cols());
    const GaloisField& f = m.field();
    std::vector<std::vector<uint8_t>> basis;
    std::vector<bool> is_piv(m.cols(), false);
    for (unsigned c : pivots) is_piv[c] = true;
    for (unsigned c = 0; c < m.cols(); ++c) {
      if (is_piv[c]) continue;
      std::vector<uint8_t> v(m.cols(), 0);
      v[c] = 1;
      for (unsigned i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(rows[i][c]);
      basis.push_back(std::move(v));
    }
    detail::rref_in_place(f, basis, m.cols());
    Mat b(f, unsigned(basis.size()), m.cols());
    for (unsigned i = 0; i < basis.size(); ++i)
      for (unsigned j = 0; j < m.cols(); ++j) b.set(i, j, basis[i][j]);
    return Subspace(b);
  }
  static Subspace zero_space(const GaloisField& f, unsigned n) { return Subspace(Mat(f, 0, n)); }
  static Subspace full_space(const GaloisField& f, unsigned n) {
    return Subspace(Mat::identity(f, n));
  }

  const Mat& basis() const { return basis_; }
  const GaloisField& field() const { return basis_.field(); }
  unsigned ambient() const { return basis_.cols(); }
  unsigned dim() const { return basis_.rows(); }
  unsigned codim() const { return ambient() - dim(); }

  std::vector<unsigned> pivot_columns() const {
    std::vector<unsigned> p;
    for (unsigned i = 0; i < dim(); ++i)
      for (unsigned j = 0; j < ambient(); ++j)
        if (basis_.at(i, j)) {
          p.push_back(j);
          break;
        }
    return p;
  }

  friend auto operator<=>(const Subspace& a, const Subspace& b) { return a.basis_ <=> b.basis_; }
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Mat basis_;
};

inline std::pair<unsigned, Subspace> rank_and_kernel(const Mat& m) {
  Subspace ker = Subspace::kernel(m);
  return {m.cols() - ker.dim(), ker};
}
inline unsigned rank_of(const Mat& m) {
  auto rows = detail::mat_rows(m);
  return unsigned(detail::rref_in_place(m.field(), rows, m.cols()).size());
}
inline bool is_invertible(const Mat& m) { return m.rows() == m.cols() && rank_of(m) == m.rows(); }

inline Mat inverse_of(const Mat& m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const GaloisField& f = m.field();
  unsigned n = m.rows();
  if (n == 0) return m;
  std::vector<std::vector<uint8_t>> rows(n, std::vector<uint8_t>(2 * n, 0));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
    rows[i][n + i] = 1;
  }
  auto piv = detail::rref_in_place(f, rows, 2 * n);
  require(piv.size() >= n && piv[n - 1] == n - 1, ErrorCode::NotInvertible, "singular matrix");
  Mat inv(f, n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv.set(i, j, rows[i][n + j]);
  return inv;
}

namespace detail {
inline void check_budget(const GaloisField& f, unsigned long cells, uint64_t budget) {
  long double total = 1;
  for (unsigned long i = 0; i < cells; ++i) {
    total *= f.q();
    if (total > (long double)budget)
      fail(ErrorCode::BudgetExceeded,
           "enumeration of q^" + std::to_string(cells) + " elements exceeds budget " + std::to_string(budget));
  }
}
}  // namespace detail

// Complete, duplicate-free, canonically ordered Hom-set enumerations.
inline std::vector<Mat> enumerate_hom(const GaloisField& f, unsigned m, unsigned n,
                                      uint64_t budget = kDefaultBudget) {
  detail::check_budget(f, (unsigned long)m * n, budget);
  Mat cur(f, m, n);
  size_t cells = size_t(m) * n;
  if (cells == 0) return {cur};
  std::vector<Mat> out;
  while (true) {
    out.push_back(cur);
    bool carried = true;
    for (size_t i = cells; i-- > 0;) {
      uint8_t v = cur.at(unsigned(i / n), unsigned(i % n));
      if (v + 1u < f.q()) {
        cur.set(unsigned(i / n), unsigned(i % n), v + 1);
        carried = false;
        break;
      }
      cur.set(unsigned(i / n), unsigned(i % n), 0);
    }
    if (carried) break;
  }
  return out;
}

inline std::vector<Mat> enumerate_gl(const GaloisField& f, unsigned n, uint64_t budget = kDefaultBudget) {
  std::vector<Mat> out;
  for (const Mat& m : enumerate_hom(f, n, n, budget))
    if (rank_of(m) == n) out.push_back(m);
  return out;
}
inline std::vector<Mat> enumerate_sing(const GaloisField& f, unsigned n, uint64_t budget = kDefaultBudget) {
  std::vector<Mat> out;
  for (const Mat& m : enumerate_hom(f, n, n, budget))
    if (rank_of(m) < n) out.push_back(m);
  return out;
}
// Injective linear maps F^k -> F^m (m x k matrices of rank k).
inline std::vector<Mat> enumerate_inj(const GaloisField& f, unsigned k, unsigned m,
                                      uint64_t budget = kDefaultBudget) {
  std::vector<Mat> out;
  for (const Mat& x : enumerate_hom(f, m, k, budget))
    if (rank_of(x) == k) out.push_back(x);
  return out;
}
// Surjective linear maps F^n -> F^k (k x n matrices of rank k).
inline std::vector<Mat> enumerate_surj(const GaloisField& f, unsigned n, unsigned k,
                                       uint64_t budget = kDefaultBudget) {
  std::vector<Mat> out;
  for (const Mat& x : enumerate_hom(f, k, n, budget))
    if (rank_of(x) == k) out.push_back(x);
  return out;
}

inline uint64_t order_gl(unsigned q, unsigned n) {
  uint64_t o = 1, qn = 1;
  for (unsigned i = 0; i < n; ++i) qn *= q;
  uint64_t qi = 1;
  for (unsigned i = 0; i < n; ++i) {
    o *= qn - qi;
    qi *= q;
  }
  return o;
}

// Number of k-dimensional subspaces of F_q^n; 0 outside 0 <= k <= n.
// Recurrence [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q; cross-checked against
// enumerate_subspaces by the test suite.
inline uint64_t gaussian_binomial(unsigned q, unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<std::vector<uint64_t>> g(n + 1, std::vector<uint64_t>(n + 1, 0));
  for (unsigned i = 0; i <= n; ++i) g[i][0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    uint64_t qk = 1;
    for (unsigned j = 1; j <= i; ++j) {
      qk *= q;
      g[i][j] = g[i - 1][j - 1] + qk * g[i - 1][j];
    }
  }
  return g[n][k];
}

// All subspaces of F^n of the given codimension, ordered by echelon basis.
inline std::vector<Subspace> enumerate_subspaces(const GaloisField& f, unsigned n, unsigned codim,
                                                 uint64_t budget = kDefaultBudget) {
  require(codim <= n, ErrorCode::DimensionMismatch, "codim must be <= ambient dimension");
  unsigned dim = n - codim;
  std::vector<Subspace> out;
  if (dim == 0) {
    out.push_back(Subspace::zero_space(f, n));
    return out;
  }
  // choose pivot columns, then fill the free entries
  std::vector<unsigned> pivots(dim);
  for (unsigned i = 0; i < dim; ++i) pivots[i] = i;
  auto emit = [&](const std::vector<unsigned>& piv) {
    std::vector<std::pair<unsigned, unsigned>> free_pos;
    std::vector<bool> is_piv(n, false);
    for (unsigned c : piv) is_piv[c] = true;
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned c = piv[i] + 1; c < n; ++c)
        if (!is_piv[c]) free_pos.emplace_back(i, c);
    detail::check_budget(f, free_pos.size(), budget);
    std::vector<uint8_t> vals(free_pos.size(), 0);
    while (true) {
      Mat b(f, dim, n);
      for (unsigned i = 0; i < dim; ++i) b.set(i, piv[i], 1);
      for (size_t t = 0; t < free_pos.size(); ++t) b.set(free_pos[t].first, free_pos[t].second, vals[t]);
      out.push_back(Subspace(b));
      bool carried = true;
      for (size_t i = vals.size(); i-- > 0;) {
        if (vals[i] + 1u < f.q()) {
          ++vals[i];
          carried = false;
          break;
        }
        vals[i] = 0;
      }
      if (carried) break;
    }
  };
  // iterate over dim-subsets of columns in lexicographic order
  while (true) {
    emit(pivots);
    int i = int(dim) - 1;
    while (i >= 0 && pivots[i] == n - dim + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (unsigned j = unsigned(i) + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Deterministic section data for a codim-k subspace W < F^n: a surjection
// pi: F^n -> F^k with kernel exactly W and a right inverse sigma built from
// the non-pivot columns of the echelon basis (pi * sigma = I_k).
inline std::pair<Mat, Mat> section_for_subspace(const Subspace& W, unsigned k) {
  require(W.codim() == k, ErrorCode::DimensionMismatch, "codim(W) must equal k");
  const GaloisField& f = W.field();
  unsigned n = W.ambient(), d = W.dim();
  auto piv = W.pivot_columns();
  std::vector<bool> is_piv(n, false);
  for (unsigned c : piv) is_piv[c] = true;
  std::vector<unsigned> free_cols;
  for (unsigned c = 0; c < n; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  Mat pi(f, k, n), sigma(f, n, k);
  for (unsigned r = 0; r < k; ++r) {
    unsigned j = free_cols[r];
    pi.set(r, j, 1);
    for (unsigned i = 0; i < d; ++i) pi.set(r, piv[i], f.neg(W.basis().at(i, j)));
    sigma.set(j, r, 1);
  }
  return {pi, sigma};
}

// Canonical injection F^k -> F^n with image U (columns = echelon basis rows)
// and its pivot-row left inverse.
inline Mat injection_for_subspace(const Subspace& U) {
  const GaloisField& f = U.field();
  Mat io(f, U.ambient(), U.dim());
  for (unsigned i = 0; i < U.dim(); ++i)
    for (unsigned j = 0; j < U.ambient(); ++j) io.set(j, i, U.basis().at(i, j));
  return io;
}
inline Mat injection_left_inverse(const Subspace& U) {
  const GaloisField& f = U.field();
  Mat lam(f, U.dim(), U.ambient());
  auto piv = U.pivot_columns();
  for (unsigned i = 0; i < U.dim(); ++i) lam.set(i, piv[i], 1);
  return lam;
}

// True iff A acts as the identity on the image of A^n (ranks of powers
// stabilize within n steps for an n x n matrix).
inline bool is_semi_idempotent(const Mat& a) {
  require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "semi-idempotency needs a square matrix");
  unsigned n = a.rows();
  if (n == 0) return true;
  Mat an = a.pow(n);
  Subspace img = Subspace::column_space(an);
  const GaloisField& f = a.field();
  for (unsigned i = 0; i < img.dim(); ++i) {
    Mat v(f, n, 1);
    for (unsigned j = 0; j < n; ++j) v.set(j, 0, img.basis().at(i, j));
    if (!(a * v == v)) return false;
  }
  return true;
}

enum class OrbitRestrict { AllSingular, SemiIdempotent };

// Small generating set for GL_n(F_q): all transvections I + c*E_ij plus the
// diagonal matrix diag(g, 1, ..., 1) for a multiplicative generator g.
inline std::vector<Mat> gl_generators(const GaloisField& f, unsigned n) {
  std::vector<Mat> gens;
  if (n == 0) return gens;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j) continue;
      for (unsigned c = 1; c < f.q(); ++c) {
        Mat t = Mat::identity(f, n);
        t.set(i, j, uint8_t(c));
        gens.push_back(t);
      }
    }
  if (f.q() > 2) {
    Mat d = Mat::identity(f, n);
    d.set(0, 0, f.multiplicative_generator());
    gens.push_back(d);
  }
  if (gens.empty()) gens.push_back(Mat::identity(f, n));
  return gens;
}

// GL_n-conjugation orbits of the selected singular matrices, each orbit
// sorted, orbits ordered by least element. Orbit closure runs over the
// generating set; for n <= 2 the result is re-verified against all of GL_n.
inline std::vector<std::vector<Mat>> conjugacy_orbits(const GaloisField& f, unsigned n,
                                                      OrbitRestrict restrict_to,
                                                      uint64_t budget = kDefaultBudget) {
  std::vector<Mat> pool = enumerate_sing(f, n, budget);
  if (restrict_to == OrbitRestrict::SemiIdempotent) {
    std::vector<Mat> filt;
    for (const Mat& m : pool)
      if (is_semi_idempotent(m)) filt.push_back(m);
    pool.swap(filt);
  }
  std::vector<Mat> gens = gl_generators(f, n);
  std::vector<Mat> gens_inv;
  for (const Mat& g : gens) gens_inv.push_back(inverse_of(g));

  std::set<Mat> remaining(pool.begin(), pool.end());
  std::vector<std::vector<Mat>> orbits;
  while (!remaining.empty()) {
    Mat seed = *remaining.begin();
    std::set<Mat> orbit{seed};
    std::vector<Mat> frontier{seed};
    while (!frontier.empty()) {
      Mat x = frontier.back();
      frontier.pop_back();
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        Mat y = gens[gi] * x * gens_inv[gi];
        if (orbit.insert(y).second) frontier.push_back(y);
      }
    }
    std::vector<Mat> sorted(orbit.begin(), orbit.end());
    for (const Mat& m : sorted) remaining.erase(m);
    orbits.push_back(std::move(sorted));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const std::vector<Mat>& a, const std::vector<Mat>& b) { return a.front() < b.front(); });

  if (n <= 2) {
    // full-orbit verification against every element of GL_n
    std::vector<Mat> gl = enumerate_gl(f, n, budget);
    for (const auto& orbit : orbits) {
      std::set<Mat> os(orbit.begin(), orbit.end());
      std::set<Mat> full;
      for (const Mat& g : gl) {
        Mat gi = inverse_of(g);
        full.insert(g * orbit.front() * gi);
      }
      require(full == os, ErrorCode::VerificationFailed, "generator closure missed part of an orbit");
    }
  }
  return orbits;
}

}  // namespace monodec
