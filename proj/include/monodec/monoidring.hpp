#pragma once

// The semigroup ring K[M_n(F)] and its Hom-set bimodules K[Hom(F^a, F^b)]:
// finite K-linear combinations of matrices, multiplied by bilinear extension
// of composition. Keys of an element of K[Hom(F^a, F^b)] are b x a matrices
// acting on column vectors; compose(x, y) is x after y.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monodec/errors.hpp"
#include "monodec/matmonoid.hpp"
#include "monodec/scalars.hpp"

namespace monodec {

class RingElem {
 public:
  RingElem() : f_(nullptr), ring_(CoeffRing::rationals()), src_(0), tgt_(0) {}
  RingElem(const GaloisField& f, const CoeffRing& ring, unsigned src, unsigned tgt)
      : f_(&f), ring_(ring), src_(uint16_t(src)), tgt_(uint16_t(tgt)) {}

  // [A] with coefficient one.
  static RingElem basis(const CoeffRing& ring, const Mat& a) {
    RingElem x(a.field(), ring, a.cols(), a.rows());
    x.terms_.emplace(a, Scalar::one(ring));
    return x;
  }
  // The unit [I_n] of K[M_n(F)].
  static RingElem unit(const GaloisField& f, const CoeffRing& ring, unsigned n) {
    return basis(ring, Mat::identity(f, n));
  }
  static RingElem zero(const GaloisField& f, const CoeffRing& ring, unsigned src, unsigned tgt) {
    return RingElem(f, ring, src, tgt);
  }

  const GaloisField& field() const { return *f_; }
  const CoeffRing& ring() const { return ring_; }
  unsigned src() const { return src_; }
  unsigned tgt() const { return tgt_; }
  bool is_zero() const { return terms_.empty(); }
  size_t support_size() const { return terms_.size(); }
  const std::map<Mat, Scalar>& terms() const { return terms_; }

  Scalar coeff(const Mat& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
  }

  void add_term(const Mat& a, const Scalar& c) {
    require(a.rows() == tgt_ && a.cols() == src_, ErrorCode::DimensionMismatch,
            "term shape does not match the Hom-set");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend RingElem operator+(const RingElem& x, const RingElem& y) {
    x.check_same_homset(y);
    RingElem z = x;
    for (const auto& [m, c] : y.terms_) z.add_term(m, c);
    return z;
  }
  friend RingElem operator-(const RingElem& x, const RingElem& y) {
    x.check_same_homset(y);
    RingElem z = x;
    for (const auto& [m, c] : y.terms_) z.add_term(m, -c);
    return z;
  }
  RingElem scaled(const Scalar& c) const {
    RingElem z(*f_, ring_, src_, tgt_);
    if (c.is_zero()) return z;
    for (const auto& [m, v] : terms_) z.terms_.emplace(m, v * c);
    return z;
  }
  RingElem operator-() const { return scaled(-Scalar::one(ring_)); }

  friend bool operator==(const RingElem& x, const RingElem& y) {
    return x.f_ == y.f_ && x.ring_ == y.ring_ && x.src_ == y.src_ && x.tgt_ == y.tgt_ &&
           x.terms_ == y.terms_;
  }

  void check_same_homset(const RingElem& o) const {
    require(f_ == o.f_ && ring_ == o.ring_, ErrorCode::CtxMismatch, "elements from different contexts");
    require(src_ == o.src_ && tgt_ == o.tgt_, ErrorCode::DimensionMismatch,
            "elements from different Hom-sets");
  }

 private:
  const GaloisField* f_;
  CoeffRing ring_;
  uint16_t src_, tgt_;
  std::map<Mat, Scalar> terms_;
};

// compose(x, y) = x after y: K[Hom(F^b,F^c)] x K[Hom(F^a,F^b)] -> K[Hom(F^a,F^c)].
inline RingElem compose(const RingElem& x, const RingElem& y) {
  require(&x.field() == &y.field() && x.ring() == y.ring(), ErrorCode::CtxMismatch,
          "compose across contexts");
  require(x.src() == y.tgt(), ErrorCode::DimensionMismatch, "inner dimensions do not match");
  RingElem z(x.field(), x.ring(), y.src(), x.tgt());
  for (const auto& [a, va] : x.terms())
    for (const auto& [b, vb] : y.terms()) z.add_term(a * b, va * vb);
  return z;
}

inline RingElem transpose(const RingElem& x) {
  RingElem z(x.field(), x.ring(), x.tgt(), x.src());
  for (const auto& [m, c] : x.terms()) z.add_term(m.transposed(), c);
  return z;
}

// Group algebra K[GL_n(F)]: like RingElem but every key invertible.
class GroupAlgElem {
 public:
  GroupAlgElem() : f_(nullptr), ring_(CoeffRing::rationals()), n_(0) {}
  GroupAlgElem(const GaloisField& f, const CoeffRing& ring, unsigned n)
      : f_(&f), ring_(ring), n_(uint16_t(n)) {}
  static GroupAlgElem basis(const CoeffRing& ring, const Mat& g) {
    require(is_invertible(g), ErrorCode::UsageError, "group algebra keys must be invertible");
    GroupAlgElem x(g.field(), ring, g.rows());
    x.terms_.emplace(g, Scalar::one(ring));
    return x;
  }
  static GroupAlgElem unit(const GaloisField& f, const CoeffRing& ring, unsigned n) {
    GroupAlgElem x(f, ring, n);
    x.terms_.emplace(Mat::identity(f, n), Scalar::one(ring));
    return x;
  }

  const GaloisField& field() const { return *f_; }
  const CoeffRing& ring() const { return ring_; }
  unsigned n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  size_t support_size() const { return terms_.size(); }
  const std::map<Mat, Scalar>& terms() const { return terms_; }
  Scalar coeff(const Mat& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
  }
  void add_term(const Mat& g, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(g, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend GroupAlgElem operator+(const GroupAlgElem& x, const GroupAlgElem& y) {
    GroupAlgElem z = x;
    for (const auto& [g, c] : y.terms_) z.add_term(g, c);
    return z;
  }
  friend GroupAlgElem operator-(const GroupAlgElem& x, const GroupAlgElem& y) {
    GroupAlgElem z = x;
    for (const auto& [g, c] : y.terms_) z.add_term(g, -c);
    return z;
  }
  friend GroupAlgElem operator*(const GroupAlgElem& x, const GroupAlgElem& y) {
    require(x.f_ == y.f_ && x.ring_ == y.ring_ && x.n_ == y.n_, ErrorCode::CtxMismatch,
            "group algebra product across contexts");
    GroupAlgElem z(*x.f_, x.ring_, x.n_);
    for (const auto& [a, va] : x.terms_)
      for (const auto& [b, vb] : y.terms_) z.add_term(a * b, va * vb);
    return z;
  }
  GroupAlgElem scaled(const Scalar& c) const {
    GroupAlgElem z(*f_, ring_, n_);
    if (c.is_zero()) return z;
    for (const auto& [g, v] : terms_) z.terms_.emplace(g, v * c);
    return z;
  }
  friend bool operator==(const GroupAlgElem& x, const GroupAlgElem& y) {
    return x.f_ == y.f_ && x.ring_ == y.ring_ && x.n_ == y.n_ && x.terms_ == y.terms_;
  }

 private:
  const GaloisField* f_;
  CoeffRing ring_;
  uint16_t n_;
  std::map<Mat, Scalar> terms_;
};

// The quotient map K[M_n] -> K[GL_n] of the short exact sequence
// 0 -> K[Sing_n] -> K[M_n] -> K[GL_n] -> 0: drop singular-keyed terms.
inline GroupAlgElem quotient_to_gl(const RingElem& x) {
  require(x.src() == x.tgt(), ErrorCode::DimensionMismatch, "quotient needs a square context");
  GroupAlgElem out(x.field(), x.ring(), x.src());
  for (const auto& [m, c] : x.terms())
    if (is_invertible(m)) out.add_term(m, c);
  return out;
}

struct PredicateReport {
  bool idempotent = false;
  bool central = false;
  bool transpose_fixed = false;
  bool gl_conjugation_fixed = false;
  // x * [A] = [A] = [A] * x for every singular A (the action property alone).
  bool acts_as_unit_on_singulars = false;
  // membership in K[Sing_n], reported separately
  bool supported_on_singulars = false;
  // a unit OF K[Sing_n] must also live in it
  bool unit_on_singulars = false;
  uint64_t monoid_size = 0;
  uint64_t singular_count = 0;
  uint64_t gl_count = 0;
  bool all_unit_properties() const {
    return idempotent && central && transpose_fixed && gl_conjugation_fixed && unit_on_singulars;
  }
};

// Exhaustive predicate suite for x in K[M_n]: centrality against every [A],
// two-sided unit property against every singular [A], GL-fixedness under
// conjugation by every invertible g.
inline PredicateReport predicates(const RingElem& x, uint64_t budget = kDefaultBudget) {
  require(x.src() == x.tgt(), ErrorCode::DimensionMismatch, "predicates need a square context");
  const GaloisField& f = x.field();
  unsigned n = x.src();
  PredicateReport rep;

  rep.idempotent = compose(x, x) == x;
  rep.transpose_fixed = transpose(x) == x;

  rep.supported_on_singulars = true;
  for (const auto& [m, c] : x.terms())
    if (is_invertible(m)) {
      rep.supported_on_singulars = false;
      break;
    }

  std::vector<Mat> all = enumerate_hom(f, n, n, budget);
  rep.monoid_size = all.size();
  rep.central = true;
  for (const Mat& a : all) {
    RingElem ba = RingElem::basis(x.ring(), a);
    if (!(compose(x, ba) == compose(ba, x))) {
      rep.central = false;
      break;
    }
  }

  rep.acts_as_unit_on_singulars = true;
  for (const Mat& a : all) {
    if (rank_of(a) == n) continue;
    ++rep.singular_count;
    RingElem ba = RingElem::basis(x.ring(), a);
    if (!(compose(x, ba) == ba && compose(ba, x) == ba)) rep.acts_as_unit_on_singulars = false;
  }
  rep.unit_on_singulars = rep.acts_as_unit_on_singulars && rep.supported_on_singulars;

  rep.gl_conjugation_fixed = true;
  for (const Mat& g : all) {
    if (rank_of(g) < n) continue;
    ++rep.gl_count;
    RingElem bg = RingElem::basis(x.ring(), g);
    RingElem bginv = RingElem::basis(x.ring(), inverse_of(g));
    if (!(compose(compose(bg, x), bginv) == x)) rep.gl_conjugation_fixed = false;
  }
  return rep;
}

}  // namespace monodec
