#pragma once

// Exact module presentations over the monoid algebras K[M_n(F)] and the
// group algebras K[GL_n(F)], plus the recollement functors of the split
// short exact sequence: e(M) = e_{n-1}M, i (inflation through the quotient
// to K[GL_n]), l(N) = K[M_n]e_{n-1} (x) N and r(N) = Hom(e_{n-1}K[M_n], N).
// Over K = Q the algebras are semisimple, so equality of character functions
// is the module-isomorphism test.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "monodec/checks.hpp"
#include "monodec/errors.hpp"
#include "monodec/kovacs.hpp"
#include "monodec/linalg.hpp"
#include "monodec/matmonoid.hpp"
#include "monodec/morita.hpp"

namespace monodec {

// K-linear representation of GL_k(F_q). Either stores explicit matrices or
// is backed by a column provider (used for functor images, where the action
// matrix is derived on demand from the underlying functor).
class GroupModule {
 public:
  using ColumnFn = std::function<std::vector<Scalar>(const Mat& g, size_t col)>;

  GroupModule() = default;

  static GroupModule from_matrices(const GaloisField& f, const CoeffRing& ring, unsigned k,
                                   std::map<uint64_t, ScalarMat> mats, uint64_t verify_pairs = 0) {
    GroupModule m;
    m.f_ = &f;
    m.ring_ = ring;
    m.k_ = k;
    m.mats_ = std::move(mats);
    std::vector<Mat> gl = enumerate_gl(f, k);
    require(m.mats_.size() == gl.size(), ErrorCode::DimensionMismatch,
            "need one action matrix per group element");
    m.dim_ = m.mats_.begin()->second.rows();
    for (auto& [g, a] : m.mats_)
      require(a.rows() == m.dim_ && a.cols() == m.dim_, ErrorCode::DimensionMismatch,
              "action matrices must share the module dimension");
    require(m.action(Mat::identity(f, k)) == ScalarMat::identity(ring, m.dim_),
            ErrorCode::VerificationFailed, "identity must act as identity");
    // multiplicativity: exhaustive when cheap, seeded sample otherwise
    uint64_t total = uint64_t(gl.size()) * gl.size();
    bool exhaustive = verify_pairs == 0 && total * m.dim_ * m.dim_ * m.dim_ <= (uint64_t(1) << 26);
    if (exhaustive) {
      for (const Mat& a : gl)
        for (const Mat& b : gl)
          require(m.action(a) * m.action(b) == m.action(a * b), ErrorCode::VerificationFailed,
                  "group action is not multiplicative");
    } else {
      uint64_t s = 0x9e3779b97f4a7c15ull, count = verify_pairs ? verify_pairs : 256;
      auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
      };
      for (uint64_t t = 0; t < count; ++t) {
        const Mat& a = gl[next() % gl.size()];
        const Mat& b = gl[next() % gl.size()];
        require(m.action(a) * m.action(b) == m.action(a * b), ErrorCode::VerificationFailed,
                "group action is not multiplicative");
      }
    }
    return m;
  }

  static GroupModule zero(const GaloisField& f, const CoeffRing& ring, unsigned k) {
    GroupModule m;
    m.f_ = &f;
    m.ring_ = ring;
    m.k_ = k;
    m.dim_ = 0;
    for (const Mat& g : enumerate_gl(f, k)) m.mats_.emplace(g.encode(), ScalarMat(ring, 0, 0));
    return m;
  }
  static GroupModule trivial(const GaloisField& f, const CoeffRing& ring, unsigned k) {
    std::map<uint64_t, ScalarMat> mats;
    for (const Mat& g : enumerate_gl(f, k)) mats.emplace(g.encode(), ScalarMat::identity(ring, 1));
    return from_matrices(f, ring, k, std::move(mats));
  }

  // Backed by a lazy column provider; characters precomputed by the caller.
  static GroupModule from_provider(const GaloisField& f, const CoeffRing& ring, unsigned k,
                                   size_t dim, ColumnFn provider,
                                   std::map<uint64_t, Scalar> characters) {
    GroupModule m;
    m.f_ = &f;
    m.ring_ = ring;
    m.k_ = k;
    m.dim_ = dim;
    m.provider_ = std::move(provider);
    m.chars_ = std::move(characters);
    return m;
  }

  const GaloisField& field() const { return *f_; }
  const CoeffRing& ring() const { return ring_; }
  unsigned group_rank() const { return k_; }
  size_t dim() const { return dim_; }

  std::vector<Scalar> action_column(const Mat& g, size_t col) const {
    if (provider_) return provider_(g, col);
    return mats_.at(g.encode()).col(col);
  }
  ScalarMat action(const Mat& g) const {
    if (!provider_) return mats_.at(g.encode());
    ScalarMat a(ring_, dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) {
      std::vector<Scalar> c = provider_(g, j);
      for (size_t i = 0; i < dim_; ++i) a.at(i, j) = c[i];
    }
    return a;
  }
  Scalar character(const Mat& g) const {
    if (!provider_) return mats_.at(g.encode()).trace();
    return chars_.at(g.encode());
  }
  std::map<uint64_t, Scalar> character_map() const {
    std::map<uint64_t, Scalar> out;
    for (const Mat& g : enumerate_gl(*f_, k_)) out.emplace(g.encode(), character(g));
    return out;
  }

 private:
  const GaloisField* f_ = nullptr;
  CoeffRing ring_;
  unsigned k_ = 0;
  size_t dim_ = 0;
  std::map<uint64_t, ScalarMat> mats_;
  ColumnFn provider_;
  std::map<uint64_t, Scalar> chars_;
};

// K[M_n(F)]-module given by one exact matrix per monoid element.
class ModulePres {
 public:
  ModulePres() = default;
  // verify_pairs = 0 requests exhaustive multiplicativity checking when the
  // total work stays under a fixed bound (always the case for n <= 2 over
  // F_2); otherwise a seeded sample of the stated size is used.
  ModulePres(const GaloisField& f, const CoeffRing& ring, unsigned n,
             std::map<uint64_t, ScalarMat> rho, uint64_t verify_pairs = 0,
             uint64_t budget = kDefaultBudget)
      : f_(&f), ring_(ring), n_(n), rho_(std::move(rho)) {
    std::vector<Mat> all = enumerate_hom(f, n, n, budget);
    require(rho_.size() == all.size(), ErrorCode::DimensionMismatch,
            "need one matrix per monoid element");
    dim_ = rho_.begin()->second.rows();
    for (auto& [c, a] : rho_)
      require(a.rows() == dim_ && a.cols() == dim_, ErrorCode::DimensionMismatch,
              "action matrices must share the module dimension");
    require(action(Mat::identity(f, n)) == ScalarMat::identity(ring, dim_),
            ErrorCode::VerificationFailed, "identity must act as identity");
    uint64_t total = uint64_t(all.size()) * all.size();
    bool exhaustive =
        verify_pairs == 0 && total * dim_ * dim_ * dim_ <= (uint64_t(1) << 26);
    auto check = [&](const Mat& a, const Mat& b) {
      require(action(a) * action(b) == action(a * b), ErrorCode::VerificationFailed,
              "module action is not multiplicative");
    };
    if (exhaustive) {
      for (const Mat& a : all)
        for (const Mat& b : all) check(a, b);
    } else {
      uint64_t s = 0x9e3779b97f4a7c15ull, count = verify_pairs ? verify_pairs : 10000;
      auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
      };
      for (uint64_t t = 0; t < count; ++t) check(all[next() % all.size()], all[next() % all.size()]);
    }
  }

  // Left regular module: rho(A)[B] = [AB].
  static ModulePres regular(const GaloisField& f, const CoeffRing& ring, unsigned n,
                            uint64_t budget = kDefaultBudget) {
    std::vector<Mat> all = enumerate_hom(f, n, n, budget);
    std::map<uint64_t, size_t> idx;
    for (size_t i = 0; i < all.size(); ++i) idx.emplace(all[i].encode(), i);
    std::map<uint64_t, ScalarMat> rho;
    for (const Mat& a : all) {
      ScalarMat m(ring, all.size(), all.size());
      for (size_t j = 0; j < all.size(); ++j) m.at(idx.at((a * all[j]).encode()), j) = Scalar::one(ring);
      rho.emplace(a.encode(), std::move(m));
    }
    return ModulePres(f, ring, n, std::move(rho));
  }

  static ModulePres zero(const GaloisField& f, const CoeffRing& ring, unsigned n,
                         uint64_t budget = kDefaultBudget) {
    std::map<uint64_t, ScalarMat> rho;
    for (const Mat& a : enumerate_hom(f, n, n, budget)) rho.emplace(a.encode(), ScalarMat(ring, 0, 0));
    ModulePres m;
    m.f_ = &f;
    m.ring_ = ring;
    m.n_ = n;
    m.dim_ = 0;
    m.rho_ = std::move(rho);
    return m;
  }

  // Left ideal K[M_n] * e as a submodule of the regular module.
  static ModulePres left_ideal(const MoritaContext& ctx, const RingElem& e,
                               uint64_t budget = kDefaultBudget) {
    const GaloisField& f = ctx.field();
    unsigned n = ctx.n();
    std::vector<Mat> all = enumerate_hom(f, n, n, budget);
    std::map<uint64_t, size_t> idx;
    for (size_t i = 0; i < all.size(); ++i) idx.emplace(all[i].encode(), i);
    auto coords = [&](const RingElem& x) {
      std::vector<Scalar> v(all.size(), Scalar::zero(ctx.ring()));
      for (const auto& [m, c] : x.terms()) v[idx.at(m.encode())] = c;
      return v;
    };
    ScalarMat gen(ctx.ring(), all.size(), all.size());
    for (size_t j = 0; j < all.size(); ++j) {
      std::vector<Scalar> col = coords(compose(RingElem::basis(ctx.ring(), all[j]), e));
      for (size_t i = 0; i < all.size(); ++i) gen.at(i, j) = col[i];
    }
    ColSpace cs = column_space(gen);
    std::map<uint64_t, ScalarMat> rho;
    for (const Mat& a : all) {
      ScalarMat m(ctx.ring(), cs.basis.cols(), cs.basis.cols());
      for (size_t j = 0; j < cs.basis.cols(); ++j) {
        // left multiplication permutes the monoid basis of the ambient space
        std::vector<Scalar> v(all.size(), Scalar::zero(ctx.ring()));
        for (size_t i = 0; i < all.size(); ++i) {
          const Scalar& c = cs.basis.at(i, j);
          if (!c.is_zero()) v[idx.at((a * all[i]).encode())] += c;
        }
        std::vector<Scalar> cc = coords_in_checked(cs, v);
        for (size_t i = 0; i < cc.size(); ++i) m.at(i, j) = cc[i];
      }
      rho.emplace(a.encode(), std::move(m));
    }
    return ModulePres(f, ctx.ring(), n, std::move(rho));
  }

  const GaloisField& field() const { return *f_; }
  const CoeffRing& ring() const { return ring_; }
  unsigned n() const { return n_; }
  size_t dim() const { return dim_; }
  const ScalarMat& action(const Mat& a) const { return rho_.at(a.encode()); }

  // Action of an algebra element.
  ScalarMat action_elem(const RingElem& x) const {
    ScalarMat out(ring_, dim_, dim_);
    for (const auto& [m, c] : x.terms()) out = out + action(m).scaled(c);
    return out;
  }

  Scalar character(const Mat& a) const { return action(a).trace(); }
  std::map<uint64_t, Scalar> character_map(uint64_t budget = kDefaultBudget) const {
    std::map<uint64_t, Scalar> out;
    for (const Mat& a : enumerate_hom(*f_, n_, n_, budget)) out.emplace(a.encode(), character(a));
    return out;
  }

  friend ModulePres direct_sum(const ModulePres& x, const ModulePres& y) {
    require(x.f_ == y.f_ && x.ring_ == y.ring_ && x.n_ == y.n_, ErrorCode::CtxMismatch,
            "direct sum across contexts");
    ModulePres z;
    z.f_ = x.f_;
    z.ring_ = x.ring_;
    z.n_ = x.n_;
    z.dim_ = x.dim_ + y.dim_;
    for (const auto& [code, a] : x.rho_) {
      const ScalarMat& b = y.rho_.at(code);
      ScalarMat m(x.ring_, z.dim_, z.dim_);
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
      for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m.at(x.dim_ + i, x.dim_ + j) = b.at(i, j);
      z.rho_.emplace(code, std::move(m));
    }
    return z;
  }

 private:
  const GaloisField* f_ = nullptr;
  CoeffRing ring_;
  unsigned n_ = 0;
  size_t dim_ = 0;
  std::map<uint64_t, ScalarMat> rho_;
};

inline bool same_character(const std::map<uint64_t, Scalar>& a, const std::map<uint64_t, Scalar>& b) {
  return a == b;
}

// C in M_{n-1} placed in the upper-left block of an n x n matrix.
inline Mat embed_upper_left(const Mat& c, unsigned n) {
  require(c.rows() == c.cols() && c.rows() + 1 == n, ErrorCode::DimensionMismatch,
          "embedding expects an (n-1) x (n-1) matrix");
  Mat m(c.field(), n, n);
  for (unsigned i = 0; i + 1 < n; ++i)
    for (unsigned j = 0; j + 1 < n; ++j) m.set(i, j, c.at(i, j));
  return m;
}

// Monoid generators of M_m(F_q): GL generators plus the padded identity
// (every matrix is g (I_r + 0) h by rank factorization, and I_r + 0 is a
// product of conjugates of the padded identity). Relations imposed for a
// generating set extend to the whole monoid by induction on word length.
inline std::vector<Mat> monoid_generators(const GaloisField& f, unsigned m) {
  std::vector<Mat> gens = gl_generators(f, m);
  if (m >= 1) gens.push_back(padded_identity(f, m));
  return gens;
}

// e(M) = e_{n-1} M as a K[M_{n-1}]-module together with the GL_n-module
// q-side image of e_n^G; the two halves of the split recollement.
struct SplitModules {
  ModulePres low;    // over M_{n-1}
  GroupModule top;   // over GL_n
};

inline SplitModules split_module(const ModulePres& m, const SingularUnit& unit_n,
                                 uint64_t budget = kDefaultBudget) {
  const GaloisField& f = m.field();
  const CoeffRing& ring = m.ring();
  unsigned n = m.n();
  require(n >= 1, ErrorCode::DimensionMismatch, "split needs n >= 1");
  require(unit_n.n == n, ErrorCode::DimensionMismatch, "unit rank mismatch");

  // N = image of rho(e_{n-1}) with the embedded M_{n-1}-action
  ScalarMat e1 = m.action(padded_identity(f, n));
  ColSpace ncs = column_space(e1);
  std::map<uint64_t, ScalarMat> low;
  for (const Mat& c : enumerate_hom(f, n - 1, n - 1, budget)) {
    const ScalarMat& act = m.action(embed_upper_left(c, n));
    ScalarMat a(ring, ncs.basis.cols(), ncs.basis.cols());
    for (size_t j = 0; j < ncs.basis.cols(); ++j) {
      std::vector<Scalar> v = act.apply(ncs.basis.col(j));
      std::vector<Scalar> cc = coords_in_checked(ncs, v);
      for (size_t i = 0; i < cc.size(); ++i) a.at(i, j) = cc[i];
    }
    low.emplace(c.encode(), std::move(a));
  }
  ModulePres nmod = ncs.basis.cols() == 0
                        ? ModulePres::zero(f, ring, n - 1, budget)
                        : ModulePres(f, ring, n - 1, std::move(low), 0, budget);

  // L = image of rho(e_n^G) with the restricted GL_n-action
  ScalarMat eg = m.action_elem(unit_n.eG);
  ColSpace lcs = column_space(eg);
  std::map<uint64_t, ScalarMat> top;
  for (const Mat& g : enumerate_gl(f, n, budget)) {
    const ScalarMat& act = m.action(g);
    ScalarMat a(ring, lcs.basis.cols(), lcs.basis.cols());
    for (size_t j = 0; j < lcs.basis.cols(); ++j) {
      std::vector<Scalar> v = act.apply(lcs.basis.col(j));
      std::vector<Scalar> cc = coords_in_checked(lcs, v);
      for (size_t i = 0; i < cc.size(); ++i) a.at(i, j) = cc[i];
    }
    top.emplace(g.encode(), std::move(a));
  }
  GroupModule lmod = lcs.basis.cols() == 0 ? GroupModule::zero(f, ring, n)
                                           : GroupModule::from_matrices(f, ring, n, std::move(top));
  return {std::move(nmod), std::move(lmod)};
}

// Inflation i(L): invertibles act through L, singulars act as zero.
inline ModulePres inflate(const GroupModule& l, uint64_t budget = kDefaultBudget) {
  const GaloisField& f = l.field();
  unsigned n = l.group_rank();
  std::map<uint64_t, ScalarMat> rho;
  for (const Mat& a : enumerate_hom(f, n, n, budget)) {
    if (is_invertible(a))
      rho.emplace(a.encode(), l.action(a));
    else
      rho.emplace(a.encode(), ScalarMat(l.ring(), l.dim(), l.dim()));
  }
  if (l.dim() == 0) return ModulePres::zero(f, l.ring(), n, budget);
  return ModulePres(f, l.ring(), n, std::move(rho), 0, budget);
}

namespace detail {

// Shared quotient machinery: a free K-space with basis pairs (s, v) for
// s in a monoid-element list and v a module basis index, modulo the span of
// relation vectors. Coordinates are the non-pivot positions.
struct QuotientSpace {
  RrefResult rel;                  // RREF of the relation span
  std::vector<size_t> free_cols;   // quotient coordinates
  size_t ambient = 0;

  static QuotientSpace build(const CoeffRing& ring, size_t ambient,
                             const std::vector<std::vector<Scalar>>& relations) {
    QuotientSpace q;
    q.ambient = ambient;
    ScalarMat relmat(ring, relations.size(), ambient);
    for (size_t i = 0; i < relations.size(); ++i)
      for (size_t j = 0; j < ambient; ++j) relmat.at(i, j) = relations[i][j];
    q.rel = rref(std::move(relmat));
    std::vector<bool> is_piv(ambient, false);
    for (size_t c : q.rel.pivots) is_piv[c] = true;
    for (size_t c = 0; c < ambient; ++c)
      if (!is_piv[c]) q.free_cols.push_back(c);
    return q;
  }

  size_t dim() const { return free_cols.size(); }

  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (size_t i = 0; i < rel.pivots.size(); ++i) {
      const Scalar& c = v[rel.pivots[i]];
      if (c.is_zero()) continue;
      Scalar f = c;
      for (size_t j = 0; j < ambient; ++j) v[j] -= f * rel.r.at(i, j);
    }
    std::vector<Scalar> out;
    out.reserve(free_cols.size());
    for (size_t c : free_cols) out.push_back(v[c]);
    return out;
  }
};

}  // namespace detail

// l(N) = K[M_n(F)] e_{n-1} (x)_{K[M_{n-1}]} N, computed as the free module on
// pairs ([B], v) with B ranging over matrices with zero last column, modulo
// the bimodule relations for a generating set of M_{n-1}.
inline ModulePres l_functor(const ModulePres& nmod, unsigned n, uint64_t budget = kDefaultBudget) {
  const GaloisField& f = nmod.field();
  const CoeffRing& ring = nmod.ring();
  require(nmod.n() + 1 == n, ErrorCode::DimensionMismatch, "l expects a module over M_{n-1}");
  require(ring.is_rational(), ErrorCode::NotSupported,
          "character-based verification requires K = Q");

  std::vector<Mat> carrier;  // K[M_n] e_{n-1}: matrices with zero last column
  for (const Mat& b : enumerate_hom(f, n, n, budget)) {
    bool ok = true;
    for (unsigned i = 0; i < n; ++i)
      if (b.at(i, n - 1)) ok = false;
    if (ok) carrier.push_back(b);
  }
  std::map<uint64_t, size_t> cidx;
  for (size_t i = 0; i < carrier.size(); ++i) cidx.emplace(carrier[i].encode(), i);
  size_t dn = nmod.dim();
  size_t ambient = carrier.size() * dn;
  auto slot = [&](size_t s, size_t v) { return s * dn + v; };

  std::vector<std::vector<Scalar>> relations;
  if (dn > 0) {
    for (const Mat& c : monoid_generators(f, n - 1)) {
      Mat ec = embed_upper_left(c, n);
      const ScalarMat& act = nmod.action(c);
      for (size_t s = 0; s < carrier.size(); ++s) {
        size_t s2 = cidx.at((carrier[s] * ec).encode());
        for (size_t v = 0; v < dn; ++v) {
          // (x embed(C)) (x) v  -  x (x) (C v)
          std::vector<Scalar> rel(ambient, Scalar::zero(ring));
          rel[slot(s2, v)] += Scalar::one(ring);
          for (size_t i = 0; i < dn; ++i) rel[slot(s, i)] -= act.at(i, v);
          relations.push_back(std::move(rel));
        }
      }
    }
  }
  detail::QuotientSpace q = detail::QuotientSpace::build(ring, ambient, relations);
  if (q.dim() == 0 || dn == 0) return ModulePres::zero(f, ring, n, budget);

  std::map<uint64_t, ScalarMat> rho;
  for (const Mat& a : enumerate_hom(f, n, n, budget)) {
    ScalarMat m(ring, q.dim(), q.dim());
    for (size_t t = 0; t < q.dim(); ++t) {
      size_t s = q.free_cols[t] / dn, v = q.free_cols[t] % dn;
      std::vector<Scalar> w(ambient, Scalar::zero(ring));
      w[slot(cidx.at((a * carrier[s]).encode()), v)] = Scalar::one(ring);
      std::vector<Scalar> red = q.reduce(std::move(w));
      for (size_t i = 0; i < q.dim(); ++i) m.at(i, t) = red[i];
    }
    rho.emplace(a.encode(), std::move(m));
  }
  return ModulePres(f, ring, n, std::move(rho), 0, budget);
}

// r(N) = Hom_{K[M_{n-1}]}(e_{n-1}K[M_n], N): intertwining maps phi from the
// span of matrices with zero last row, with (A phi)(x) = phi(x A).
inline ModulePres r_functor(const ModulePres& nmod, unsigned n, uint64_t budget = kDefaultBudget) {
  const GaloisField& f = nmod.field();
  const CoeffRing& ring = nmod.ring();
  require(nmod.n() + 1 == n, ErrorCode::DimensionMismatch, "r expects a module over M_{n-1}");
  require(ring.is_rational(), ErrorCode::NotSupported,
          "character-based verification requires K = Q");

  std::vector<Mat> carrier;  // e_{n-1} K[M_n]: matrices with zero last row
  for (const Mat& b : enumerate_hom(f, n, n, budget)) {
    bool ok = true;
    for (unsigned j = 0; j < n; ++j)
      if (b.at(n - 1, j)) ok = false;
    if (ok) carrier.push_back(b);
  }
  std::map<uint64_t, size_t> cidx;
  for (size_t i = 0; i < carrier.size(); ++i) cidx.emplace(carrier[i].encode(), i);
  size_t dn = nmod.dim();
  size_t ambient = carrier.size() * dn;  // phi(s) in N per carrier element
  auto slot = [&](size_t s, size_t v) { return s * dn + v; };
  if (dn == 0) return ModulePres::zero(f, ring, n, budget);

  // constraints: phi(embed(C) s) = C phi(s) for generators C
  std::vector<std::vector<Scalar>> rows;
  for (const Mat& c : monoid_generators(f, n - 1)) {
    Mat ec = embed_upper_left(c, n);
    const ScalarMat& act = nmod.action(c);
    for (size_t s = 0; s < carrier.size(); ++s) {
      size_t s2 = cidx.at((ec * carrier[s]).encode());
      for (size_t i = 0; i < dn; ++i) {
        std::vector<Scalar> row(ambient, Scalar::zero(ring));
        row[slot(s2, i)] += Scalar::one(ring);
        for (size_t v = 0; v < dn; ++v) row[slot(s, v)] -= act.at(i, v);
        rows.push_back(std::move(row));
      }
    }
  }
  ScalarMat cons(ring, rows.size(), ambient);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < ambient; ++j) cons.at(i, j) = rows[i][j];
  ScalarMat basis_rows = nullspace(cons);  // rows span the solution space
  size_t dim = basis_rows.rows();
  if (dim == 0) return ModulePres::zero(f, ring, n, budget);
  ScalarMat basis_cols = basis_rows.transposed();
  ColSpace cs = column_space(basis_cols);
  require(cs.basis.cols() == dim, ErrorCode::VerificationFailed, "nullspace basis not independent");

  std::map<uint64_t, ScalarMat> rho;
  for (const Mat& a : enumerate_hom(f, n, n, budget)) {
    ScalarMat m(ring, dim, dim);
    for (size_t j = 0; j < dim; ++j) {
      // (A phi_j)(s) = phi_j(s A)
      std::vector<Scalar> w(ambient, Scalar::zero(ring));
      for (size_t s = 0; s < carrier.size(); ++s) {
        size_t s2 = cidx.at((carrier[s] * a).encode());
        for (size_t v = 0; v < dn; ++v) w[slot(s, v)] = cs.basis.at(slot(s2, v), j);
      }
      std::vector<Scalar> cc = coords_in_checked(cs, w);
      for (size_t i = 0; i < dim; ++i) m.at(i, j) = cc[i];
    }
    rho.emplace(a.encode(), std::move(m));
  }
  return ModulePres(f, ring, n, std::move(rho), 0, budget);
}

inline ModulePres join_module(const ModulePres& nmod, const GroupModule& l, unsigned n,
                              uint64_t budget = kDefaultBudget) {
  require(l.group_rank() == n, ErrorCode::DimensionMismatch, "top part must live over GL_n");
  return direct_sum(l_functor(nmod, n, budget), inflate(l, budget));
}

// Verification battery for the split recollement at (q, n): l(N) and r(N)
// have equal characters, e(l(N)) and e(r(N)) recover N, split/join round
// trips preserve characters of the regular module, and the inflation edge
// cases behave.
inline CheckList verify_recollement(const GaloisField& f, const CoeffRing& ring, unsigned n,
                                    uint64_t budget = kDefaultBudget) {
  require(ring.is_rational(), ErrorCode::NotSupported, "recollement battery runs over K = Q");
  CheckList rep;
  SingularUnit un = solve_singular_unit(f, ring, n, budget);

  // battery: regular module over M_{n-1} and its Peirce summands
  std::vector<std::pair<std::string, ModulePres>> battery;
  battery.emplace_back("regular", ModulePres::regular(f, ring, n - 1, budget));
  MoritaContext low_ctx(f, ring, n - 1, budget);
  PeirceFamily fam = low_ctx.peirce_idempotents();
  for (unsigned k = 0; k < fam.eps.size(); ++k)
    for (size_t i = 0; i < fam.eps[k].size(); ++i)
      battery.emplace_back("peirce_k" + std::to_string(k) + "_i" + std::to_string(i),
                           ModulePres::left_ideal(low_ctx, fam.eps[k][i], budget));

  for (auto& [name, nmod] : battery) {
    ModulePres ln = l_functor(nmod, n, budget);
    ModulePres rn = r_functor(nmod, n, budget);
    rep.timed("l_r_same_character_" + name, [&]() -> std::pair<bool, uint64_t> {
      return {ln.dim() == rn.dim() && same_character(ln.character_map(budget), rn.character_map(budget)),
              ln.dim()};
    });
    rep.timed("e_l_recovers_" + name, [&]() -> std::pair<bool, uint64_t> {
      SplitModules s = split_module(ln, un, budget);
      return {s.low.dim() == nmod.dim() &&
                  same_character(s.low.character_map(budget), nmod.character_map(budget)),
              s.low.dim()};
    });
    rep.timed("e_r_recovers_" + name, [&]() -> std::pair<bool, uint64_t> {
      SplitModules s = split_module(rn, un, budget);
      return {s.low.dim() == nmod.dim() &&
                  same_character(s.low.character_map(budget), nmod.character_map(budget)),
              s.low.dim()};
    });
  }

  rep.timed("zero_module_maps_to_zero", [&]() -> std::pair<bool, uint64_t> {
    ModulePres z = ModulePres::zero(f, ring, n - 1, budget);
    return {l_functor(z, n, budget).dim() == 0 && r_functor(z, n, budget).dim() == 0, 0};
  });

  rep.timed("inflation_splits_as_top_part", [&]() -> std::pair<bool, uint64_t> {
    GroupModule triv = GroupModule::trivial(f, ring, n);
    ModulePres infl = inflate(triv, budget);
    SplitModules s = split_module(infl, un, budget);
    bool ok = s.low.dim() == 0 && s.top.dim() == 1;
    for (const Mat& g : enumerate_gl(f, n, budget)) ok = ok && s.top.character(g).is_one();
    return {ok, 1};
  });

  rep.timed("split_join_roundtrip_regular", [&]() -> std::pair<bool, uint64_t> {
    ModulePres reg = ModulePres::regular(f, ring, n, budget);
    SplitModules s = split_module(reg, un, budget);
    ModulePres back = join_module(s.low, s.top, n, budget);
    return {back.dim() == reg.dim() &&
                same_character(back.character_map(budget), reg.character_map(budget)),
            back.dim()};
  });

  return rep;
}

}  // namespace monodec
