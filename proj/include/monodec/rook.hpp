#pragma once

// The rook monoid R_n (partial injective self-maps of {1..n}) and its
// integral decomposition K[R_n] ~ prod_k M_{C(n,k)}(K[Sigma_k]).
//
// R_n is an inverse monoid: its idempotents [id_T] commute and form the
// Boolean lattice of subsets. Moebius inversion over that lattice gives the
// orthogonal family eta_T and, more finely, the groupoid basis
//     <x> = sum_{S subseteq dom x} (-1)^{|dom x| - |S|} [x|_S],
// in which multiplication is exactly matrix-unit composition over the
// symmetric groups: <x><y> = <x o y> when dom x = im y and 0 otherwise, with
// order-preserving relabelings carrying the permutation part. All structure
// constants are +-1, which is why the decomposition works over any K.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monodec/checks.hpp"
#include "monodec/errors.hpp"
#include "monodec/scalars.hpp"

namespace monodec {

class PartialInj {
 public:
  explicit PartialInj(unsigned n = 0) : img_(n, 0) {}

  static PartialInj identity(unsigned n) {
    PartialInj p(n);
    for (unsigned i = 0; i < n; ++i) p.img_[i] = uint8_t(i + 1);
    return p;
  }
  // id_T for a subset mask (bit i-1 <-> point i)
  static PartialInj partial_identity(unsigned n, uint32_t mask) {
    PartialInj p(n);
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1u << i)) p.img_[i] = uint8_t(i + 1);
    return p;
  }
  static PartialInj from_images(std::vector<uint8_t> img) {
    PartialInj p;
    p.img_ = std::move(img);
    require(p.injective_on_domain(), ErrorCode::UsageError, "map is not injective on its domain");
    return p;
  }

  unsigned n() const { return unsigned(img_.size()); }
  // 0 = undefined, else value in 1..n
  uint8_t operator()(unsigned i) const { return img_[i - 1]; }
  unsigned rank() const {
    unsigned r = 0;
    for (uint8_t v : img_) r += v != 0;
    return r;
  }
  uint32_t domain_mask() const {
    uint32_t m = 0;
    for (unsigned i = 0; i < n(); ++i)
      if (img_[i]) m |= 1u << i;
    return m;
  }
  uint32_t image_mask() const {
    uint32_t m = 0;
    for (uint8_t v : img_)
      if (v) m |= 1u << (v - 1);
    return m;
  }

  friend PartialInj operator*(const PartialInj& f, const PartialInj& g) {
    require(f.n() == g.n(), ErrorCode::DimensionMismatch, "rook product across degrees");
    PartialInj h(f.n());
    for (unsigned i = 0; i < f.n(); ++i) {
      uint8_t t = g.img_[i];
      h.img_[i] = t ? f.img_[t - 1] : 0;
    }
    return h;
  }

  PartialInj restricted(uint32_t mask) const {
    PartialInj p(n());
    for (unsigned i = 0; i < n(); ++i)
      if (mask & (1u << i)) p.img_[i] = img_[i];
    return p;
  }

  // n x n 0/1 rook matrix, row-major; column i carries the image of point i+1.
  std::vector<uint8_t> rook_matrix() const {
    std::vector<uint8_t> m(size_t(n()) * n(), 0);
    for (unsigned i = 0; i < n(); ++i)
      if (img_[i]) m[size_t(img_[i] - 1) * n() + i] = 1;
    return m;
  }

  friend auto operator<=>(const PartialInj& a, const PartialInj& b) { return a.img_ <=> b.img_; }
  friend bool operator==(const PartialInj& a, const PartialInj& b) { return a.img_ == b.img_; }

  std::string str() const {
    std::string s;
    for (unsigned i = 0; i < n(); ++i) {
      if (i) s += ", ";
      s += std::to_string(i + 1);
      s += "→";
      s += img_[i] ? std::to_string(int(img_[i])) : "∅";
    }
    return s;
  }

 private:
  bool injective_on_domain() const {
    uint32_t seen = 0;
    for (uint8_t v : img_) {
      if (!v) continue;
      if (v > img_.size()) return false;
      uint32_t bit = 1u << (v - 1);
      if (seen & bit) return false;
      seen |= bit;
    }
    return true;
  }
  std::vector<uint8_t> img_;
};

// Complete, duplicate-free enumeration in image-vector lexicographic order.
inline std::vector<PartialInj> enumerate_rook(unsigned n) {
  require(n <= 5, ErrorCode::BudgetExceeded, "rook enumeration supported for n <= 5");
  std::vector<PartialInj> out;
  std::vector<uint8_t> img(n, 0);
  while (true) {
    bool inj = true;
    uint32_t seen = 0;
    for (uint8_t v : img) {
      if (!v) continue;
      uint32_t bit = 1u << (v - 1);
      if (seen & bit) {
        inj = false;
        break;
      }
      seen |= bit;
    }
    if (inj) out.push_back(PartialInj::from_images(img));
    bool carried = true;
    for (size_t i = n; i-- > 0;) {
      if (img[i] < n) {
        ++img[i];
        carried = false;
        break;
      }
      img[i] = 0;
    }
    if (n == 0 || carried) break;
  }
  return out;
}

// Element of K[R_n].
class RookElem {
 public:
  RookElem() : ring_(CoeffRing::rationals()), n_(0) {}
  RookElem(const CoeffRing& ring, unsigned n) : ring_(ring), n_(n) {}
  static RookElem basis(const CoeffRing& ring, const PartialInj& x) {
    RookElem e(ring, x.n());
    e.terms_.emplace(x, Scalar::one(ring));
    return e;
  }
  static RookElem unit(const CoeffRing& ring, unsigned n) {
    return basis(ring, PartialInj::identity(n));
  }

  const CoeffRing& ring() const { return ring_; }
  unsigned n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<PartialInj, Scalar>& terms() const { return terms_; }
  Scalar coeff(const PartialInj& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
  }
  void add_term(const PartialInj& x, const Scalar& c) {
    require(x.n() == n_, ErrorCode::DimensionMismatch, "term degree mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend RookElem operator+(const RookElem& x, const RookElem& y) {
    RookElem z = x;
    for (const auto& [m, c] : y.terms_) z.add_term(m, c);
    return z;
  }
  friend RookElem operator-(const RookElem& x, const RookElem& y) {
    RookElem z = x;
    for (const auto& [m, c] : y.terms_) z.add_term(m, -c);
    return z;
  }
  friend RookElem operator*(const RookElem& x, const RookElem& y) {
    require(x.ring_ == y.ring_ && x.n_ == y.n_, ErrorCode::CtxMismatch, "rook product across contexts");
    RookElem z(x.ring_, x.n_);
    for (const auto& [a, va] : x.terms_)
      for (const auto& [b, vb] : y.terms_) z.add_term(a * b, va * vb);
    return z;
  }
  RookElem scaled(const Scalar& c) const {
    RookElem z(ring_, n_);
    if (c.is_zero()) return z;
    for (const auto& [m, v] : terms_) z.terms_.emplace(m, v * c);
    return z;
  }
  friend bool operator==(const RookElem& x, const RookElem& y) {
    return x.ring_ == y.ring_ && x.n_ == y.n_ && x.terms_ == y.terms_;
  }
  bool integral() const {
    for (const auto& [m, c] : terms_)
      if (!c.is_integral()) return false;
    return true;
  }

 private:
  CoeffRing ring_;
  unsigned n_;
  std::map<PartialInj, Scalar> terms_;
};

// eta_T = sum_{U subseteq T} (-1)^{|T|-|U|} [id_U]; pairwise orthogonal
// idempotents summing to [id].
struct MobiusFamily {
  CoeffRing ring;
  unsigned n = 0;
  std::vector<uint32_t> subsets;  // all masks, ordered by (popcount, value)
  std::vector<RookElem> eta;      // aligned with subsets
  CheckList verification;
};

inline std::vector<uint32_t> subsets_by_size(unsigned n) {
  std::vector<uint32_t> masks;
  for (uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return masks;
}

inline MobiusFamily mobius_idempotents(unsigned n, const CoeffRing& ring) {
  MobiusFamily fam;
  fam.ring = ring;
  fam.n = n;
  fam.subsets = subsets_by_size(n);
  for (uint32_t t : fam.subsets) {
    RookElem e(ring, n);
    // iterate subsets u of t
    uint32_t u = t;
    while (true) {
      unsigned sign = (__builtin_popcount(t) - __builtin_popcount(u)) & 1u;
      e.add_term(PartialInj::partial_identity(n, u),
                 sign ? -Scalar::one(ring) : Scalar::one(ring));
      if (u == 0) break;
      u = (u - 1) & t;
    }
    fam.eta.push_back(std::move(e));
  }
  CheckList& v = fam.verification;
  bool idem = true, orth = true, signs = true;
  RookElem sum(ring, n);
  for (size_t i = 0; i < fam.eta.size(); ++i) {
    sum = sum + fam.eta[i];
    if (!(fam.eta[i] * fam.eta[i] == fam.eta[i])) idem = false;
    for (const auto& [m, c] : fam.eta[i].terms())
      if (!(c == Scalar::one(ring) || c == -Scalar::one(ring))) signs = false;
    for (size_t j = 0; j < fam.eta.size(); ++j)
      if (i != j && !(fam.eta[i] * fam.eta[j]).is_zero()) orth = false;
  }
  v.add("mobius_idempotent_each", idem, fam.eta.size());
  v.add("mobius_pairwise_orthogonal", orth, fam.eta.size() * (fam.eta.size() - 1));
  v.add("mobius_sum_is_identity", sum == RookElem::unit(ring, n), fam.eta.size());
  v.add("mobius_coefficients_pm_one", signs, fam.eta.size());
  require(v.all_pass, ErrorCode::VerificationFailed, "Moebius family failed verification");
  return fam;
}

// Permutations of {0..k-1} as image vectors; the group algebra K[Sigma_k].
using Perm = std::vector<uint8_t>;
inline Perm perm_identity(unsigned k) {
  Perm p(k);
  for (unsigned i = 0; i < k; ++i) p[i] = uint8_t(i);
  return p;
}
inline Perm perm_compose(const Perm& a, const Perm& b) {  // a after b
  Perm c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

class SymElem {
 public:
  SymElem() : ring_(CoeffRing::rationals()), k_(0) {}
  SymElem(const CoeffRing& ring, unsigned k) : ring_(ring), k_(k) {}
  static SymElem basis(const CoeffRing& ring, const Perm& p) {
    SymElem e(ring, unsigned(p.size()));
    e.terms_.emplace(p, Scalar::one(ring));
    return e;
  }
  static SymElem unit(const CoeffRing& ring, unsigned k) { return basis(ring, perm_identity(k)); }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Perm, Scalar>& terms() const { return terms_; }
  void add_term(const Perm& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  friend SymElem operator+(const SymElem& x, const SymElem& y) {
    SymElem z = x;
    for (const auto& [p, c] : y.terms_) z.add_term(p, c);
    return z;
  }
  friend SymElem operator*(const SymElem& x, const SymElem& y) {
    SymElem z(x.ring_, x.k_);
    for (const auto& [a, va] : x.terms_)
      for (const auto& [b, vb] : y.terms_) z.add_term(perm_compose(a, b), va * vb);
    return z;
  }
  friend bool operator==(const SymElem& x, const SymElem& y) {
    return x.k_ == y.k_ && x.terms_ == y.terms_;
  }
  bool integral() const {
    for (const auto& [p, c] : terms_)
      if (!c.is_integral()) return false;
    return true;
  }

 private:
  CoeffRing ring_;
  unsigned k_;
  std::map<Perm, Scalar> terms_;
};

// Sparse element of prod_k M_{C(n,k)}(K[Sigma_k]); block entries keyed by
// (image-subset index, domain-subset index) within each rank.
struct RookBlocks {
  CoeffRing ring;
  unsigned n = 0;
  std::vector<std::map<std::pair<uint32_t, uint32_t>, SymElem>> blocks;  // per k

  static RookBlocks zero(const CoeffRing& ring, unsigned n) {
    RookBlocks b;
    b.ring = ring;
    b.n = n;
    b.blocks.resize(n + 1);
    return b;
  }
  void add(unsigned k, uint32_t i, uint32_t j, const Perm& p, const Scalar& c) {
    auto [it, inserted] = blocks[k].try_emplace({i, j}, SymElem(ring, k));
    it->second.add_term(p, c);
    if (it->second.is_zero()) blocks[k].erase(it);
  }
  friend RookBlocks operator*(const RookBlocks& x, const RookBlocks& y) {
    RookBlocks z = zero(x.ring, x.n);
    for (unsigned k = 0; k <= x.n; ++k)
      for (const auto& [ij1, e1] : x.blocks[k])
        for (const auto& [ij2, e2] : y.blocks[k]) {
          if (ij1.second != ij2.first) continue;
          SymElem prod = e1 * e2;
          if (prod.is_zero()) continue;
          auto [it, inserted] = z.blocks[k].try_emplace({ij1.first, ij2.second}, SymElem(x.ring, k));
          it->second = it->second + prod;
          if (it->second.is_zero()) z.blocks[k].erase(it);
        }
    return z;
  }
  friend bool operator==(const RookBlocks& x, const RookBlocks& y) {
    return x.n == y.n && x.blocks == y.blocks;
  }
  bool integral() const {
    for (const auto& blk : blocks)
      for (const auto& [ij, e] : blk)
        if (!e.integral()) return false;
    return true;
  }
};

// Canonical coordinates of the decomposition at degree n.
class RookContext {
 public:
  RookContext(unsigned n, const CoeffRing& ring) : n_(n), ring_(ring) {
    elements_ = enumerate_rook(n);
    ksubsets_.resize(n + 1);
    kindex_.resize(n + 1);
    for (uint32_t mask : subsets_by_size(n)) {
      unsigned k = unsigned(__builtin_popcount(mask));
      kindex_[k].emplace(mask, uint32_t(ksubsets_[k].size()));
      ksubsets_[k].push_back(mask);
    }
  }

  unsigned n() const { return n_; }
  const CoeffRing& ring() const { return ring_; }
  const std::vector<PartialInj>& elements() const { return elements_; }
  const std::vector<uint32_t>& ksubsets(unsigned k) const { return ksubsets_[k]; }

  // (rank, image index, domain index, permutation part) of a rook element;
  // the subset <-> {1..k} bijections are order-preserving.
  struct Coords {
    unsigned k;
    uint32_t im, dom;
    Perm w;
  };
  Coords coords(const PartialInj& x) const {
    Coords c;
    c.k = x.rank();
    uint32_t dm = x.domain_mask(), im = x.image_mask();
    c.dom = kindex_[c.k].at(dm);
    c.im = kindex_[c.k].at(im);
    std::vector<uint8_t> dom_pts, im_pts;
    for (unsigned i = 1; i <= n_; ++i) {
      if (dm & (1u << (i - 1))) dom_pts.push_back(uint8_t(i));
      if (im & (1u << (i - 1))) im_pts.push_back(uint8_t(i));
    }
    c.w.resize(c.k);
    for (unsigned i = 0; i < c.k; ++i) {
      uint8_t v = x(dom_pts[i]);
      c.w[i] = uint8_t(std::lower_bound(im_pts.begin(), im_pts.end(), v) - im_pts.begin());
    }
    return c;
  }

  // Groupoid basis coefficients of [x]: [x] = sum_{S subseteq dom x} <x|_S>.
  RookBlocks phi(const RookElem& e) const {
    require(e.n() == n_ && e.ring() == ring_, ErrorCode::CtxMismatch, "foreign rook element");
    RookBlocks b = RookBlocks::zero(ring_, n_);
    for (const auto& [x, c] : e.terms()) {
      uint32_t dm = x.domain_mask();
      uint32_t s = dm;
      while (true) {
        Coords co = coords(x.restricted(s));
        b.add(co.k, co.im, co.dom, co.w, c);
        if (s == 0) break;
        s = (s - 1) & dm;
      }
    }
    return b;
  }

  RookElem phi_inverse(const RookBlocks& b) const {
    require(b.n == n_ && b.ring == ring_, ErrorCode::CtxMismatch, "foreign block element");
    RookElem out(ring_, n_);
    for (unsigned k = 0; k <= n_; ++k)
      for (const auto& [ij, e] : b.blocks[k])
        for (const auto& [w, c] : e.terms()) {
          // groupoid element with the given coordinates
          std::vector<uint8_t> dom_pts, im_pts;
          for (unsigned i = 1; i <= n_; ++i) {
            if (ksubsets_[k][ij.second] & (1u << (i - 1))) dom_pts.push_back(uint8_t(i));
            if (ksubsets_[k][ij.first] & (1u << (i - 1))) im_pts.push_back(uint8_t(i));
          }
          std::vector<uint8_t> img(n_, 0);
          for (unsigned i = 0; i < k; ++i) img[dom_pts[i] - 1] = im_pts[w[i]];
          PartialInj x = PartialInj::from_images(std::move(img));
          // <x> = sum_{S} (-1)^{k-|S|} [x|_S]
          uint32_t dm = x.domain_mask(), s = dm;
          while (true) {
            unsigned sign = (k - unsigned(__builtin_popcount(s))) & 1u;
            out.add_term(x.restricted(s), sign ? -c : c);
            if (s == 0) break;
            s = (s - 1) & dm;
          }
        }
    return out;
  }

  RookBlocks identity_blocks() const {
    RookBlocks b = RookBlocks::zero(ring_, n_);
    for (unsigned k = 0; k <= n_; ++k)
      for (uint32_t i = 0; i < ksubsets_[k].size(); ++i)
        b.add(k, i, i, perm_identity(k), Scalar::one(ring_));
    return b;
  }

 private:
  unsigned n_;
  CoeffRing ring_;
  std::vector<PartialInj> elements_;
  std::vector<std::vector<uint32_t>> ksubsets_;
  std::vector<std::map<uint32_t, uint32_t>> kindex_;
};

inline uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
inline uint64_t factorial(unsigned k) {
  uint64_t r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

// Full verification battery for the rook decomposition at degree n.
inline CheckList verify_rook(unsigned n, const CoeffRing& ring, uint64_t sample_pairs = 0,
                             uint64_t seed = 20140501, bool corner_checks = true) {
  CheckList rep;
  RookContext ctx(n, ring);
  const auto& all = ctx.elements();

  rep.timed("enumeration_count", [&]() -> std::pair<bool, uint64_t> {
    uint64_t expect = 0;
    for (unsigned k = 0; k <= n; ++k) expect += binomial(n, k) * binomial(n, k) * factorial(k);
    return {all.size() == expect, all.size()};
  });

  rep.timed("dimension_identity", [&]() -> std::pair<bool, uint64_t> {
    uint64_t sum = 0;
    for (unsigned k = 0; k <= n; ++k) sum += binomial(n, k) * binomial(n, k) * factorial(k);
    return {sum == all.size(), sum};
  });

  MobiusFamily fam = mobius_idempotents(n, ring);
  rep.merge(fam.verification);

  rep.timed("phi_unital", [&]() -> std::pair<bool, uint64_t> {
    return {ctx.phi(RookElem::unit(ring, n)) == ctx.identity_blocks(), 1};
  });

  std::vector<RookBlocks> images;
  images.reserve(all.size());
  for (const PartialInj& x : all) images.push_back(ctx.phi(RookElem::basis(ring, x)));
  std::map<PartialInj, size_t> index;
  for (size_t i = 0; i < all.size(); ++i) index.emplace(all[i], i);

  rep.timed("phi_integral_on_basis", [&]() -> std::pair<bool, uint64_t> {
    for (const RookBlocks& b : images)
      if (!b.integral()) return {false, images.size()};
    return {true, images.size()};
  });

  if (sample_pairs == 0) {
    rep.timed("phi_multiplicative_exhaustive", [&]() -> std::pair<bool, uint64_t> {
      for (const PartialInj& x : all)
        for (const PartialInj& y : all)
          if (!(images[index.at(x)] * images[index.at(y)] == images[index.at(x * y)]))
            return {false, all.size() * all.size()};
      return {true, all.size() * all.size()};
    });
  } else {
    rep.timed("phi_multiplicative_sampled", [&]() -> std::pair<bool, uint64_t> {
      uint64_t s = seed ? seed : 1;
      auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
      };
      for (uint64_t t = 0; t < sample_pairs; ++t) {
        const PartialInj& x = all[next() % all.size()];
        const PartialInj& y = all[next() % all.size()];
        if (!(images[index.at(x)] * images[index.at(y)] == images[index.at(x * y)]))
          return {false, t + 1};
      }
      return {true, sample_pairs};
    });
  }

  rep.timed("phi_inverse_roundtrip_basis", [&]() -> std::pair<bool, uint64_t> {
    for (const PartialInj& x : all) {
      RookElem back = ctx.phi_inverse(images[index.at(x)]);
      if (!(back == RookElem::basis(ring, x)) || !back.integral()) return {false, all.size()};
    }
    return {true, all.size()};
  });

  if (corner_checks) {
    // eta_T K[R_n] eta_T is K[Sigma_k] (dimension k!): the corner is spanned
    // by the groupoid elements with dom = im = T
    rep.timed("corner_isomorphic_to_symmetric_group_algebra", [&]() -> std::pair<bool, uint64_t> {
      MobiusFamily mf = mobius_idempotents(n, ring);
      uint64_t checked = 0;
      for (size_t ti = 0; ti < mf.subsets.size(); ++ti) {
        uint32_t t = mf.subsets[ti];
        unsigned k = unsigned(__builtin_popcount(t));
        const RookElem& eta = mf.eta[ti];
        // collect the corner span
        std::map<PartialInj, size_t> coord;
        std::vector<std::vector<Scalar>> rows;
        std::vector<RookElem> corner_basis;
        for (const PartialInj& x : all) {
          RookElem v = eta * RookElem::basis(ring, x) * eta;
          if (v.is_zero()) continue;
          bool fresh = false;
          for (const auto& [m, c] : v.terms())
            if (coord.emplace(m, coord.size()).second) fresh = true;
          (void)fresh;
          corner_basis.push_back(std::move(v));
        }
        // exact rank over the touched coordinates
        size_t dim = 0;
        {
          std::vector<std::vector<Scalar>> reduced;
          std::vector<size_t> leads;
          for (const RookElem& v : corner_basis) {
            std::vector<Scalar> row(coord.size(), Scalar::zero(ring));
            for (const auto& [m, c] : v.terms()) row[coord.at(m)] = c;
            for (size_t i = 0; i < reduced.size(); ++i) {
              const Scalar& c = row[leads[i]];
              if (c.is_zero()) continue;
              Scalar fac = c;
              for (size_t j = 0; j < row.size(); ++j) row[j] -= fac * reduced[i][j];
            }
            size_t lead = row.size();
            for (size_t j = 0; j < row.size(); ++j)
              if (!row[j].is_zero()) {
                lead = j;
                break;
              }
            if (lead == row.size()) continue;
            Scalar inv = row[lead].inv();
            for (Scalar& c : row) c *= inv;
            reduced.push_back(std::move(row));
            leads.push_back(lead);
            ++dim;
          }
        }
        ++checked;
        if (dim != factorial(k)) return {false, checked};
        // multiplicativity of the (T,T) block entry on the corner: products
        // of eta [x] eta match the block product
        uint32_t tidx = 0;
        for (uint32_t i = 0; i < ctx.ksubsets(k).size(); ++i)
          if (ctx.ksubsets(k)[i] == t) tidx = i;
        auto corner_entry = [&](const RookElem& v) {
          RookBlocks b = ctx.phi(v);
          auto it = b.blocks[k].find({tidx, tidx});
          return it == b.blocks[k].end() ? SymElem(ring, k) : it->second;
        };
        size_t lim = std::min<size_t>(corner_basis.size(), 8);
        for (size_t a = 0; a < lim; ++a)
          for (size_t b2 = 0; b2 < lim; ++b2) {
            SymElem lhs = corner_entry(corner_basis[a] * corner_basis[b2]);
            SymElem rhs = corner_entry(corner_basis[a]) * corner_entry(corner_basis[b2]);
            if (!(lhs == rhs)) return {false, checked};
          }
      }
      return {true, checked};
    });
  }
  return rep;
}

}  // namespace monodec
