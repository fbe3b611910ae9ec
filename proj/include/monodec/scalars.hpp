#pragma once

// Exact coefficient arithmetic: the finite field F_q whose matrices generate
// the monoids under study, and the coefficient ring K (arbitrary-precision
// rationals, or a prime field F_l) over which all semigroup algebras live.
// No floating point anywhere; every operation is exact.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "monodec/errors.hpp"

namespace monodec {

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// GaloisField: F_q with q = p^e, e <= 3, q in {2,3,4,5,7,8,9}.
//
// Elements are codes 0..q-1, the base-p encoding of the coefficient sequence
// c_0 + c_1 x + ... + c_{e-1} x^{e-1} (code = sum c_i p^i). The moduli for
// q = 4, 8, 9 are fixed so that element encodings are identical across runs.
// ---------------------------------------------------------------------------
class GaloisField {
 public:
  // Shared read-only context; safe to hold the pointer for the process
  // lifetime.
  static const GaloisField& of(unsigned q);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const {
    require(a != 0, ErrorCode::DivisionByZero, "inverse of 0 in F_" + std::to_string(q_));
    return inv_[a];
  }

  // Smallest generator of the cyclic group F_q^* (code order).
  uint8_t multiplicative_generator() const { return gen_; }

  // Base-p digit string, most significant digit first, exactly e characters.
  std::string elem_str(uint8_t code) const {
    std::string s(e_, '0');
    unsigned c = code;
    for (unsigned i = 0; i < e_; ++i) {
      s[e_ - 1 - i] = char('0' + c % p_);
      c /= p_;
    }
    return s;
  }

  uint8_t elem_from_str(const std::string& s) const {
    require(s.size() == e_, ErrorCode::UsageError, "field element needs " + std::to_string(e_) + " digits");
    unsigned code = 0;
    for (char ch : s) {
      unsigned d = unsigned(ch - '0');
      require(d < p_, ErrorCode::UsageError, "digit out of range for F_" + std::to_string(q_));
      code = code * p_ + d;
    }
    return uint8_t(code);
  }

  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

 private:
  GaloisField(unsigned p, unsigned e, std::vector<unsigned> modulus);

  std::vector<unsigned> digits(unsigned code) const {
    std::vector<unsigned> d(e_);
    for (unsigned i = 0; i < e_; ++i) {
      d[i] = code % p_;
      code /= p_;
    }
    return d;
  }
  unsigned code_of(const std::vector<unsigned>& d) const {
    unsigned c = 0;
    for (unsigned i = e_; i-- > 0;) c = c * p_ + d[i] % p_;
    return c;
  }

  unsigned p_, e_, q_;
  std::vector<unsigned> modulus_;  // ascending coefficients, length e+1, monic
  std::vector<uint8_t> add_, mul_, neg_, inv_;
  uint8_t gen_ = 1;
};

inline GaloisField::GaloisField(unsigned p, unsigned e, std::vector<unsigned> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  require(is_prime(p_), ErrorCode::UsageError, "p must be prime");
  require(e_ >= 1 && e_ <= 3, ErrorCode::NotSupported, "extension degree must be 1..3");
  for (unsigned i = 0; i < e_; ++i) q_ *= p_;
  require(modulus_.size() == e_ + 1 && modulus_[e_] == 1, ErrorCode::UsageError, "modulus must be monic of degree e");
  if (e_ >= 2) {
    // degree 2 or 3: irreducible over F_p iff it has no root there
    for (unsigned r = 0; r < p_; ++r) {
      unsigned long v = 0, pw = 1;
      for (unsigned i = 0; i <= e_; ++i) {
        v = (v + modulus_[i] * pw) % p_;
        pw = (pw * r) % p_;
      }
      require(v != 0, ErrorCode::UsageError, "modulus is reducible over F_p");
    }
  }

  auto poly_mul = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> c(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i)
      for (unsigned j = 0; j < e_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
    for (unsigned d = 2 * e_ - 2; d + 1 > e_; --d) {
      unsigned lead = c[d];
      if (lead == 0) continue;
      c[d] = 0;
      for (unsigned i = 0; i < e_; ++i) {
        unsigned t = (lead * modulus_[i]) % p_;
        c[d - e_ + i] = (c[d - e_ + i] + p_ - t) % p_;
      }
    }
    c.resize(e_);
    return c;
  };

  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<unsigned> na(e_);
    for (unsigned i = 0; i < e_; ++i) na[i] = (p_ - da[i]) % p_;
    neg_[a] = uint8_t(code_of(na));
    for (unsigned b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<unsigned> s(e_);
      for (unsigned i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = uint8_t(code_of(s));
      mul_[a * q_ + b] = uint8_t(code_of(poly_mul(da, db)));
    }
  }
  for (unsigned a = 1; a < q_; ++a) {
    bool found = false;
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = uint8_t(b);
        found = true;
        break;
      }
    require(found, ErrorCode::VerificationFailed, "nonzero element without inverse");
  }
  for (unsigned g = 1; g < q_; ++g) {
    unsigned x = g, order = 1;
    while (x != 1) {
      x = mul_[x * q_ + g];
      ++order;
    }
    if (order == q_ - 1) {
      gen_ = uint8_t(g);
      break;
    }
  }
}

inline const GaloisField& GaloisField::of(unsigned q) {
  struct Entry {
    unsigned p, e;
    std::vector<unsigned> mod;
  };
  static const std::map<unsigned, Entry> table = {
      {2, {2, 1, {0, 1}}},        {3, {3, 1, {0, 1}}},       {4, {2, 2, {1, 1, 1}}},
      {5, {5, 1, {0, 1}}},        {7, {7, 1, {0, 1}}},       {8, {2, 3, {1, 1, 0, 1}}},
      {9, {3, 2, {1, 0, 1}}},
  };
  static std::map<unsigned, std::unique_ptr<GaloisField>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(q);
  require(it != table.end(), ErrorCode::NotSupported, "supported fields: q in {2,3,4,5,7,8,9}");
  auto& slot = cache[q];
  if (!slot) slot.reset(new GaloisField(it->second.p, it->second.e, it->second.mod));
  return *slot;
}

// Value-level field element, mostly a convenience wrapper for the operation
// tables; bulk code works on raw codes through a shared GaloisField.
class FieldElem {
 public:
  FieldElem(const GaloisField& f, uint8_t code) : f_(&f), code_(code) {
    require(code < f.q(), ErrorCode::UsageError, "element code out of range");
  }
  const GaloisField& field() const { return *f_; }
  uint8_t code() const { return code_; }

  friend FieldElem operator+(FieldElem a, FieldElem b) {
    a.check(b);
    return FieldElem(*a.f_, a.f_->add(a.code_, b.code_));
  }
  friend FieldElem operator*(FieldElem a, FieldElem b) {
    a.check(b);
    return FieldElem(*a.f_, a.f_->mul(a.code_, b.code_));
  }
  FieldElem operator-() const { return FieldElem(*f_, f_->neg(code_)); }
  FieldElem inv() const { return FieldElem(*f_, f_->inv(code_)); }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.f_ == b.f_ && a.code_ == b.code_;
  }
  std::string str() const { return f_->elem_str(code_); }

 private:
  void check(const FieldElem& o) const {
    require(f_ == o.f_, ErrorCode::CtxMismatch, "field elements from different contexts");
  }
  const GaloisField* f_;
  uint8_t code_;
};

// ---------------------------------------------------------------------------
// CoeffRing / Scalar: the coefficient ring K. Either exact rationals or a
// prime field F_l chosen at context level. Rationals are kept in lowest terms
// with positive denominator (mpq canonical form); F_l residues in [0, l).
// ---------------------------------------------------------------------------
struct CoeffRing {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  unsigned ell = 0;

  static CoeffRing rationals() { return CoeffRing{Kind::Rationals, 0}; }
  static CoeffRing gf(unsigned ell) {
    require(is_prime(ell), ErrorCode::UsageError, "coefficient field order must be prime");
    return CoeffRing{Kind::PrimeField, ell};
  }
  bool is_rational() const { return kind == Kind::Rationals; }
  // True iff the prime p is invertible in this ring (the nondescribing
  // characteristic hypothesis).
  bool inverts(unsigned p) const { return is_rational() || ell % p != 0; }
  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.kind == b.kind && a.ell == b.ell;
  }
  std::string str() const { return is_rational() ? "rat" : "gf:" + std::to_string(ell); }

  static CoeffRing parse(const std::string& s) {
    if (s == "rat") return rationals();
    if (s.rfind("gf:", 0) == 0) return gf(unsigned(std::stoul(s.substr(3))));
    fail(ErrorCode::UsageError, "coefficient ring must be 'rat' or 'gf:L'");
  }
};

class Scalar {
 public:
  Scalar() : ring_(CoeffRing::rationals()), v_(0) {}
  static Scalar zero(const CoeffRing& r) { return Scalar(r, 0); }
  static Scalar one(const CoeffRing& r) { return Scalar(r, 1); }
  static Scalar of(const CoeffRing& r, long num, long den = 1) {
    require(den != 0, ErrorCode::DivisionByZero, "zero denominator");
    if (r.is_rational()) {
      Scalar s(r, 0);
      s.v_ = mpq_class(num, den);
      s.v_.canonicalize();
      return s;
    }
    Scalar s(r, 0);
    long m = long(r.ell);
    long rn = ((num % m) + m) % m;
    long rd = ((den % m) + m) % m;
    require(rd != 0, ErrorCode::NotInvertible, "denominator not invertible mod l");
    s.v_ = mpq_class(rn * mod_inverse(rd, m) % m);
    return s;
  }

  const CoeffRing& ring() const { return ring_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integral() const { return !ring_.is_rational() || v_.get_den() == 1; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar s(a.ring_, 0);
    s.v_ = a.v_ + b.v_;
    s.reduce();
    return s;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar s(a.ring_, 0);
    s.v_ = a.v_ - b.v_;
    s.reduce();
    return s;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar s(a.ring_, 0);
    s.v_ = a.v_ * b.v_;
    s.reduce();
    return s;
  }
  Scalar operator-() const {
    Scalar s(ring_, 0);
    s.v_ = -v_;
    s.reduce();
    return s;
  }
  Scalar inv() const {
    require(!is_zero(), ErrorCode::NotInvertible, "inverse of zero");
    Scalar s(ring_, 0);
    if (ring_.is_rational()) {
      s.v_ = 1 / v_;
    } else {
      s.v_ = mpq_class(mod_inverse(v_.get_num().get_si(), long(ring_.ell)));
    }
    return s;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.v_ == b.v_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Exposed for exact bookkeeping (integrality checks, fast paths).
  const mpq_class& value() const { return v_; }

  std::string str() const { return v_.get_str(); }

  static Scalar parse(const CoeffRing& r, const std::string& s) {
    Scalar out(r, 0);
    out.v_ = mpq_class(s);
    out.v_.canonicalize();
    if (!r.is_rational()) {
      require(out.v_.get_den() == 1, ErrorCode::UsageError, "residue must be an integer");
      long m = long(r.ell);
      long x = ((out.v_.get_num().get_si() % m) + m) % m;
      out.v_ = mpq_class(x);
    }
    return out;
  }

 private:
  Scalar(const CoeffRing& r, long x) : ring_(r), v_(x) {}
  void check(const Scalar& o) const {
    require(ring_ == o.ring_, ErrorCode::CtxMismatch, "scalars from different coefficient rings");
  }
  void reduce() {
    if (ring_.is_rational()) {
      v_.canonicalize();
    } else {
      mpz_class m(ring_.ell);
      mpz_class r = v_.get_num() % m;
      if (r < 0) r += m;
      v_ = mpq_class(r);
    }
  }
  static long mod_inverse(long a, long m) {
    long g = m, x = 0, x1 = 1, a0 = ((a % m) + m) % m;
    long b = a0;
    while (b != 0) {
      long qt = g / b;
      long t = g - qt * b;
      g = b;
      b = t;
      t = x - qt * x1;
      x = x1;
      x1 = t;
    }
    require(g == 1, ErrorCode::NotInvertible, "residue not invertible");
    return ((x % m) + m) % m;
  }

  CoeffRing ring_;
  mpq_class v_;
};

}  // namespace monodec
