#pragma once

// Construction of the unit e_n^S of K[Sing_n(F)]: GL-invariant ansatz over
// semi-idempotent conjugacy orbit sums, pinned down by the linear condition
// e * e_{n-1} = e_{n-1} with e_{n-1} = [I_{n-1} padded to n x n]. The
// complementary idempotent is e_n^G = [I_n] - e_n^S. Every solved unit is
// re-verified by exhaustion before it is returned.

#include <string>
#include <utility>
#include <vector>

#include "monodec/checks.hpp"
#include "monodec/errors.hpp"
#include "monodec/linalg.hpp"
#include "monodec/matmonoid.hpp"
#include "monodec/monoidring.hpp"
#include "monodec/scalars.hpp"

namespace monodec {

// The padded identity e_{n-1}: ones on the first n-1 diagonal entries. It is
// idempotent and singular, and every rank-(n-1) idempotent is conjugate to it.
inline Mat padded_identity(const GaloisField& f, unsigned n) {
  require(n >= 1, ErrorCode::DimensionMismatch, "padded identity needs n >= 1");
  Mat m(f, n, n);
  for (unsigned i = 0; i + 1 < n; ++i) m.set(i, i, 1);
  return m;
}
inline RingElem ebar(const GaloisField& f, const CoeffRing& ring, unsigned n) {
  return RingElem::basis(ring, padded_identity(f, n));
}

struct Ansatz {
  std::vector<std::vector<Mat>> orbits;  // canonical orbit order (least element)
};

inline Ansatz build_ansatz(const GaloisField& f, unsigned n, OrbitRestrict restrict_to,
                           uint64_t budget = kDefaultBudget) {
  return Ansatz{conjugacy_orbits(f, n, restrict_to, budget)};
}

struct SingularUnit {
  const GaloisField* field = nullptr;
  CoeffRing ring;
  unsigned n = 0;
  std::vector<std::vector<Mat>> orbits;
  std::vector<Scalar> coeffs;  // one per orbit
  RingElem eS, eG;
};

struct AnsatzSolve {
  bool consistent = false;
  bool unique = false;
  std::vector<Scalar> coeffs;
};

// Expand the condition (sum_c x_c O_c) * e_{n-1} = e_{n-1} into one equation
// per matrix with zero last column and solve it exactly over K.
inline AnsatzSolve solve_ansatz_system(const GaloisField& f, const CoeffRing& ring, unsigned n,
                                       const Ansatz& ansatz, uint64_t budget = kDefaultBudget) {
  Mat pad = padded_identity(f, n);
  std::map<Mat, size_t> eq_index;
  {
    // support of right multiplication by e_{n-1}: last column zero
    std::vector<Mat> keys;
    for (const Mat& a : enumerate_hom(f, n, n, budget)) {
      bool ok = true;
      for (unsigned i = 0; i < n; ++i)
        if (a.at(i, n - 1)) {
          ok = false;
          break;
        }
      if (ok) keys.push_back(a);
    }
    for (size_t i = 0; i < keys.size(); ++i) eq_index.emplace(keys[i], i);
  }
  ScalarMat sys(ring, eq_index.size(), ansatz.orbits.size());
  std::vector<Scalar> rhs(eq_index.size(), Scalar::zero(ring));
  for (size_t c = 0; c < ansatz.orbits.size(); ++c)
    for (const Mat& a : ansatz.orbits[c]) {
      Mat prod = a * pad;
      sys.at(eq_index.at(prod), c) += Scalar::one(ring);
    }
  rhs[eq_index.at(pad)] = Scalar::one(ring);
  LinOutcome out = solve_with_certificate(sys, rhs);
  AnsatzSolve res;
  res.consistent = out.solution.has_value();
  res.unique = out.unique;
  if (out.solution) res.coeffs = std::move(*out.solution);
  return res;
}

namespace detail {

inline std::optional<std::vector<Scalar>> solve_ansatz(const GaloisField& f, const CoeffRing& ring,
                                                       unsigned n, const Ansatz& ansatz,
                                                       uint64_t budget) {
  AnsatzSolve res = solve_ansatz_system(f, ring, n, ansatz, budget);
  if (!res.consistent) return std::nullopt;
  // Any GL-invariant solution of the criterion is the (unique) two-sided
  // unit, so a consistent system cannot be underdetermined.
  require(res.unique, ErrorCode::VerificationFailed, "singular-unit system is underdetermined");
  return res.coeffs;
}

inline SingularUnit assemble(const GaloisField& f, const CoeffRing& ring, unsigned n,
                             const Ansatz& ansatz, std::vector<Scalar> coeffs) {
  SingularUnit u;
  u.field = &f;
  u.ring = ring;
  u.n = n;
  u.orbits = ansatz.orbits;
  u.coeffs = std::move(coeffs);
  u.eS = RingElem::zero(f, ring, n, n);
  for (size_t c = 0; c < u.orbits.size(); ++c)
    for (const Mat& a : u.orbits[c]) u.eS.add_term(a, u.coeffs[c]);
  u.eG = RingElem::unit(f, ring, n) - u.eS;
  return u;
}

}  // namespace detail

// Re-checks every invariant of a solved unit by exhaustion.
inline CheckList verify_unit(const SingularUnit& u, uint64_t budget = kDefaultBudget) {
  const GaloisField& f = *u.field;
  unsigned n = u.n;
  CheckList rep;
  auto timed = [&](const std::string& name, auto&& fn) { rep.timed(name, fn); };

  std::vector<Mat> all = enumerate_hom(f, n, n, budget);
  std::vector<Mat> sing, gl;
  for (const Mat& a : all) (rank_of(a) == n ? gl : sing).push_back(a);

  timed("support_in_singulars", [&]() -> std::pair<bool, uint64_t> {
    for (const auto& [m, c] : u.eS.terms())
      if (is_invertible(m)) return {false, u.eS.support_size()};
    return {true, u.eS.support_size()};
  });
  timed("idempotent", [&]() -> std::pair<bool, uint64_t> {
    return {compose(u.eS, u.eS) == u.eS, u.eS.support_size()};
  });
  timed("two_sided_unit_on_singulars", [&]() -> std::pair<bool, uint64_t> {
    for (const Mat& a : sing) {
      RingElem ba = RingElem::basis(u.ring, a);
      if (!(compose(u.eS, ba) == ba && compose(ba, u.eS) == ba)) return {false, sing.size()};
    }
    return {true, sing.size()};
  });
  timed("central", [&]() -> std::pair<bool, uint64_t> {
    for (const Mat& a : all) {
      RingElem ba = RingElem::basis(u.ring, a);
      if (!(compose(u.eS, ba) == compose(ba, u.eS))) return {false, all.size()};
    }
    return {true, all.size()};
  });
  timed("transpose_fixed", [&]() -> std::pair<bool, uint64_t> {
    return {transpose(u.eS) == u.eS, u.eS.support_size()};
  });
  timed("gl_conjugation_fixed", [&]() -> std::pair<bool, uint64_t> {
    for (const Mat& g : gl) {
      RingElem lhs = compose(compose(RingElem::basis(u.ring, g), u.eS),
                             RingElem::basis(u.ring, inverse_of(g)));
      if (!(lhs == u.eS)) return {false, gl.size()};
    }
    return {true, gl.size()};
  });
  timed("eG_annihilates_singulars", [&]() -> std::pair<bool, uint64_t> {
    for (const Mat& a : sing) {
      RingElem ba = RingElem::basis(u.ring, a);
      if (!compose(u.eG, ba).is_zero() || !compose(ba, u.eG).is_zero()) return {false, sing.size()};
    }
    return {true, sing.size()};
  });
  timed("complement_idempotent", [&]() -> std::pair<bool, uint64_t> {
    return {compose(u.eG, u.eG) == u.eG, u.eG.support_size()};
  });
  return rep;
}

// Solve for e_n^S over K. Gate: the Kovacs hypothesis requires char(F) to be
// invertible in K; when it is not, this reports Inconsistent without
// attempting the solve (for n = 1 the bare linear system would be solvable
// over any K, but the construction is only claimed under the hypothesis).
inline SingularUnit solve_singular_unit(const GaloisField& f, const CoeffRing& ring, unsigned n,
                                        uint64_t budget = kDefaultBudget) {
  require(ring.inverts(f.p()),
          ErrorCode::Inconsistent,
          "hypothesis fails: p = " + std::to_string(f.p()) + " is not invertible in K = " + ring.str());
  if (n == 0) {
    // Sing_0 is empty: e_0^S = 0 and e_0^G = [I_0].
    SingularUnit u;
    u.field = &f;
    u.ring = ring;
    u.n = 0;
    u.eS = RingElem::zero(f, ring, 0, 0);
    u.eG = RingElem::unit(f, ring, 0);
    return u;
  }
  for (OrbitRestrict restrict_to : {OrbitRestrict::SemiIdempotent, OrbitRestrict::AllSingular}) {
    Ansatz ansatz = build_ansatz(f, n, restrict_to, budget);
    auto coeffs = detail::solve_ansatz(f, ring, n, ansatz, budget);
    if (!coeffs) {
      if (restrict_to == OrbitRestrict::AllSingular)
        fail(ErrorCode::Inconsistent, "no GL-invariant unit exists over K = " + ring.str());
      continue;  // retry over all singular orbits before giving up
    }
    SingularUnit u = detail::assemble(f, ring, n, ansatz, std::move(*coeffs));
    CheckList rep = verify_unit(u, budget);
    if (rep.all_pass) return u;
    require(restrict_to != OrbitRestrict::AllSingular, ErrorCode::VerificationFailed,
            "solved element failed the unit predicate suite");
  }
  fail(ErrorCode::VerificationFailed, "unreachable");
}

}  // namespace monodec
