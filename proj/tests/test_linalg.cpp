#include <catch2/catch_amalgamated.hpp>

#include "monodec/linalg.hpp"

using namespace monodec;

namespace {
ScalarMat make(const CoeffRing& R, size_t r, size_t c, std::initializer_list<int> vals) {
  ScalarMat m(R, r, c);
  size_t i = 0;
  for (int v : vals) {
    m.at(i / c, i % c) = Scalar::of(R, v);
    ++i;
  }
  return m;
}
}  // namespace

TEST_CASE("rref, rank and inverse over the rationals", "[linalg]") {
  CoeffRing R = CoeffRing::rationals();
  ScalarMat a = make(R, 2, 2, {1, 2, 3, 4});
  CHECK(rank_of(a) == 2);
  ScalarMat inv = inverse_of(a);
  CHECK(a * inv == ScalarMat::identity(R, 2));
  ScalarMat s = make(R, 2, 2, {1, 2, 2, 4});
  CHECK(rank_of(s) == 1);
  CHECK_THROWS_AS(inverse_of(s), Error);
}

TEST_CASE("nullspace and solve", "[linalg]") {
  CoeffRing R = CoeffRing::rationals();
  ScalarMat a = make(R, 2, 3, {1, 0, 1, 0, 1, 1});
  ScalarMat ns = nullspace(a);
  REQUIRE(ns.rows() == 1);
  // kernel spanned by (-1,-1,1) up to normalization: check a * v = 0
  std::vector<Scalar> v = ns.row(0);
  for (const Scalar& s : a.apply(v)) CHECK(s.is_zero());

  auto sol = solve(a, {Scalar::of(R, 2), Scalar::of(R, 3)});
  REQUIRE(sol.has_value());
  auto back = a.apply(*sol);
  CHECK(back[0] == Scalar::of(R, 2));
  CHECK(back[1] == Scalar::of(R, 3));

  // inconsistent system: x = 0 and x = 1
  ScalarMat b = make(R, 2, 1, {1, 1});
  CHECK_FALSE(solve(b, {Scalar::of(R, 0), Scalar::of(R, 1)}).has_value());
}

TEST_CASE("solve_with_certificate returns a checked infeasibility witness", "[linalg]") {
  CoeffRing R = CoeffRing::rationals();
  // x + y = 1, x + y = 2, x - y = 0
  ScalarMat a = make(R, 3, 2, {1, 1, 1, 1, 1, -1});
  std::vector<Scalar> b = {Scalar::of(R, 1), Scalar::of(R, 2), Scalar::of(R, 0)};
  LinOutcome out = solve_with_certificate(a, b);
  REQUIRE_FALSE(out.solution.has_value());
  REQUIRE(out.certificate.size() == 3);
  // lambda^T A = 0 and lambda^T b = 1
  for (size_t j = 0; j < a.cols(); ++j) {
    Scalar s = Scalar::zero(R);
    for (size_t i = 0; i < 3; ++i) s += out.certificate[i] * a.at(i, j);
    CHECK(s.is_zero());
  }
  Scalar rb = Scalar::zero(R);
  for (size_t i = 0; i < 3; ++i) rb += out.certificate[i] * b[i];
  CHECK(rb.is_one());

  LinOutcome ok = solve_with_certificate(a, {Scalar::of(R, 1), Scalar::of(R, 1), Scalar::of(R, 0)});
  REQUIRE(ok.solution.has_value());
  CHECK(ok.unique);
  CHECK((*ok.solution)[0] == Scalar::of(R, 1, 2));
  CHECK((*ok.solution)[1] == Scalar::of(R, 1, 2));
}

TEST_CASE("span builder and reduced column spaces", "[linalg]") {
  CoeffRing R = CoeffRing::rationals();
  SpanBuilder sb(R, 3);
  CHECK(sb.add({Scalar::of(R, 1), Scalar::of(R, 1), Scalar::of(R, 0)}));
  CHECK(sb.add({Scalar::of(R, 0), Scalar::of(R, 1), Scalar::of(R, 1)}));
  CHECK_FALSE(sb.add({Scalar::of(R, 1), Scalar::of(R, 2), Scalar::of(R, 1)}));
  CHECK(sb.dim() == 2);
  CHECK(sb.contains({Scalar::of(R, 1), Scalar::of(R, 0), Scalar::of(R, -1)}));
  CHECK_FALSE(sb.contains({Scalar::of(R, 1), Scalar::of(R, 0), Scalar::of(R, 0)}));

  ScalarMat m = make(R, 3, 3, {1, 1, 2, 0, 1, 1, 1, 0, 1});
  ColSpace cs = column_space(m);
  CHECK(cs.basis.cols() == 2);
  // reduced column form: rows at pivot_rows form an identity
  for (size_t i = 0; i < cs.pivot_rows.size(); ++i)
    for (size_t j = 0; j < cs.basis.cols(); ++j)
      CHECK(cs.basis.at(cs.pivot_rows[i], j) == (i == j ? Scalar::one(R) : Scalar::zero(R)));
  // coordinates round-trip for an in-space vector
  std::vector<Scalar> v = m.col(2);
  auto c = coords_in_checked(cs, v);
  CHECK(cs.basis.apply(c) == v);
}

TEST_CASE("linalg works over prime coefficient fields", "[linalg]") {
  CoeffRing F5 = CoeffRing::gf(5);
  ScalarMat a = make(F5, 2, 2, {2, 1, 1, 3});  // det = 5 = 0 mod 5
  CHECK(rank_of(a) == 1);
  ScalarMat b = make(F5, 2, 2, {2, 1, 1, 4});  // det = 7 = 2 mod 5
  CHECK(rank_of(b) == 2);
  CHECK(b * inverse_of(b) == ScalarMat::identity(F5, 2));
}
