#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "monodec/monoidring.hpp"

using namespace monodec;

namespace {

RingElem random_elem(std::mt19937_64& rng, const GaloisField& f, const CoeffRing& R, unsigned src,
                     unsigned tgt) {
  RingElem x(f, R, src, tgt);
  auto hom = enumerate_hom(f, tgt, src);
  size_t terms = 1 + rng() % 4;
  for (size_t t = 0; t < terms; ++t) {
    long num = long(rng() % 7) - 3;
    long den = 1 + long(rng() % 3);
    x.add_term(hom[rng() % hom.size()], Scalar::of(R, num, den));
  }
  return x;
}

}  // namespace

TEST_CASE("compose extends matrix products bilinearly", "[monoidring]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  Mat a = Mat::from_codes(f2, 2, 2, {1, 1, 0, 1});
  Mat b = Mat::from_codes(f2, 2, 2, {0, 1, 1, 0});
  CHECK(compose(RingElem::basis(R, a), RingElem::basis(R, b)) == RingElem::basis(R, a * b));

  RingElem half_i = RingElem::unit(f2, R, 2).scaled(Scalar::of(R, 1, 2));
  RingElem two_i = RingElem::unit(f2, R, 2).scaled(Scalar::of(R, 2));
  CHECK(compose(half_i, two_i) == RingElem::unit(f2, R, 2));

  // mixed shapes: K[Hom(F^b,F^c)] x K[Hom(F^a,F^b)] -> K[Hom(F^a,F^c)]
  Mat u = Mat::from_codes(f2, 1, 2, {1, 0});
  Mat v = Mat::from_codes(f2, 2, 3, {1, 0, 1, 0, 1, 1});
  RingElem w = compose(RingElem::basis(R, u), RingElem::basis(R, v));
  CHECK(w.src() == 3);
  CHECK(w.tgt() == 1);
  CHECK(w == RingElem::basis(R, u * v));

  CHECK_THROWS_AS(compose(RingElem::basis(R, u), RingElem::basis(R, u)), Error);
}

TEST_CASE("compose is associative on random triples", "[monoidring]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  std::mt19937_64 rng(20140501);
  for (int t = 0; t < 500; ++t) {
    unsigned a = rng() % 4, b = rng() % 4, c = rng() % 4, d = rng() % 4;
    RingElem x = random_elem(rng, f2, R, b, a);
    RingElem y = random_elem(rng, f2, R, c, b);
    RingElem z = random_elem(rng, f2, R, d, c);
    CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
  }
}

TEST_CASE("quotient to the group algebra is multiplicative", "[monoidring]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  std::mt19937_64 rng(987654321);
  for (int t = 0; t < 500; ++t) {
    RingElem x = random_elem(rng, f2, R, 2, 2);
    RingElem y = random_elem(rng, f2, R, 2, 2);
    CHECK(quotient_to_gl(compose(x, y)) == quotient_to_gl(x) * quotient_to_gl(y));
  }
  // [g] passes through; anything supported on Sing_n dies
  Mat g = Mat::from_codes(f2, 2, 2, {0, 1, 1, 0});
  CHECK(quotient_to_gl(RingElem::basis(R, g)) == GroupAlgElem::basis(R, g));
  RingElem s = RingElem::basis(R, Mat::from_codes(f2, 2, 2, {1, 0, 1, 0}))
                   .scaled(Scalar::of(R, 5, 3));
  CHECK(quotient_to_gl(s).is_zero());
}

TEST_CASE("transpose extends to an anti-automorphism", "[monoidring]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  std::mt19937_64 rng(55555);
  for (int t = 0; t < 200; ++t) {
    unsigned a = rng() % 3 + 1, b = rng() % 3 + 1, c = rng() % 3 + 1;
    RingElem x = random_elem(rng, f2, R, b, c);
    RingElem y = random_elem(rng, f2, R, a, b);
    CHECK(transpose(compose(x, y)) == compose(transpose(y), transpose(x)));
  }
}

TEST_CASE("predicate report for the monoid unit", "[monoidring]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  PredicateReport rep = predicates(RingElem::unit(f2, R, 2));
  CHECK(rep.idempotent);
  CHECK(rep.central);
  CHECK(rep.transpose_fixed);
  CHECK(rep.gl_conjugation_fixed);
  CHECK(rep.acts_as_unit_on_singulars);   // [I][A] = [A] holds
  CHECK_FALSE(rep.supported_on_singulars);  // but [I] is not in K[Sing]
  CHECK_FALSE(rep.unit_on_singulars);
  CHECK(rep.monoid_size == 16);
  CHECK(rep.singular_count == 10);
  CHECK(rep.gl_count == 6);
}

TEST_CASE("the zero matrix is the unit of K[Sing_1]", "[monoidring]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  PredicateReport rep = predicates(RingElem::basis(R, Mat(f2, 1, 1)));
  CHECK(rep.idempotent);
  CHECK(rep.unit_on_singulars);  // Sing_1 = {0}
  CHECK(rep.supported_on_singulars);
}

TEST_CASE("group algebra arithmetic", "[monoidring]") {
  const GaloisField& f3 = GaloisField::of(3);
  CoeffRing R = CoeffRing::rationals();
  auto gl = enumerate_gl(f3, 1);
  GroupAlgElem x = GroupAlgElem::basis(R, gl[0]) + GroupAlgElem::basis(R, gl[1]);
  GroupAlgElem e = GroupAlgElem::unit(f3, R, 1);
  CHECK(x * e == x);
  CHECK_THROWS_AS(GroupAlgElem::basis(R, Mat(f3, 1, 1)), Error);  // singular key rejected
}
