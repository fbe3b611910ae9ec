#include <catch2/catch_amalgamated.hpp>

#include "monodec/scalars.hpp"

using namespace monodec;

TEST_CASE("prime field arithmetic", "[scalars]") {
  const GaloisField& f2 = GaloisField::of(2);
  CHECK(f2.add(1, 1) == 0);
  CHECK(f2.mul(1, 1) == 1);

  const GaloisField& f5 = GaloisField::of(5);
  CHECK(f5.inv(2) == 3);  // 2*3 = 6 = 1 mod 5
  CHECK(f5.mul(2, f5.inv(2)) == 1);
}

TEST_CASE("extension field arithmetic uses the fixed moduli", "[scalars]") {
  // F_4 = F_2[x]/(x^2+x+1); codes: 0, 1, x=2, x+1=3
  const GaloisField& f4 = GaloisField::of(4);
  CHECK(f4.p() == 2);
  CHECK(f4.e() == 2);
  CHECK(f4.mul(2, 2) == 3);  // x*x = x+1
  CHECK(f4.elem_str(3) == "11");

  const GaloisField& f8 = GaloisField::of(8);  // x^3+x+1
  CHECK(f8.mul(2, 2) == 4);                    // x*x = x^2
  CHECK(f8.mul(4, 2) == 3);                    // x^3 = x+1
  CHECK(f8.elem_str(5) == "101");
  CHECK(f8.elem_from_str("101") == 5);

  const GaloisField& f9 = GaloisField::of(9);  // x^2+1
  CHECK(f9.mul(3, 3) == 2);                    // x*x = -1 = 2
}

TEST_CASE("field axioms hold exhaustively for q <= 9", "[scalars]") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const GaloisField& f = GaloisField::of(q);
    for (unsigned a = 0; a < q; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (unsigned b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (unsigned c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
    // the recorded generator really generates F_q^*
    unsigned g = f.multiplicative_generator(), x = g, order = 1;
    while (x != 1) {
      x = f.mul(uint8_t(x), uint8_t(g));
      ++order;
    }
    CHECK(order == q - 1);
  }
}

TEST_CASE("unsupported fields and invalid operations are rejected", "[scalars]") {
  CHECK_THROWS_AS(GaloisField::of(6), Error);
  CHECK_THROWS_AS(GaloisField::of(16), Error);
  const GaloisField& f3 = GaloisField::of(3);
  CHECK_THROWS_AS(f3.inv(0), Error);
  try {
    f3.inv(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  FieldElem a(GaloisField::of(2), 1), b(GaloisField::of(3), 1);
  CHECK_THROWS_AS(a + b, Error);
}

TEST_CASE("rational scalars are exact and normalized", "[scalars]") {
  CoeffRing R = CoeffRing::rationals();
  Scalar half = Scalar::of(R, 1, 2);
  CHECK((half + (-half)).is_zero());
  CHECK((half * Scalar::of(R, 2)).is_one());
  CHECK(Scalar::of(R, 2, 4).str() == "1/2");
  CHECK(Scalar::of(R, -1, -2).str() == "1/2");
  CHECK(Scalar::of(R, 1, -2).str() == "-1/2");
  CHECK(Scalar::of(R, 6, 3).str() == "2");
  CHECK(Scalar::parse(R, "-7/3") == Scalar::of(R, -7, 3));
  CHECK_THROWS_AS(Scalar::zero(R).inv(), Error);
}

TEST_CASE("prime coefficient fields reduce mod l", "[scalars]") {
  CoeffRing F3 = CoeffRing::gf(3);
  CHECK(Scalar::of(F3, 2).inv() == Scalar::of(F3, 2));  // 2*2 = 4 = 1 mod 3
  CHECK(Scalar::of(F3, 5) == Scalar::of(F3, 2));
  CHECK((Scalar::of(F3, 2) + Scalar::of(F3, 2)) == Scalar::of(F3, 1));
  CHECK(Scalar::of(F3, 1, 2) == Scalar::of(F3, 2));  // 1/2 = 2 mod 3
  CHECK_THROWS_AS(CoeffRing::gf(4), Error);
  CHECK_THROWS_AS(Scalar::of(F3, 1) + Scalar::of(CoeffRing::rationals(), 1), Error);
  CHECK(CoeffRing::gf(3).inverts(2));
  CHECK_FALSE(CoeffRing::gf(2).inverts(2));
  CHECK(CoeffRing::rationals().inverts(7));
  CHECK(CoeffRing::parse("gf:5") == CoeffRing::gf(5));
  CHECK(CoeffRing::parse("rat") == CoeffRing::rationals());
}
