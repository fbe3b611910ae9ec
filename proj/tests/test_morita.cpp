#include <catch2/catch_amalgamated.hpp>

#include "monodec/morita.hpp"

using namespace monodec;

TEST_CASE("block decomposition for q=2, n=1", "[morita]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  MoritaContext ctx(f2, R, 1);
  CHECK(ctx.gr(0) == 1);
  CHECK(ctx.gr(1) == 1);
  // the rank-0 Peirce idempotent is [0], the rank-1 one is e_1^G
  PeirceFamily fam = ctx.peirce_idempotents();
  CHECK(fam.eps[0][0] == RingElem::basis(R, Mat(f2, 1, 1)));
  CHECK(fam.eps[1][0] == ctx.unit(1).eG);
  // block (k=0 entry 1, k=1 entry 0) maps back to the zero matrix
  BlockElem b = ctx.zero_block();
  b.blocks[0][0][0] = GroupAlgElem::unit(f2, R, 0);
  CHECK(ctx.phi_inverse(b) == RingElem::basis(R, Mat(f2, 1, 1)));
  CHECK(ctx.verify().all_pass);
}

TEST_CASE("phi is a verified isomorphism for q=2, n=2", "[morita]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  MoritaContext ctx(f2, R, 2);
  CHECK(ctx.gr(0) == 1);
  CHECK(ctx.gr(1) == 3);
  CHECK(ctx.gr(2) == 1);
  // 16 = 1 + 9 + 6
  CHECK(16 == 1 * 1 + 3 * 3 * order_gl(2, 1) + 1 * order_gl(2, 2));
  CHECK(ctx.phi(RingElem::unit(f2, R, 2)).is_identity());
  CheckList rep = ctx.verify();  // exhaustive multiplicativity on 256 pairs
  INFO("convention " << ctx.convention());
  CHECK(rep.all_pass);
  // identity maps to identity blocks and back
  CHECK(ctx.phi_inverse(ctx.identity_block()) == RingElem::unit(f2, R, 2));
}

TEST_CASE("peirce family for q=2, n=2", "[morita]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  MoritaContext ctx(f2, R, 2);
  PeirceFamily fam = ctx.peirce_idempotents();
  CHECK(fam.verification.all_pass);
  CHECK(fam.eps[0].size() == 1);
  CHECK(fam.eps[1].size() == 3);
  CHECK(fam.eps[2].size() == 1);
  // completeness and orthogonality were verified inside, re-check the sum
  RingElem sum = RingElem::zero(f2, R, 2, 2);
  for (auto& level : fam.eps)
    for (auto& e : level) sum = sum + e;
  CHECK(sum == RingElem::unit(f2, R, 2));
  // the rank-2 idempotent is e_2^G
  CHECK(fam.eps[2][0] == ctx.unit(2).eG);
}

TEST_CASE("n = 0 has the single empty-matrix idempotent", "[morita]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  MoritaContext ctx(f2, R, 0);
  PeirceFamily fam = ctx.peirce_idempotents();
  REQUIRE(fam.eps.size() == 1);
  REQUIRE(fam.eps[0].size() == 1);
  CHECK(fam.eps[0][0] == RingElem::unit(f2, R, 0));
  CHECK(ctx.verify().all_pass);
}

TEST_CASE("phi over q=3, n=2 and over a prime coefficient field", "[morita]") {
  const GaloisField& f3 = GaloisField::of(3);
  CoeffRing R = CoeffRing::rationals();
  MoritaContext ctx(f3, R, 2);
  // 81 = 1 + 32 + 48
  CHECK(81 == 1 + 4 * 4 * order_gl(3, 1) + order_gl(3, 2));
  CHECK(ctx.gr(1) == 4);
  CheckList rep = ctx.verify();
  CHECK(rep.all_pass);

  // the decomposition also exists over K = F_5 (5 does not divide 3)
  MoritaContext ctx5(GaloisField::of(2), CoeffRing::gf(5), 2);
  CHECK(ctx5.verify().all_pass);
  CHECK(ctx5.peirce_idempotents().verification.all_pass);
  // sampled sweep over a prime field takes the non-dense fallback path
  CHECK(ctx5.verify(500, 20140501, 1).all_pass);
}

TEST_CASE("describing characteristic makes the structure matrix singular", "[morita]") {
  try {
    MoritaContext ctx(GaloisField::of(2), CoeffRing::gf(2), 2);
    FAIL("expected Inconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconsistent);
  }
}

TEST_CASE("sampled multiplicativity uses the dense fast path", "[morita]") {
  const GaloisField& f2 = GaloisField::of(2);
  MoritaContext ctx(f2, CoeffRing::rationals(), 2);
  CheckList rep = ctx.verify(/*sample_pairs=*/2000, /*seed=*/20140501, /*jobs=*/2);
  CHECK(rep.all_pass);
}

TEST_CASE("hom-vanishing across Hom-sets", "[morita]") {
  const GaloisField& f2 = GaloisField::of(2);
  CheckList rep = hom_vanishing(f2, CoeffRing::rationals(), 2);
  CHECK(rep.all_pass);
}
