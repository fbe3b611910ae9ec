#include <catch2/catch_amalgamated.hpp>

#include "monodec/serialize.hpp"

using namespace monodec;

TEST_CASE("matrix serialization carries the (q, rows, cols) header", "[serialize]") {
  const GaloisField& f8 = GaloisField::of(8);
  Mat m = Mat::from_codes(f8, 1, 2, {5, 3});
  ordered_json j = mat_to_json(m);
  CHECK(j["q"] == 8);
  CHECK(j["digits"] == "101011");  // 5 -> "101", 3 -> "011"
  CHECK(mat_from_json(j) == m);
}

TEST_CASE("ring elements serialize in canonical key order", "[serialize]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  SingularUnit u = solve_singular_unit(f2, R, 2);
  ordered_json j = ring_elem_to_json(u.eS);
  REQUIRE(j["terms"].size() == 10);
  // canonical order: ascending digit strings
  std::string prev;
  for (const auto& t : j["terms"]) {
    std::string cur = t["matrix"]["digits"].get<std::string>();
    CHECK(prev < cur);
    prev = cur;
  }
  ordered_json ju = singular_unit_to_json(u);
  CHECK(ju["orbits"].size() == 3);
}

TEST_CASE("block elements serialize per-rank matrices", "[serialize]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  MoritaContext ctx(f2, R, 2);
  BlockElem b = ctx.phi(RingElem::unit(f2, R, 2));
  ordered_json j = block_elem_to_json(b);
  REQUIRE(j["blocks"].size() == 3);
  CHECK(j["blocks"][1]["size"] == 3);
  // identity: diagonal entries are single identity-keyed terms
  CHECK(j["blocks"][1]["entries"][0][0].size() == 1);
  CHECK(j["blocks"][1]["entries"][0][1].size() == 0);
}

TEST_CASE("functor save/load round trip with functoriality validation", "[serialize]") {
  const GaloisField& f2 = GaloisField::of(2);
  CoeffRing R = CoeffRing::rationals();
  FunctorPtr gr = make_gr(f2, R, 2);
  ordered_json doc = functor_to_json(*gr);
  FunctorPtr back = functor_from_json(doc);
  CHECK(back->dims() == gr->dims());
  CHECK(back->ring() == gr->ring());
  for (const Mat& a : enumerate_hom(f2, 1, 2))  // Hom(F^2, F^1): 1 x 2 matrices
    CHECK(back->map(2, 1, a) == gr->map(2, 1, a));

  // corrupting one entry must break the load-time functoriality validation
  ordered_json bad = doc;
  for (auto it = bad["maps"].begin(); it != bad["maps"].end(); ++it) {
    if (!it.value().empty()) {
      it.value()[0][2] = "7";
      break;
    }
  }
  CHECK_THROWS_AS(functor_from_json(bad), Error);
}

TEST_CASE("set functor save/load round trip", "[serialize]") {
  CoeffRing R = CoeffRing::rationals();
  SetFunctor p2 = make_proj_epi(R, 2, 2);
  ordered_json doc = set_functor_to_json(p2);
  SetFunctor back = set_functor_from_json(doc);  // constructor re-verifies functoriality
  CHECK(back.cat() == SetCat::Epi);
  CHECK(back.dim(1) == p2.dim(1));
  CHECK(back.dim(2) == p2.dim(2));
  for (const SetMapKey& k : p2.all_maps()) CHECK(back.map(k) == p2.map(k));
}

TEST_CASE("rook elements serialize as partial-map strings", "[serialize]") {
  CoeffRing R = CoeffRing::rationals();
  RookElem x = RookElem::basis(R, PartialInj::from_images({3, 0, 1}))
                   .scaled(Scalar::of(R, -2, 3));
  ordered_json j = rook_elem_to_json(x);
  CHECK(j["terms"][0]["map"] == "1→3, 2→∅, 3→1");
  CHECK(j["terms"][0]["coefficient"] == "-2/3");
}
