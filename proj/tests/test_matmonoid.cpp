#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "monodec/matmonoid.hpp"

using namespace monodec;

TEST_CASE("hom-set enumeration counts", "[matmonoid]") {
  const GaloisField& f2 = GaloisField::of(2);
  CHECK(enumerate_hom(f2, 2, 2).size() == 16);
  CHECK(enumerate_gl(f2, 2).size() == 6);
  CHECK(enumerate_sing(f2, 2).size() == 10);
  CHECK(enumerate_gl(f2, 3).size() == 168);
  CHECK(order_gl(2, 3) == 168);  // (8-1)(8-2)(8-4)
  const GaloisField& f3 = GaloisField::of(3);
  CHECK(enumerate_hom(f3, 1, 1).size() == 3);
  CHECK(enumerate_gl(f3, 1).size() == 2);
  CHECK(enumerate_gl(f3, 2).size() == order_gl(3, 2));
  // canonical order: ascending base-q codes, duplicate-free
  auto all = enumerate_hom(f2, 2, 2);
  for (size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i] < all[i + 1]);
  // the empty shape has a single (empty) element
  CHECK(enumerate_hom(f2, 0, 0).size() == 1);
  CHECK(enumerate_hom(f2, 0, 2).size() == 1);
}

TEST_CASE("enumeration budget is enforced", "[matmonoid]") {
  const GaloisField& f9 = GaloisField::of(9);
  CHECK_THROWS_AS(enumerate_hom(f9, 5, 5), Error);
  try {
    enumerate_hom(f9, 5, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("rank and kernel", "[matmonoid]") {
  const GaloisField& f2 = GaloisField::of(2);
  Mat id3 = Mat::identity(f2, 3);
  auto [r, ker] = rank_and_kernel(id3);
  CHECK(r == 3);
  CHECK(ker.dim() == 0);
  Mat z(f2, 3, 3);
  auto [rz, kz] = rank_and_kernel(z);
  CHECK(rz == 0);
  CHECK(kz.dim() == 3);
  Mat ones = Mat::from_codes(f2, 2, 2, {1, 1, 1, 1});
  auto [ro, ko] = rank_and_kernel(ones);
  CHECK(ro == 1);
  REQUIRE(ko.dim() == 1);
  CHECK(ko.basis() == Mat::from_codes(f2, 1, 2, {1, 1}));
  // rank + dim kernel = cols for every 2x3 matrix
  for (const Mat& m : enumerate_hom(f2, 2, 3)) {
    auto [rm, km] = rank_and_kernel(m);
    CHECK(rm + km.dim() == 3);
  }
}

TEST_CASE("gaussian binomials against subspace enumeration", "[matmonoid]") {
  CHECK(gaussian_binomial(2, 3, 0) == 1);
  CHECK(gaussian_binomial(2, 2, 1) == 3);
  CHECK(gaussian_binomial(2, 3, 1) == 7);
  CHECK(gaussian_binomial(3, 2, 1) == 4);
  CHECK(gaussian_binomial(2, 2, 3) == 0);
  for (unsigned q : {2u, 3u}) {
    const GaloisField& f = GaloisField::of(q);
    for (unsigned n = 0; n <= 3; ++n)
      for (unsigned k = 0; k <= n; ++k) {
        CHECK(gaussian_binomial(q, n, k) == gaussian_binomial(q, n, n - k));
        CHECK(enumerate_subspaces(f, n, n - k).size() == gaussian_binomial(q, n, k));
      }
  }
  const GaloisField& f2 = GaloisField::of(2);
  auto full = enumerate_subspaces(f2, 3, 0);
  REQUIRE(full.size() == 1);
  CHECK(full[0] == Subspace::full_space(f2, 3));
  CHECK(enumerate_subspaces(f2, 2, 1).size() == 3);
  CHECK(enumerate_subspaces(f2, 3, 1).size() == 7);
}

TEST_CASE("sections for subspaces", "[matmonoid]") {
  const GaloisField& f2 = GaloisField::of(2);
  // W = 0 in F^n with k = n gives the identity pair
  Subspace zero3 = Subspace::zero_space(f2, 3);
  auto [pi0, sg0] = section_for_subspace(zero3, 3);
  CHECK(pi0 == Mat::identity(f2, 3));
  CHECK(sg0 == Mat::identity(f2, 3));
  // W = span{(1,0)} in F^2
  Subspace w = Subspace::row_space(Mat::from_codes(f2, 1, 2, {1, 0}));
  auto [pi, sg] = section_for_subspace(w, 1);
  CHECK(pi == Mat::from_codes(f2, 1, 2, {0, 1}));
  CHECK(sg == Mat::from_codes(f2, 2, 1, {0, 1}));
  CHECK(pi * sg == Mat::identity(f2, 1));
  // one pair per plane of F^3, each with the right kernel; deterministic
  auto planes = enumerate_subspaces(f2, 3, 1);
  REQUIRE(planes.size() == 7);
  for (const Subspace& p : planes) {
    auto [a, b] = section_for_subspace(p, 1);
    auto [a2, b2] = section_for_subspace(p, 1);
    CHECK(a == a2);
    CHECK(b == b2);
    CHECK(a * b == Mat::identity(f2, 1));
    CHECK(Subspace::kernel(a) == p);
  }
  CHECK_THROWS_AS(section_for_subspace(w, 2), Error);
}

TEST_CASE("canonical injections", "[matmonoid]") {
  const GaloisField& f3 = GaloisField::of(3);
  for (const Subspace& u : enumerate_subspaces(f3, 3, 1)) {
    Mat io = injection_for_subspace(u);
    Mat lam = injection_left_inverse(u);
    CHECK(lam * io == Mat::identity(f3, 2));
    CHECK(Subspace::column_space(io) == u);
  }
}

TEST_CASE("semi-idempotent matrices", "[matmonoid]") {
  const GaloisField& f2 = GaloisField::of(2);
  CHECK(is_semi_idempotent(Mat(f2, 2, 2)));  // eventual image 0
  CHECK(is_semi_idempotent(Mat::from_codes(f2, 2, 2, {1, 0, 0, 0})));
  const GaloisField& f3 = GaloisField::of(3);
  // diag(2,0): eventual image span{e1}, on which it acts as 2 != 1
  CHECK_FALSE(is_semi_idempotent(Mat::from_codes(f3, 2, 2, {2, 0, 0, 0})));
  CHECK(is_semi_idempotent(Mat::from_codes(f3, 2, 2, {1, 0, 0, 0})));
  // nilpotent: eventual image 0
  CHECK(is_semi_idempotent(Mat::from_codes(f2, 2, 2, {0, 1, 0, 0})));
}

TEST_CASE("conjugacy orbits of singular matrices", "[matmonoid]") {
  const GaloisField& f2 = GaloisField::of(2);
  auto orbits = conjugacy_orbits(f2, 2, OrbitRestrict::AllSingular);
  REQUIRE(orbits.size() == 3);
  std::multiset<size_t> sizes;
  size_t total = 0;
  for (auto& o : orbits) {
    sizes.insert(o.size());
    total += o.size();
  }
  CHECK(sizes == std::multiset<size_t>{1, 3, 6});
  CHECK(total == 10);
  // the size-6 orbit contains diag(1,0); the size-1 orbit is the zero matrix
  Mat diag10 = Mat::from_codes(f2, 2, 2, {1, 0, 0, 0});
  for (auto& o : orbits) {
    if (o.size() == 6) CHECK(std::find(o.begin(), o.end(), diag10) != o.end());
    if (o.size() == 1) CHECK(o[0] == Mat(f2, 2, 2));
  }
  // orbits ordered by least element, elements sorted
  for (size_t i = 0; i + 1 < orbits.size(); ++i) CHECK(orbits[i][0] < orbits[i + 1][0]);

  // every singular class of M_2(F_2) is semi-idempotent
  auto semi = conjugacy_orbits(f2, 2, OrbitRestrict::SemiIdempotent);
  CHECK(semi.size() == 3);

  auto n1 = conjugacy_orbits(f2, 1, OrbitRestrict::AllSingular);
  REQUIRE(n1.size() == 1);
  CHECK(n1[0] == std::vector<Mat>{Mat(f2, 1, 1)});

  // orbit sizes sum to the semi-idempotent count under restriction (q=3)
  const GaloisField& f3 = GaloisField::of(3);
  auto s3 = conjugacy_orbits(f3, 2, OrbitRestrict::SemiIdempotent);
  size_t semi_total = 0, semi_direct = 0;
  for (auto& o : s3) semi_total += o.size();
  for (const Mat& m : enumerate_sing(f3, 2))
    if (is_semi_idempotent(m)) ++semi_direct;
  CHECK(semi_total == semi_direct);
}

TEST_CASE("transpose is a rank-preserving involution", "[matmonoid]") {
  const GaloisField& f2 = GaloisField::of(2);
  CHECK(Mat::identity(f2, 3).transposed() == Mat::identity(f2, 3));
  CHECK(Mat::from_codes(f2, 2, 2, {0, 1, 0, 0}).transposed() ==
        Mat::from_codes(f2, 2, 2, {0, 0, 1, 0}));
  for (const Mat& m : enumerate_hom(f2, 2, 2)) {
    CHECK(m.transposed().transposed() == m);
    CHECK(rank_of(m.transposed()) == rank_of(m));
  }
}

TEST_CASE("rank stratification identities", "[matmonoid]") {
  for (auto [q, maxd] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}}) {
    const GaloisField& f = GaloisField::of(q);
    for (unsigned m = 0; m <= maxd; ++m)
      for (unsigned n = 0; n <= maxd; ++n) {
        uint64_t total = enumerate_hom(f, m, n).size();
        uint64_t sum = 0;
        for (unsigned k = 0; k <= std::min(m, n); ++k) {
          uint64_t surj = enumerate_surj(f, n, k).size();
          uint64_t inj = enumerate_inj(f, k, n).size();
          CHECK(surj == inj);
          CHECK(surj == gaussian_binomial(q, n, k) * order_gl(q, k));
          sum += gaussian_binomial(q, m, k) * surj;
        }
        CHECK(total == sum);
      }
  }
}

TEST_CASE("subspace representation is independent of the spanning set", "[matmonoid]") {
  std::mt19937_64 rng(424242);
  for (unsigned q : {2u, 3u}) {
    const GaloisField& f = GaloisField::of(q);
    for (int t = 0; t < 100; ++t) {
      unsigned n = 1 + unsigned(rng() % 3), rows = 1 + unsigned(rng() % 3);
      Mat m(f, rows, n);
      for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < n; ++j) m.set(i, j, uint8_t(rng() % q));
      Subspace w = Subspace::row_space(m);
      // left multiplication by an invertible matrix fixes the row space
      Mat g(f, rows, rows);
      do {
        for (unsigned i = 0; i < rows; ++i)
          for (unsigned j = 0; j < rows; ++j) g.set(i, j, uint8_t(rng() % q));
      } while (!is_invertible(g));
      CHECK(Subspace::row_space(g * m) == w);
      CHECK(w.dim() + Subspace::kernel(m).dim() == n);
    }
  }
}

TEST_CASE("orbits are closed under arbitrary conjugation", "[matmonoid]") {
  const GaloisField& f3 = GaloisField::of(3);
  auto orbits = conjugacy_orbits(f3, 2, OrbitRestrict::AllSingular);
  auto gl = enumerate_gl(f3, 2);
  std::mt19937_64 rng(5150);
  size_t total = 0;
  for (auto& orbit : orbits) total += orbit.size();
  CHECK(total == enumerate_sing(f3, 2).size());
  for (auto& orbit : orbits) {
    for (int t = 0; t < 20; ++t) {
      const Mat& x = orbit[rng() % orbit.size()];
      const Mat& g = gl[rng() % gl.size()];
      Mat y = g * x * inverse_of(g);
      CHECK(std::binary_search(orbit.begin(), orbit.end(), y));
    }
  }
}

TEST_CASE("matrix encodings and serialization round-trip", "[matmonoid]") {
  std::mt19937_64 rng(12345);
  for (unsigned q : {2u, 3u, 4u, 8u}) {
    const GaloisField& f = GaloisField::of(q);
    for (int t = 0; t < 50; ++t) {
      unsigned r = 1 + unsigned(rng() % 3), c = 1 + unsigned(rng() % 3);
      Mat m(f, r, c);
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < c; ++j) m.set(i, j, uint8_t(rng() % q));
      CHECK(Mat::decode(f, r, c, m.encode()) == m);
      CHECK(Mat::from_digits(f, r, c, m.digits()) == m);
    }
  }
}
