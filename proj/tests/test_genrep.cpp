#include <catch2/catch_amalgamated.hpp>

#include "monodec/genrep.hpp"

using namespace monodec;

namespace {
const GaloisField& F2() { return GaloisField::of(2); }
CoeffRing RAT = CoeffRing::rationals();
}  // namespace

TEST_CASE("builtin functors have the expected dimensions", "[genrep]") {
  FunctorPtr p1 = make_proj(F2(), RAT, 3, 1);
  CHECK(p1->dims() == std::vector<size_t>{1, 2, 4, 8});
  FunctorPtr gr = make_gr(F2(), RAT, 2);
  CHECK(gr->dims() == std::vector<size_t>{1, 2, 5});
  FunctorPtr cst = make_const(F2(), RAT, 3);
  CHECK(cst->dims() == std::vector<size_t>{1, 1, 1, 1});
  CHECK(make_builtin("proj:2", F2(), RAT, 2)->dims() == std::vector<size_t>{1, 4, 16});
  CHECK_THROWS_AS(make_builtin("nope", F2(), RAT, 2), Error);
}

TEST_CASE("builtin functoriality is verified exhaustively at N = 2", "[genrep]") {
  for (const char* name : {"gr", "const", "proj:1", "proj:2"}) {
    FunctorPtr fn = make_builtin(name, F2(), RAT, 2);
    CheckList rep = fn->verify_functoriality();
    INFO(name);
    CHECK(rep.all_pass);
  }
  // q = 3 as well
  FunctorPtr gr3 = make_gr(GaloisField::of(3), RAT, 2);
  CHECK(gr3->verify_functoriality().all_pass);
}

TEST_CASE("theta of gr is the sequence of trivial modules", "[genrep]") {
  unsigned N = 3;
  FunctorPtr gr = make_gr(F2(), RAT, N);
  auto units = kovacs_units(F2(), RAT, N);
  std::vector<GroupModule> mods = theta(gr, units);
  REQUIRE(mods.size() == 4);
  for (unsigned k = 0; k <= N; ++k) {
    CHECK(mods[k].dim() == 1);
    for (const Mat& g : enumerate_gl(F2(), k))
      CHECK(mods[k].action(g) == ScalarMat::identity(RAT, 1));
  }
}

TEST_CASE("theta of const is trivial at k=0 and zero above", "[genrep]") {
  FunctorPtr cst = make_const(F2(), RAT, 3);
  auto units = kovacs_units(F2(), RAT, 3);
  std::vector<size_t> dims = theta_dims(*cst, units);
  CHECK(dims == std::vector<size_t>{1, 0, 0, 0});
}

TEST_CASE("theta of projectives matches the corner dimensions", "[genrep]") {
  auto units = kovacs_units(F2(), RAT, 2);
  for (unsigned n : {1u, 2u}) {
    FunctorPtr pn = make_proj(F2(), RAT, 2, n);
    std::vector<size_t> dims = theta_dims(*pn, units);
    std::vector<GroupModule> mods = theta(pn, units);  // cross-check by image computation
    for (unsigned k = 0; k <= 2; ++k) {
      CHECK(dims[k] == gaussian_binomial(2, n, k) * order_gl(2, k));
      CHECK(mods[k].dim() == dims[k]);
    }
  }
}

TEST_CASE("projective multiplicity counts", "[genrep]") {
  // q^{nm} = sum_k gr_k(n) * |Inj(F^k, F^m)| for n, m <= 3: the evaluation
  // of the corner decomposition of P_n at F^m, checked exhaustively
  for (unsigned n = 0; n <= 3; ++n)
    for (unsigned m = 0; m <= 3; ++m) {
      uint64_t total = enumerate_hom(F2(), m, n).size();  // |Hom(F^n, F^m)|
      uint64_t sum = 0;
      for (unsigned k = 0; k <= std::min(m, n); ++k)
        sum += gaussian_binomial(2, n, k) * enumerate_inj(F2(), k, m).size();
      CHECK(total == sum);
    }
}

TEST_CASE("dimension bookkeeping for every builtin", "[genrep]") {
  unsigned N = 2;
  auto units = kovacs_units(F2(), RAT, N);
  for (const char* name : {"gr", "const", "proj:1", "proj:2"}) {
    FunctorPtr fn = make_builtin(name, F2(), RAT, N);
    std::vector<size_t> th = theta_dims(*fn, units);
    for (unsigned m = 0; m <= N; ++m) {
      uint64_t sum = 0;
      for (unsigned k = 0; k <= N; ++k) sum += gaussian_binomial(2, m, k) * th[k];
      INFO(name << " at m=" << m);
      CHECK(sum == fn->dims()[m]);
    }
  }
}

TEST_CASE("psi inverts theta on dimensions and characters", "[genrep]") {
  unsigned N = 2;
  auto units = kovacs_units(F2(), RAT, N);
  for (const char* name : {"gr", "const", "proj:1", "proj:2"}) {
    FunctorPtr fn = make_builtin(name, F2(), RAT, N);
    std::vector<GroupModule> mods = theta(fn, units);
    FunctorPtr back = psi(mods, F2(), RAT, N);
    INFO(name);
    CHECK(back->dims() == fn->dims());
    // theta(psi(mods)) has componentwise equal dims and characters
    for (unsigned k = 0; k <= N; ++k) {
      Scalar dim_tr = theta_component_trace(*back, units[k], k, Mat::identity(F2(), k));
      CHECK(dim_tr == Scalar::of(RAT, long(mods[k].dim())));
      for (const Mat& g : enumerate_gl(F2(), k))
        CHECK(theta_component_trace(*back, units[k], k, g) == mods[k].character(g));
    }
  }
}

TEST_CASE("psi of the all-trivial family is gr; of K at 0 is const", "[genrep]") {
  unsigned N = 2;
  std::vector<GroupModule> trivials;
  for (unsigned k = 0; k <= N; ++k) trivials.push_back(GroupModule::trivial(F2(), RAT, k));
  FunctorPtr g = psi(trivials, F2(), RAT, N);
  CHECK(g->dims() == make_gr(F2(), RAT, N)->dims());

  std::vector<GroupModule> konly;
  konly.push_back(GroupModule::trivial(F2(), RAT, 0));
  for (unsigned k = 1; k <= N; ++k) konly.push_back(GroupModule::zero(F2(), RAT, k));
  FunctorPtr c = psi(konly, F2(), RAT, N);
  CHECK(c->dims() == std::vector<size_t>{1, 1, 1});

  // psi(theta(proj 2)) evaluates to dims (1, 4, 16)
  auto units = kovacs_units(F2(), RAT, N);
  FunctorPtr p2 = make_proj(F2(), RAT, N, 2);
  CHECK(psi(theta(p2, units), F2(), RAT, N)->dims() == std::vector<size_t>{1, 4, 16});
}

TEST_CASE("psi requires rational coefficients", "[genrep]") {
  std::vector<GroupModule> mods;
  for (unsigned k = 0; k <= 1; ++k) mods.push_back(GroupModule::trivial(F2(), CoeffRing::gf(3), k));
  CHECK_THROWS_AS(psi(mods, F2(), CoeffRing::gf(3), 1), Error);
}

TEST_CASE("rank filtration tables", "[genrep]") {
  unsigned N = 2;
  auto units = kovacs_units(F2(), RAT, N);
  FunctorPtr p2 = make_proj(F2(), RAT, N, 2);
  std::vector<size_t> th = theta_dims(*p2, units);
  FiltrationResult fr = rank_filtration(*p2, &th);
  CHECK(fr.checks.all_pass);
  // m = 2 column: (1, 10, 16)
  CHECK(fr.table[0][2] == 1);
  CHECK(fr.table[1][2] == 10);
  CHECK(fr.table[2][2] == 16);

  FunctorPtr cst = make_const(F2(), RAT, N);
  std::vector<size_t> thc = theta_dims(*cst, units);
  FiltrationResult frc = rank_filtration(*cst, &thc);
  CHECK(frc.checks.all_pass);
  for (unsigned k = 0; k <= N; ++k)
    for (unsigned m = 0; m <= N; ++m) CHECK(frc.table[k][m] == 1);

  FunctorPtr gr = make_gr(F2(), RAT, N);
  std::vector<size_t> thg = theta_dims(*gr, units);
  FiltrationResult frg = rank_filtration(*gr, &thg);
  CHECK(frg.checks.all_pass);
  CHECK(frg.table[0][2] == 1);
  CHECK(frg.table[1][2] == 4);
  CHECK(frg.table[2][2] == 5);

  // q = 3 battery
  const GaloisField& f3 = GaloisField::of(3);
  auto units3 = kovacs_units(f3, RAT, 2);
  FunctorPtr gr3 = make_gr(f3, RAT, 2);
  std::vector<size_t> thg3 = theta_dims(*gr3, units3);
  CHECK(rank_filtration(*gr3, &thg3).checks.all_pass);
}

TEST_CASE("describing characteristic is reported through theta", "[genrep]") {
  try {
    kovacs_units(F2(), CoeffRing::gf(2), 2);
    FAIL("expected Inconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconsistent);
  }
}

TEST_CASE("functor evaluations are monoid modules", "[genrep]") {
  // F(F^n) carries a K[M_n]-module structure; splitting that module along
  // e_{n-1} / e_n^G matches the theta component at the top rank
  unsigned N = 2;
  auto units = kovacs_units(F2(), RAT, N);
  for (const char* name : {"gr", "const", "proj:2"}) {
    FunctorPtr fn = make_builtin(name, F2(), RAT, N);
    ModulePres ev = evaluation_module(*fn, 2);  // constructor verifies the action
    CHECK(ev.dim() == fn->dims()[2]);
    SplitModules s = split_module(ev, units[2]);
    std::vector<size_t> th = theta_dims(*fn, units);
    INFO(name);
    CHECK(s.top.dim() == th[2]);
  }
}

TEST_CASE("set functors and their dimensions", "[genrep]") {
  SetFunctor p1 = make_proj_fin1(RAT, 2);
  CHECK(p1.dim(0) == 0);
  CHECK(p1.dim(1) == 1);
  CHECK(p1.dim(2) == 2);
  SetFunctor cst = make_const_fin(RAT, 2);
  CHECK(cst.dim(0) == 1);
  SetFunctor e1 = make_proj_epi(RAT, 2, 1);
  CHECK(e1.dim(1) == 1);
  CHECK(e1.dim(2) == 0);
  SetFunctor e2 = make_proj_epi(RAT, 2, 2);
  CHECK(e2.dim(1) == 1);
  CHECK(e2.dim(2) == 2);
}

TEST_CASE("the counit of P_1^Fin never splits", "[genrep]") {
  SetFunctor p1 = make_proj_fin1(RAT, 2);
  SetFunctor cst = make_const_fin(RAT, 2);
  SetNat eps = make_eps_fin(p1, cst);
  REQUIRE(is_natural(p1, cst, eps));
  SplitOutcome out = splitting_solver(p1, cst, eps, SplitMode::Section);
  CHECK_FALSE(out.split);
  CHECK_FALSE(out.certificate.empty());
  // the certificate really is an infeasible combination: nonzero multipliers
  for (auto& [label, c] : out.certificate) CHECK_FALSE(c.is_zero());
}

TEST_CASE("the inclusion P_1^Epi -> P_2^Epi never retracts", "[genrep]") {
  SetFunctor p1 = make_proj_epi(RAT, 2, 1);
  SetFunctor p2 = make_proj_epi(RAT, 2, 2);
  SetNat inc = make_incl_epi12(p1, p2);
  REQUIRE(is_natural(p1, p2, inc));
  SplitOutcome out = splitting_solver(p1, p2, inc, SplitMode::Retraction);
  CHECK_FALSE(out.split);
  CHECK_FALSE(out.certificate.empty());
}

TEST_CASE("the identity transformation splits", "[genrep]") {
  SetFunctor p1 = make_proj_fin1(RAT, 2);
  SetNat id = make_identity_nat(p1);
  SplitOutcome out = splitting_solver(p1, p1, id, SplitMode::Section);
  CHECK(out.split);
  for (unsigned s = 0; s <= 2; ++s)
    CHECK(out.witness.at[s] == ScalarMat::identity(RAT, p1.dim(s)));
}

TEST_CASE("non-natural transformations are rejected", "[genrep]") {
  SetFunctor p1 = make_proj_fin1(RAT, 2);
  SetFunctor cst = make_const_fin(RAT, 2);
  SetNat bad = make_eps_fin(p1, cst);
  bad.at[2].at(0, 0) = Scalar::of(RAT, 5);
  try {
    splitting_solver(p1, cst, bad, SplitMode::Section);
    FAIL("expected NotNatural");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNatural);
  }
}
