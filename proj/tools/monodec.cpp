// monodec: exact construction and verification of the matrix-algebra
// decomposition of K[M_n(F_q)], the rook-monoid decomposition, and the
// truncated functor equivalences built on them.
//
//   monodec idempotent --q 2 --n 2             solve and verify e_n^S
//   monodec verify all --profile desk --json   run a verification battery
//   monodec genrep --functor gr --q 2 --N 2 --action theta
//   monodec split --category fin --case eps --N 2
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 hypothesis
// failure (char F not invertible in K), 3 budget/usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "monodec/serialize.hpp"
#include "monodec/verify.hpp"

using namespace monodec;

namespace {

int emit(Report& rep, bool json, const std::string& out_path) {
  std::string text = json ? rep.to_json().dump(2) + "\n" : rep.to_text();
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    require(bool(f), ErrorCode::UsageError, "cannot open output file " + out_path);
    f << text;
  } else {
    std::cout << text;
  }
  return rep.pass() ? 0 : 1;
}

int run_idempotent(unsigned q, unsigned n, const std::string& coeff, bool json,
                   const std::string& out, uint64_t budget) {
  Report rep;
  rep.command = "idempotent";
  rep.add_config("q", std::to_string(q));
  rep.add_config("n", std::to_string(n));
  rep.add_config("coeff", coeff);
  const GaloisField& f = GaloisField::of(q);
  CoeffRing ring = CoeffRing::parse(coeff);
  SingularUnit u = solve_singular_unit(f, ring, n, budget);
  rep.merge(verify_unit(u, budget));
  ordered_json compact = ordered_json::array();
  for (size_t i = 0; i < u.orbits.size(); ++i) {
    ordered_json o;
    o["orbit_size"] = u.orbits[i].size();
    o["representative"] = u.orbits[i].front().digits();
    o["coefficient"] = u.coeffs[i].str();
    compact.push_back(o);
  }
  rep.payload["orbit_form"] = compact;
  rep.payload["unit"] = singular_unit_to_json(u);
  return emit(rep, json, out);
}

int run_verify(const std::string& target, bool has_qn, unsigned q, unsigned n,
               const std::string& profile, unsigned jobs, bool json, const std::string& out,
               uint64_t budget) {
  VerifyOptions opt;
  opt.extended = profile == "extended";
  opt.jobs = jobs;
  opt.budget = budget;
  require(profile == "desk" || profile == "extended", ErrorCode::UsageError,
          "profile must be desk or extended");
  Report rep;
  rep.command = "verify " + target;
  rep.add_config("profile", profile);
  rep.add_config("seed", std::to_string(opt.seed));
  CoeffRing rat = CoeffRing::rationals();
  if (has_qn) {
    rep.add_config("q", std::to_string(q));
    rep.add_config("n", std::to_string(n));
    const GaloisField& f = GaloisField::of(q);
    if (target == "kovacs") {
      SingularUnit u = solve_singular_unit(f, rat, n, budget);
      rep.merge(verify_unit(u, budget));
    } else if (target == "morita") {
      MoritaContext ctx(f, rat, n, budget);
      uint64_t samples = n >= 3 ? kSampledPairs : 0;
      rep.merge(ctx.verify(samples, opt.seed, jobs));
      rep.merge(ctx.peirce_idempotents().verification);
      rep.payload["dimension_breakdown"] = dim_identity_string(q, n);
    } else if (target == "rook") {
      rep.merge(verify_rook(n, rat, n >= 4 ? kSampledPairs : 0, opt.seed, n <= 3 || opt.extended));
      if (n == 3) rep.payload["size_breakdown"] = "34 = 1+9+18+6";
    } else if (target == "recollement") {
      rep.merge(verify_recollement(f, rat, n, budget));
    } else {
      fail(ErrorCode::UsageError, "--q/--n apply to kovacs, morita, rook, recollement");
    }
  } else {
    rep.merge(battery_for_target(target, opt));
    if (target == "morita" || target == "all") {
      rep.payload["dimension_breakdowns"] =
          ordered_json::array({dim_identity_string(2, 2), dim_identity_string(3, 2),
                               dim_identity_string(2, 3)});
    }
  }
  return emit(rep, json, out);
}

int run_genrep(const std::string& functor, unsigned q, unsigned trunc, const std::string& action,
               const std::string& save_path, const std::string& load_path, bool json,
               const std::string& out, uint64_t budget) {
  Report rep;
  rep.command = "genrep";
  rep.add_config("functor", load_path.empty() ? functor : "loaded:" + load_path);
  rep.add_config("q", std::to_string(q));
  rep.add_config("N", std::to_string(trunc));
  rep.add_config("action", action);
  rep.add_config("seed", "20140501");
  const GaloisField& f = GaloisField::of(q);
  CoeffRing rat = CoeffRing::rationals();

  FunctorPtr fn;
  if (!load_path.empty()) {
    std::ifstream in(load_path);
    require(bool(in), ErrorCode::UsageError, "cannot open " + load_path);
    ordered_json doc = ordered_json::parse(in);
    fn = functor_from_json(doc, budget);  // validates functoriality on load
    rep.checks.push_back({"load_functoriality", true, 1, 0, fn->name()});
    trunc = fn->trunc();
  } else {
    fn = make_builtin(functor, f, rat, trunc, budget);
    rep.merge(fn->verify_functoriality(20140501, 60, budget));
  }
  rep.payload["dims"] = fn->dims();

  if (!save_path.empty()) {
    std::ofstream sf(save_path, std::ios::binary);
    require(bool(sf), ErrorCode::UsageError, "cannot open " + save_path);
    sf << functor_to_json(*fn, budget).dump(2) << "\n";
    rep.checks.push_back({"saved", true, 1, 0, save_path});
  }

  auto units = kovacs_units(fn->field(), fn->ring(), fn->trunc(), budget);
  if (action == "theta") {
    std::vector<GroupModule> mods = theta(fn, units, budget);
    ordered_json dims = ordered_json::array(), trivial = ordered_json::array();
    bool all_trivial = true;
    for (unsigned k = 0; k <= fn->trunc(); ++k) {
      dims.push_back(mods[k].dim());
      // over Q: trivial iff chi(g) = dim for every g
      bool triv = mods[k].dim() > 0;
      for (const Mat& g : enumerate_gl(fn->field(), k, budget))
        triv = triv && mods[k].character(g) == Scalar::of(rat, long(mods[k].dim()));
      trivial.push_back(triv);
      all_trivial = all_trivial && (mods[k].dim() == 1 && triv);
    }
    rep.payload["theta_dims"] = dims;
    rep.payload["trivial_components"] = trivial;
    rep.checks.push_back({"theta_computed", true, fn->trunc() + 1, 0,
                          all_trivial ? "all components trivial of dimension 1" : ""});
  } else if (action == "filtration") {
    std::vector<size_t> th = theta_dims(*fn, units);
    FiltrationResult fr = rank_filtration(*fn, &th, budget);
    rep.merge(fr.checks);
    ordered_json table = ordered_json::array();
    for (auto& row : fr.table) table.push_back(row);
    rep.payload["filtration_table_k_by_m"] = table;
    rep.payload["theta_dims"] = th;
  } else if (action == "roundtrip") {
    std::vector<GroupModule> mods = theta(fn, units, budget);
    FunctorPtr back = psi(mods, fn->field(), rat, fn->trunc(), budget);
    bool dims_ok = back->dims() == fn->dims();
    rep.checks.push_back({"psi_theta_preserves_dims", dims_ok, fn->trunc() + 1, 0, ""});
    bool chars_ok = true;
    for (unsigned k = 0; k <= fn->trunc(); ++k) {
      Scalar d = theta_component_trace(*back, units[k], k, Mat::identity(fn->field(), k));
      chars_ok = chars_ok && d == Scalar::of(rat, long(mods[k].dim()));
      for (const Mat& g : enumerate_gl(fn->field(), k, budget))
        chars_ok = chars_ok && theta_component_trace(*back, units[k], k, g) == mods[k].character(g);
    }
    rep.checks.push_back({"theta_psi_componentwise_match", chars_ok, fn->trunc() + 1, 0, ""});
    rep.payload["dims_roundtrip"] = back->dims();
  } else {
    fail(ErrorCode::UsageError, "action must be theta, filtration or roundtrip");
  }
  return emit(rep, json, out);
}

int run_split(const std::string& category, const std::string& the_case, unsigned trunc, bool json,
              const std::string& out) {
  Report rep;
  rep.command = "split";
  rep.add_config("category", category);
  rep.add_config("case", the_case);
  rep.add_config("N", std::to_string(trunc));
  CoeffRing rat = CoeffRing::rationals();

  SplitOutcome outc;
  bool expect_split = false;
  if (the_case == "eps") {
    require(category == "fin", ErrorCode::UsageError, "case eps lives in category fin");
    SetFunctor p1 = make_proj_fin1(rat, trunc);
    SetFunctor cst = make_const_fin(rat, trunc);
    outc = splitting_solver(p1, cst, make_eps_fin(p1, cst), SplitMode::Section);
  } else if (the_case == "incl12") {
    require(category == "epi", ErrorCode::UsageError, "case incl12 lives in category epi");
    require(trunc >= 2, ErrorCode::UsageError, "incl12 needs N >= 2");
    SetFunctor p1 = make_proj_epi(rat, trunc, 1);
    SetFunctor p2 = make_proj_epi(rat, trunc, 2);
    outc = splitting_solver(p1, p2, make_incl_epi12(p1, p2), SplitMode::Retraction);
  } else if (the_case == "identity") {
    SetFunctor p1 = category == "fin" ? make_proj_fin1(rat, trunc) : make_proj_epi(rat, trunc, 1);
    outc = splitting_solver(p1, p1, make_identity_nat(p1), SplitMode::Section);
    expect_split = true;
  } else {
    fail(ErrorCode::UsageError, "case must be eps, incl12 or identity");
  }

  rep.payload["outcome"] = outc.split ? "Split" : "NoSplit";
  if (outc.split) {
    ordered_json w = ordered_json::array();
    for (const ScalarMat& m : outc.witness.at) {
      ordered_json rows = ordered_json::array();
      for (size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
      }
      w.push_back(rows);
    }
    rep.payload["witness"] = w;
  } else {
    ordered_json cert = ordered_json::array();
    for (const auto& [label, c] : outc.certificate) {
      ordered_json e;
      e["equation"] = label;
      e["multiplier"] = c.str();
      cert.push_back(e);
    }
    rep.payload["infeasibility_certificate"] = cert;
  }
  rep.checks.push_back({"outcome_matches_expected", outc.split == expect_split, 1, 0,
                        outc.split ? "Split" : "NoSplit"});
  return emit(rep, json, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decompositions of matrix-monoid algebras over finite fields"};
  app.require_subcommand(1);

  bool json = false;
  std::string out;
  unsigned jobs = 1;
  uint64_t budget = kDefaultBudget;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "emit the report as JSON (deterministic bytes)");
    sub->add_option("--out", out, "write the report to a file instead of stdout");
    sub->add_option("--jobs", jobs, "worker cap for parallel sweeps")->capture_default_str();
  };

  auto* idem = app.add_subcommand("idempotent", "solve and verify the unit of K[Sing_n(F_q)]");
  unsigned iq = 2, in_n = 2;
  std::string coeff = "rat";
  idem->add_option("--q", iq, "field size")->required();
  idem->add_option("--n", in_n, "matrix degree")->required();
  idem->add_option("--coeff", coeff, "coefficient ring: rat or gf:L")->capture_default_str();
  add_common(idem);

  auto* ver = app.add_subcommand("verify", "run a verification battery");
  std::string target, profile = "desk";
  unsigned vq = 0, vn = 0;
  ver->add_option("target", target, "kovacs | morita | rook | genrep | recollement | all")
      ->required();
  auto* vq_opt = ver->add_option("--q", vq, "focus on one field size");
  auto* vn_opt = ver->add_option("--n", vn, "focus on one degree");
  ver->add_option("--profile", profile, "desk or extended")->capture_default_str();
  add_common(ver);

  auto* gen = app.add_subcommand("genrep", "truncated functor computations");
  std::string functor = "gr", action = "theta", save_path, load_path;
  unsigned gq = 2, gN = 2;
  gen->add_option("--functor", functor, "gr | const | proj:n")->capture_default_str();
  gen->add_option("--q", gq, "field size")->capture_default_str();
  gen->add_option("--N", gN, "truncation level")->capture_default_str();
  gen->add_option("--action", action, "theta | filtration | roundtrip")->capture_default_str();
  gen->add_option("--save", save_path, "write the functor as JSON");
  gen->add_option("--load", load_path, "load a functor JSON (functoriality re-validated)");
  add_common(gen);

  auto* spl = app.add_subcommand("split", "splitting feasibility for set-functor examples");
  std::string category = "fin", the_case = "eps";
  unsigned sN = 2;
  spl->add_option("--category", category, "fin or epi")->capture_default_str();
  spl->add_option("--case", the_case, "eps | incl12 | identity")->capture_default_str();
  spl->add_option("--N", sN, "truncation level")->capture_default_str();
  add_common(spl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*idem) return run_idempotent(iq, in_n, coeff, json, out, budget);
    if (*ver)
      return run_verify(target, vq_opt->count() > 0 || vn_opt->count() > 0, vq ? vq : 2, vn,
                        profile, jobs, json, out, budget);
    if (*gen) return run_genrep(functor, gq, gN, action, save_path, load_path, json, out, budget);
    if (*spl) return run_split(category, the_case, sN, json, out);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::Inconsistent:
        std::cerr << "hypothesis failure: the characteristic of F_q must be invertible in the "
                     "coefficient ring K for the singular ideal to acquire a unit.\n";
        return 2;
      case ErrorCode::BudgetExceeded:
      case ErrorCode::UsageError:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
