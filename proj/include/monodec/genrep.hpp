#pragma once

// Truncated generic representations: functors from F_q-vector spaces of
// dimension <= N to K-modules, given by exact matrices for every linear map
// inside the truncation. On top of them: the corner functor Theta (per-rank
// GL_k-modules through e_k^G), its inverse Psi (induction along the corner
// projectives), the rank filtration with its splitting bookkeeping, and the
// finite-set-category functors with a linear splitting-feasibility solver.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "monodec/checks.hpp"
#include "monodec/errors.hpp"
#include "monodec/kovacs.hpp"
#include "monodec/linalg.hpp"
#include "monodec/matmonoid.hpp"
#include "monodec/modules.hpp"

namespace monodec {

// Column-major sparse exact matrix; rows inside a column sorted.
class SparseMat {
 public:
  SparseMat() : rows_(0) {}
  SparseMat(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_.size(); }
  void set_entry(size_t col, size_t row, Scalar v) {
    if (v.is_zero()) return;
    cols_[col].emplace_back(uint32_t(row), std::move(v));
  }
  void finish() {
    for (auto& c : cols_) std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
  }
  const std::vector<std::pair<uint32_t, Scalar>>& column(size_t j) const { return cols_[j]; }

  std::vector<Scalar> apply(const std::vector<Scalar>& v, const CoeffRing& ring) const {
    require(v.size() == cols(), ErrorCode::DimensionMismatch, "sparse matvec shape");
    std::vector<Scalar> out(rows_, Scalar::zero(ring));
    for (size_t j = 0; j < cols(); ++j) {
      if (v[j].is_zero()) continue;
      for (const auto& [i, c] : cols_[j]) out[i] += c * v[j];
    }
    return out;
  }

  Scalar trace(const CoeffRing& ring) const {
    Scalar t = Scalar::zero(ring);
    for (size_t j = 0; j < cols() && j < rows_; ++j)
      for (const auto& [i, c] : cols_[j])
        if (i == j) t += c;
    return t;
  }

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    require(a.cols() == b.rows_, ErrorCode::DimensionMismatch, "sparse product shape");
    SparseMat out(a.rows_, b.cols());
    for (size_t j = 0; j < b.cols(); ++j) {
      std::map<uint32_t, Scalar> acc;
      for (const auto& [t, cb] : b.cols_[j])
        for (const auto& [i, ca] : a.cols_[t]) {
          auto [it, fresh] = acc.emplace(i, ca * cb);
          if (!fresh) it->second += ca * cb;
        }
      for (auto& [i, c] : acc)
        if (!c.is_zero()) out.cols_[j].emplace_back(i, std::move(c));
    }
    return out;
  }
  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
    for (size_t j = 0; j < a.cols(); ++j) {
      // columns are sorted and zero-free
      if (a.cols_[j] != b.cols_[j]) return false;
    }
    return true;
  }
  static SparseMat sparse_identity(size_t n, const CoeffRing& ring) {
    SparseMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.set_entry(i, i, Scalar::one(ring));
    return m;
  }

 private:
  size_t rows_;
  std::vector<std::vector<std::pair<uint32_t, Scalar>>> cols_;
};

class TruncatedFunctor;
using FunctorPtr = std::shared_ptr<const TruncatedFunctor>;

// A functor is its dimension vector plus an exact matrix for every map
// A in Hom(F^m, F^n), m, n <= N (an n x m matrix over F_q). Maps are
// produced by a generator and optionally cached; a trace override lets
// transport-backed functors answer trace queries without building columns.
class TruncatedFunctor {
 public:
  using MapFn = std::function<SparseMat(unsigned m, unsigned n, const Mat& a)>;
  using TraceFn = std::function<Scalar(unsigned k, const Mat& a)>;

  TruncatedFunctor(const GaloisField& f, const CoeffRing& ring, unsigned trunc,
                   std::vector<size_t> dims, std::string name, MapFn gen, bool cache_maps,
                   TraceFn trace_fn = {})
      : f_(&f),
        ring_(ring),
        trunc_(trunc),
        dims_(std::move(dims)),
        name_(std::move(name)),
        gen_(std::move(gen)),
        cache_(cache_maps),
        trace_fn_(std::move(trace_fn)) {
    require(dims_.size() == trunc_ + 1, ErrorCode::DimensionMismatch, "need one dimension per object");
  }

  const GaloisField& field() const { return *f_; }
  const CoeffRing& ring() const { return ring_; }
  unsigned trunc() const { return trunc_; }
  const std::vector<size_t>& dims() const { return dims_; }
  const std::string& name() const { return name_; }

  SparseMat map(unsigned m, unsigned n, const Mat& a) const {
    require(m <= trunc_ && n <= trunc_, ErrorCode::DimensionMismatch, "object outside truncation");
    require(a.rows() == n && a.cols() == m, ErrorCode::DimensionMismatch,
            "map shape does not match Hom(F^m, F^n)");
    if (!cache_) return gen_(m, n, a);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(m, n, a.encode());
    auto it = cache_map_.find(key);
    if (it != cache_map_.end()) return it->second;
    SparseMat sm = gen_(m, n, a);
    return cache_map_.emplace(key, std::move(sm)).first->second;
  }

  Scalar map_trace(unsigned k, const Mat& a) const {
    if (trace_fn_) return trace_fn_(k, a);
    return map(k, k, a).trace(ring_);
  }

  // Functoriality: F(id) = id for every object, and F(B A) = F(B) F(A) on
  // composable pairs (exhaustive when the truncation is small, seeded
  // samples otherwise).
  CheckList verify_functoriality(uint64_t seed = 20140501, uint64_t samples = 60,
                                 uint64_t budget = kDefaultBudget) const {
    CheckList rep;
    rep.timed("identity_maps", [&]() -> std::pair<bool, uint64_t> {
      for (unsigned m = 0; m <= trunc_; ++m)
        if (!(map(m, m, Mat::identity(*f_, m)) == SparseMat::sparse_identity(dims_[m], ring_)))
          return {false, m};
      return {true, trunc_ + 1};
    });
    uint64_t pairs = 0;
    {
      long double total = 0;
      for (unsigned m = 0; m <= trunc_; ++m)
        for (unsigned n = 0; n <= trunc_; ++n)
          for (unsigned l = 0; l <= trunc_; ++l) {
            long double t = 1;
            for (unsigned i = 0; i < n * m + l * n; ++i) t *= f_->q();
            total += t;
          }
      pairs = total < 1e18 ? uint64_t(total) : uint64_t(1) << 62;
    }
    if (pairs <= 4096) {
      rep.timed("composition_exhaustive", [&]() -> std::pair<bool, uint64_t> {
        uint64_t count = 0;
        for (unsigned m = 0; m <= trunc_; ++m)
          for (unsigned n = 0; n <= trunc_; ++n)
            for (unsigned l = 0; l <= trunc_; ++l)
              for (const Mat& a : enumerate_hom(*f_, n, m, budget))
                for (const Mat& b : enumerate_hom(*f_, l, n, budget)) {
                  ++count;
                  if (!(map(m, l, b * a) == map(n, l, b) * map(m, n, a))) return {false, count};
                }
        return {true, count};
      });
    } else {
      rep.timed("composition_sampled", [&]() -> std::pair<bool, uint64_t> {
        uint64_t s = seed ? seed : 1;
        auto next = [&s]() {
          s ^= s << 13;
          s ^= s >> 7;
          s ^= s << 17;
          return s;
        };
        for (uint64_t t = 0; t < samples; ++t) {
          unsigned m = unsigned(next() % (trunc_ + 1));
          unsigned n = unsigned(next() % (trunc_ + 1));
          unsigned l = unsigned(next() % (trunc_ + 1));
          Mat a(*f_, n, m), b(*f_, l, n);
          for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < m; ++j) a.set(i, j, uint8_t(next() % f_->q()));
          for (unsigned i = 0; i < l; ++i)
            for (unsigned j = 0; j < n; ++j) b.set(i, j, uint8_t(next() % f_->q()));
          if (!(map(m, l, b * a) == map(n, l, b) * map(m, n, a))) return {false, t + 1};
        }
        return {true, samples};
      });
    }
    return rep;
  }

 private:
  const GaloisField* f_;
  CoeffRing ring_;
  unsigned trunc_;
  std::vector<size_t> dims_;
  std::string name_;
  MapFn gen_;
  bool cache_;
  TraceFn trace_fn_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<unsigned, unsigned, uint64_t>, SparseMat> cache_map_;
};

// ---------------------------------------------------------------------------
// Built-in functors
// ---------------------------------------------------------------------------

// P_j(V) = K[Hom(F^j, V)]; maps act by postcomposition on the basis.
inline FunctorPtr make_proj(const GaloisField& f, const CoeffRing& ring, unsigned trunc, unsigned j,
                            uint64_t budget = kDefaultBudget) {
  auto index = std::make_shared<std::vector<std::map<uint64_t, uint32_t>>>(trunc + 1);
  std::vector<size_t> dims(trunc + 1);
  for (unsigned m = 0; m <= trunc; ++m) {
    auto hom = enumerate_hom(f, m, j, budget);  // Hom(F^j, F^m): m x j matrices
    dims[m] = hom.size();
    for (size_t i = 0; i < hom.size(); ++i) (*index)[m].emplace(hom[i].encode(), uint32_t(i));
  }
  const GaloisField* fp = &f;
  CoeffRing r = ring;
  unsigned jj = j;
  auto gen = [index, fp, r, jj, budget](unsigned m, unsigned n, const Mat& a) {
    auto hom = enumerate_hom(*fp, m, jj, budget);
    SparseMat out((*index)[n].size(), hom.size());
    for (size_t t = 0; t < hom.size(); ++t)
      out.set_entry(t, (*index)[n].at((a * hom[t]).encode()), Scalar::one(r));
    out.finish();
    return out;
  };
  auto fn = std::make_shared<TruncatedFunctor>(f, ring, trunc, std::move(dims),
                                              "proj:" + std::to_string(j), std::move(gen), true);
  require(fn->verify_functoriality().all_pass, ErrorCode::VerificationFailed,
          "projective functor failed functoriality");
  return fn;
}

// K[Gr](V) = free module on all subspaces of V; maps take images.
inline FunctorPtr make_gr(const GaloisField& f, const CoeffRing& ring, unsigned trunc,
                          uint64_t budget = kDefaultBudget) {
  auto lists = std::make_shared<std::vector<std::vector<Subspace>>>(trunc + 1);
  std::vector<size_t> dims(trunc + 1);
  for (unsigned m = 0; m <= trunc; ++m) {
    for (unsigned d = 0; d <= m; ++d) {
      auto subs = enumerate_subspaces(f, m, m - d, budget);
      (*lists)[m].insert((*lists)[m].end(), subs.begin(), subs.end());
    }
    dims[m] = (*lists)[m].size();
  }
  CoeffRing r = ring;
  auto gen = [lists, r](unsigned m, unsigned n, const Mat& a) {
    const auto& src = (*lists)[m];
    const auto& dst = (*lists)[n];
    SparseMat out(dst.size(), src.size());
    for (size_t t = 0; t < src.size(); ++t) {
      // image subspace A(W) = row space of basis(W) * A^T
      Subspace img = Subspace::row_space(src[t].basis() * a.transposed());
      size_t pos = size_t(std::find(dst.begin(), dst.end(), img) - dst.begin());
      require(pos < dst.size(), ErrorCode::VerificationFailed, "image subspace missing");
      out.set_entry(t, pos, Scalar::one(r));
    }
    out.finish();
    return out;
  };
  auto fn = std::make_shared<TruncatedFunctor>(f, ring, trunc, std::move(dims), "gr",
                                              std::move(gen), true);
  require(fn->verify_functoriality().all_pass, ErrorCode::VerificationFailed,
          "subspace functor failed functoriality");
  return fn;
}

inline FunctorPtr make_const(const GaloisField& f, const CoeffRing& ring, unsigned trunc) {
  std::vector<size_t> dims(trunc + 1, 1);
  CoeffRing r = ring;
  auto gen = [r](unsigned, unsigned, const Mat&) {
    SparseMat out(1, 1);
    out.set_entry(0, 0, Scalar::one(r));
    out.finish();
    return out;
  };
  auto fn = std::make_shared<TruncatedFunctor>(f, ring, trunc, std::move(dims), "const",
                                              std::move(gen), true);
  require(fn->verify_functoriality().all_pass, ErrorCode::VerificationFailed,
          "constant functor failed functoriality");
  return fn;
}

inline FunctorPtr make_builtin(const std::string& name, const GaloisField& f, const CoeffRing& ring,
                               unsigned trunc, uint64_t budget = kDefaultBudget) {
  if (name == "gr") return make_gr(f, ring, trunc, budget);
  if (name == "const") return make_const(f, ring, trunc);
  if (name.rfind("proj:", 0) == 0)
    return make_proj(f, ring, trunc, unsigned(std::stoul(name.substr(5))), budget);
  fail(ErrorCode::UsageError, "unknown functor '" + name + "' (gr, const, proj:n)");
}

inline std::vector<SingularUnit> kovacs_units(const GaloisField& f, const CoeffRing& ring, unsigned trunc,
                                              uint64_t budget = kDefaultBudget) {
  std::vector<SingularUnit> units;
  for (unsigned k = 0; k <= trunc; ++k) units.push_back(solve_singular_unit(f, ring, k, budget));
  return units;
}

// The K[M_n]-module structure carried by the evaluation F(F^n); the
// ModulePres constructor re-verifies multiplicativity of the action.
inline ModulePres evaluation_module(const TruncatedFunctor& fn, unsigned n,
                                    uint64_t budget = kDefaultBudget) {
  require(n <= fn.trunc(), ErrorCode::DimensionMismatch, "object outside truncation");
  const GaloisField& f = fn.field();
  std::map<uint64_t, ScalarMat> rho;
  size_t d = fn.dims()[n];
  for (const Mat& a : enumerate_hom(f, n, n, budget)) {
    SparseMat sm = fn.map(n, n, a);
    ScalarMat m(fn.ring(), d, d);
    for (size_t j = 0; j < d; ++j)
      for (const auto& [i, c] : sm.column(j)) m.at(i, j) = c;
    rho.emplace(a.encode(), std::move(m));
  }
  if (d == 0) return ModulePres::zero(f, fn.ring(), n, budget);
  return ModulePres(f, fn.ring(), n, std::move(rho), 0, budget);
}

// ---------------------------------------------------------------------------
// Theta: the k-th component is the image of the e_k^G-action on F(F^k) with
// GL_k acting through F. Dimensions come from the trace of the idempotent
// action; characters from chi(g) = trace(rho(g) rho(e_k^G)).
// ---------------------------------------------------------------------------

inline Scalar theta_component_trace(const TruncatedFunctor& fun, const SingularUnit& unit, unsigned k,
                                    const Mat& g) {
  Scalar t = Scalar::zero(fun.ring());
  for (const auto& [b, c] : unit.eG.terms()) t += c * fun.map_trace(k, g * b);
  return t;
}

inline std::vector<size_t> theta_dims(const TruncatedFunctor& fun, const std::vector<SingularUnit>& units) {
  std::vector<size_t> out;
  for (unsigned k = 0; k <= fun.trunc(); ++k) {
    Scalar t = theta_component_trace(fun, units[k], k, Mat::identity(fun.field(), k));
    // the trace of an idempotent action is the dimension of its image
    require(t.is_integral(), ErrorCode::VerificationFailed, "idempotent trace is not an integer");
    long v = long(t.value().get_num().get_si());
    require(v >= 0 && uint64_t(v) <= fun.dims()[k], ErrorCode::VerificationFailed,
            "idempotent trace out of range");
    out.push_back(size_t(v));
  }
  return out;
}

// Largest component dimension that still gets explicit, exhaustively
// verified action matrices; bigger components stay functor-backed.
inline constexpr size_t kExplicitThetaDim = 64;

inline std::vector<GroupModule> theta(const FunctorPtr& fun, const std::vector<SingularUnit>& units,
                                      uint64_t budget = kDefaultBudget) {
  const GaloisField& f = fun->field();
  const CoeffRing& ring = fun->ring();
  std::vector<GroupModule> out;
  for (unsigned k = 0; k <= fun->trunc(); ++k) {
    size_t d = fun->dims()[k];
    // assemble rho(e_k^G)
    ScalarMat eg(ring, d, d);
    for (const auto& [b, c] : units[k].eG.terms()) {
      SparseMat sm = fun->map(k, k, b);
      for (size_t j = 0; j < d; ++j)
        for (const auto& [i, v] : sm.column(j)) eg.at(i, j) += c * v;
    }
    Scalar tr = eg.trace();
    require(tr.is_integral(), ErrorCode::VerificationFailed, "idempotent trace is not an integer");
    size_t dim = size_t(tr.value().get_num().get_si());
    auto cs = std::make_shared<ColSpace>(column_space(eg));
    require(cs->basis.cols() == dim, ErrorCode::VerificationFailed,
            "rank of the idempotent action does not match its trace");

    // characters through the trace identity
    std::map<uint64_t, Scalar> chars;
    std::vector<Mat> gl = enumerate_gl(f, k, budget);
    for (const Mat& g : gl) chars.emplace(g.encode(), theta_component_trace(*fun, units[k], k, g));

    if (dim == 0) {
      out.push_back(GroupModule::zero(f, ring, k));
      continue;
    }
    if (dim <= kExplicitThetaDim) {
      std::map<uint64_t, ScalarMat> mats;
      for (const Mat& g : gl) {
        SparseMat act = fun->map(k, k, g);
        ScalarMat m(ring, dim, dim);
        for (size_t j = 0; j < dim; ++j) {
          std::vector<Scalar> v = act.apply(cs->basis.col(j), ring);
          std::vector<Scalar> cc = coords_in_checked(*cs, v);
          for (size_t i = 0; i < dim; ++i) m.at(i, j) = cc[i];
        }
        mats.emplace(g.encode(), std::move(m));
      }
      GroupModule gm = GroupModule::from_matrices(f, ring, k, std::move(mats));
      // the explicit traces must agree with the trace-identity characters
      for (const Mat& g : gl)
        require(gm.character(g) == chars.at(g.encode()), ErrorCode::VerificationFailed,
                "character mismatch between trace identity and explicit action");
      out.push_back(std::move(gm));
    } else {
      FunctorPtr keep = fun;
      unsigned kk = k;
      CoeffRing r = ring;
      auto provider = [keep, cs, kk, r](const Mat& g, size_t j) {
        SparseMat act = keep->map(kk, kk, g);
        std::vector<Scalar> v = act.apply(cs->basis.col(j), r);
        return coords_in(*cs, v);
      };
      // seeded membership and multiplicativity spot checks
      uint64_t s = 0xbf58476d1ce4e5b9ull;
      auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
      };
      for (int t = 0; t < 12; ++t) {
        const Mat& g = gl[next() % gl.size()];
        size_t j = next() % dim;
        std::vector<Scalar> v = fun->map(k, k, g).apply(cs->basis.col(j), ring);
        std::vector<Scalar> cc = coords_in(*cs, v);
        require(cs->basis.apply(cc) == v, ErrorCode::VerificationFailed,
                "group action does not preserve the theta component");
      }
      for (int t = 0; t < 6; ++t) {
        const Mat& g = gl[next() % gl.size()];
        const Mat& h = gl[next() % gl.size()];
        size_t j = next() % dim;
        std::vector<Scalar> via_h = fun->map(k, k, h).apply(cs->basis.col(j), ring);
        std::vector<Scalar> via_gh = fun->map(k, k, g).apply(via_h, ring);
        std::vector<Scalar> direct = fun->map(k, k, g * h).apply(cs->basis.col(j), ring);
        require(via_gh == direct, ErrorCode::VerificationFailed,
                "sampled multiplicativity failed on the theta component");
      }
      out.push_back(GroupModule::from_provider(f, ring, k, dim, std::move(provider), std::move(chars)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Psi: Psi(M)(F^m) = sum_k P_k^G(F^m) (x)_{K[GL_k]} M_k. The corner
// K[Hom(F^k,F^m)]e_k^G has the free right GL_k-action [f] -> [f g] on the
// injection classes, so the tensor collapses onto canonical orbit
// representatives iota_U, one per k-dimensional subspace U of F^m. A linear
// map A transports the (k, U) block to (k, im(A iota_U)) through the GL_k
// relabeling, or to zero when A iota_U drops rank.
// ---------------------------------------------------------------------------

namespace detail {
struct PsiData {
  std::vector<GroupModule> mods;
  // [m][k]: dim-k subspaces of F^m with canonical injections/left inverses
  std::vector<std::vector<std::vector<Subspace>>> subs;
  std::vector<std::vector<std::vector<Mat>>> iotas;
  std::vector<std::vector<std::vector<Mat>>> lambdas;
  std::vector<std::vector<std::vector<size_t>>> offsets;  // [m][k][uidx]
  std::vector<size_t> dims;                               // [m]
};
}  // namespace detail

inline FunctorPtr psi(std::vector<GroupModule> mods, const GaloisField& f, const CoeffRing& ring,
                      unsigned trunc, uint64_t budget = kDefaultBudget) {
  require(ring.is_rational(), ErrorCode::NotSupported, "psi is supported over K = Q");
  require(mods.size() == trunc + 1, ErrorCode::DimensionMismatch, "need one module per rank <= N");
  auto data = std::make_shared<detail::PsiData>();
  data->mods = std::move(mods);
  data->subs.resize(trunc + 1);
  data->iotas.resize(trunc + 1);
  data->lambdas.resize(trunc + 1);
  data->offsets.resize(trunc + 1);
  data->dims.resize(trunc + 1);
  for (unsigned m = 0; m <= trunc; ++m) {
    data->subs[m].resize(trunc + 1);
    data->iotas[m].resize(trunc + 1);
    data->lambdas[m].resize(trunc + 1);
    data->offsets[m].resize(trunc + 1);
    size_t off = 0;
    for (unsigned k = 0; k <= std::min(m, trunc); ++k) {
      data->subs[m][k] = enumerate_subspaces(f, m, m - k, budget);
      for (const Subspace& u : data->subs[m][k]) {
        data->iotas[m][k].push_back(injection_for_subspace(u));
        data->lambdas[m][k].push_back(injection_left_inverse(u));
        data->offsets[m][k].push_back(off);
        off += data->mods[k].dim();
      }
    }
    data->dims[m] = off;
  }

  const GaloisField* fp = &f;
  CoeffRing r = ring;
  // transport of the (k, U) block along A: either (U', h') or rank drop
  auto transport = [data, fp](unsigned m, unsigned n, const Mat& a, unsigned k, size_t ui,
                              Mat& h_out, size_t& ui_out) -> bool {
    Mat g = a * data->iotas[m][k][ui];
    if (rank_of(g) != k) return false;
    Subspace img = Subspace::column_space(g);
    const auto& dst = data->subs[n][k];
    auto it = std::lower_bound(dst.begin(), dst.end(), img);
    require(it != dst.end() && *it == img, ErrorCode::VerificationFailed, "transport target missing");
    ui_out = size_t(it - dst.begin());
    h_out = data->lambdas[n][k][ui_out] * g;
    require(data->iotas[n][k][ui_out] * h_out == g, ErrorCode::VerificationFailed,
            "transport does not factor through the canonical injection");
    return true;
  };

  auto gen = [data, transport, r](unsigned m, unsigned n, const Mat& a) {
    SparseMat out(data->dims[n], data->dims[m]);
    for (unsigned k = 0; k < data->subs[m].size(); ++k) {
      for (size_t ui = 0; ui < data->subs[m][k].size(); ++ui) {
        Mat h;
        size_t ui2 = 0;
        if (!transport(m, n, a, k, ui, h, ui2)) continue;
        size_t src_off = data->offsets[m][k][ui];
        size_t dst_off = data->offsets[n][k][ui2];
        for (size_t j = 0; j < data->mods[k].dim(); ++j) {
          std::vector<Scalar> col = data->mods[k].action_column(h, j);
          for (size_t i = 0; i < col.size(); ++i)
            if (!col[i].is_zero()) out.set_entry(src_off + j, dst_off + i, col[i]);
        }
      }
    }
    out.finish();
    return out;
  };
  auto trace_fn = [data, transport](unsigned k_obj, const Mat& a) {
    Scalar t = Scalar::zero(data->mods[0].ring());
    for (unsigned k = 0; k < data->subs[k_obj].size(); ++k)
      for (size_t ui = 0; ui < data->subs[k_obj][k].size(); ++ui) {
        Mat h;
        size_t ui2 = 0;
        if (!transport(k_obj, k_obj, a, k, ui, h, ui2)) continue;
        if (ui2 == ui) t += data->mods[k].character(h);
      }
    return t;
  };

  std::string name = "psi";
  auto fun = std::make_shared<TruncatedFunctor>(*fp, r, trunc, data->dims, std::move(name),
                                                std::move(gen), false, std::move(trace_fn));
  CheckList functoriality = fun->verify_functoriality();
  require(functoriality.all_pass, ErrorCode::VerificationFailed, "psi output failed functoriality");
  return fun;
}

// ---------------------------------------------------------------------------
// Rank filtration: F^k(F^m) = span of the columns of F(f) over
// f in Hom(F^k, F^m); monotone in k and stabilizing at k = m.
// ---------------------------------------------------------------------------

namespace detail {
// Row-echelon span with sparse rows; enough for dimension counting.
class SparseSpan {
 public:
  explicit SparseSpan(const CoeffRing& ring) : ring_(ring) {}
  size_t dim() const { return rows_.size(); }
  bool add(std::map<size_t, Scalar> v) {
    for (size_t i = 0; i < rows_.size(); ++i) {
      auto it = v.find(leads_[i]);
      if (it == v.end() || it->second.is_zero()) continue;
      Scalar f = it->second;
      for (const auto& [j, c] : rows_[i]) {
        auto [vit, fresh] = v.emplace(j, -(f * c));
        if (!fresh) {
          vit->second -= f * c;
          if (vit->second.is_zero()) v.erase(vit);
        } else if (vit->second.is_zero()) {
          v.erase(vit);
        }
      }
    }
    while (!v.empty() && v.begin()->second.is_zero()) v.erase(v.begin());
    if (v.empty()) return false;
    size_t lead = v.begin()->first;
    Scalar inv = v.begin()->second.inv();
    std::map<size_t, Scalar> row;
    for (auto& [j, c] : v) {
      Scalar x = c * inv;
      if (!x.is_zero()) row.emplace(j, std::move(x));
    }
    size_t pos = 0;
    while (pos < rows_.size() && leads_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + long(pos), std::move(row));
    leads_.insert(leads_.begin() + long(pos), lead);
    return true;
  }

 private:
  CoeffRing ring_;
  std::vector<std::map<size_t, Scalar>> rows_;
  std::vector<size_t> leads_;
};
}  // namespace detail

struct FiltrationResult {
  std::vector<std::vector<size_t>> table;  // [k][m]
  CheckList checks;
};

// theta_dims, when supplied, feeds the splitting bookkeeping
// dim F^k(F^m) = sum_{j<=k} gr_j(m) * dim Theta(F)_j.
inline FiltrationResult rank_filtration(const TruncatedFunctor& fun,
                                        const std::vector<size_t>* theta_dimensions = nullptr,
                                        uint64_t budget = kDefaultBudget) {
  const GaloisField& f = fun.field();
  unsigned trunc = fun.trunc();
  FiltrationResult out;
  out.table.assign(trunc + 1, std::vector<size_t>(trunc + 1, 0));
  for (unsigned m = 0; m <= trunc; ++m) {
    detail::SparseSpan span(fun.ring());
    for (unsigned k = 0; k <= trunc; ++k) {
      if (span.dim() < fun.dims()[m]) {
        for (const Mat& g : enumerate_hom(f, m, k, budget)) {  // g: F^k -> F^m
          SparseMat sm = fun.map(k, m, g);
          for (size_t j = 0; j < sm.cols(); ++j) {
            std::map<size_t, Scalar> col;
            for (const auto& [i, c] : sm.column(j)) col.emplace(size_t(i), c);
            span.add(std::move(col));
          }
          if (span.dim() == fun.dims()[m]) break;
        }
      }
      out.table[k][m] = span.dim();
    }
  }

  CheckList& rep = out.checks;
  bool monotone = true, stabilizes = true;
  for (unsigned m = 0; m <= trunc; ++m) {
    for (unsigned k = 0; k + 1 <= trunc; ++k)
      if (out.table[k][m] > out.table[k + 1][m]) monotone = false;
    for (unsigned k = m; k <= trunc; ++k)
      if (out.table[k][m] != fun.dims()[m]) stabilizes = false;
  }
  rep.add("filtration_monotone", monotone, (trunc + 1) * (trunc + 1));
  rep.add("filtration_stabilizes_at_m", stabilizes, trunc + 1);
  if (theta_dimensions) {
    bool split_ok = true;
    for (unsigned m = 0; m <= trunc; ++m)
      for (unsigned k = 0; k <= trunc; ++k) {
        uint64_t expect = 0;
        for (unsigned j = 0; j <= k; ++j)
          expect += gaussian_binomial(f.q(), m, j) * (*theta_dimensions)[j];
        if (out.table[k][m] != expect) split_ok = false;
      }
    rep.add("filtration_splitting_formula", split_ok, (trunc + 1) * (trunc + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functors on finite-set categories (Fin: all maps, including the empty set;
// Epi: nonempty sets and surjections) and the splitting-feasibility solver.
// ---------------------------------------------------------------------------

enum class SetCat { Fin, Epi };

struct SetMapKey {
  uint8_t src = 0, tgt = 0;
  std::vector<uint8_t> img;  // 0-based images, size == src
  friend auto operator<=>(const SetMapKey&, const SetMapKey&) = default;
  std::string str() const {
    std::string s = std::to_string(int(src)) + "->" + std::to_string(int(tgt)) + ":";
    for (size_t i = 0; i < img.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(int(img[i]));
    }
    return s;
  }
};

inline std::vector<SetMapKey> enumerate_set_maps(SetCat cat, unsigned src, unsigned tgt) {
  std::vector<SetMapKey> out;
  if (src == 0) {
    if (cat == SetCat::Fin) out.push_back({0, uint8_t(tgt), {}});
    return out;
  }
  if (tgt == 0) return out;  // no map from a nonempty set to the empty set
  std::vector<uint8_t> img(src, 0);
  while (true) {
    bool keep = true;
    if (cat == SetCat::Epi) {
      uint32_t hit = 0;
      for (uint8_t v : img) hit |= 1u << v;
      keep = hit == (1u << tgt) - 1;
    }
    if (keep) out.push_back({uint8_t(src), uint8_t(tgt), img});
    bool carried = true;
    for (size_t i = src; i-- > 0;) {
      if (img[i] + 1u < tgt) {
        ++img[i];
        carried = false;
        break;
      }
      img[i] = 0;
    }
    if (carried) break;
  }
  return out;
}

inline SetMapKey compose_set_maps(const SetMapKey& f, const SetMapKey& g) {
  require(f.src == g.tgt, ErrorCode::DimensionMismatch, "set maps do not compose");
  SetMapKey h;
  h.src = g.src;
  h.tgt = f.tgt;
  h.img.resize(g.img.size());
  for (size_t i = 0; i < g.img.size(); ++i) h.img[i] = f.img[g.img[i]];
  return h;
}

class SetFunctor {
 public:
  SetFunctor(SetCat cat, const CoeffRing& ring, unsigned trunc, std::vector<size_t> dims,
             std::map<SetMapKey, ScalarMat> maps, std::string name)
      : cat_(cat), ring_(ring), trunc_(trunc), dims_(std::move(dims)), maps_(std::move(maps)),
        name_(std::move(name)) {
    verify_functoriality();
  }

  SetCat cat() const { return cat_; }
  const CoeffRing& ring() const { return ring_; }
  unsigned trunc() const { return trunc_; }
  const std::string& name() const { return name_; }
  // objects: sizes obj_min()..trunc()
  unsigned obj_min() const { return cat_ == SetCat::Fin ? 0 : 1; }
  size_t dim(unsigned s) const { return dims_[s]; }
  const ScalarMat& map(const SetMapKey& k) const { return maps_.at(k); }

  std::vector<SetMapKey> all_maps() const {
    std::vector<SetMapKey> out;
    for (const auto& [k, m] : maps_) out.push_back(k);
    return out;
  }

 private:
  void verify_functoriality() const {
    for (unsigned s = obj_min(); s <= trunc_; ++s) {
      SetMapKey id{uint8_t(s), uint8_t(s), {}};
      id.img.resize(s);
      for (unsigned i = 0; i < s; ++i) id.img[i] = uint8_t(i);
      require(maps_.at(id) == ScalarMat::identity(ring_, dims_[s]), ErrorCode::VerificationFailed,
              "identity must act as identity");
    }
    for (const auto& [kf, mf] : maps_)
      for (const auto& [kg, mg] : maps_) {
        if (kf.src != kg.tgt) continue;
        require(maps_.at(compose_set_maps(kf, kg)) == mf * mg, ErrorCode::VerificationFailed,
                "set functor is not functorial");
      }
  }

  SetCat cat_;
  CoeffRing ring_;
  unsigned trunc_;
  std::vector<size_t> dims_;
  std::map<SetMapKey, ScalarMat> maps_;
  std::string name_;
};

// P_1^Fin(S) = K[S].
inline SetFunctor make_proj_fin1(const CoeffRing& ring, unsigned trunc) {
  std::vector<size_t> dims(trunc + 1);
  for (unsigned s = 0; s <= trunc; ++s) dims[s] = s;
  std::map<SetMapKey, ScalarMat> maps;
  for (unsigned s = 0; s <= trunc; ++s)
    for (unsigned t = 0; t <= trunc; ++t)
      for (const SetMapKey& k : enumerate_set_maps(SetCat::Fin, s, t)) {
        ScalarMat m(ring, t, s);
        for (unsigned i = 0; i < s; ++i) m.at(k.img[i], i) = Scalar::one(ring);
        maps.emplace(k, std::move(m));
      }
  return SetFunctor(SetCat::Fin, ring, trunc, std::move(dims), std::move(maps), "proj_fin:1");
}

inline SetFunctor make_const_fin(const CoeffRing& ring, unsigned trunc) {
  std::vector<size_t> dims(trunc + 1, 1);
  std::map<SetMapKey, ScalarMat> maps;
  for (unsigned s = 0; s <= trunc; ++s)
    for (unsigned t = 0; t <= trunc; ++t)
      for (const SetMapKey& k : enumerate_set_maps(SetCat::Fin, s, t))
        maps.emplace(k, ScalarMat::identity(ring, 1));
  return SetFunctor(SetCat::Fin, ring, trunc, std::move(dims), std::move(maps), "const_fin");
}

// P_k^Epi(S) = K[Epi({1..k}, S)].
inline SetFunctor make_proj_epi(const CoeffRing& ring, unsigned trunc, unsigned k) {
  std::vector<size_t> dims(trunc + 1, 0);
  std::vector<std::vector<SetMapKey>> basis(trunc + 1);
  for (unsigned s = 1; s <= trunc; ++s) {
    basis[s] = enumerate_set_maps(SetCat::Epi, k, s);
    dims[s] = basis[s].size();
  }
  std::map<SetMapKey, ScalarMat> maps;
  for (unsigned s = 1; s <= trunc; ++s)
    for (unsigned t = 1; t <= trunc; ++t)
      for (const SetMapKey& km : enumerate_set_maps(SetCat::Epi, s, t)) {
        ScalarMat m(ring, dims[t], dims[s]);
        for (size_t j = 0; j < basis[s].size(); ++j) {
          SetMapKey comp = compose_set_maps(km, basis[s][j]);
          size_t pos =
              size_t(std::find(basis[t].begin(), basis[t].end(), comp) - basis[t].begin());
          require(pos < basis[t].size(), ErrorCode::VerificationFailed, "epi composite missing");
          m.at(pos, j) = Scalar::one(ring);
        }
        maps.emplace(km, std::move(m));
      }
  return SetFunctor(SetCat::Epi, ring, trunc, std::move(dims), std::move(maps),
                    "proj_epi:" + std::to_string(k));
}

// Natural transformation between set functors on the same category.
struct SetNat {
  std::vector<ScalarMat> at;  // indexed by object size (entries below obj_min unused)
};

inline bool is_natural(const SetFunctor& F, const SetFunctor& G, const SetNat& tau) {
  for (const SetMapKey& k : F.all_maps())
    if (!(tau.at[k.tgt] * F.map(k) == G.map(k) * tau.at[k.src])) return false;
  return true;
}

// epsilon: P_1^Fin -> const, [s] -> 1.
inline SetNat make_eps_fin(const SetFunctor& proj1, const SetFunctor& cst) {
  SetNat tau;
  tau.at.resize(proj1.trunc() + 1);
  for (unsigned s = 0; s <= proj1.trunc(); ++s) {
    ScalarMat m(proj1.ring(), 1, s);
    for (unsigned i = 0; i < s; ++i) m.at(0, i) = Scalar::one(proj1.ring());
    tau.at[s] = std::move(m);
  }
  (void)cst;
  return tau;
}

// P_1^Epi -> P_2^Epi: [h] -> [h o collapse], the Yoneda image of the
// surjection {1,2} -> {1}.
inline SetNat make_incl_epi12(const SetFunctor& p1, const SetFunctor& p2) {
  SetNat tau;
  tau.at.resize(p1.trunc() + 1);
  for (unsigned s = 1; s <= p1.trunc(); ++s) {
    auto b1 = enumerate_set_maps(SetCat::Epi, 1, s);
    auto b2 = enumerate_set_maps(SetCat::Epi, 2, s);
    ScalarMat m(p1.ring(), b2.size(), b1.size());
    for (size_t j = 0; j < b1.size(); ++j) {
      SetMapKey comp{2, uint8_t(s), {b1[j].img[0], b1[j].img[0]}};
      size_t pos = size_t(std::find(b2.begin(), b2.end(), comp) - b2.begin());
      require(pos < b2.size(), ErrorCode::VerificationFailed, "collapse composite missing");
      m.at(pos, j) = Scalar::one(p1.ring());
    }
    tau.at[s] = std::move(m);
  }
  (void)p2;
  return tau;
}

inline SetNat make_identity_nat(const SetFunctor& F) {
  SetNat tau;
  tau.at.resize(F.trunc() + 1);
  for (unsigned s = F.obj_min(); s <= F.trunc(); ++s)
    tau.at[s] = ScalarMat::identity(F.ring(), F.dim(s));
  return tau;
}

enum class SplitMode { Section, Retraction };

struct SplitOutcome {
  bool split = false;
  SetNat witness;  // mode Section: s with tau o s = id_G; Retraction: r with r o tau = id_F
  // infeasibility certificate: equations with nonzero multiplier
  std::vector<std::pair<std::string, Scalar>> certificate;
};

// Exact linear feasibility: unknowns are the entries of a natural
// transformation sigma: G -> F, constrained by naturality under every map in
// the truncation plus the one-sided identity. Split returns a re-verified
// witness; NoSplit returns the infeasible combination of equations.
inline SplitOutcome splitting_solver(const SetFunctor& F, const SetFunctor& G, const SetNat& tau,
                                     SplitMode mode) {
  require(F.cat() == G.cat() && F.trunc() == G.trunc() && F.ring() == G.ring(),
          ErrorCode::CtxMismatch, "functors live on different truncations");
  require(is_natural(F, G, tau), ErrorCode::NotNatural, "tau is not a natural transformation");
  const CoeffRing& ring = F.ring();
  unsigned trunc = F.trunc();

  // unknown layout: sigma[s] is dim F(s) x dim G(s)
  size_t total = 0;
  std::vector<size_t> off(trunc + 1, 0);
  for (unsigned s = F.obj_min(); s <= trunc; ++s) {
    off[s] = total;
    total += F.dim(s) * G.dim(s);
  }
  auto slot = [&](unsigned s, size_t i, size_t j) { return off[s] + i * G.dim(s) + j; };

  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  std::vector<std::string> labels;
  auto new_row = [&]() -> std::vector<Scalar>& {
    rows.emplace_back(total, Scalar::zero(ring));
    return rows.back();
  };

  // naturality: F(f) sigma[src] - sigma[tgt] G(f) = 0
  for (const SetMapKey& k : F.all_maps()) {
    const ScalarMat& Ff = F.map(k);
    const ScalarMat& Gf = G.map(k);
    for (size_t i = 0; i < F.dim(k.tgt); ++i)
      for (size_t j = 0; j < G.dim(k.src); ++j) {
        auto& row = new_row();
        for (size_t t = 0; t < F.dim(k.src); ++t)
          if (!Ff.at(i, t).is_zero()) row[slot(k.src, t, j)] += Ff.at(i, t);
        for (size_t t = 0; t < G.dim(k.tgt); ++t)
          if (!Gf.at(t, j).is_zero()) row[slot(k.tgt, i, t)] -= Gf.at(t, j);
        rhs.push_back(Scalar::zero(ring));
        labels.push_back("naturality[" + k.str() + "](" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
  }
  // identity condition
  for (unsigned s = F.obj_min(); s <= trunc; ++s) {
    const ScalarMat& t = tau.at[s];
    if (mode == SplitMode::Section) {
      // tau[s] * sigma[s] = I_{G(s)}
      for (size_t i = 0; i < G.dim(s); ++i)
        for (size_t j = 0; j < G.dim(s); ++j) {
          auto& row = new_row();
          for (size_t u = 0; u < F.dim(s); ++u)
            if (!t.at(i, u).is_zero()) row[slot(s, u, j)] += t.at(i, u);
          rhs.push_back(i == j ? Scalar::one(ring) : Scalar::zero(ring));
          labels.push_back("section_identity[obj " + std::to_string(s) + "](" + std::to_string(i) +
                           "," + std::to_string(j) + ")");
        }
    } else {
      // sigma[s] * tau[s] = I_{F(s)}
      for (size_t i = 0; i < F.dim(s); ++i)
        for (size_t j = 0; j < F.dim(s); ++j) {
          auto& row = new_row();
          for (size_t u = 0; u < G.dim(s); ++u)
            if (!t.at(u, j).is_zero()) row[slot(s, i, u)] += t.at(u, j);
          rhs.push_back(i == j ? Scalar::one(ring) : Scalar::zero(ring));
          labels.push_back("retraction_identity[obj " + std::to_string(s) + "](" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
  }

  ScalarMat sys(ring, rows.size(), total);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < total; ++j) sys.at(i, j) = rows[i][j];
  LinOutcome lin = solve_with_certificate(sys, rhs);

  SplitOutcome out;
  if (!lin.solution) {
    for (size_t i = 0; i < lin.certificate.size(); ++i)
      if (!lin.certificate[i].is_zero()) out.certificate.emplace_back(labels[i], lin.certificate[i]);
    return out;
  }
  out.split = true;
  out.witness.at.resize(trunc + 1);
  for (unsigned s = F.obj_min(); s <= trunc; ++s) {
    ScalarMat m(ring, F.dim(s), G.dim(s));
    for (size_t i = 0; i < F.dim(s); ++i)
      for (size_t j = 0; j < G.dim(s); ++j) m.at(i, j) = (*lin.solution)[slot(s, i, j)];
    out.witness.at[s] = std::move(m);
  }
  // re-verify the witness
  require(is_natural(G, F, out.witness), ErrorCode::VerificationFailed, "witness is not natural");
  for (unsigned s = F.obj_min(); s <= trunc; ++s) {
    if (mode == SplitMode::Section)
      require(tau.at[s] * out.witness.at[s] == ScalarMat::identity(ring, G.dim(s)),
              ErrorCode::VerificationFailed, "witness is not a section");
    else
      require(out.witness.at[s] * tau.at[s] == ScalarMat::identity(ring, F.dim(s)),
              ErrorCode::VerificationFailed, "witness is not a retraction");
  }
  return out;
}

}  // namespace monodec
