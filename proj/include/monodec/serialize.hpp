#pragma once

// JSON serialization for the exact algebra types. Formats follow the
// library's canonical orderings so serialized output is reproducible:
// matrices as row-major digit strings under a (q, rows, cols) header,
// ring elements as coefficient lists in canonical key order, functors as
// dimension vectors plus per-map matrices keyed by the serialized map.

#include <json.hpp>

#include <string>

#include "monodec/genrep.hpp"
#include "monodec/kovacs.hpp"
#include "monodec/monoidring.hpp"
#include "monodec/morita.hpp"
#include "monodec/rook.hpp"

namespace monodec {

using ordered_json = nlohmann::ordered_json;

inline ordered_json mat_to_json(const Mat& m) {
  ordered_json j;
  j["q"] = m.field().q();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["digits"] = m.digits();
  return j;
}
inline Mat mat_from_json(const ordered_json& j) {
  const GaloisField& f = GaloisField::of(j.at("q").get<unsigned>());
  return Mat::from_digits(f, j.at("rows").get<unsigned>(), j.at("cols").get<unsigned>(),
                          j.at("digits").get<std::string>());
}

inline ordered_json ring_elem_to_json(const RingElem& x) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : x.terms()) {
    ordered_json t;
    t["matrix"] = mat_to_json(m);
    t["coefficient"] = c.str();
    terms.push_back(t);
  }
  ordered_json j;
  j["q"] = x.field().q();
  j["coeff_ring"] = x.ring().str();
  j["src"] = x.src();
  j["tgt"] = x.tgt();
  j["terms"] = terms;
  return j;
}

inline ordered_json group_alg_to_json(const GroupAlgElem& x) {
  ordered_json terms = ordered_json::array();
  for (const auto& [g, c] : x.terms()) {
    ordered_json t;
    t["matrix"] = mat_to_json(g);
    t["coefficient"] = c.str();
    terms.push_back(t);
  }
  return terms;
}

inline ordered_json singular_unit_to_json(const SingularUnit& u) {
  ordered_json j;
  j["q"] = u.field->q();
  j["n"] = u.n;
  j["coeff_ring"] = u.ring.str();
  ordered_json orbits = ordered_json::array();
  for (size_t i = 0; i < u.orbits.size(); ++i) {
    ordered_json o;
    o["representative"] = mat_to_json(u.orbits[i].front());
    o["size"] = u.orbits[i].size();
    o["coefficient"] = u.coeffs[i].str();
    orbits.push_back(o);
  }
  j["orbits"] = orbits;
  j["eS"] = ring_elem_to_json(u.eS);
  j["eG"] = ring_elem_to_json(u.eG);
  return j;
}

inline ordered_json block_elem_to_json(const BlockElem& b) {
  ordered_json j;
  j["q"] = b.field->q();
  j["n"] = b.n;
  j["coeff_ring"] = b.ring.str();
  ordered_json blocks = ordered_json::array();
  for (unsigned k = 0; k < b.blocks.size(); ++k) {
    ordered_json blk;
    blk["k"] = k;
    blk["size"] = b.blocks[k].size();
    ordered_json mat = ordered_json::array();
    for (const auto& row : b.blocks[k]) {
      ordered_json r = ordered_json::array();
      for (const GroupAlgElem& e : row) r.push_back(group_alg_to_json(e));
      mat.push_back(r);
    }
    blk["entries"] = mat;
    blocks.push_back(blk);
  }
  j["blocks"] = blocks;
  return j;
}

inline ordered_json rook_elem_to_json(const RookElem& x) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : x.terms()) {
    ordered_json t;
    t["map"] = m.str();
    t["coefficient"] = c.str();
    terms.push_back(t);
  }
  ordered_json j;
  j["n"] = x.n();
  j["coeff_ring"] = x.ring().str();
  j["terms"] = terms;
  return j;
}

// ---------------------------------------------------------------------------
// Functor save/load. Maps are keyed "m->n:<digits>"; loading re-verifies
// functoriality (exhaustive for N <= 2, seeded samples for larger).
// ---------------------------------------------------------------------------

inline ordered_json functor_to_json(const TruncatedFunctor& fn, uint64_t budget = kDefaultBudget) {
  const GaloisField& f = fn.field();
  ordered_json j;
  j["schema"] = 1;
  j["type"] = "truncated_functor";
  j["q"] = f.q();
  j["coeff_ring"] = fn.ring().str();
  j["N"] = fn.trunc();
  j["name"] = fn.name();
  j["dims"] = fn.dims();
  ordered_json maps = ordered_json::object();
  for (unsigned m = 0; m <= fn.trunc(); ++m)
    for (unsigned n = 0; n <= fn.trunc(); ++n)
      for (const Mat& a : enumerate_hom(f, n, m, budget)) {
        SparseMat sm = fn.map(m, n, a);
        ordered_json entries = ordered_json::array();
        for (size_t j2 = 0; j2 < sm.cols(); ++j2)
          for (const auto& [i, c] : sm.column(j2))
            entries.push_back(ordered_json::array({j2, i, c.str()}));
        maps[std::to_string(m) + "->" + std::to_string(n) + ":" + a.digits()] = entries;
      }
  j["maps"] = maps;
  return j;
}

inline FunctorPtr functor_from_json(const ordered_json& j, uint64_t budget = kDefaultBudget) {
  require(j.value("type", "") == std::string("truncated_functor"), ErrorCode::UsageError,
          "not a truncated functor document");
  const GaloisField& f = GaloisField::of(j.at("q").get<unsigned>());
  CoeffRing ring = CoeffRing::parse(j.at("coeff_ring").get<std::string>());
  unsigned trunc = j.at("N").get<unsigned>();
  std::vector<size_t> dims = j.at("dims").get<std::vector<size_t>>();
  auto table = std::make_shared<std::map<std::tuple<unsigned, unsigned, uint64_t>, SparseMat>>();
  for (auto it = j.at("maps").begin(); it != j.at("maps").end(); ++it) {
    const std::string& key = it.key();
    size_t arrow = key.find("->");
    size_t colon = key.find(':', arrow);
    require(arrow != std::string::npos && colon != std::string::npos, ErrorCode::UsageError,
            "bad map key '" + key + "'");
    unsigned m = unsigned(std::stoul(key.substr(0, arrow)));
    unsigned n = unsigned(std::stoul(key.substr(arrow + 2, colon - arrow - 2)));
    require(m <= trunc && n <= trunc, ErrorCode::UsageError, "map outside truncation");
    Mat a = Mat::from_digits(f, n, m, key.substr(colon + 1));
    SparseMat sm(dims[n], dims[m]);
    for (const auto& e : it.value()) {
      size_t col = e.at(0).get<size_t>();
      size_t row = e.at(1).get<size_t>();
      sm.set_entry(col, row, Scalar::parse(ring, e.at(2).get<std::string>()));
    }
    sm.finish();
    table->emplace(std::make_tuple(m, n, a.encode()), std::move(sm));
  }
  auto gen = [table](unsigned m, unsigned n, const Mat& a) {
    auto it = table->find(std::make_tuple(m, n, a.encode()));
    require(it != table->end(), ErrorCode::UsageError, "loaded functor is missing a map");
    return it->second;
  };
  std::string name = j.value("name", "loaded");
  auto fn = std::make_shared<TruncatedFunctor>(f, ring, trunc, std::move(dims), name, std::move(gen),
                                               false);
  CheckList fc = fn->verify_functoriality(20140501, 120, budget);
  require(fc.all_pass, ErrorCode::VerificationFailed, "loaded functor failed functoriality");
  return fn;
}

inline ordered_json set_functor_to_json(const SetFunctor& fn) {
  ordered_json j;
  j["schema"] = 1;
  j["type"] = "set_functor";
  j["category"] = fn.cat() == SetCat::Fin ? "fin" : "epi";
  j["coeff_ring"] = fn.ring().str();
  j["N"] = fn.trunc();
  j["name"] = fn.name();
  ordered_json dims = ordered_json::array();
  for (unsigned s = 0; s <= fn.trunc(); ++s)
    dims.push_back(s < fn.obj_min() ? 0 : fn.dim(s));
  j["dims"] = dims;
  ordered_json maps = ordered_json::object();
  for (const SetMapKey& k : fn.all_maps()) {
    const ScalarMat& m = fn.map(k);
    ordered_json entries = ordered_json::array();
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c)
        if (!m.at(r, c).is_zero()) entries.push_back(ordered_json::array({c, r, m.at(r, c).str()}));
    maps[k.str()] = entries;
  }
  j["maps"] = maps;
  return j;
}

inline SetFunctor set_functor_from_json(const ordered_json& j) {
  require(j.value("type", "") == std::string("set_functor"), ErrorCode::UsageError,
          "not a set functor document");
  SetCat cat = j.at("category").get<std::string>() == "fin" ? SetCat::Fin : SetCat::Epi;
  CoeffRing ring = CoeffRing::parse(j.at("coeff_ring").get<std::string>());
  unsigned trunc = j.at("N").get<unsigned>();
  std::vector<size_t> dims = j.at("dims").get<std::vector<size_t>>();
  std::map<SetMapKey, ScalarMat> maps;
  for (auto it = j.at("maps").begin(); it != j.at("maps").end(); ++it) {
    const std::string& key = it.key();
    size_t arrow = key.find("->");
    size_t colon = key.find(':', arrow);
    SetMapKey k;
    k.src = uint8_t(std::stoul(key.substr(0, arrow)));
    k.tgt = uint8_t(std::stoul(key.substr(arrow + 2, colon - arrow - 2)));
    std::string imgs = key.substr(colon + 1);
    size_t pos = 0;
    while (pos < imgs.size()) {
      size_t comma = imgs.find(',', pos);
      if (comma == std::string::npos) comma = imgs.size();
      k.img.push_back(uint8_t(std::stoul(imgs.substr(pos, comma - pos))));
      pos = comma + 1;
    }
    ScalarMat m(ring, dims[k.tgt], dims[k.src]);
    for (const auto& e : it.value())
      m.at(e.at(1).get<size_t>(), e.at(0).get<size_t>()) =
          Scalar::parse(ring, e.at(2).get<std::string>());
    maps.emplace(std::move(k), std::move(m));
  }
  // the SetFunctor constructor re-verifies functoriality on load
  return SetFunctor(cat, ring, trunc, std::move(dims), std::move(maps), j.value("name", "loaded"));
}

}  // namespace monodec
