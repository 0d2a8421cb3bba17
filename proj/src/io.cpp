#include "nilmat/io.hpp"

#include <stdexcept>

namespace nilmat::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) bad(ctx + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(ctx + ": \"" + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::vector<Integer>> rows_from_json(const Json& j, const std::string& ctx) {
  const std::size_t n = size_field(j, "n", ctx);
  const Json& rows = field(j, "rows", ctx);
  if (!rows.is_array() || rows.size() != n) bad(ctx + ": expected " + std::to_string(n) + " rows");
  std::vector<std::vector<Integer>> out;
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != n) bad(ctx + ": every row needs " + std::to_string(n) + " entries");
    std::vector<Integer> row;
    for (const auto& v : r) row.push_back(parse_integer(v));
    out.push_back(std::move(row));
  }
  return out;
}

template <class M>
Json square_to_json(const M& m) {
  Json rows = Json::array();
  for (std::size_t i = 1; i <= m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= m.size(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.size()}, {"rows", std::move(rows)}};
}

}  // namespace

std::string rational_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) bad("not a rational: \"" + s + "\"");
  r.canonicalize();
  return r;
}

Integer parse_integer(const Json& v) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    Integer z;
    const std::string s = v.get<std::string>();
    if (s.empty() || z.set_str(s, 10) != 0) bad("not a decimal integer: \"" + s + "\"");
    return z;
  }
  bad("expected an integer or decimal string, got " + v.dump());
}

Json to_json(const UnitriangularMatrix& m) { return square_to_json(m); }
Json to_json(const IntegerMatrix& m) { return square_to_json(m); }

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 1; i <= m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= m.size(); ++j)
      row.push_back(m(i, j).get_den() == 1 ? m(i, j).get_num().get_str() : rational_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.size()}, {"rows", std::move(rows)}};
}

UnitriangularMatrix unitriangular_from_json(const Json& j) {
  return UnitriangularMatrix::from_rows(rows_from_json(j, "matrix"));
}

IntegerMatrix integer_matrix_from_json(const Json& j) {
  const auto rows = rows_from_json(j, "matrix");
  IntegerMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows.size(); ++k) m(i + 1, k + 1) = rows[i][k];
  return m;
}

Json to_json(const NilpotentPresentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relations()) {
    Json word = Json::array();
    for (const auto& e : r.word.exponents()) word.push_back(e.get_str());
    rels.push_back(Json{{"j", r.j + 1}, {"i", r.i + 1}, {"word", std::move(word)}});
  }
  return Json{{"M", p.generator_count()}, {"weights", p.weights()}, {"relations", std::move(rels)}, {"label", p.label()}};
}

NilpotentPresentation presentation_from_json(const Json& j) {
  const std::string ctx = "presentation";
  const std::size_t m = size_field(j, "M", ctx);
  if (m == 0) bad(ctx + ": M must be positive");
  const Json& w = field(j, "weights", ctx);
  if (!w.is_array() || w.size() != m) bad(ctx + ": expected " + std::to_string(m) + " weights");
  std::vector<unsigned> weights;
  for (const auto& v : w) {
    if (!v.is_number_integer() || v.get<long long>() < 1) bad(ctx + ": weights must be positive integers");
    weights.push_back(v.get<unsigned>());
  }
  const Json& rels = field(j, "relations", ctx);
  if (!rels.is_array()) bad(ctx + ": relations must be an array");
  std::vector<Relation> relations;
  for (const auto& r : rels) {
    const std::size_t rj = size_field(r, "j", "relation"), ri = size_field(r, "i", "relation");
    if (ri < 1 || rj <= ri || rj > m) bad("relation: need 1 <= i < j <= M");
    const Json& word = field(r, "word", "relation");
    if (!word.is_array() || word.size() != m) bad("relation: word needs " + std::to_string(m) + " exponents");
    std::vector<Integer> exps;
    for (const auto& e : word) exps.push_back(parse_integer(e));
    relations.push_back({rj - 1, ri - 1, NormalWord(std::move(exps))});
  }
  std::string label = "file";
  if (j.contains("label")) {
    if (!j.at("label").is_string()) bad(ctx + ": label must be a string");
    label = j.at("label").get<std::string>();
  }
  return NilpotentPresentation(std::move(weights), std::move(relations), label);
}

Json to_json(const SubgroupGens& h) {
  Json gens = Json::array();
  for (const auto& g : h.generators()) gens.push_back(to_json(g));
  return Json{{"N", h.ambient()}, {"generators", std::move(gens)}};
}

SubgroupGens subgroup_from_json(const Json& j) {
  const std::size_t n = size_field(j, "N", "subgroup");
  if (n == 0) bad("subgroup: N must be positive");
  const Json& gens = field(j, "generators", "subgroup");
  if (!gens.is_array()) bad("subgroup: generators must be an array");
  std::vector<UnitriangularMatrix> out;
  for (const auto& g : gens) {
    out.push_back(unitriangular_from_json(g));
    if (out.back().size() != n) bad("subgroup: generator size differs from N");
  }
  return SubgroupGens(n, out);
}

Json to_json(const DistortionReport& r) {
  Json strata = Json::array();
  for (const auto& s : r.strata) strata.push_back(Json{{"m", s.m}, {"t", s.t}, {"witness", to_json(s.witness)}});
  return Json{{"d_H", rational_string(r.d_H)}, {"witness", to_json(r.witness)}, {"strata", std::move(strata)}};
}

Json to_json(const EmbeddingResult& r, const JenningsBasis& basis) {
  Json ordering = Json::array();
  for (const auto& v : basis.monomials()) ordering.push_back(v.exponents);
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  return Json{{"d", r.d},
              {"ordering", std::move(ordering)},
              {"labels", r.ordering},
              {"generators", std::move(gens)},
              {"unitriangular", r.unitriangular},
              {"relators_ok", r.relators_ok}};
}

Json to_json(const NickelEmbedding& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  return Json{{"d", r.d},
              {"ordering", r.permutation},
              {"labels", r.ordering},
              {"generators", std::move(gens)},
              {"unitriangular", r.unitriangular},
              {"relators_ok", r.relators_ok},
              {"integral", r.integral}};
}

Json to_json(const FunctionModule& m, const NilpotentPresentation& p) {
  const auto names = coordinate_names(p);
  Json basis = Json::array();
  for (const auto& f : m.basis()) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back(Json{{"exponents", e}, {"coefficient", rational_string(c)}});
    basis.push_back(std::move(terms));
  }
  Json text = Json::array();
  for (const auto& f : m.basis()) text.push_back(to_string(f, names));
  Json gens = Json::array();
  for (const auto& g : m.generators()) gens.push_back(to_json(g));
  return Json{{"labels", m.labels()}, {"functions", std::move(text)}, {"basis", std::move(basis)},
              {"generators", std::move(gens)}};
}

Json to_json(const OrderingReport& r) {
  Json out{{"permutation", r.permutation}, {"unitriangular", r.unitriangular}};
  if (r.unitriangular) {
    out["weights"] = r.weights;
    out["d_H"] = rational_string(r.d_H);
  }
  return out;
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(what + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace nilmat::io
