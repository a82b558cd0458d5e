#include "fmbasis/serialize.hpp"

#include "fmbasis/error.hpp"

namespace fmbasis::io {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Errc::parse_error, std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad JSON field '") + key + "': " + e.what());
  }
}

void check_schema(const json& j) {
  const int v = get<int>(j, "schema_version");
  if (v != kSchemaVersion)
    fail(Errc::unsupported, "schema_version " + std::to_string(v) + " (expected " + std::to_string(kSchemaVersion) + ")");
}

json witness_to_json(const fmb::Witness& w) {
  std::vector<std::uint32_t> codes;
  for (auto s : w.coefficients) codes.push_back(s.code);
  return {{"kind", fmb::to_string(w.kind)}, {"members", w.members}, {"coefficients", codes}, {"level", w.level},
          {"count", w.count}, {"expected", w.expected}, {"message", w.message}};
}

fmb::WitnessKind witness_kind(const std::string& s) {
  using K = fmb::WitnessKind;
  for (K k : {K::cardinality, K::dependence, K::closure, K::level_basis, K::property_ii})
    if (s == fmb::to_string(k)) return k;
  fail(Errc::parse_error, "unknown witness kind '" + s + "'");
}

fmb::Witness witness_from_json(const json& j) {
  fmb::Witness w;
  w.kind = witness_kind(get<std::string>(j, "kind"));
  w.members = get<std::vector<std::size_t>>(j, "members");
  for (auto c : get<std::vector<std::uint32_t>>(j, "coefficients")) w.coefficients.push_back(ff::Scalar{c});
  w.level = get<unsigned>(j, "level");
  w.count = get<std::size_t>(j, "count");
  w.expected = get<std::size_t>(j, "expected");
  w.message = get<std::string>(j, "message");
  return w;
}

std::shared_ptr<const galg::GroupAlgebra> algebra_for(const json& j) {
  const auto group = grp::build_group(grp::parse_group(get<std::string>(j, "group")));
  return galg::GroupAlgebra::create(group, ff::Field(ff::parse_field(get<std::string>(j, "field"))));
}

}  // namespace

json scalar_to_json(const ff::Field& K, ff::Scalar s) {
  if (K.degree() == 1) return s.code;
  return K.coeffs(s);
}

ff::Scalar scalar_from_json(const ff::Field& K, const json& j) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (K.degree() != 1 && (v < 0 || v >= static_cast<long long>(K.size())))
      fail(Errc::parse_error, "scalar code out of range");
    return K.degree() == 1 ? K.from_int(v) : K.element(static_cast<std::uint32_t>(v));
  }
  if (j.is_array()) return K.from_coeffs(j.get<std::vector<unsigned>>());
  fail(Errc::parse_error, "scalar must be an integer or a coefficient list");
}

json field_to_json(const ff::FieldSpec& spec) {
  return {{"literal", spec.literal()},
          {"characteristic", spec.characteristic},
          {"degree", spec.degree},
          {"size", spec.size()},
          {"modulus", spec.modulus}};
}

ff::FieldSpec field_from_json(const json& j) {
  if (j.is_string()) return ff::parse_field(j.get<std::string>());
  return ff::parse_field(get<std::string>(j, "literal"));
}

json element_to_json(const galg::Element& e) {
  json coeffs = json::array();
  for (auto s : e.coeffs()) coeffs.push_back(scalar_to_json(e.algebra().field(), s));
  return coeffs;
}

galg::Element element_from_json(const std::shared_ptr<const galg::GroupAlgebra>& alg, const json& j) {
  if (!j.is_array()) fail(Errc::parse_error, "element must be a coefficient array");
  galg::Row r;
  for (const auto& x : j) r.push_back(scalar_from_json(alg->field(), x));
  return alg->from_coeffs(std::move(r));
}

json group_to_json(const grp::Group& g) {
  const std::size_t n = g.order();
  json table = json::array();
  for (grp::Index x = 0; x < n; ++x) {
    const auto row = g.row(x);
    table.push_back(std::vector<grp::Index>(row.begin(), row.end()));
  }
  const auto gens = g.generators();
  json j = {{"literal", g.spec().literal()},
            {"order", n},
            {"prime", g.prime()},
            {"labels", g.labels()},
            {"table", table},
            {"generators", std::vector<grp::Index>(gens.begin(), gens.end())},
            {"gen_a", g.gen_a()}};
  j["gen_b"] = g.gen_b() ? json(*g.gen_b()) : json(nullptr);
  return j;
}

grp::Group group_from_json(const json& j) {
  grp::Group g = grp::build_group(grp::parse_group(get<std::string>(j, "literal")));
  if (j.contains("table")) {
    const auto table = get<std::vector<std::vector<grp::Index>>>(j, "table");
    if (table.size() != g.order()) fail(Errc::mismatch, "group table size differs from the literal");
    for (grp::Index x = 0; x < g.order(); ++x) {
      const auto row = g.row(x);
      if (!std::equal(row.begin(), row.end(), table[x].begin(), table[x].end()))
        fail(Errc::mismatch, "group table differs from the literal");
    }
  }
  return g;
}

json filtration_to_json(const galg::Filtration& f) {
  const auto& alg = f.algebra();
  json levels = json::array();
  for (unsigned k = 0; k <= f.length(); ++k) {
    json rows = json::array();
    for (const auto& r : f.level(k).rows()) {
      json row = json::array();
      for (auto s : r) row.push_back(scalar_to_json(alg.field(), s));
      rows.push_back(std::move(row));
    }
    levels.push_back({{"level", k}, {"dim", f.dims()[k]}, {"basis", std::move(rows)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"group", alg.group().spec().literal()},
          {"field", alg.field().spec().literal()},
          {"length", f.length()},
          {"dims", f.dims()},
          {"quotient_dims", f.quotient_dims()},
          {"levels", std::move(levels)}};
}

galg::Filtration filtration_from_json(const std::shared_ptr<const galg::GroupAlgebra>& alg, const json& j) {
  check_schema(j);
  if (get<std::string>(j, "group") != alg->group().spec().literal() ||
      get<std::string>(j, "field") != alg->field().spec().literal())
    fail(Errc::mismatch, "filtration document belongs to another algebra");
  std::vector<galg::Echelon> levels;
  for (const auto& lv : get<json>(j, "levels")) {
    galg::Echelon e(alg->field(), alg->dim());
    for (const auto& row : get<json>(lv, "basis")) {
      const galg::Element x = element_from_json(alg, row);
      e.insert(x.coeffs());
    }
    if (e.rank() != get<std::size_t>(lv, "dim")) fail(Errc::parse_error, "filtration level basis is dependent");
    levels.push_back(std::move(e));
  }
  galg::Filtration f(alg, std::move(levels));
  if (f.dims() != get<std::vector<std::size_t>>(j, "dims")) fail(Errc::parse_error, "filtration dims disagree");
  return f;
}

json basis_to_json(const fmb::BasisCandidate& b) {
  const ff::Field& K = b.alg->field();
  json params = json::array();
  for (const auto& p : b.params) params.push_back({{"name", p.name}, {"value", scalar_to_json(K, p.value)}});
  json members = json::array();
  for (std::size_t i = 0; i < b.size(); ++i)
    members.push_back({{"label", b.labels[i]}, {"coeffs", element_to_json(b.elements[i])}});
  return {{"schema_version", kSchemaVersion},
          {"group", b.alg->group().spec().literal()},
          {"field", K.spec().literal()},
          {"params", std::move(params)},
          {"members", std::move(members)}};
}

fmb::BasisCandidate basis_from_json(const json& j) { return basis_from_json(j, nullptr); }

fmb::BasisCandidate basis_from_json(const json& j, const std::shared_ptr<const galg::GroupAlgebra>& alg) {
  check_schema(j);
  std::shared_ptr<const galg::GroupAlgebra> a = alg;
  if (!a || get<std::string>(j, "group") != a->group().spec().literal() ||
      get<std::string>(j, "field") != a->field().spec().literal())
    a = algebra_for(j);
  fmb::BasisCandidate b{a, {}, {}, {}};
  if (j.contains("params"))
    for (const auto& p : j.at("params"))
      b.params.push_back({get<std::string>(p, "name"), scalar_from_json(a->field(), get<json>(p, "value"))});
  for (const auto& m : get<json>(j, "members"))
    b.add(m.contains("label") ? m.at("label").get<std::string>() : "b" + std::to_string(b.size()),
          element_from_json(a, get<json>(m, "coeffs")));
  return b;
}

json report_to_json(const fmb::VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj = {{"name", c.name},         {"passed", c.passed},     {"informational", c.informational},
               {"detail", c.detail},     {"values", c.values},     {"expected", c.expected}};
    cj["witness"] = c.witness ? witness_to_json(*c.witness) : json(nullptr);
    checks.push_back(std::move(cj));
  }
  json levels = json::array();
  for (const auto& l : r.member_levels) levels.push_back(l ? json(*l) : json(nullptr));
  json j = {{"schema_version", kSchemaVersion},
            {"pass", r.pass},
            {"checks", std::move(checks)},
            {"labels", r.labels},
            {"member_levels", std::move(levels)},
            {"quotient_dims", r.quotient_dims}};
  j["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
  return j;
}

fmb::VerificationReport report_from_json(const json& j) {
  check_schema(j);
  fmb::VerificationReport r;
  r.pass = get<bool>(j, "pass");
  for (const auto& cj : get<json>(j, "checks")) {
    fmb::CheckResult c;
    c.name = get<std::string>(cj, "name");
    c.passed = get<bool>(cj, "passed");
    c.informational = get<bool>(cj, "informational");
    c.detail = get<std::string>(cj, "detail");
    c.values = get<std::vector<std::size_t>>(cj, "values");
    c.expected = get<std::vector<std::size_t>>(cj, "expected");
    if (!cj.at("witness").is_null()) c.witness = witness_from_json(cj.at("witness"));
    r.checks.push_back(std::move(c));
  }
  r.labels = get<std::vector<std::string>>(j, "labels");
  for (const auto& l : get<json>(j, "member_levels"))
    r.member_levels.push_back(l.is_null() ? std::nullopt : std::optional<unsigned>(l.get<unsigned>()));
  r.quotient_dims = get<std::vector<std::size_t>>(j, "quotient_dims");
  if (!get<json>(j, "witness").is_null()) r.witness = witness_from_json(j.at("witness"));
  return r;
}

json search_to_json(const search::SearchReport& r) {
  json found = json::array();
  for (const auto& b : r.found) found.push_back(basis_to_json(b));
  return {{"schema_version", kSchemaVersion},
          {"strategy", search::to_string(r.strategy)},
          {"shard", {{"index", r.shard_index}, {"count", r.shard_count}}},
          {"examined", r.examined},
          {"pruned", r.pruned},
          {"pruned_at_depth", r.pruned_at_depth},
          {"found", std::move(found)},
          {"hits", r.hits},
          {"exhausted", r.exhausted},
          {"elapsed_seconds", r.elapsed_seconds},
          {"space_size", r.space_size},
          {"covered", r.covered},
          {"frames", r.frames},
          {"incomplete_frames", r.incomplete_frames},
          {"enumeration", r.enumeration}};
}

search::SearchReport search_from_json(const json& j) {
  check_schema(j);
  search::SearchReport r;
  r.strategy = search::parse_strategy(get<std::string>(j, "strategy"));
  const json shard = get<json>(j, "shard");
  r.shard_index = get<unsigned>(shard, "index");
  r.shard_count = get<unsigned>(shard, "count");
  r.examined = get<std::uint64_t>(j, "examined");
  r.pruned = get<std::map<std::string, std::uint64_t>>(j, "pruned");
  r.pruned_at_depth = get<std::vector<std::uint64_t>>(j, "pruned_at_depth");
  std::shared_ptr<const galg::GroupAlgebra> alg;
  for (const auto& b : get<json>(j, "found")) {
    r.found.push_back(basis_from_json(b, alg));
    alg = r.found.back().alg;
  }
  r.hits = get<std::uint64_t>(j, "hits");
  r.exhausted = get<bool>(j, "exhausted");
  r.elapsed_seconds = get<double>(j, "elapsed_seconds");
  r.space_size = get<std::string>(j, "space_size");
  r.covered = get<std::string>(j, "covered");
  r.frames = get<std::uint64_t>(j, "frames");
  r.incomplete_frames = get<std::uint64_t>(j, "incomplete_frames");
  r.enumeration = get<std::string>(j, "enumeration");
  return r;
}

}  // namespace fmbasis::io
