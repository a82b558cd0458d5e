#include "fmbasis.h"

#include <cstring>
#include <string>

#include "fmbasis/error.hpp"
#include "fmbasis/expr.hpp"
#include "fmbasis/serialize.hpp"

using namespace fmbasis;
using io::json;

struct fmb_field {
  ff::FieldSpec spec;
  ff::Field field;
};

struct fmb_group {
  grp::Group group;
};

struct fmb_basis {
  fmb::BasisCandidate basis;
};

namespace {

thread_local std::string last_error;

fmb_status status_of(Errc e) {
  switch (e) {
    case Errc::parse_error: return FMB_ERR_PARSE;
    case Errc::invalid_argument: return FMB_ERR_INVALID;
    case Errc::unsupported: return FMB_ERR_UNSUPPORTED;
    case Errc::mismatch: return FMB_ERR_MISMATCH;
    case Errc::internal: return FMB_ERR_INTERNAL;
  }
  return FMB_ERR_INTERNAL;
}

template <class Fn>
fmb_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return FMB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return FMB_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FMB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FMB_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  if (out) *out = dup(j.dump(2));
}

std::shared_ptr<const galg::GroupAlgebra> algebra(const fmb_group* g, const fmb_field* f) {
  return galg::GroupAlgebra::create(g->group, f->field);
}

}  // namespace

extern "C" {

const char* fmb_version(void) { return "1.0.0"; }

int fmb_schema_version(void) { return io::kSchemaVersion; }

const char* fmb_last_error(void) { return last_error.c_str(); }

void fmb_string_free(char* s) { std::free(s); }

fmb_status fmb_field_parse(const char* literal, fmb_field** out) {
  if (!literal || !out) return FMB_ERR_NULL;
  return guarded([&] {
    ff::FieldSpec spec = ff::parse_field(literal);
    ff::Field field(spec);
    *out = new fmb_field{std::move(spec), std::move(field)};
  });
}

void fmb_field_free(fmb_field* f) { delete f; }

fmb_status fmb_field_json(const fmb_field* f, char** out) {
  if (!f || !out) return FMB_ERR_NULL;
  return guarded([&] {
    json j = io::field_to_json(f->spec);
    j["schema_version"] = io::kSchemaVersion;
    if (auto w = f->field.primitive_cube_root()) j["primitive_cube_root"] = io::scalar_to_json(f->field, *w);
    emit(j, out);
  });
}

fmb_status fmb_group_parse(const char* literal, size_t max_order, fmb_group** out) {
  if (!literal || !out) return FMB_ERR_NULL;
  return guarded([&] {
    grp::BuildOptions opts;
    if (max_order) opts.max_order = max_order;
    *out = new fmb_group{grp::build_group(grp::parse_group(literal), opts)};
  });
}

void fmb_group_free(fmb_group* g) { delete g; }

size_t fmb_group_order(const fmb_group* g) { return g ? g->group.order() : 0; }

fmb_status fmb_group_json(const fmb_group* g, char** out) {
  if (!g || !out) return FMB_ERR_NULL;
  return guarded([&] {
    const grp::Group& G = g->group;
    json j = io::group_to_json(G);
    j["schema_version"] = io::kSchemaVersion;
    j["is_abelian"] = G.is_abelian();
    std::vector<unsigned> orders;
    for (grp::Index x = 0; x < G.order(); ++x) orders.push_back(grp::element_order(G, x));
    j["element_orders"] = orders;
    if (G.gen_b()) j["commutator_ba"] = G.label(grp::commutator(G, *G.gen_b(), G.gen_a()));
    emit(j, out);
  });
}

fmb_status fmb_filtration_json(const fmb_group* g, const fmb_field* f, const char* element, char** out) {
  if (!g || !f || !out) return FMB_ERR_NULL;
  return guarded([&] {
    auto alg = algebra(g, f);
    const auto F = galg::compute_filtration(alg);
    json j = io::filtration_to_json(F);
    json ds = json::array();
    for (unsigned n = 1; n <= F.length(); ++n) {
      const auto d = galg::dimension_subgroup(F, n);
      std::vector<std::string> labels;
      for (auto x : d.members) labels.push_back(alg->group().label(x));
      ds.push_back({{"n", n}, {"order", d.members.size()}, {"members", labels}});
    }
    j["dimension_subgroups"] = ds;
    if (element) {
      const auto x = expr::parse_element(alg, element);
      json e = {{"expression", element}, {"coeffs", io::element_to_json(x)}};
      const auto lvl = F.level_of(x);
      e["level"] = lvl ? json(*lvl) : json(nullptr);
      if (lvl) {
        const auto lq = F.leading_quotient(x);
        json coords = json::array();
        for (auto s : lq.coords) coords.push_back(io::scalar_to_json(alg->field(), s));
        e["leading_quotient"] = coords;
      }
      j["element"] = e;
    }
    emit(j, out);
  });
}

fmb_status fmb_basis_construct(const fmb_group* g, const fmb_field* f, const char* name, const char* params_json,
                               fmb_basis** out) {
  if (!g || !f || !name || !out) return FMB_ERR_NULL;
  return guarded([&] {
    auto alg = algebra(g, f);
    std::vector<fmb::Param> params;
    if (params_json && *params_json) {
      const json p = json::parse(params_json);
      if (!p.is_object()) fail(Errc::parse_error, "construction parameters must be a JSON object");
      for (const auto& [k, v] : p.items()) {
        const ff::Scalar s = v.is_string() ? expr::parse_scalar(alg->field(), v.get<std::string>())
                                           : io::scalar_from_json(alg->field(), v);
        params.push_back({k, s});
      }
    }
    *out = new fmb_basis{fmb::construct(alg, name, params)};
  });
}

fmb_status fmb_basis_from_json(const char* text, fmb_basis** out) {
  if (!text || !out) return FMB_ERR_NULL;
  return guarded([&] { *out = new fmb_basis{io::basis_from_json(json::parse(text))}; });
}

fmb_status fmb_basis_to_json(const fmb_basis* b, char** out) {
  if (!b || !out) return FMB_ERR_NULL;
  return guarded([&] { emit(io::basis_to_json(b->basis), out); });
}

size_t fmb_basis_size(const fmb_basis* b) { return b ? b->basis.size() : 0; }

void fmb_basis_free(fmb_basis* b) { delete b; }

fmb_status fmb_verify(const fmb_basis* b, int* pass, char** out) {
  if (!b) return FMB_ERR_NULL;
  return guarded([&] {
    const auto rep = fmb::verify(b->basis);
    if (pass) *pass = rep.pass ? 1 : 0;
    json j = io::report_to_json(rep);
    j["group"] = b->basis.alg->group().spec().literal();
    j["field"] = b->basis.alg->field().spec().literal();
    emit(j, out);
  });
}

void fmb_search_options_init(fmb_search_options* o) {
  if (!o) return;
  const search::SearchConfig d;
  o->strategy = FMB_STRATEGY_STRUCTURED;
  o->shard_index = d.shard_index;
  o->shard_count = d.shard_count;
  o->budget = d.budget;
  o->time_limit_ms = 0;
  o->record_all = 0;
  o->jobs = d.jobs;
  o->max_order = d.max_order;
}

fmb_status fmb_search(const fmb_group* g, const fmb_field* f, const fmb_search_options* opts, int* exhausted,
                      size_t* found, char** out) {
  if (!g || !f) return FMB_ERR_NULL;
  return guarded([&] {
    search::SearchConfig cfg;
    if (opts) {
      if (opts->strategy != FMB_STRATEGY_STRUCTURED && opts->strategy != FMB_STRATEGY_BRUTE_PAIRS)
        fail(Errc::invalid_argument, "unknown strategy");
      cfg.strategy = opts->strategy == FMB_STRATEGY_STRUCTURED ? search::Strategy::structured
                                                               : search::Strategy::brute_pairs;
      cfg.shard_index = opts->shard_index;
      cfg.shard_count = opts->shard_count;
      cfg.budget = opts->budget;
      if (opts->time_limit_ms > 0) cfg.time_limit = std::chrono::milliseconds(opts->time_limit_ms);
      cfg.record_all = opts->record_all != 0;
      cfg.jobs = opts->jobs;
      if (opts->max_order) cfg.max_order = opts->max_order;
    }
    const auto rep = search::search_fmb(g->group, f->spec, cfg);
    if (exhausted) *exhausted = rep.exhausted ? 1 : 0;
    if (found) *found = rep.found.size();
    json j = io::search_to_json(rep);
    j["group"] = g->group.spec().literal();
    j["field"] = f->spec.literal();
    emit(j, out);
  });
}

fmb_status fmb_oracle_check(const fmb_group* g, const fmb_field* f, unsigned jobs, int* equal, char** out) {
  if (!g || !f) return FMB_ERR_NULL;
  return guarded([&] {
    const auto r = search::oracle_equivalence(g->group, f->spec, jobs ? jobs : 1);
    if (equal) *equal = r.equal ? 1 : 0;
    json j = {{"schema_version", io::kSchemaVersion},
              {"group", g->group.spec().literal()},
              {"field", f->spec.literal()},
              {"equal", r.equal},
              {"structured", io::search_to_json(r.structured)},
              {"brute_pairs", io::search_to_json(r.brute)}};
    emit(j, out);
  });
}

}  // extern "C"
