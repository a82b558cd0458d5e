// fmbasis command-line front end. Talks to the library only through fmbasis.h.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fmbasis.h"

using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(fmb_status s) {
  if (s != FMB_OK) throw CliError(fmb_last_error());
}

json take(char* s) {
  std::unique_ptr<char, void (*)(char*)> guard(s, fmb_string_free);
  return json::parse(s);
}

struct Field {
  fmb_field* p = nullptr;
  explicit Field(const std::string& lit) { check(fmb_field_parse(lit.c_str(), &p)); }
  ~Field() { fmb_field_free(p); }
};

struct Group {
  fmb_group* p = nullptr;
  Group(const std::string& lit, std::size_t max_order) { check(fmb_group_parse(lit.c_str(), max_order, &p)); }
  ~Group() { fmb_group_free(p); }
};

struct Basis {
  fmb_basis* p = nullptr;
  ~Basis() { fmb_basis_free(p); }
};

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// Plain aligned columns.
void print_table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
      std::cout << std::left << std::setw(static_cast<int>(w[i])) << r[i] << (i + 1 < r.size() ? "  " : "");
    std::cout << '\n';
  };
  line(head);
  std::vector<std::string> rule;
  for (auto x : w) rule.emplace_back(x, '-');
  line(rule);
  for (const auto& r : rows) line(r);
}

void kv(const std::string& k, const json& v) { std::cout << k << ": " << cell(v) << '\n'; }

void table_group(const json& j) {
  for (const char* k : {"literal", "order", "prime", "is_abelian", "commutator_ba", "gen_a", "gen_b"})
    if (j.contains(k)) kv(k, j[k]);
  const auto& labels = j["labels"];
  std::vector<std::vector<std::string>> rows;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    std::vector<std::string> r{labels[x].get<std::string>(), cell(j["element_orders"][x])};
    for (const auto& y : j["table"][x]) r.push_back(labels[y.get<std::size_t>()].get<std::string>());
    rows.push_back(std::move(r));
  }
  std::vector<std::string> head{"g", "order"};
  for (const auto& l : labels) head.push_back(l.get<std::string>());
  print_table(head, rows);
}

void table_filtration(const json& j) {
  kv("group", j["group"]);
  kv("field", j["field"]);
  kv("length", j["length"]);
  std::vector<std::vector<std::string>> rows;
  std::size_t sum = 0;
  for (std::size_t k = 0; k < j["dims"].size(); ++k) {
    const bool has_q = k < j["quotient_dims"].size();
    if (has_q) sum += j["quotient_dims"][k].get<std::size_t>();
    rows.push_back({std::to_string(k), cell(j["dims"][k]), has_q ? cell(j["quotient_dims"][k]) : "-"});
  }
  print_table({"k", "dim I^k", "dim I^k/I^(k+1)"}, rows);
  std::cout << "sum of quotient dims: " << sum << '\n';
  std::vector<std::vector<std::string>> ds;
  for (const auto& d : j["dimension_subgroups"]) {
    std::string members;
    for (const auto& m : d["members"]) members += (members.empty() ? "" : " ") + m.get<std::string>();
    ds.push_back({cell(d["n"]), cell(d["order"]), members});
  }
  print_table({"n", "|D_n|", "members"}, ds);
  if (j.contains("element")) {
    const auto& e = j["element"];
    kv("element", e["expression"]);
    kv("level", e["level"]);
    if (e.contains("leading_quotient")) kv("leading_quotient", e["leading_quotient"]);
  }
}

void table_basis(const json& j) {
  kv("group", j["group"]);
  kv("field", j["field"]);
  for (const auto& p : j["params"]) kv("param " + p["name"].get<std::string>(), p["value"]);
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : j["members"]) rows.push_back({m["label"].get<std::string>(), m["coeffs"].dump()});
  print_table({"label", "coeffs"}, rows);
}

void table_verify(const json& j) {
  kv("group", j["group"]);
  kv("field", j["field"]);
  kv("pass", j["pass"]);
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : j["checks"])
    rows.push_back({c["name"].get<std::string>(), c["passed"].get<bool>() ? "pass" : "FAIL",
                    c["informational"].get<bool>() ? "info" : "verdict", c["values"].dump(), c["expected"].dump(),
                    c["witness"].is_null() ? c["detail"].get<std::string>() : c["witness"]["message"].get<std::string>()});
  print_table({"check", "result", "kind", "values", "expected", "detail"}, rows);
  std::vector<std::vector<std::string>> members;
  for (std::size_t i = 0; i < j["labels"].size(); ++i)
    members.push_back({j["labels"][i].get<std::string>(), cell(j["member_levels"][i])});
  print_table({"member", "level"}, members);
  kv("quotient_dims", j["quotient_dims"]);
}

void table_search(const json& j) {
  for (const char* k : {"group", "field", "strategy", "examined", "hits", "exhausted", "space_size", "covered",
                        "frames", "incomplete_frames", "elapsed_seconds", "enumeration"})
    if (j.contains(k)) kv(k, j[k]);
  kv("shard", std::to_string(j["shard"]["index"].get<unsigned>()) + "/" + std::to_string(j["shard"]["count"].get<unsigned>()));
  kv("pruned", j["pruned"]);
  kv("pruned_at_depth", j["pruned_at_depth"]);
  kv("found", j["found"].size());
  std::size_t shown = 0;
  for (const auto& b : j["found"]) {
    if (++shown > 3) {
      std::cout << "... " << j["found"].size() - 3 << " more\n";
      break;
    }
    std::cout << "basis " << shown << ":\n";
    table_basis(b);
  }
}

void table_oracle(const json& j) {
  kv("group", j["group"]);
  kv("field", j["field"]);
  kv("equal", j["equal"]);
  for (const char* k : {"structured", "brute_pairs"}) {
    const auto& r = j[k];
    std::cout << k << ": found " << r["found"].size() << ", examined " << r["examined"] << ", exhausted "
              << r["exhausted"] << '\n';
  }
}

void emit(const json& j, const std::string& format, void (*table)(const json&)) {
  if (format == "table")
    table(j);
  else
    std::cout << j.dump(2) << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json params_object(const std::vector<std::string>& kvs) {
  json p = json::object();
  for (const auto& s : kvs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw CliError("parameter '" + s + "' must be name=value");
    p[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered multiplicative bases of modular group algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  if (const char* env = std::getenv("FMBASIS_OUTPUT")) format = env;
  app.add_option("--output", format, "json or table (default from FMBASIS_OUTPUT)")
      ->check(CLI::IsMember({"json", "table"}));
  std::size_t max_order = 64;
  app.add_option("--max-order", max_order, "largest group built")->capture_default_str();

  std::string group_lit, field_lit = "gf(2)";
  auto add_group = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--group", group_lit, "group literal, e.g. dihedral(n=3)");
    if (required) o->required();
  };
  auto add_field = [&](CLI::App* c) { c->add_option("--field", field_lit, "field literal, e.g. gf(4)")->capture_default_str(); };

  auto* group_info = app.add_subcommand("group-info", "Cayley table and basic invariants");
  add_group(group_info, true);

  auto* filtration = app.add_subcommand("filtration", "radical filtration of KG");
  std::string element;
  add_group(filtration, true);
  add_field(filtration);
  filtration->add_option("--element", element, "element expression, e.g. (1+a)^2*(1+b)");

  std::string basis_file, construct_name;
  std::vector<std::string> params;
  auto* verify = app.add_subcommand("verify", "check a basis candidate");
  add_group(verify, false);
  add_field(verify);
  auto* basis_opt = verify->add_option("--basis", basis_file, "BasisCandidate JSON file");
  auto* construct_opt = verify->add_option("--construct", construct_name, "named construction");
  basis_opt->excludes(construct_opt);
  verify->add_option("--param", params, "construction parameter name=value");

  auto* construct = app.add_subcommand("construct", "explicit basis from a named construction");
  std::string cname = "auto";
  construct->add_option("name", cname, "abelian, dihedral, quaternion8, example16, product, auto")->capture_default_str();
  add_group(construct, true);
  add_field(construct);
  construct->add_option("--param", params, "construction parameter name=value");

  auto* search = app.add_subcommand("search", "exhaustive search for a filtered multiplicative basis");
  add_group(search, true);
  add_field(search);
  std::string strategy = "structured", shard = "0/1";
  bool record_all = false;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
  double time_limit = 0;
  std::size_t search_max = 16;
  search->add_option("--strategy", strategy)->check(CLI::IsMember({"structured", "brute_pairs"}))->capture_default_str();
  search->add_option("--shard", shard, "i/N")->capture_default_str();
  search->add_flag("--record-all", record_all, "collect every basis");
  search->add_option("--budget", budget, "node cap per frame");
  search->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  search->add_option("--time-limit", time_limit, "seconds");
  search->add_option("--search-max-order", search_max, "largest |G| for structured search")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle-check", "structured search against brute_pairs");
  add_group(oracle, true);
  add_field(oracle);
  oracle->add_option("--jobs", jobs)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }
  if (format != "json" && format != "table") {
    std::cerr << "error: output format must be json or table\n";
    return kError;
  }

  try {
    if (group_info->parsed()) {
      Group g(group_lit, max_order);
      char* out = nullptr;
      check(fmb_group_json(g.p, &out));
      emit(take(out), format, table_group);
      return kOk;
    }
    if (filtration->parsed()) {
      Group g(group_lit, max_order);
      Field f(field_lit);
      char* out = nullptr;
      check(fmb_filtration_json(g.p, f.p, element.empty() ? nullptr : element.c_str(), &out));
      emit(take(out), format, table_filtration);
      return kOk;
    }
    if (verify->parsed()) {
      Basis b;
      if (!basis_file.empty()) {
        check(fmb_basis_from_json(read_file(basis_file).c_str(), &b.p));
      } else {
        if (construct_name.empty()) throw CliError("verify needs --basis or --construct");
        if (group_lit.empty()) throw CliError("--construct needs --group");
        Group g(group_lit, max_order);
        Field f(field_lit);
        const std::string p = params_object(params).dump();
        check(fmb_basis_construct(g.p, f.p, construct_name.c_str(), p.c_str(), &b.p));
      }
      int pass = 0;
      char* out = nullptr;
      check(fmb_verify(b.p, &pass, &out));
      emit(take(out), format, table_verify);
      return pass ? kOk : kNegative;
    }
    if (construct->parsed()) {
      Group g(group_lit, max_order);
      Field f(field_lit);
      Basis b;
      const std::string p = params_object(params).dump();
      check(fmb_basis_construct(g.p, f.p, cname.c_str(), p.c_str(), &b.p));
      char* out = nullptr;
      check(fmb_basis_to_json(b.p, &out));
      emit(take(out), format, table_basis);
      return kOk;
    }
    if (search->parsed()) {
      Group g(group_lit, max_order);
      Field f(field_lit);
      fmb_search_options o;
      fmb_search_options_init(&o);
      o.strategy = strategy == "structured" ? FMB_STRATEGY_STRUCTURED : FMB_STRATEGY_BRUTE_PAIRS;
      unsigned si = 0, sn = 1;
      char slash = 0;
      std::istringstream ss(shard);
      if (!(ss >> si >> slash >> sn) || slash != '/' || !ss.eof()) throw CliError("--shard must look like i/N");
      o.shard_index = si;
      o.shard_count = sn;
      if (budget) o.budget = budget;
      if (time_limit > 0) o.time_limit_ms = static_cast<std::int64_t>(time_limit * 1000);
      o.record_all = record_all ? 1 : 0;
      o.jobs = jobs;
      o.max_order = search_max;
      int exhausted = 0;
      std::size_t found = 0;
      char* out = nullptr;
      check(fmb_search(g.p, f.p, &o, &exhausted, &found, &out));
      emit(take(out), format, table_search);
      if (found) return kOk;
      return exhausted ? kNegative : kError;
    }
    if (oracle->parsed()) {
      Group g(group_lit, max_order);
      Field f(field_lit);
      int equal = 0;
      char* out = nullptr;
      check(fmb_oracle_check(g.p, f.p, jobs, &equal, &out));
      emit(take(out), format, table_oracle);
      return equal ? kOk : kNegative;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
