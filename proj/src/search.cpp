#include "fmbasis/search.hpp"

#include <algorithm>
#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "fmbasis/error.hpp"

namespace fmbasis::search {

using galg::Element;
using galg::Filtration;
using galg::Row;
using Big = boost::multiprecision::cpp_int;
using Clock = std::chrono::steady_clock;

const char* to_string(Strategy s) { return s == Strategy::structured ? "structured" : "brute_pairs"; }

Strategy parse_strategy(std::string_view name) {
  if (name == "structured") return Strategy::structured;
  if (name == "brute_pairs" || name == "brute-pairs") return Strategy::brute_pairs;
  fail(Errc::parse_error, "unknown strategy '" + std::string(name) + "'");
}

fmb::BasisCandidate canonicalize(const fmb::BasisCandidate& b, const Filtration* f) {
  std::optional<Filtration> own;
  if (!f) own.emplace(galg::compute_filtration(b.alg));
  const Filtration& F = f ? *f : *own;
  std::vector<std::pair<unsigned, std::size_t>> order;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto lvl = F.level_of(b.elements[i]);
    order.emplace_back(lvl ? *lvl : F.length(), i);
  }
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return b.elements[x.second].row() < b.elements[y.second].row();
  });
  fmb::BasisCandidate out{b.alg, {}, {}, {}};
  const Element one = b.alg->one();
  std::size_t next = 1;
  for (const auto& [lvl, i] : order) {
    const Element& e = b.elements[i];
    out.add(e == one ? "1" : "w" + std::to_string(next++), e);
  }
  return out;
}

namespace {

using Key = std::vector<Row>;

Key key_of(const fmb::BasisCandidate& b) {
  Key k;
  for (const auto& e : b.elements) k.push_back(e.row());
  return k;
}

struct Hit {
  fmb::BasisCandidate basis;
  Key key;
};

struct Partial {
  std::uint64_t examined = 0;
  std::map<std::string, std::uint64_t> pruned;
  std::vector<std::uint64_t> at_depth;
  Big covered = 0;
  std::vector<Hit> hits;
  bool complete = true;
  bool stopped = false;
};

struct Deadline {
  std::optional<Clock::time_point> at;
  bool passed() const { return at && Clock::now() >= *at; }
};

Big big_pow(std::uint32_t base, std::size_t e) { return boost::multiprecision::pow(Big(base), static_cast<unsigned>(e)); }

// Digits of `value` in base q, most significant first.
void digits(std::uint64_t value, std::uint32_t q, std::vector<ff::Scalar>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = ff::Scalar{static_cast<std::uint32_t>(value % q)};
    value /= q;
  }
}

std::uint64_t checked_pow(std::uint32_t q, std::size_t e, const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) fail(Errc::unsupported, std::string(what) + " too large");
    r *= q;
  }
  return r;
}

std::vector<std::string> generator_names(std::size_t d) {
  if (d == 1) return {"u"};
  if (d == 2) return {"u", "v"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= d; ++i) out.push_back("u" + std::to_string(i));
  return out;
}

std::string word_label(const std::vector<std::size_t>& letters, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += '*';
    out += names[letters[i]];
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

class Structured {
 public:
  Structured(std::shared_ptr<const galg::GroupAlgebra> alg, const Filtration& f, const SearchConfig& cfg,
             Deadline deadline)
      : alg_(std::move(alg)), f_(f), K_(alg_->field()), cfg_(cfg), deadline_(deadline) {
    n_ = alg_->dim();
    L_ = f_.length();
    q_ = f_.quotient_dims();
    d_ = L_ >= 2 ? q_[1] : 0;
    names_ = generator_names(d_);
    const std::uint64_t total = checked_pow(K_.size(), d_ * d_, "frame space");
    if (total > 50'000'000) fail(Errc::unsupported, "frame space too large for structured search");
    std::vector<ff::Scalar> m(d_ * d_);
    for (std::uint64_t v = 0; v < total; ++v) {
      digits(v, K_.size(), m);
      galg::Echelon e(K_, d_);
      for (std::size_t i = 0; i < d_; ++i) e.insert(std::span<const ff::Scalar>(m).subspan(i * d_, d_));
      if (e.rank() == d_) frames_.push_back(m);
    }
  }

  std::size_t frame_count() const { return frames_.size(); }
  Big frame_space() const { return big_pow(K_.size(), d_ * (L_ >= 2 ? f_.dims()[2] : 0)); }

  Partial run_frame(std::size_t idx) const {
    Partial p;
    p.at_depth.assign(L_ + 1, 0);
    std::vector<Row> gens(d_, Row(n_));
    const auto& m = frames_[idx];
    const auto& Q1 = f_.quotient_basis(1);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) axpy(gens[i], m[i * d_ + j], Q1[j]);
    if (L_ <= 1) {
      final_step(gens, 1, {}, {}, p);
      return p;
    }
    dfs(gens, 1, p);
    return p;
  }

 private:
  void axpy(Row& y, ff::Scalar c, const Row& x) const {
    if (c.code == 0) return;
    for (std::size_t k = 0; k < n_; ++k)
      if (x[k].code) y[k] = K_.add(y[k], K_.mul(c, x[k]));
  }

  bool tick(Partial& p) const {
    ++p.examined;
    if (p.examined > cfg_.budget || ((p.examined & 1023) == 0 && deadline_.passed())) {
      p.complete = false;
      return false;
    }
    return true;
  }

  // Images mod I^T of the words of length >= 2; false with a reason on the first violation.
  bool check(const std::vector<Row>& gens, unsigned T, std::vector<Row>& words,
             std::vector<std::vector<std::size_t>>& letters, std::string& reason) const {
    std::size_t target = 0;
    for (unsigned l = 2; l < T; ++l) target += q_[l];
    const std::size_t width = f_.adapted_offset(T);
    std::vector<galg::Echelon> lead;
    for (unsigned l = 0; l < T; ++l) lead.emplace_back(K_, q_[l]);
    std::map<Row, std::size_t> seen;
    std::vector<Row> queue(gens);
    std::vector<std::vector<std::size_t>> qletters;
    for (std::size_t i = 0; i < d_; ++i) qletters.push_back({i});
    Row prod(n_);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t i = 0; i < d_; ++i) {
        alg_->multiply(queue[head], gens[i], prod);
        Row key = f_.adapted_coords(prod);
        key.resize(width);
        auto nz = std::find_if(key.begin(), key.end(), [](ff::Scalar s) { return s.code != 0; });
        if (nz == key.end() || seen.count(key)) continue;
        if (seen.size() == target) {
          reason = "excess";
          return false;
        }
        const std::size_t pos = static_cast<std::size_t>(nz - key.begin());
        const unsigned lvl = f_.adapted_level(pos);
        const std::size_t off = f_.adapted_offset(lvl);
        if (lvl < 2 || !lead[lvl].insert(std::span<const ff::Scalar>(key).subspan(off, q_[lvl]))) {
          reason = "dependence";
          return false;
        }
        seen.emplace(std::move(key), queue.size());
        queue.push_back(prod);
        auto w = qletters[head];
        w.push_back(i);
        qletters.push_back(std::move(w));
      }
    for (unsigned l = 2; l < T; ++l)
      if (lead[l].rank() != q_[l]) {
        reason = "deficit";
        return false;
      }
    words.assign(queue.begin() + static_cast<std::ptrdiff_t>(d_), queue.end());
    letters.assign(qletters.begin() + static_cast<std::ptrdiff_t>(d_), qletters.end());
    return true;
  }

  void dfs(const std::vector<Row>& gens, unsigned level, Partial& p) const {
    if (!tick(p)) return;
    const unsigned T = std::min(level + 2, L_);
    std::vector<Row> words;
    std::vector<std::vector<std::size_t>> letters;
    std::string reason;
    if (!check(gens, T, words, letters, reason)) {
      ++p.pruned[reason];
      ++p.at_depth[level];
      p.covered += big_pow(K_.size(), d_ * f_.dims()[level + 1]);
      return;
    }
    if (T == L_) {
      final_step(gens, level, words, letters, p);
      return;
    }
    enumerate_level(gens, level + 1, p, [&](const std::vector<Row>& next) {
      dfs(next, level + 1, p);
      return p.complete && !p.stopped;
    });
  }

  template <class Fn>
  void enumerate_level(const std::vector<Row>& gens, unsigned level, Partial& p, Fn&& fn) const {
    const std::size_t width = q_[level];
    const std::uint64_t count = checked_pow(K_.size(), d_ * width, "level space");
    const auto& Q = f_.quotient_basis(level);
    std::vector<ff::Scalar> c(d_ * width);
    for (std::uint64_t v = 0; v < count; ++v) {
      digits(v, K_.size(), c);
      std::vector<Row> next = gens;
      for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < width; ++j) axpy(next[i], c[i * width + j], Q[j]);
      if (!fn(next)) return;
    }
    (void)p;
  }

  // Longer words are fixed; every completion of the remaining levels is a candidate.
  void final_step(const std::vector<Row>& gens, unsigned level, const std::vector<Row>& words,
                  const std::vector<std::vector<std::size_t>>& letters, Partial& p) const {
    auto visit = [&](const std::vector<Row>& full) {
      if (level + 1 < L_ && !tick(p)) return false;
      fmb::BasisCandidate b{alg_, {}, {}, {}};
      b.add("1", alg_->one());
      for (std::size_t i = 0; i < d_; ++i) b.add(names_[i], alg_->from_coeffs(full[i]));
      for (std::size_t w = 0; w < words.size(); ++w) {
        // Recompute exactly with the completed generators.
        Element e = alg_->one();
        for (std::size_t letter : letters[w]) e = e * b.elements[1 + letter];
        b.add(word_label(letters[w], names_), std::move(e));
      }
      p.covered += 1;
      const auto rep = fmb::verify(b, &f_);
      if (!rep.pass) {
        ++p.pruned["verify_fail"];
        ++p.at_depth[L_ - 1];
        return true;
      }
      auto canon = canonicalize(b, &f_);
      Key k = key_of(canon);
      p.hits.push_back({std::move(canon), std::move(k)});
      if (!cfg_.record_all) {
        p.stopped = true;
        return false;
      }
      return true;
    };
    if (level + 1 < L_)
      enumerate_level(gens, L_ - 1, p, visit);
    else
      visit(gens);
  }

  std::shared_ptr<const galg::GroupAlgebra> alg_;
  const Filtration& f_;
  const ff::Field& K_;
  const SearchConfig& cfg_;
  Deadline deadline_;
  std::size_t n_ = 0;
  unsigned L_ = 0;
  std::vector<std::size_t> q_;
  std::size_t d_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<ff::Scalar>> frames_;
};

void merge(SearchReport& rep, Big& covered, std::set<Key>& keys, Partial&& p) {
  rep.examined += p.examined;
  for (const auto& [k, v] : p.pruned) rep.pruned[k] += v;
  if (rep.pruned_at_depth.size() < p.at_depth.size()) rep.pruned_at_depth.resize(p.at_depth.size(), 0);
  for (std::size_t i = 0; i < p.at_depth.size(); ++i) rep.pruned_at_depth[i] += p.at_depth[i];
  covered += p.covered;
  rep.hits += p.hits.size();
  for (auto& h : p.hits)
    if (keys.insert(h.key).second) rep.found.push_back(std::move(h.basis));
  if (!p.complete) ++rep.incomplete_frames;
}

SearchReport run_structured(const std::shared_ptr<const galg::GroupAlgebra>& alg, const Filtration& f,
                            const SearchConfig& cfg, Deadline deadline) {
  Structured s(alg, f, cfg, deadline);
  std::vector<std::size_t> mine;
  for (std::size_t i = cfg.shard_index; i < s.frame_count(); i += cfg.shard_count) mine.push_back(i);

  std::vector<std::optional<Partial>> results(mine.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= mine.size()) return;
      if (!cfg.record_all && k > first_hit.load()) continue;
      if (deadline.passed()) continue;
      Partial p = s.run_frame(mine[k]);
      if (!cfg.record_all && !p.hits.empty()) {
        std::size_t cur = first_hit.load();
        while (k < cur && !first_hit.compare_exchange_weak(cur, k)) {
        }
      }
      results[k] = std::move(p);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(mine.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchReport rep;
  rep.frames = mine.size();
  Big covered = 0;
  std::set<Key> keys;
  const std::size_t hit = first_hit.load();
  const std::size_t stop = cfg.record_all || hit >= mine.size() ? mine.size() : hit + 1;
  for (std::size_t k = 0; k < stop; ++k) {
    if (!results[k]) {
      ++rep.incomplete_frames;
      continue;
    }
    merge(rep, covered, keys, std::move(*results[k]));
  }
  const Big space = Big(mine.size()) * s.frame_space();
  rep.space_size = space.str();
  rep.covered = covered.str();
  rep.exhausted = covered == space;
  return rep;
}

SearchReport run_brute_pairs(const std::shared_ptr<const galg::GroupAlgebra>& alg, const Filtration& f,
                             const SearchConfig& cfg, Deadline deadline) {
  const std::size_t n = alg->dim();
  if (alg->field().size() != 2) fail(Errc::unsupported, "brute_pairs requires GF(2)");
  if (n > 8) fail(Errc::unsupported, "brute_pairs requires |G| <= 8");
  if (f.length() >= 2 && f.quotient_dims()[1] > 2) fail(Errc::unsupported, "brute_pairs requires dim I/I^2 <= 2");
  const ff::Field& K = alg->field();
  const auto& rows = f.level(1).rows();
  std::vector<Element> ideal;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows.size()); ++mask) {
    Row r(n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (mask >> i & 1)
        for (std::size_t k = 0; k < n; ++k) r[k] = K.add(r[k], rows[i][k]);
    ideal.push_back(alg->from_coeffs(std::move(r)));
  }

  SearchReport rep;
  Partial p;
  std::uint64_t outer = 0;
  for (std::size_t ui = cfg.shard_index; ui < ideal.size() && p.complete && !p.stopped; ui += cfg.shard_count) {
    ++outer;
    if (deadline.passed()) {
      p.complete = false;
      break;
    }
    for (const Element& v : ideal) {
      if (++p.examined > cfg.budget) {
        p.complete = false;
        break;
      }
      const auto b = fmb::closure_candidate({ideal[ui], v}, {"u", "v"}, n + 1);
      p.covered += 1;
      if (b.size() != n) {
        ++p.pruned["size"];
        continue;
      }
      if (!fmb::verify(b, &f).pass) {
        ++p.pruned["verify_fail"];
        continue;
      }
      auto canon = canonicalize(b, &f);
      Key k = key_of(canon);
      p.hits.push_back({std::move(canon), std::move(k)});
      if (!cfg.record_all) {
        p.stopped = true;
        break;
      }
    }
  }
  const std::size_t outer_total =
      ideal.size() > cfg.shard_index ? (ideal.size() - cfg.shard_index + cfg.shard_count - 1) / cfg.shard_count : 0;
  Big covered = 0;
  std::set<Key> keys;
  p.complete = p.complete || outer == outer_total;
  merge(rep, covered, keys, std::move(p));
  rep.incomplete_frames = 0;
  const Big space = Big(outer_total) * Big(ideal.size());
  rep.frames = outer_total;
  rep.space_size = space.str();
  rep.covered = covered.str();
  rep.exhausted = covered == space;
  return rep;
}

}  // namespace

SearchReport search_fmb(const grp::Group& g, const ff::FieldSpec& field, const SearchConfig& cfg) {
  if (cfg.shard_count == 0 || cfg.shard_index >= cfg.shard_count)
    fail(Errc::invalid_argument, "shard index must satisfy 0 <= i < N");
  if (cfg.strategy == Strategy::structured && g.order() > cfg.max_order)
    fail(Errc::unsupported, "structured search is limited to |G| <= " + std::to_string(cfg.max_order));
  const auto start = Clock::now();
  Deadline deadline;
  if (cfg.time_limit) deadline.at = start + *cfg.time_limit;
  auto alg = galg::GroupAlgebra::create(g, ff::Field(field));
  const Filtration f = galg::compute_filtration(alg);
  SearchReport rep = cfg.strategy == Strategy::structured ? run_structured(alg, f, cfg, deadline)
                                                          : run_brute_pairs(alg, f, cfg, deadline);
  for (const auto& b : rep.found)
    if (!fmb::verify(b, &f).pass) fail(Errc::internal, "search reported a basis that does not verify");
  rep.strategy = cfg.strategy;
  rep.shard_index = cfg.shard_index;
  rep.shard_count = cfg.shard_count;
  rep.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

OracleResult oracle_equivalence(const grp::Group& g, const ff::FieldSpec& field, unsigned jobs) {
  if (field.size() != 2 || g.order() > 8) fail(Errc::unsupported, "oracle equivalence requires GF(2) and |G| <= 8");
  SearchConfig cfg;
  cfg.record_all = true;
  cfg.jobs = jobs;
  OracleResult r;
  r.structured = search_fmb(g, field, cfg);
  cfg.strategy = Strategy::brute_pairs;
  r.brute = search_fmb(g, field, cfg);
  std::set<Key> a, b;
  for (const auto& x : r.structured.found) a.insert(key_of(x));
  for (const auto& x : r.brute.found) b.insert(key_of(x));
  r.equal = r.structured.exhausted && r.brute.exhausted && a == b;
  return r;
}

}  // namespace fmbasis::search
