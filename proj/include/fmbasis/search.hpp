#pragma once

// Exhaustive search for filtered multiplicative bases.
//
// structured: every such basis is {1} together with the nonzero words in its
// d = dim I/I^2 members outside I^2. Candidate generator tuples are a frame
// (an invertible d x d matrix against the I/I^2 quotient basis) plus tails in
// I^2, enumerated level by level in filtration-adapted coordinates so that a
// failed truncated check prunes every completion at once.
//
// brute_pairs: all (u, v) in I x I over GF(2) for |G| <= 8, no structure
// assumed beyond 1 being a member.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmbasis/fmb.hpp"

namespace fmbasis::search {

enum class Strategy { structured, brute_pairs };

const char* to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

inline constexpr const char* kEnumerationVersion = "fmbasis-enum-2";

struct SearchConfig {
  Strategy strategy = Strategy::structured;
  unsigned shard_index = 0;
  unsigned shard_count = 1;
  /// Node budget per frame (structured) or per run (brute_pairs).
  std::uint64_t budget = 1'000'000'000;
  /// Optional wall-clock limit; frames not started in time are left uncovered.
  std::optional<std::chrono::milliseconds> time_limit;
  bool record_all = false;
  unsigned jobs = 1;
  std::size_t max_order = 16;
};

struct SearchReport {
  Strategy strategy = Strategy::structured;
  unsigned shard_index = 0;
  unsigned shard_count = 1;
  std::uint64_t examined = 0;
  /// Prune counts per rule: excess, dependence, deficit, size, verify_fail.
  std::map<std::string, std::uint64_t> pruned;
  /// Structured only: pruned[k] nodes rejected after fixing levels 1..k.
  std::vector<std::uint64_t> pruned_at_depth;
  /// Canonical, deduplicated, each re-verified.
  std::vector<fmb::BasisCandidate> found;
  std::uint64_t hits = 0;
  bool exhausted = false;
  double elapsed_seconds = 0;
  /// Decimal strings; exhausted iff covered == space_size.
  std::string space_size;
  std::string covered;
  std::uint64_t frames = 0;
  std::uint64_t incomplete_frames = 0;
  std::string enumeration = kEnumerationVersion;
};

SearchReport search_fmb(const grp::Group& g, const ff::FieldSpec& field, const SearchConfig& cfg);

/// Members sorted by (level, coefficient codes); labels become 1, w1, w2, ...; params dropped.
fmb::BasisCandidate canonicalize(const fmb::BasisCandidate& b, const galg::Filtration* f = nullptr);

struct OracleResult {
  bool equal = false;
  SearchReport structured;
  SearchReport brute;
};

/// Structured and brute_pairs (record_all) produce the same canonical sets.
OracleResult oracle_equivalence(const grp::Group& g, const ff::FieldSpec& field, unsigned jobs = 1);

}  // namespace fmbasis::search
