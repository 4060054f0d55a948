#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "ppn/discriminant.hpp"

namespace ppn {

/// Search for k-prime fillings of a port: enumerate increasing prefixes
/// q1 < ... < q_{k-2} and hand each induced port to the two-prime criterion.
struct PrefixSearchConfig {
  Port port;
  std::size_t k = 6;
  std::optional<Int> floor_prime{};  // primes must exceed it; default: largest prime of R
  std::optional<std::size_t> depth{};  // yield depth; default k - 2
  Int t_cap = 1000;                   // prefixes with T above this are left unresolved
  std::optional<Int> q1_min{};
  std::optional<Int> q1_max{};
  bool sieve_over_cap = false;  // try an exclusion certificate when T > t_cap

  Int resolved_floor_prime() const;
  std::size_t resolved_depth() const;
};

struct PrefixNode {
  std::vector<Int> prefix;
  Int R;  // induced port
  Int c;
  std::optional<DiscriminantProblem> problem;  // set at depth k - 2
};

struct PruneCounters {
  std::uint64_t capacity = 0;   // branch cut by the reciprocal-capacity test
  std::uint64_t gcd = 0;        // induced port with gcd(R', c') > 1 (never expected)
};

/// Returns false to stop the enumeration.
using PrefixVisitor = std::function<bool(const PrefixNode&)>;

/// Smallest prime strictly greater than x.
Int next_prime(const Int& x);

/// Admissible first primes, ascending.
std::vector<Int> first_prime_candidates(const PrefixSearchConfig& config);

/// Depth-first enumeration of one first-prime branch in lexicographic order.
/// With `resume_after`, prefixes up to and including it are skipped.
/// Returns false if the visitor stopped the walk.
bool enumerate_branch(const PrefixSearchConfig& config, const Int& q1, const PrefixVisitor& visit,
                      const std::vector<Int>* resume_after = nullptr, PruneCounters* counters = nullptr);

/// Whole enumeration at the configured depth (depth 0 yields the root only).
void enumerate_prefixes(const PrefixSearchConfig& config, const PrefixVisitor& visit,
                        PruneCounters* counters = nullptr);

struct SearchHit {
  std::vector<Int> prefix;
  TwoPrimeHit hit;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Progress of one first-prime branch; the counters mirror the exploratory
/// search table (prefixes, T < 0, 0 <= T <= cap, checked t, square hits).
struct BranchRecord {
  Int q1;
  std::vector<Int> last_completed_prefix;
  std::uint64_t prefixes_seen = 0;
  std::uint64_t empty_T = 0;
  std::uint64_t bounded_T = 0;
  std::uint64_t over_cap = 0;
  std::uint64_t sieve_excluded = 0;
  std::uint64_t t_checked = 0;
  std::uint64_t square_hits = 0;
  std::vector<SearchHit> fillings;
  bool complete = false;

  friend bool operator==(const BranchRecord&, const BranchRecord&) = default;
};

struct SearchSnapshot {
  Int R;
  Int c;
  std::size_t k = 0;
  Int floor_prime;
  Int t_cap;
  std::vector<BranchRecord> branches;  // ascending q1

  friend bool operator==(const SearchSnapshot&, const SearchSnapshot&) = default;
};

struct RunOptions {
  unsigned workers = 1;
  std::optional<std::chrono::milliseconds> budget;
  std::optional<std::filesystem::path> snapshot_path;
  std::uint64_t checkpoint_every = 50'000;
  const SearchSnapshot* resume = nullptr;
};

struct SearchOutcome {
  SearchSnapshot snapshot;
  PruneCounters pruned;
  bool finished = false;  // false when the budget ran out
};

/// Runs every first-prime branch at depth k - 2. Branches are split across
/// workers; the returned snapshot does not depend on the worker count.
/// Throws ResumeMismatch when `resume` was produced by another configuration.
SearchOutcome run_prefix_search(const PrefixSearchConfig& config, const RunOptions& options);

}  // namespace ppn
