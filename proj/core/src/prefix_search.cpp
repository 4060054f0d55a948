#include "ppn/prefix_search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "ppn/error.hpp"
#include "ppn/formats.hpp"
#include "ppn/primality.hpp"
#include "ppn/sieve.hpp"

namespace ppn {

Int PrefixSearchConfig::resolved_floor_prime() const {
  if (floor_prime) return *floor_prime;
  if (port.is_ambient() && !port.R_factorization()->empty()) return port.R_factorization()->largest();
  throw Error(Errc::InvalidArgument, "floor prime required for a non-ambient port");
}

std::size_t PrefixSearchConfig::resolved_depth() const {
  if (k < 2) throw Error(Errc::InvalidArgument, "k must be at least 2");
  const std::size_t d = depth.value_or(k - 2);
  if (d > k - 2) throw Error(Errc::InvalidArgument, "depth must not exceed k - 2");
  return d;
}

Int next_prime(const Int& x) {
  const auto table = small_primes();
  if (x < Int(table.back())) {
    const auto v = x < 0 ? 0UL : x.get_ui();
    return *std::upper_bound(table.begin(), table.end(), static_cast<std::uint32_t>(v));
  }
  Int p;
  mpz_nextprime(p.get_mpz_t(), x.get_mpz_t());
  while (!is_probable_prime(p)) mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  return p;
}

namespace {

// Delta_{R,c}(X) for X = {q} plus the next (count - 1) primes after q.
// X is the set of `count` remaining primes with the largest reciprocal sum,
// so delta >= 2 rules out every completion through q and any larger q.
bool capacity_exhausted(const Int& R, const Int& c, const Int& q, std::size_t count) {
  std::vector<Int> xs{q};
  while (xs.size() < count) xs.push_back(next_prime(xs.back()));
  Int prod = 1;
  for (const auto& x : xs) prod *= x;
  Int der = 0;
  for (const auto& x : xs) der += prod / x;
  return c * prod - R * der >= 2;
}

Int start_after(const Int& R, const Int& c, const Int& last) {
  Int ratio;
  mpz_fdiv_q(ratio.get_mpz_t(), R.get_mpz_t(), c.get_mpz_t());
  return std::max(last, ratio);
}

struct Walker {
  const PrefixSearchConfig& config;
  const PrefixVisitor& visit;
  PruneCounters* counters;
  std::size_t target;
  Int floor;
  std::vector<Int> prefix;
  const std::vector<Int>* resume;
  bool on_resume_path;

  bool emit(const Int& R, const Int& c) {
    PrefixNode node{prefix, R, c, std::nullopt};
    if (target + 2 == config.k) {
      const Int m = prefix.empty() ? floor : prefix.back();
      node.problem = build_discriminant_problem(Port(R, c), m);
    }
    return visit(node);
  }

  // Appends q to the prefix at level `level`; false stops the walk.
  bool enter(const Int& R, const Int& c, const Int& q) {
    const Int R2 = R * q;
    const Int c2 = c * q - R;
    if (gcd(R2, c2) != 1) {
      if (counters) ++counters->gcd;
      return true;
    }
    prefix.push_back(q);
    bool keep_going = true;
    if (prefix.size() == target) {
      const bool skip = on_resume_path && prefix == *resume;
      if (skip) on_resume_path = false;
      else keep_going = emit(R2, c2);
    } else {
      keep_going = descend(R2, c2);
    }
    prefix.pop_back();
    return keep_going;
  }

  bool descend(const Int& R, const Int& c) {
    const std::size_t level = prefix.size();
    const std::size_t remaining = config.k - level;
    Int q = next_prime(start_after(R, c, prefix.back()));
    if (on_resume_path && (*resume)[level] > q) q = (*resume)[level];
    for (;; q = next_prime(q)) {
      if (on_resume_path && q > (*resume)[level]) on_resume_path = false;
      if (mpz_divisible_p(R.get_mpz_t(), q.get_mpz_t())) continue;
      if (capacity_exhausted(R, c, q, remaining)) {
        if (counters) ++counters->capacity;
        break;
      }
      if (!enter(R, c, q)) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<Int> first_prime_candidates(const PrefixSearchConfig& config) {
  const Int floor = config.resolved_floor_prime();
  const Int& R = config.port.R();
  const Int& c = config.port.c();
  std::vector<Int> out;
  for (Int q = next_prime(start_after(R, c, floor));; q = next_prime(q)) {
    if (mpz_divisible_p(R.get_mpz_t(), q.get_mpz_t())) continue;
    if (capacity_exhausted(R, c, q, config.k)) break;
    if (config.q1_max && q > *config.q1_max) break;
    if (config.q1_min && q < *config.q1_min) continue;
    out.push_back(q);
  }
  return out;
}

bool enumerate_branch(const PrefixSearchConfig& config, const Int& q1, const PrefixVisitor& visit,
                      const std::vector<Int>* resume_after, PruneCounters* counters) {
  const std::size_t target = config.resolved_depth();
  if (target == 0) throw Error(Errc::InvalidArgument, "branches need depth >= 1");
  if (resume_after && (resume_after->size() != target || resume_after->front() != q1))
    throw Error(Errc::ResumeMismatch, "resume prefix does not belong to branch " + to_string(q1));
  Walker walker{config, visit, counters, target, config.resolved_floor_prime(), {}, resume_after,
                resume_after != nullptr};
  return walker.enter(config.port.R(), config.port.c(), q1);
}

void enumerate_prefixes(const PrefixSearchConfig& config, const PrefixVisitor& visit, PruneCounters* counters) {
  const std::size_t target = config.resolved_depth();
  if (target == 0) {
    Walker walker{config, visit, counters, 0, config.resolved_floor_prime(), {}, nullptr, false};
    walker.emit(config.port.R(), config.port.c());
    return;
  }
  for (const auto& q1 : first_prime_candidates(config)) {
    if (!enumerate_branch(config, q1, visit, nullptr, counters)) return;
  }
}

// -- Runner -----------------------------------------------------------------

namespace {

void check_resume(const SearchSnapshot& snap, const PrefixSearchConfig& config) {
  if (snap.R != config.port.R() || snap.c != config.port.c() || snap.k != config.k ||
      snap.floor_prime != config.resolved_floor_prime() || snap.t_cap != config.t_cap)
    throw Error(Errc::ResumeMismatch, "snapshot was written for a different search configuration");
}

void classify(const PrefixSearchConfig& config, const PrefixNode& node, BranchRecord& rec) {
  ++rec.prefixes_seen;
  const auto& problem = *node.problem;
  if (problem.empty()) {
    ++rec.empty_T;
  } else if (problem.T <= config.t_cap) {
    ++rec.bounded_T;
    auto stats = scan_last_two_stats(problem, 0, problem.T);
    rec.t_checked += stats.t_checked;
    rec.square_hits += stats.squares;
    for (auto& h : stats.hits) rec.fillings.push_back({node.prefix, std::move(h)});
  } else if (config.sieve_over_cap && build_exclusion_certificate(problem, default_sieve_moduli())) {
    ++rec.sieve_excluded;
  } else {
    ++rec.over_cap;
  }
  rec.last_completed_prefix = node.prefix;
}

}  // namespace

SearchOutcome run_prefix_search(const PrefixSearchConfig& config, const RunOptions& options) {
  if (config.resolved_depth() + 2 != config.k || config.k < 3)
    throw Error(Errc::InvalidArgument, "the prefix search runs at depth k - 2 with k >= 3");

  SearchOutcome outcome;
  auto& snap = outcome.snapshot;
  snap.R = config.port.R();
  snap.c = config.port.c();
  snap.k = config.k;
  snap.floor_prime = config.resolved_floor_prime();
  snap.t_cap = config.t_cap;

  for (const auto& q1 : first_prime_candidates(config)) {
    BranchRecord b;
    b.q1 = q1;
    snap.branches.push_back(std::move(b));
  }
  if (options.resume) {
    check_resume(*options.resume, config);
    for (const auto& old : options.resume->branches) {
      auto it = std::find_if(snap.branches.begin(), snap.branches.end(),
                             [&](const BranchRecord& b) { return b.q1 == old.q1; });
      if (it == snap.branches.end()) throw Error(Errc::ResumeMismatch, "snapshot branch " + to_string(old.q1) + " unknown");
      *it = old;
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> out_of_time{false};
  const auto deadline = options.budget ? std::chrono::steady_clock::now() + *options.budget
                                       : std::chrono::steady_clock::time_point::max();

  auto checkpoint = [&](std::size_t index, const BranchRecord& rec, const PruneCounters& local) {
    std::lock_guard lock(mu);
    snap.branches[index] = rec;
    outcome.pruned.capacity += local.capacity;
    outcome.pruned.gcd += local.gcd;
    if (options.snapshot_path) write_snapshot_file(*options.snapshot_path, snap);
  };

  auto worker = [&]() {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= snap.branches.size() || out_of_time) return;
      BranchRecord rec;
      {
        std::lock_guard lock(mu);
        rec = snap.branches[index];
      }
      if (rec.complete) continue;
      const std::vector<Int> resume = rec.last_completed_prefix;
      PruneCounters local;
      std::uint64_t since = 0;
      const bool done = enumerate_branch(
          config, rec.q1,
          [&](const PrefixNode& node) {
            classify(config, node, rec);
            if (++since % 256 == 0 && std::chrono::steady_clock::now() > deadline) {
              out_of_time = true;
              return false;
            }
            if (since % options.checkpoint_every == 0) {
              checkpoint(index, rec, local);
              local = {};
            }
            return !out_of_time.load();
          },
          resume.empty() ? nullptr : &resume, &local);
      rec.complete = done;
      checkpoint(index, rec, local);
      if (!done) return;
    }
  };

  const unsigned n = std::max(1U, options.workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  outcome.finished = std::all_of(snap.branches.begin(), snap.branches.end(),
                                 [](const BranchRecord& b) { return b.complete; });
  return outcome;
}

}  // namespace ppn
