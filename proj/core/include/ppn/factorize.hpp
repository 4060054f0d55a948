#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "ppn/bigint.hpp"

namespace ppn {

struct PrimePower {
  Int prime;
  unsigned exponent = 1;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Effort limits for factorize. The seed fixes the rho polynomial sequence so
/// that output is reproducible run-to-run.
struct FactorBudget {
  std::chrono::milliseconds time_per_composite{60'000};
  std::uint64_t seed = 0x70c1'a5ed;
  std::uint32_t trial_bound = 1'000'000;
};

/// Prime-power decomposition of n. When `complete` is false, `unfactored`
/// holds the composite cofactors the budget could not split, and
/// n == prod(factors) * prod(unfactored).
struct GeneralFactorization {
  Int n;
  std::vector<PrimePower> factors;
  std::vector<Int> unfactored;
  bool complete = true;

  Int factored_part() const;
  std::vector<Int> primes() const;
  std::string to_string() const;
};

GeneralFactorization factorize(const Int& n, const FactorBudget& budget = {});

/// One run of Brent's cycle-finding rho with batched gcds on composite odd n.
/// Tries successive polynomial constants until a proper factor appears or the
/// deadline passes.
std::optional<Int> pollard_rho_brent(const Int& n, std::uint64_t seed,
                                     std::chrono::steady_clock::time_point deadline);

}  // namespace ppn
