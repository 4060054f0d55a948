#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ppn/bigint.hpp"

namespace ppn {

/// Bound of the cached small-prime table and of trial division defaults.
inline constexpr std::uint32_t kSmallPrimeBound = 1'000'000;

/// All primes below kSmallPrimeBound, ascending.
std::span<const std::uint32_t> small_primes();

/// Exact primality for n < kSmallPrimeBound^2 by trial division; throws for larger n.
bool is_prime_by_trial(const Int& n);

/// Deterministic Miller-Rabin on 64-bit input (fixed seven-base witness set).
bool is_prime_u64(std::uint64_t n);

/// Strong probable-prime test to a single base (n odd, n > 3).
bool is_strong_probable_prime(const Int& n, const Int& base);

/// Strong Lucas probable-prime test with Selfridge parameters (n odd, not a square).
bool is_strong_lucas_probable_prime(const Int& n);

/// Exact below 2^64. Above: base-2 Miller-Rabin, strong Lucas, and 40 further
/// Miller-Rabin rounds with witnesses drawn from a generator seeded by n.
bool is_probable_prime(const Int& n);

/// Floor of the square root; n >= 0.
Int floor_sqrt(const Int& n);

/// r with r*r == n, or nullopt when n is negative or not a perfect square.
std::optional<Int> exact_sqrt(const Int& n);

/// Smallest prime factor of n below `bound` (n >= 2), if any.
std::optional<std::uint32_t> small_prime_factor(const Int& n, std::uint32_t bound = kSmallPrimeBound);

}  // namespace ppn
