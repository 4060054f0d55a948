#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppn/bigint.hpp"
#include "ppn/factorize.hpp"

namespace ppn {

/// A squarefree positive integer held as its strictly increasing prime list.
/// The empty list represents 1.
class PrimeFactorization {
 public:
  PrimeFactorization() = default;

  /// Validates and sorts: every entry must be a (probable) prime and entries
  /// must be distinct. Throws NotPrime / DuplicatePrime.
  static PrimeFactorization from_primes(std::vector<Int> primes);

  /// Skips validation; caller guarantees a strictly increasing list of primes.
  static PrimeFactorization trusted(std::vector<Int> primes);

  const std::vector<Int>& primes() const noexcept { return primes_; }
  const Int& value() const noexcept { return value_; }
  std::size_t omega() const noexcept { return primes_.size(); }
  bool empty() const noexcept { return primes_.empty(); }

  bool contains(const Int& p) const;
  const Int& largest() const;

  /// Adjoins one new prime. Throws DuplicatePrime.
  PrimeFactorization with_prime(const Int& q) const;

  /// Product with a factorization sharing no prime. Throws NotCoprime.
  PrimeFactorization merged(const PrimeFactorization& other) const;

  /// Sub-product selected by bit i of mask (i indexes primes()).
  PrimeFactorization subset(std::uint64_t mask) const;

  std::string to_string() const;

  friend bool operator==(const PrimeFactorization& a, const PrimeFactorization& b) {
    return a.primes_ == b.primes_;
  }

 private:
  explicit PrimeFactorization(std::vector<Int> primes);

  std::vector<Int> primes_;
  Int value_ = 1;
};

/// Factors n and returns it as a squarefree factorization.
/// Throws NotSquarefree or FactorizationIncomplete.
PrimeFactorization factor_squarefree(const Int& n, const FactorBudget& budget = {});

/// Arithmetic derivative of a squarefree integer: sum over p | n of n/p.
/// The empty factorization (n = 1) has derivative 0.
Int derivative(const PrimeFactorization& f);

/// n - derivative(n).
Int defect(const PrimeFactorization& f);

bool is_ppn(const PrimeFactorization& f);

/// The same test in reciprocal form, 1/n + sum 1/p == 1, in exact rationals.
bool is_ppn_rational(const PrimeFactorization& f);

/// (D, a) with a = D - derivative(D).
struct DefectState {
  PrimeFactorization D;
  Int a;

  static DefectState of(PrimeFactorization D);
};

/// (D, a) -> (Dq, qa - D). Throws DuplicatePrime when q | D.
DefectState defect_step(const DefectState& s, const Int& q);

/// The prime q = (D+1)/a completing the state in one step, if it exists.
/// Throws NonpositiveDefect when a <= 0.
std::optional<Int> chain_completion_prime(const DefectState& s);

}  // namespace ppn
