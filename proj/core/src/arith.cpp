#include "ppn/arith.hpp"

#include <algorithm>

#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

PrimeFactorization::PrimeFactorization(std::vector<Int> primes) : primes_(std::move(primes)) {
  value_ = product(primes_);
}

PrimeFactorization PrimeFactorization::from_primes(std::vector<Int> primes) {
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i > 0 && primes[i] == primes[i - 1])
      throw Error(Errc::DuplicatePrime, "prime " + ppn::to_string(primes[i]) + " repeated");
    if (!is_probable_prime(primes[i])) throw Error(Errc::NotPrime, ppn::to_string(primes[i]) + " is not prime");
  }
  return PrimeFactorization(std::move(primes));
}

PrimeFactorization PrimeFactorization::trusted(std::vector<Int> primes) {
  return PrimeFactorization(std::move(primes));
}

bool PrimeFactorization::contains(const Int& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

const Int& PrimeFactorization::largest() const {
  if (primes_.empty()) throw Error(Errc::InvalidArgument, "empty factorization has no largest prime");
  return primes_.back();
}

PrimeFactorization PrimeFactorization::with_prime(const Int& q) const {
  if (contains(q)) throw Error(Errc::DuplicatePrime, ppn::to_string(q) + " already divides " + ppn::to_string(value_));
  if (!is_probable_prime(q)) throw Error(Errc::NotPrime, ppn::to_string(q) + " is not prime");
  auto primes = primes_;
  primes.insert(std::upper_bound(primes.begin(), primes.end(), q), q);
  return PrimeFactorization(std::move(primes));
}

PrimeFactorization PrimeFactorization::merged(const PrimeFactorization& other) const {
  std::vector<Int> primes;
  primes.reserve(primes_.size() + other.primes_.size());
  std::merge(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
             std::back_inserter(primes));
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw Error(Errc::NotCoprime, ppn::to_string(value_) + " and " + ppn::to_string(other.value_) + " share a prime");
  return PrimeFactorization(std::move(primes));
}

PrimeFactorization PrimeFactorization::subset(std::uint64_t mask) const {
  std::vector<Int> primes;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (mask >> i & 1U) primes.push_back(primes_[i]);
  }
  return PrimeFactorization(std::move(primes));
}

std::string PrimeFactorization::to_string() const {
  return primes_.empty() ? std::string("1") : join(primes_, "*");
}

PrimeFactorization factor_squarefree(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw Error(Errc::InvalidArgument, "factor_squarefree requires n >= 1");
  // Cheap square-divisor screen before the full factorization.
  Int rest = n;
  for (auto p : small_primes()) {
    if (p >= budget.trial_bound || Int(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      if (mpz_divisible_ui_p(rest.get_mpz_t(), p))
        throw Error(Errc::NotSquarefree, std::to_string(p) + "^2 divides " + to_string(n));
    }
  }
  if (rest > 1 && mpz_perfect_power_p(rest.get_mpz_t()))
    throw Error(Errc::NotSquarefree, to_string(n) + " has a perfect-power cofactor");

  auto f = factorize(n, budget);
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) throw Error(Errc::NotSquarefree, to_string(pp.prime) + "^2 divides " + to_string(n));
  }
  if (!f.complete) throw Error(Errc::FactorizationIncomplete, "could not fully factor " + to_string(n));
  return PrimeFactorization::trusted(f.primes());
}

Int derivative(const PrimeFactorization& f) {
  Int sum = 0;
  for (const auto& p : f.primes()) sum += f.value() / p;
  return sum;
}

Int defect(const PrimeFactorization& f) { return f.value() - derivative(f); }

bool is_ppn(const PrimeFactorization& f) { return derivative(f) == f.value() - 1; }

bool is_ppn_rational(const PrimeFactorization& f) {
  Rational sum(1, f.value());
  sum.canonicalize();
  for (const auto& p : f.primes()) sum += Rational(Int(1), p);
  return sum == 1;
}

DefectState DefectState::of(PrimeFactorization D) {
  Int a = defect(D);
  return {std::move(D), std::move(a)};
}

DefectState defect_step(const DefectState& s, const Int& q) {
  if (s.D.contains(q)) throw Error(Errc::DuplicatePrime, to_string(q) + " already divides D");
  auto D = s.D.with_prime(q);
  Int a = q * s.a - s.D.value();
  return {std::move(D), std::move(a)};
}

std::optional<Int> chain_completion_prime(const DefectState& s) {
  if (s.a <= 0) throw Error(Errc::NonpositiveDefect, "defect " + to_string(s.a) + " is not positive");
  const Int num = s.D.value() + 1;
  if (!mpz_divisible_p(num.get_mpz_t(), s.a.get_mpz_t())) return std::nullopt;
  Int q = num / s.a;
  if (!is_probable_prime(q) || s.D.contains(q)) return std::nullopt;
  return q;
}

}  // namespace ppn
