#include <algorithm>

#include "ppn/error.hpp"
#include "ppn/ports.hpp"
#include "ppn/primality.hpp"

namespace ppn {

namespace {

void require_ppn(const PrimeFactorization& K) {
  if (!is_ppn(K)) throw Error(Errc::NotPPN, K.to_string() + " is not a primary pseudoperfect number");
}

std::vector<Int> divisors(const std::vector<PrimePower>& factors) {
  std::vector<Int> out{1};
  for (const auto& f : factors) {
    const std::size_t base = out.size();
    Int pw = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pw *= f.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<Int> inherit_one(const PrimeFactorization& K) {
  require_ppn(K);
  Int q = K.value() + 1;
  if (is_probable_prime(q)) return q;
  return std::nullopt;
}

TwoPrimeAnalysis analyze_inherit_two(const PrimeFactorization& K, const FactorBudget& budget) {
  require_ppn(K);
  const Int& k = K.value();
  const Int N = k * k + 1;
  TwoPrimeAnalysis out;
  out.square_plus_one = factorize(N, budget);
  if (!out.square_plus_one.complete)
    throw Error(Errc::FactorizationIncomplete, "could not factor K^2+1 for K=" + to_string(k));
  if (mpz_perfect_square_p(N.get_mpz_t())) throw std::logic_error("K^2+1 is a perfect square");

  for (const auto& d : divisors(out.square_plus_one.factors)) {
    if (d * d > N) break;
    TwoPrimeCandidate cand;
    cand.d = d;
    cand.e = N / d;
    cand.p = k + cand.d;
    cand.q = k + cand.e;
    cand.p_prime = is_probable_prime(cand.p);
    cand.q_prime = is_probable_prime(cand.q);
    if (!cand.p_prime) cand.p_witness = small_prime_factor(cand.p);
    if (!cand.q_prime) cand.q_witness = small_prime_factor(cand.q);
    if (cand.p_prime && cand.q_prime) {
      if ((cand.p - k) * (cand.q - k) != N) throw std::logic_error("two-prime identity violated");
      out.pairs.push_back({K, cand.p, cand.q});
    }
    out.candidates.push_back(std::move(cand));
  }
  return out;
}

std::vector<InheritancePair> inherit_two(const PrimeFactorization& K, const FactorBudget& budget) {
  return analyze_inherit_two(K, budget).pairs;
}

std::optional<Int> inherit_three(const PrimeFactorization& K, const Int& x, const Int& y) {
  if (x == y) throw Error(Errc::InvalidArgument, "x and y must differ");
  if (K.contains(x) || K.contains(y)) throw Error(Errc::InvalidArgument, "x, y must not divide K");
  const Int& k = K.value();
  const Int den = x * y - k * x - k * y;
  if (den <= 0) return std::nullopt;
  const Int num = k * x * y + 1;
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return std::nullopt;
  Int z = num / den;
  if (z == x || z == y || K.contains(z) || !is_probable_prime(z)) return std::nullopt;
  return z;
}

}  // namespace ppn
