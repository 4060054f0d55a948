#include "ppn/factorize.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, const Int& n) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  h ^= mpz_getlimbn(n.get_mpz_t(), 0) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= mpz_sizeinbase(n.get_mpz_t(), 2) * 0xbf58476d1ce4e5b9ULL;
  return h;
}

Int abs_diff(const Int& a, const Int& b) { return a >= b ? Int(a - b) : Int(b - a); }

}  // namespace

Int GeneralFactorization::factored_part() const {
  Int p = 1;
  for (const auto& f : factors) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    p *= pw;
  }
  return p;
}

std::vector<Int> GeneralFactorization::primes() const {
  std::vector<Int> out;
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

std::string GeneralFactorization::to_string() const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += "*";
    out += ppn::to_string(f.prime);
    if (f.exponent > 1) out += "^" + std::to_string(f.exponent);
  }
  for (const auto& u : unfactored) {
    if (!out.empty()) out += "*";
    out += "(" + ppn::to_string(u) + ")";
  }
  return out.empty() ? "1" : out;
}

std::optional<Int> pollard_rho_brent(const Int& n, std::uint64_t seed,
                                     std::chrono::steady_clock::time_point deadline) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  std::mt19937_64 rng(mix_seed(seed, n));
  const Int span = n - 1;
  constexpr unsigned long kBatch = 128;

  auto draw = [&]() {
    Int v = from_u64(rng());
    v = mod(v, span) + 1;
    return v;
  };

  for (;;) {
    const Int c = draw();
    Int y = draw();
    Int x, ys, q = 1, g = 1, tmp;
    auto step = [&](Int& v) {
      mpz_mul(tmp.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
      mpz_add(tmp.get_mpz_t(), tmp.get_mpz_t(), c.get_mpz_t());
      mpz_tdiv_r(v.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
    };

    for (unsigned long r = 1; g == 1; r <<= 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      for (unsigned long k = 0; k < r && g == 1; k += kBatch) {
        if (std::chrono::steady_clock::now() > deadline) return std::nullopt;
        ys = y;
        const auto lim = std::min(kBatch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          step(y);
          Int diff = abs_diff(x, y);
          mpz_mul(tmp.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
          mpz_tdiv_r(q.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      // Batch overshot: replay the last block one step at a time.
      do {
        step(ys);
        g = gcd(abs_diff(x, ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

GeneralFactorization factorize(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw Error(Errc::InvalidArgument, "factorize requires n >= 1");
  GeneralFactorization result;
  result.n = n;
  std::map<Int, unsigned> found;

  Int rest = n;
  for (auto p : small_primes()) {
    if (p >= budget.trial_bound) break;
    if (Int(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      ++found[Int(p)];
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
  }

  std::vector<Int> pending;
  if (rest > 1) pending.push_back(rest);
  std::uint64_t attempt = 0;
  while (!pending.empty()) {
    Int m = std::move(pending.back());
    pending.pop_back();
    if (is_probable_prime(m)) {
      ++found[m];
      continue;
    }
    Int root;
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      // m = r^k: split off the smallest root.
      for (unsigned long k = mpz_sizeinbase(m.get_mpz_t(), 2); k >= 2; --k) {
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
          for (unsigned long i = 0; i < k; ++i) pending.push_back(root);
          break;
        }
      }
      continue;
    }
    const auto deadline = std::chrono::steady_clock::now() + budget.time_per_composite;
    auto factor = pollard_rho_brent(m, budget.seed + attempt++, deadline);
    if (!factor) {
      result.unfactored.push_back(m);
      result.complete = false;
      continue;
    }
    pending.push_back(*factor);
    pending.push_back(m / *factor);
  }

  for (auto& [p, e] : found) result.factors.push_back({p, e});
  std::sort(result.unfactored.begin(), result.unfactored.end());
  return result;
}

}  // namespace ppn
