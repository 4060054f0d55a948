#include "ppn/primality.hpp"

#include <array>
#include <vector>

#include "ppn/error.hpp"

namespace ppn {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

std::vector<std::uint32_t> sieve_primes(std::uint32_t bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = u64(i) * i; j < bound; j += i) composite[j] = true;
  }
  return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Halving modulo odd n.
void half_mod(Int& x, const Int& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  x >>= 1;
}

}  // namespace

std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> table = sieve_primes(kSmallPrimeBound);
  return table;
}

bool is_prime_by_trial(const Int& n) {
  if (n < 2) return false;
  const Int limit = Int(kSmallPrimeBound) * kSmallPrimeBound;
  if (n >= limit) throw Error(Errc::InvalidArgument, "trial division bound exceeded for " + to_string(n));
  for (auto p : small_primes()) {
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return n == p;
  }
  return true;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sinclair's base set: deterministic for all n < 2^64.
  static constexpr std::array<u64, 7> kBases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : kBases) {
    a %= n;
    if (a == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_strong_probable_prime(const Int& n, const Int& base) {
  const Int n1 = n - 1;
  Int d = n1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool is_strong_lucas_probable_prime(const Int& n) {
  // Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long d_abs = 5;
  long sign = 1;
  Int D;
  for (;;) {
    D = sign * d_abs;
    const int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(D) != n) return false;
    d_abs += 2;
    sign = -sign;
    if (d_abs == 21 && mpz_perfect_square_p(n.get_mpz_t())) return false;
  }
  const Int P = 1;
  const Int Q = (1 - D) / 4;

  Int dd = n + 1;
  const auto s = mpz_scan1(dd.get_mpz_t(), 0);
  dd >>= s;

  Int U = 1, V = P, Qk = mod(Q, n);
  const Int Dm = mod(D, n);
  const auto bits = mpz_sizeinbase(dd.get_mpz_t(), 2);
  for (long i = static_cast<long>(bits) - 2; i >= 0; --i) {
    U = U * V % n;
    V = mod(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (mpz_tstbit(dd.get_mpz_t(), i)) {
      Int u_next = P * U + V;
      Int v_next = Dm * U + P * V;
      half_mod(u_next, n);
      half_mod(v_next, n);
      U = mod(u_next, n);
      V = mod(v_next, n);
      Qk = mod(Qk * Q, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk, n);
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (auto p : small_primes().first(168)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (!is_strong_probable_prime(n, 2)) return false;
  if (!is_strong_lucas_probable_prime(n)) return false;

  gmp_randclass rng(gmp_randinit_mt);
  Int seed = n ^ Int("9e3779b97f4a7c15", 16);
  rng.seed(seed);
  const Int span = n - 3;
  for (int round = 0; round < 40; ++round) {
    const Int a = rng.get_z_range(span) + 2;
    if (!is_strong_probable_prime(n, a)) return false;
  }
  return true;
}

Int floor_sqrt(const Int& n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "floor_sqrt of negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  return floor_sqrt(n);
}

std::optional<std::uint32_t> small_prime_factor(const Int& n, std::uint32_t bound) {
  for (auto p : small_primes()) {
    if (p >= bound) break;
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return p;
  }
  if (n > 1 && n < bound) return to_u64(n);
  return std::nullopt;
}

}  // namespace ppn
