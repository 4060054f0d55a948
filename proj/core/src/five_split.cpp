#include "ppn/five_split.hpp"

#include <gmpxx.h>

#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

TerminalPort::TerminalPort(Int R, Int c, Int p) : R_(std::move(R)), c_(std::move(c)), p_(std::move(p)) {
  if (R_ < 1 || c_ < 1) throw Error(Errc::InvalidArgument, "terminal port needs R, c >= 1");
  if (c_ * p_ - R_ != 1) throw Error(Errc::InvalidArgument, "terminal port requires c*p - R = 1");
  if (!is_probable_prime(p_)) throw Error(Errc::NotPrime, to_string(p_) + " is not prime");
}

TerminalPort TerminalPort::ambient(const PrimeFactorization& R, Int p) {
  TerminalPort tp(R.value(), defect(R), std::move(p));
  tp.ambient_ = true;
  return tp;
}

Int eval_F(const TerminalPort& tp, const Point5& x) {
  Int prod = 1;
  for (const auto& v : x) prod *= v;
  Int sym = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    Int term = 1;
    for (std::size_t j = 0; j < 5; ++j)
      if (j != i) term *= x[j];
    sym += term;
  }
  return tp.c() * prod - tp.R() * sym - 1;
}

std::uint64_t eval_F_mod(const TerminalPort& tp, const Point5& x, std::uint64_t l) {
  return mod_u64(eval_F(tp, x), l);
}

Point5 local_witness(const TerminalPort& tp, std::uint64_t l) {
  if (tp.p() <= 3) throw Error(Errc::SmallTerminalPrime, "local witness requires p > 3");
  if (l < 2 || !is_prime_u64(l)) throw Error(Errc::InvalidArgument, std::to_string(l) + " is not prime");
  const Int L = from_u64(l);
  const Int minus_one = L - 1;
  if (tp.p() != L) return {mod(tp.p(), L), 1, minus_one, 1, minus_one};

  // l = p: solve y1*...*y5 - (y1+...+y5) = c in reciprocal coordinates.
  const Int c = mod(tp.c(), L);
  Point5 y;
  if (c != 0) {
    const Int third = mod(c * *mod_inverse(3, L), L);
    y = {third, 1, minus_one, 2, L - 2};
  } else {
    y = {1, 1, minus_one, 1, minus_one};
  }
  Point5 x;
  for (std::size_t i = 0; i < 5; ++i) x[i] = *mod_inverse(y[i], L);
  return x;
}

std::uint64_t local_bruteforce(const TerminalPort& tp, std::uint64_t l) {
  if (l > kBruteforceModulusCap) throw Error(Errc::ModulusTooLarge, "brute force limited to l <= 31");
  if (l < 2 || !is_prime_u64(l)) throw Error(Errc::InvalidArgument, std::to_string(l) + " is not prime");
  const std::uint64_t c = mod_u64(tp.c(), l);
  const std::uint64_t R = mod_u64(tp.R(), l);
  // F = P * (c - R * sum 1/x_i) - 1 with P the product; use
  // e2..e4 style accumulation: track product and the 4-fold symmetric sum.
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a < l; ++a)
    for (std::uint64_t b = 1; b < l; ++b) {
      const std::uint64_t ab = a * b % l;
      const std::uint64_t s_ab = (a + b) % l;  // e1 of (a, b)
      for (std::uint64_t d = 1; d < l; ++d) {
        const std::uint64_t p3 = ab * d % l;
        const std::uint64_t e2_3 = (ab + s_ab * d) % l;  // e2 of (a, b, d)
        for (std::uint64_t e = 1; e < l; ++e) {
          const std::uint64_t p4 = p3 * e % l;
          const std::uint64_t e3_4 = (p3 + e2_3 * e) % l;  // e3 of (a, b, d, e)
          for (std::uint64_t f = 1; f < l; ++f) {
            const std::uint64_t p5 = p4 * f % l;
            const std::uint64_t e4_5 = (p4 + e3_4 * f) % l;  // e4 of all five
            const std::uint64_t value = (c * p5 + l * l - R * e4_5 % l + l - 1) % l;
            if (value == 0) ++count;
          }
        }
      }
    }
  return count;
}

namespace {

std::string decimal(const Rational& q, int digits) {
  mpf_class f(q, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  mp_exp_t exp = 0;
  std::string mantissa = f.get_str(exp, 10, digits);
  if (mantissa.empty()) return "0";
  std::string sign;
  if (mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  return sign + "0." + mantissa + "e" + std::to_string(exp);
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

RealWitness real_witness(const TerminalPort& tp, const Rational& y5, const Rational& tolerance) {
  if (tp.R() <= 4) throw Error(Errc::InvalidArgument, "real witness requires R > 4");
  if (y5 <= 0) throw Error(Errc::InvalidArgument, "y5 must be positive");
  Rational target(tp.c(), tp.R());
  target.canonicalize();
  if (y5 >= target) throw Error(Errc::NoPositiveRoot, "y5 must be below c/R");

  const Rational R(tp.R());
  auto f = [&](const Rational& s) {
    Rational s4 = s * s;
    s4 *= s4;
    return Rational(4 * s + y5 + s4 * y5 / R - target);
  };

  // f is increasing on s > 0, f(0) = y5 - c/R < 0 and f(c/(4R)) > 0.
  Rational lo = 0;
  Rational hi = target / 4;
  Rational mid = hi;
  Rational value = f(mid);
  while (abs_q(value) >= tolerance) {
    mid = (lo + hi) / 2;
    value = f(mid);
    if (value < 0) lo = mid;
    else hi = mid;
  }

  RealWitness out;
  out.s = mid;
  out.residual = abs_q(value);
  out.s_decimal = decimal(mid, 40);
  const Rational p(tp.p());
  out.coordinates_exceed_p = (1 / mid > p) && (1 / y5 > p);
  return out;
}

TerminalPort split_step(const Port& port, const std::array<Int, 5>& primes) {
  if (!port.is_ambient()) throw Error(Errc::NotAmbient, "split step needs an ambient port");
  const auto B = PrimeFactorization::from_primes({primes.begin(), primes.end()});
  if (gcd(B.value(), port.R()) != 1) throw Error(Errc::NotCoprime, "new primes must not divide R");
  if (!fills(port, B)) throw Error(Errc::NotAFilling, B.to_string() + " does not fill " + port.to_string());
  const auto A = PrimeFactorization::from_primes({primes.begin(), primes.begin() + 4});
  const Port next = induced_port(port, A);  // ambient: c' = R' - derivative(R')
  if (next.c() != port.c() * A.value() - port.R() * derivative(A))
    throw std::logic_error("split step bookkeeping mismatch");
  TerminalPort tp = TerminalPort::ambient(*next.R_factorization(), primes[4]);
  return tp;
}

}  // namespace ppn
