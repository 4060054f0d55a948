#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "ppn/ports.hpp"

namespace ppn {

/// (R, c, p) with c*p - R = 1 and p prime.
class TerminalPort {
 public:
  /// Throws InvalidArgument when c*p - R != 1, NotPrime when p is composite.
  TerminalPort(Int R, Int c, Int p);

  /// Ambient variant: c must equal R - derivative(R).
  static TerminalPort ambient(const PrimeFactorization& R, Int p);

  const Int& R() const noexcept { return R_; }
  const Int& c() const noexcept { return c_; }
  const Int& p() const noexcept { return p_; }
  bool is_ambient() const noexcept { return ambient_; }

 private:
  Int R_, c_, p_;
  bool ambient_ = false;
};

using Point5 = std::array<Int, 5>;

/// c*x1*...*x5 - R * sum_i prod_{j != i} x_j - 1.
Int eval_F(const TerminalPort& tp, const Point5& x);

/// The same value reduced into [0, l).
std::uint64_t eval_F_mod(const TerminalPort& tp, const Point5& x, std::uint64_t l);

/// Nonzero residues (x1..x5) mod l with F = 0 mod l:
/// (p, 1, -1, 1, -1) for l != p; for l = p the inverses of (c/3, 1, -1, 2, -2)
/// when c != 0 mod p, else of (1, 1, -1, 1, -1). Throws SmallTerminalPrime for p <= 3.
Point5 local_witness(const TerminalPort& tp, std::uint64_t l);

inline constexpr std::uint64_t kBruteforceModulusCap = 31;

/// Number of points of F = 0 in (F_l^*)^5. Throws ModulusTooLarge for l > 31.
std::uint64_t local_bruteforce(const TerminalPort& tp, std::uint64_t l);

struct RealWitness {
  Rational s;           // approximate root of 4s + y5 + s^4 y5 / R = c / R
  Rational residual;    // |left - right| at s
  std::string s_decimal;
  bool coordinates_exceed_p = false;  // 1/s and 1/y5 both above p
};

/// Exact-rational bisection on (0, c/(4R)] until the residual is below
/// `tolerance`. Throws InvalidArgument unless R > 4 and y5 > 0;
/// NoPositiveRoot when y5 >= c/R.
RealWitness real_witness(const TerminalPort& tp, const Rational& y5,
                         const Rational& tolerance = Rational(Int(1), Int("1000000000000000000000000000000")));

/// One recursion step: given an ambient port and five new primes whose product
/// fills it, the first four become part of the modulus and the fifth is the
/// new terminal prime. Throws NotAFilling / NotAmbient / NotCoprime.
TerminalPort split_step(const Port& port, const std::array<Int, 5>& primes);

}  // namespace ppn
