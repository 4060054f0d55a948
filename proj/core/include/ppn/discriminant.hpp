#pragma once

#include <cstdint>
#include <vector>

#include "ppn/ports.hpp"

namespace ppn {

/// Last-two-prime completion data for a port (R, c) with gcd(R, c) = 1 and a
/// floor prime m. The final pair u < v satisfies uv = P0 + tR and
/// u + v = S0 + ct for some t in [0, T]; the interval is empty when T < 0.
struct DiscriminantProblem {
  Port port;
  Int m;
  Int P0;  // c^{-1} mod R
  Int S0;  // (c*P0 - 1) / R
  Int U;   // max(m + 1, floor(R/c) + 1): lower bound for u
  Int T;   // floor((U^2 - S0*U + P0) / (cU - R))

  bool empty() const { return T < 0; }
  Int P(const Int& t) const { return P0 + t * port.R(); }
  Int S(const Int& t) const { return S0 + t * port.c(); }
};

/// Throws NotCoprimePort.
DiscriminantProblem build_discriminant_problem(const Port& port, const Int& m);

/// D(t) = (S0 + ct)^2 - 4(P0 + tR).
Int discriminant(const DiscriminantProblem& problem, const Int& t);

struct TwoPrimeHit {
  Int t;
  Int u;
  Int v;

  friend bool operator==(const TwoPrimeHit&, const TwoPrimeHit&) = default;
};

struct ScanStats {
  std::uint64_t t_checked = 0;
  std::uint64_t squares = 0;  // t with D(t) a perfect square
  std::vector<TwoPrimeHit> hits;
};

/// Every t in [t_lo, t_hi] whose discriminant is a square and yields primes
/// U <= u < v not dividing R, ascending in t. Ranges past T are rejected with
/// RangeExceedsBound unless allow_beyond_bound is set.
ScanStats scan_last_two_stats(const DiscriminantProblem& problem, const Int& t_lo, const Int& t_hi,
                              bool allow_beyond_bound = false);

std::vector<TwoPrimeHit> scan_last_two(const DiscriminantProblem& problem, const Int& t_lo, const Int& t_hi,
                                       bool allow_beyond_bound = false);

/// Scan of the whole interval [0, T].
std::vector<TwoPrimeHit> scan_last_two(const DiscriminantProblem& problem);

}  // namespace ppn
