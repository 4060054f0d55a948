#include "ppn/discriminant.hpp"

#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

DiscriminantProblem build_discriminant_problem(const Port& port, const Int& m) {
  const Int& R = port.R();
  const Int& c = port.c();
  auto inv = mod_inverse(c, R);
  if (!inv || !port.coprime()) throw Error(Errc::NotCoprimePort, "gcd(R,c) > 1 for " + port.to_string());
  Int P0 = *inv;
  if (P0 == 0) P0 = R;  // R == 1: the class of c^{-1} is represented by R itself
  Int S0 = (c * P0 - 1) / R;

  Int floor_ratio;
  mpz_fdiv_q(floor_ratio.get_mpz_t(), R.get_mpz_t(), c.get_mpz_t());
  Int U = std::max(Int(m + 1), Int(floor_ratio + 1));

  const Int num = U * U - S0 * U + P0;
  const Int den = c * U - R;
  Int T;
  mpz_fdiv_q(T.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return {port, m, std::move(P0), std::move(S0), std::move(U), std::move(T)};
}

Int discriminant(const DiscriminantProblem& problem, const Int& t) {
  const Int S = problem.S(t);
  return S * S - 4 * problem.P(t);
}

ScanStats scan_last_two_stats(const DiscriminantProblem& problem, const Int& t_lo, const Int& t_hi,
                              bool allow_beyond_bound) {
  if (t_lo < 0) throw Error(Errc::InvalidArgument, "t must be nonnegative");
  ScanStats stats;
  if (t_hi < t_lo) return stats;
  if (t_hi > problem.T && !allow_beyond_bound)
    throw Error(Errc::RangeExceedsBound,
                "t range ends at " + to_string(t_hi) + " beyond T=" + to_string(problem.T));

  const Int& R = problem.port.R();
  const Int& c = problem.port.c();
  Int S = problem.S(t_lo);
  Int P = problem.P(t_lo);
  Int D, root, u, v;
  for (Int t = t_lo; t <= t_hi; ++t, S += c, P += R) {
    ++stats.t_checked;
    D = S * S - 4 * P;
    if (D < 0 || !mpz_perfect_square_p(D.get_mpz_t())) continue;
    ++stats.squares;
    mpz_sqrt(root.get_mpz_t(), D.get_mpz_t());
    if (root == 0) continue;  // u == v
    u = (S - root) / 2;
    v = (S + root) / 2;
    if (u < problem.U) continue;
    if (mpz_divisible_p(R.get_mpz_t(), u.get_mpz_t()) || mpz_divisible_p(R.get_mpz_t(), v.get_mpz_t())) continue;
    if (!is_probable_prime(u) || !is_probable_prime(v)) continue;
    stats.hits.push_back({t, u, v});
  }
  return stats;
}

std::vector<TwoPrimeHit> scan_last_two(const DiscriminantProblem& problem, const Int& t_lo, const Int& t_hi,
                                       bool allow_beyond_bound) {
  return scan_last_two_stats(problem, t_lo, t_hi, allow_beyond_bound).hits;
}

std::vector<TwoPrimeHit> scan_last_two(const DiscriminantProblem& problem) {
  return scan_last_two(problem, 0, problem.T);
}

}  // namespace ppn
