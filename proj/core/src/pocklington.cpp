#include "ppn/pocklington.hpp"

#include <algorithm>
#include <sstream>

#include "ppn/error.hpp"

namespace ppn {

std::string_view verdict_name(CertVerdict v) noexcept {
  switch (v) {
    case CertVerdict::Verified: return "verified";
    case CertVerdict::ConditionallyVerified: return "conditionally verified";
    case CertVerdict::Invalid: return "invalid";
  }
  return "invalid";
}

std::string CertReport::table() const {
  std::ostringstream os;
  os << "q | p-1    gcd(a^((p-1)/q)-1, p)\n";
  for (const auto& row : gcd_rows) os << to_string(row.q) << "    " << to_string(row.gcd) << "\n";
  return os.str();
}

namespace {

CertReport fail(CertReport report, std::string why) {
  report.verdict = CertVerdict::Invalid;
  report.failure = std::move(why);
  return report;
}

}  // namespace

CertReport pocklington_verify(const PocklingtonCertificate& cert) {
  CertReport report;
  report.p = cert.p;
  const std::string where = "p=" + to_string(cert.p) + ": ";

  if (cert.leaf) {
    if (cert.probable) {
      if (!is_probable_prime(cert.p)) return fail(report, where + "probable-prime leaf is composite");
      report.verdict = CertVerdict::ConditionallyVerified;
      return report;
    }
    if (cert.p >= kSmallPrimeBound) return fail(report, where + "trial-division leaf above bound");
    if (!is_prime_by_trial(cert.p)) return fail(report, where + "trial-division leaf is not prime");
    report.verdict = CertVerdict::Verified;
    return report;
  }

  if (cert.p < 3) return fail(report, where + "Pocklington node requires p >= 3");
  if (cert.p_minus_1_factors.empty()) return fail(report, where + "empty factorization of p-1");

  Int product = 1;
  for (std::size_t i = 0; i < cert.p_minus_1_factors.size(); ++i) {
    const auto& f = cert.p_minus_1_factors[i];
    if (f.prime < 2 || f.exponent == 0) return fail(report, where + "malformed factor " + to_string(f.prime));
    if (i > 0 && cert.p_minus_1_factors[i - 1].prime >= f.prime)
      return fail(report, where + "factors not strictly increasing");
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    product *= pw;
  }
  if (product != cert.p - 1) return fail(report, where + "factorization of p-1 is incomplete (product mismatch)");

  const Int n1 = cert.p - 1;
  Int power;
  mpz_powm(power.get_mpz_t(), cert.base.get_mpz_t(), n1.get_mpz_t(), cert.p.get_mpz_t());
  report.fermat_holds = power == 1;

  std::string first_failure;
  if (!report.fermat_holds) first_failure = where + "Fermat congruence a^(p-1) = 1 fails for a=" + to_string(cert.base);

  for (const auto& f : cert.p_minus_1_factors) {
    const Int e = n1 / f.prime;
    mpz_powm(power.get_mpz_t(), cert.base.get_mpz_t(), e.get_mpz_t(), cert.p.get_mpz_t());
    const Int g = gcd(power - 1, cert.p);
    report.gcd_rows.push_back({f.prime, g});
    if (g != 1 && first_failure.empty())
      first_failure = where + "gcd condition fails for q=" + to_string(f.prime) + " (gcd=" + to_string(g) + ")";
  }
  if (!first_failure.empty()) return fail(report, first_failure);

  bool conditional = false;
  std::size_t child_index = 0;
  for (const auto& f : cert.p_minus_1_factors) {
    if (f.prime < kSmallPrimeBound) {
      if (!is_prime_by_trial(f.prime)) return fail(report, where + "factor " + to_string(f.prime) + " is not prime");
      continue;
    }
    if (child_index >= cert.children.size() || cert.children[child_index].p != f.prime)
      return fail(report, where + "missing child certificate for factor " + to_string(f.prime));
    auto child = pocklington_verify(cert.children[child_index++]);
    const bool child_ok = child.ok();
    const bool child_conditional = child.verdict == CertVerdict::ConditionallyVerified;
    std::string child_failure = child.failure;
    report.children.push_back(std::move(child));
    if (!child_ok) return fail(report, child_failure);
    conditional = conditional || child_conditional;
  }
  if (child_index != cert.children.size()) return fail(report, where + "unexpected extra child certificates");

  report.verdict = conditional ? CertVerdict::ConditionallyVerified : CertVerdict::Verified;
  return report;
}

std::optional<Int> find_pocklington_base(const Int& p, const std::vector<PrimePower>& p_minus_1,
                                         unsigned max_base) {
  const Int n1 = p - 1;
  Int power;
  for (unsigned a = 2; a < max_base && a < p; ++a) {
    const Int base = a;
    mpz_powm(power.get_mpz_t(), base.get_mpz_t(), n1.get_mpz_t(), p.get_mpz_t());
    if (power != 1) continue;
    const bool all = std::all_of(p_minus_1.begin(), p_minus_1.end(), [&](const PrimePower& f) {
      const Int e = n1 / f.prime;
      Int pw;
      mpz_powm(pw.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
      return gcd(pw - 1, p) == 1;
    });
    if (all) return base;
  }
  return std::nullopt;
}

namespace {

PocklingtonCertificate certify_node(const Int& p, const FactorBudget& budget, bool top_level) {
  PocklingtonCertificate cert;
  cert.p = p;
  if (p == 2) {
    cert.leaf = true;
    return cert;
  }
  auto f = factorize(p - 1, budget);
  if (!f.complete) {
    if (top_level)
      throw Error(Errc::CertificationFailed, "could not factor p-1 within budget for p=" + to_string(p));
    cert.leaf = true;
    cert.probable = true;
    return cert;
  }
  auto base = find_pocklington_base(p, f.factors);
  if (!base) throw Error(Errc::CertificationFailed, "no Pocklington base found for p=" + to_string(p));
  cert.base = *base;
  cert.p_minus_1_factors = f.factors;
  for (const auto& pf : f.factors) {
    if (pf.prime >= kSmallPrimeBound) cert.children.push_back(certify_node(pf.prime, budget, false));
  }
  return cert;
}

}  // namespace

PocklingtonCertificate certify_prime(const Int& p, const FactorBudget& budget) {
  if (p < 2 || !is_probable_prime(p))
    throw Error(Errc::CertificationFailed, to_string(p) + " is not a probable prime");
  return certify_node(p, budget, true);
}

}  // namespace ppn
