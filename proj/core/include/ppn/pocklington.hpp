#pragma once

#include <string>
#include <vector>

#include "ppn/bigint.hpp"
#include "ppn/factorize.hpp"
#include "ppn/primality.hpp"

namespace ppn {

/// Fully factored Pocklington certificate. Prime factors of p-1 at or above
/// kSmallPrimeBound carry a child certificate; smaller ones are re-proved by
/// trial division during verification.
///
/// A `leaf` node asserts primality by trial division (p < kSmallPrimeBound).
/// A `probable` leaf records a prime whose p-1 could not be factored within
/// budget; trees containing one verify only conditionally.
struct PocklingtonCertificate {
  Int p;
  Int base;
  std::vector<PrimePower> p_minus_1_factors;
  std::vector<PocklingtonCertificate> children;
  bool leaf = false;
  bool probable = false;

  friend bool operator==(const PocklingtonCertificate&, const PocklingtonCertificate&) = default;
};

enum class CertVerdict { Verified, ConditionallyVerified, Invalid };

std::string_view verdict_name(CertVerdict v) noexcept;

struct GcdRow {
  Int q;
  Int gcd;
};

struct CertReport {
  Int p;
  CertVerdict verdict = CertVerdict::Invalid;
  std::string failure;  // first violated condition, empty when not Invalid
  bool fermat_holds = false;
  std::vector<GcdRow> gcd_rows;
  std::vector<CertReport> children;

  bool ok() const { return verdict != CertVerdict::Invalid; }
  /// q / gcd table for the top-level node.
  std::string table() const;
};

CertReport pocklington_verify(const PocklingtonCertificate& cert);

/// Smallest base a >= 2 meeting every Pocklington condition for p given the
/// complete factorization of p-1, or nullopt if none below `max_base`.
std::optional<Int> find_pocklington_base(const Int& p, const std::vector<PrimePower>& p_minus_1,
                                         unsigned max_base = 10'000);

/// Builds a recursive certificate. Throws Error(CertificationFailed) when p is
/// not a probable prime or when p-1 cannot be factored within budget.
PocklingtonCertificate certify_prime(const Int& p, const FactorBudget& budget = {});

}  // namespace ppn
