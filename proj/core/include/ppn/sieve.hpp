#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppn/discriminant.hpp"

namespace ppn {

inline constexpr std::uint32_t kDefaultSieveModulusCap = 10'000;

/// Squares mod l and the classes t mod l with D(t) a square mod l.
struct SieveModulus {
  std::uint32_t l = 0;
  std::vector<std::uint32_t> qr_set;   // Q_l, ascending
  std::vector<std::uint32_t> allowed;  // E_l, ascending

  friend bool operator==(const SieveModulus&, const SieveModulus&) = default;
};

/// Exact (Q_l, E_l) by enumeration. Throws InvalidArgument when l is not a
/// prime at most `cap`.
SieveModulus sieve_allowed_classes(const DiscriminantProblem& problem, std::uint32_t l,
                                   std::uint32_t cap = kDefaultSieveModulusCap);

/// Primes up to 97.
std::vector<std::uint32_t> default_sieve_moduli();

/// A t in [0, T] lying in an allowed class for every modulus, if any. The
/// smallest such t is returned for short intervals; long intervals are
/// searched by CRT over the allowed classes and return the first found.
std::optional<Int> first_surviving_t(const Int& T, const std::vector<SieveModulus>& moduli);

/// Same question answered by scanning t = 0..T directly. Independent of the
/// CRT search; T must be small.
std::optional<Int> first_surviving_t_by_scan(const Int& T, const std::vector<SieveModulus>& moduli);

struct ExclusionWitness {
  Int t;
  Int D;
  std::uint32_t l = 0;
  std::uint32_t residue = 0;  // D mod l, a nonresidue

  friend bool operator==(const ExclusionWitness&, const ExclusionWitness&) = default;
};

/// Residue-class proof that the two-prime completion of `base_port` after
/// appending `prefix` has no square discriminant on [0, T].
struct SieveExclusionCertificate {
  Port base_port;
  std::vector<Int> prefix;
  DiscriminantProblem problem;
  std::vector<SieveModulus> moduli;
  bool excluded = true;
  std::optional<ExclusionWitness> witness;  // present for single-point intervals

  Int combined_modulus() const;
};

/// Certificate for the bare problem (empty prefix), or nullopt when some t
/// survives every modulus.
std::optional<SieveExclusionCertificate> build_exclusion_certificate(const DiscriminantProblem& problem,
                                                                     const std::vector<std::uint32_t>& moduli);

/// Certificate for base_port after a prefix; m defaults to the largest prefix prime.
std::optional<SieveExclusionCertificate> build_exclusion_certificate(const Port& base_port,
                                                                     const std::vector<Int>& prefix,
                                                                     const std::optional<Int>& m,
                                                                     const std::vector<std::uint32_t>& moduli);

struct CertificateCheck {
  bool valid = false;
  std::string reason;  // first mismatch; empty when valid
};

/// Recomputes the induced port, problem data, every Q_l and E_l, the
/// coverage claim and the witness.
CertificateCheck verify_exclusion_certificate(const SieveExclusionCertificate& cert);

}  // namespace ppn
