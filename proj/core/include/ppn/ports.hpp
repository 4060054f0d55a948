#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppn/arith.hpp"

namespace ppn {

/// Residual equation c*B - R*derivative(B) = 1 in an unknown squarefree B
/// coprime to R. Ambient ports carry the factorization of R and satisfy
/// c = R - derivative(R); only they can be assembled into a PPN.
class Port {
 public:
  /// Plain port. Throws InvalidArgument unless R >= 1 and c >= 1.
  Port(Int R, Int c);

  /// Port (R, R - derivative(R)). Throws NonpositiveDefect.
  static Port ambient(PrimeFactorization R);

  const Int& R() const noexcept { return R_; }
  const Int& c() const noexcept { return c_; }
  bool is_ambient() const noexcept { return R_fact_.has_value(); }
  const std::optional<PrimeFactorization>& R_factorization() const noexcept { return R_fact_; }

  /// True when gcd(R, c) == 1.
  bool coprime() const;

  std::string to_string() const;

  friend bool operator==(const Port& a, const Port& b) { return a.R_ == b.R_ && a.c_ == b.c_; }

 private:
  Port(Int R, Int c, std::optional<PrimeFactorization> fact);

  Int R_;
  Int c_;
  std::optional<PrimeFactorization> R_fact_;
};

/// c*B - R*derivative(B). For B = 1 this is c.
Int delta(const Port& port, const PrimeFactorization& B);
bool fills(const Port& port, const PrimeFactorization& B);

/// (R, c) -> (Rq, cq - R). Throws PrimeDividesModulus, NonpositiveC.
Port transition(const Port& port, const Int& q);

/// (RA, delta(port, A)). Throws NotCoprime, NonpositiveC.
Port induced_port(const Port& port, const PrimeFactorization& A);

/// Same as Port::ambient.
Port ambient_port(const PrimeFactorization& R);

/// R*B as a verified PPN. Throws NotAmbient, NotCoprime, NotAFilling.
PrimeFactorization assemble_ppn(const Port& port, const PrimeFactorization& B);

/// (R*(B/q) + 1) mod q for each prime q of B, in the order of B.primes().
std::vector<Int> znam_residues(const Port& port, const PrimeFactorization& B);

/// (c^{-1} mod R, -R^{-1} mod c): every filling has B and derivative(B) in
/// these classes. Throws NotCoprimePort.
std::pair<Int, Int> port_congruences(const Port& port);

struct AuditRow {
  PrimeFactorization divisor;
  Int delta;
};

enum class AuditVerdict { Primitive, Inherited };

struct AuditReport {
  Port port;
  PrimeFactorization filling;
  std::vector<AuditRow> rows;  // by divisor size, then lexicographically by prime index
  AuditVerdict verdict = AuditVerdict::Primitive;
  std::optional<PrimeFactorization> inherited_from;  // first proper divisor that fills

  std::string table() const;
};

inline constexpr std::size_t kDefaultAuditCap = 20;

/// Delta for every proper nontrivial divisor of a filling B.
/// Throws NotAFilling, TooManyDivisors.
AuditReport port_primitive_audit(const Port& port, const PrimeFactorization& B,
                                 std::size_t omega_cap = kDefaultAuditCap);

// -- Inheritance ------------------------------------------------------------

/// K + 1 when it is prime. Throws NotPPN.
std::optional<Int> inherit_one(const PrimeFactorization& K);

/// A divisor pair of K^2+1 and the primality status of the two candidates.
struct TwoPrimeCandidate {
  Int d;                                // d <= sqrt(K^2+1)
  Int e;                                // (K^2+1)/d
  Int p;                                // K + d
  Int q;                                // K + e
  bool p_prime = false;
  bool q_prime = false;
  std::optional<std::uint32_t> p_witness;  // small factor proving p composite
  std::optional<std::uint32_t> q_witness;
};

struct InheritancePair {
  PrimeFactorization K;
  Int p;
  Int q;
};

struct TwoPrimeAnalysis {
  GeneralFactorization square_plus_one;
  std::vector<TwoPrimeCandidate> candidates;  // ascending d
  std::vector<InheritancePair> pairs;         // candidates with both primes
};

/// Full enumeration of the two-prime channel (p-K)(q-K) = K^2+1.
/// Throws NotPPN, FactorizationIncomplete.
TwoPrimeAnalysis analyze_inherit_two(const PrimeFactorization& K, const FactorBudget& budget = {});

std::vector<InheritancePair> inherit_two(const PrimeFactorization& K, const FactorBudget& budget = {});

/// z = (Kxy+1)/(xy - Kx - Ky) when it is a new prime.
std::optional<Int> inherit_three(const PrimeFactorization& K, const Int& x, const Int& y);

}  // namespace ppn
