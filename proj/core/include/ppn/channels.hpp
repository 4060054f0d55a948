#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppn/ports.hpp"

namespace ppn {

/// A filling of an ambient port already known to the caller.
struct KnownFilling {
  std::string name;
  PrimeFactorization B;
};

/// Adding one prime: K + 1 must be prime, with K = R*B.
struct OnePrimeChannel {
  Int K;
  GeneralFactorization k_plus_1;
  bool prime = false;
};

/// Adding two primes: (p - K)(q - K) = K^2 + 1.
struct TwoPrimeChannel {
  TwoPrimeAnalysis analysis;
};

/// Residual problem C - K*derivative(C) = 1 with omega(C) fixed, left to a search.
struct OpenSubproblem {
  Int K;
  std::size_t omega = 0;
};

struct ChannelReport {
  std::string name;
  PrimeFactorization filling;
  Int K;  // R * B, a PPN
  std::variant<OnePrimeChannel, TwoPrimeChannel, OpenSubproblem> channel;

  /// True when the channel is decided and produces a filling of the target size.
  bool yields_filling() const;
};

struct ChannelAudit {
  Port port;
  std::size_t target_omega = 0;
  std::vector<ChannelReport> channels;
  std::string caveat;
};

/// For each known filling with fewer than `target_omega` primes, reduce the
/// question "does some larger filling contain it" to an inheritance problem
/// from K = R*B: one missing prime is decided by factoring K+1, two missing
/// primes by factoring K^2+1, more are reported as an open subproblem.
/// Throws NotAmbient, NotAFilling, FactorizationIncomplete.
ChannelAudit channel_audit(const Port& port, const std::vector<KnownFilling>& known, std::size_t target_omega,
                           const FactorBudget& budget = {});

/// Audit of H with the fillings B2, B4, B5 and six target primes.
ChannelAudit h6_channel_audit(const FactorBudget& budget = {});

std::string to_text(const ChannelAudit& audit);

}  // namespace ppn
