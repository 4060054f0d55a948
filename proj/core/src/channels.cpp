#include "ppn/channels.hpp"

#include <sstream>

#include "ppn/constants.hpp"
#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

bool ChannelReport::yields_filling() const {
  if (const auto* one = std::get_if<OnePrimeChannel>(&channel)) return one->prime;
  if (const auto* two = std::get_if<TwoPrimeChannel>(&channel)) return !two->analysis.pairs.empty();
  return false;
}

ChannelAudit channel_audit(const Port& port, const std::vector<KnownFilling>& known, std::size_t target_omega,
                           const FactorBudget& budget) {
  if (!port.is_ambient()) throw Error(Errc::NotAmbient, "channel audit needs an ambient port");
  ChannelAudit audit{port, target_omega, {}, {}};
  audit.caveat =
      "only channels through the listed fillings are covered; fillings with no listed proper divisor are not";

  for (const auto& entry : known) {
    if (entry.B.omega() >= target_omega) continue;
    const PrimeFactorization K = assemble_ppn(port, entry.B);
    ChannelReport report{entry.name, entry.B, K.value(), OpenSubproblem{}};
    const std::size_t missing = target_omega - entry.B.omega();
    if (missing == 1) {
      OnePrimeChannel one;
      one.K = K.value();
      const Int k1 = K.value() + 1;
      one.k_plus_1 = factorize(k1, budget);
      if (!one.k_plus_1.complete)
        throw Error(Errc::FactorizationIncomplete, "could not factor K+1 for " + entry.name);
      one.prime = one.k_plus_1.factors.size() == 1 && one.k_plus_1.factors[0].exponent == 1;
      report.channel = std::move(one);
    } else if (missing == 2) {
      report.channel = TwoPrimeChannel{analyze_inherit_two(K, budget)};
    } else {
      report.channel = OpenSubproblem{K.value(), missing};
    }
    audit.channels.push_back(std::move(report));
  }
  return audit;
}

ChannelAudit h6_channel_audit(const FactorBudget& budget) {
  const std::vector<KnownFilling> known = {
      {"B2", known::b2()},
      {"B4", known::b4()},
      {"B5", known::b5()},
  };
  return channel_audit(known::key_port(), known, 6, budget);
}

std::string to_text(const ChannelAudit& audit) {
  std::ostringstream out;
  out << "port " << audit.port.to_string() << ", target omega " << audit.target_omega << '\n';
  for (const auto& ch : audit.channels) {
    out << ch.name << " = " << ch.filling.to_string() << ", K = " << to_string(ch.K) << '\n';
    if (const auto* one = std::get_if<OnePrimeChannel>(&ch.channel)) {
      out << "  one prime: K+1 = " << one->k_plus_1.to_string() << (one->prime ? " (prime)" : " (composite)")
          << '\n';
    } else if (const auto* two = std::get_if<TwoPrimeChannel>(&ch.channel)) {
      const auto& a = two->analysis;
      out << "  two primes: K^2+1 = " << a.square_plus_one.to_string() << '\n';
      out << "  " << a.candidates.size() << " divisor pairs, " << a.pairs.size() << " prime pairs\n";
      for (const auto& c : a.candidates) {
        out << "    d=" << to_string(c.d) << "  K+d " << (c.p_prime ? "prime" : "composite");
        if (c.p_witness) out << " (" << *c.p_witness << ")";
        out << ", K+e " << (c.q_prime ? "prime" : "composite");
        if (c.q_witness) out << " (" << *c.q_witness << ")";
        out << '\n';
      }
    } else {
      const auto& open = std::get<OpenSubproblem>(ch.channel);
      out << "  open: C - K*d(C) = 1 with omega(C) = " << open.omega << '\n';
    }
  }
  out << "note: " << audit.caveat << '\n';
  return out.str();
}

}  // namespace ppn
