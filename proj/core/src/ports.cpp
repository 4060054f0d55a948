#include "ppn/ports.hpp"

#include <sstream>

#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

Port::Port(Int R, Int c) : Port(std::move(R), std::move(c), std::nullopt) {}

Port::Port(Int R, Int c, std::optional<PrimeFactorization> fact)
    : R_(std::move(R)), c_(std::move(c)), R_fact_(std::move(fact)) {
  if (R_ < 1) throw Error(Errc::InvalidArgument, "port modulus R must be >= 1");
  if (c_ < 1) throw Error(Errc::NonpositiveC, "port numerator c must be >= 1, got " + ppn::to_string(c_));
}

Port Port::ambient(PrimeFactorization R) {
  Int c = defect(R);
  if (c < 1) throw Error(Errc::NonpositiveDefect, "R - derivative(R) = " + ppn::to_string(c));
  Int value = R.value();
  return Port(std::move(value), std::move(c), std::move(R));
}

bool Port::coprime() const { return gcd(R_, c_) == 1; }

std::string Port::to_string() const { return "(" + ppn::to_string(R_) + "," + ppn::to_string(c_) + ")"; }

Int delta(const Port& port, const PrimeFactorization& B) {
  return port.c() * B.value() - port.R() * derivative(B);
}

bool fills(const Port& port, const PrimeFactorization& B) { return delta(port, B) == 1; }

Port transition(const Port& port, const Int& q) {
  if (!is_probable_prime(q)) throw Error(Errc::NotPrime, ppn::to_string(q) + " is not prime");
  if (mpz_divisible_p(port.R().get_mpz_t(), q.get_mpz_t()))
    throw Error(Errc::PrimeDividesModulus, ppn::to_string(q) + " divides R=" + ppn::to_string(port.R()));
  Int c = port.c() * q - port.R();
  if (c < 1)
    throw Error(Errc::NonpositiveC, "appending " + ppn::to_string(q) + " to " + port.to_string() + " gives c=" +
                                         ppn::to_string(c));
  const bool was_coprime = port.coprime();
  Port next = port.is_ambient() ? Port::ambient(port.R_factorization()->with_prime(q)) : Port(port.R() * q, c);
  if (next.c() != c) throw std::logic_error("ambient transition disagrees with cq - R");
  if (was_coprime && !next.coprime())
    throw std::logic_error("transition broke gcd(R,c) = 1 at " + next.to_string());
  return next;
}

Port induced_port(const Port& port, const PrimeFactorization& A) {
  if (gcd(A.value(), port.R()) != 1)
    throw Error(Errc::NotCoprime, A.to_string() + " is not coprime to R=" + ppn::to_string(port.R()));
  if (A.empty()) return port;
  Int c = delta(port, A);
  if (c < 1) throw Error(Errc::NonpositiveC, "delta(" + A.to_string() + ") = " + ppn::to_string(c));
  if (port.is_ambient()) {
    Port next = Port::ambient(port.R_factorization()->merged(A));
    if (next.c() != c) throw std::logic_error("ambient induced port disagrees with delta");
    return next;
  }
  return Port(port.R() * A.value(), c);
}

Port ambient_port(const PrimeFactorization& R) { return Port::ambient(R); }

PrimeFactorization assemble_ppn(const Port& port, const PrimeFactorization& B) {
  if (!port.is_ambient()) throw Error(Errc::NotAmbient, port.to_string() + " is not an ambient port");
  if (gcd(B.value(), port.R()) != 1) throw Error(Errc::NotCoprime, B.to_string() + " shares a prime with R");
  const Int d = delta(port, B);
  if (d != 1) throw Error(Errc::NotAFilling, "delta = " + to_string(d));
  auto n = port.R_factorization()->merged(B);
  if (!is_ppn(n)) throw std::logic_error("assembled " + n.to_string() + " is not a PPN");
  return n;
}

std::vector<Int> znam_residues(const Port& port, const PrimeFactorization& B) {
  std::vector<Int> out;
  out.reserve(B.omega());
  for (const auto& q : B.primes()) out.push_back(mod(port.R() * (B.value() / q) + 1, q));
  return out;
}

std::pair<Int, Int> port_congruences(const Port& port) {
  auto b = mod_inverse(port.c(), port.R());
  auto r = mod_inverse(port.R(), port.c());
  if (!b || !r) throw Error(Errc::NotCoprimePort, "gcd(R,c) > 1 for " + port.to_string());
  return {*b, mod(-*r, port.c())};
}

std::string AuditReport::table() const {
  std::ostringstream os;
  os << "divisor    delta\n";
  for (const auto& row : rows) os << row.divisor.to_string() << "    " << to_string(row.delta) << "\n";
  os << "verdict: " << (verdict == AuditVerdict::Primitive ? "primitive" : "inherited");
  if (inherited_from) os << " (via " << inherited_from->to_string() << ")";
  os << "\n";
  return os.str();
}

namespace {

// Masks of popcount k over n bits in lexicographic order of the chosen indices.
void combinations(std::size_t n, std::size_t k, std::size_t start, std::uint64_t mask,
                  std::vector<std::uint64_t>& out) {
  if (k == 0) {
    out.push_back(mask);
    return;
  }
  for (std::size_t i = start; i + k <= n; ++i) combinations(n, k - 1, i + 1, mask | (std::uint64_t{1} << i), out);
}

}  // namespace

AuditReport port_primitive_audit(const Port& port, const PrimeFactorization& B, std::size_t omega_cap) {
  if (B.omega() > omega_cap || B.omega() > 62)
    throw Error(Errc::TooManyDivisors, "omega(B) = " + std::to_string(B.omega()) + " exceeds cap");
  const Int d = delta(port, B);
  if (d != 1) throw Error(Errc::NotAFilling, "delta(B) = " + to_string(d));

  AuditReport report{port, B, {}, AuditVerdict::Primitive, std::nullopt};
  const std::size_t n = B.omega();
  std::vector<std::uint64_t> masks;
  for (std::size_t k = 1; k < n; ++k) combinations(n, k, 0, 0, masks);
  report.rows.reserve(masks.size());
  for (auto mask : masks) {
    auto divisor = B.subset(mask);
    Int value = delta(port, divisor);
    if (value == 1 && !report.inherited_from) {
      report.verdict = AuditVerdict::Inherited;
      report.inherited_from = divisor;
    }
    report.rows.push_back({std::move(divisor), std::move(value)});
  }
  return report;
}

}  // namespace ppn
