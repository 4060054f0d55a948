#include "ppn/sieve.hpp"

#include <algorithm>
#include <functional>

#include "ppn/error.hpp"
#include "ppn/primality.hpp"

namespace ppn {

namespace {

using u64 = std::uint64_t;

constexpr u64 kScanLimit = 1'000'000;

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<std::uint32_t> squares_mod(std::uint32_t l) {
  std::vector<bool> seen(l, false);
  for (u64 x = 0; x < l; ++x) seen[x * x % l] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 0; r < l; ++r)
    if (seen[r]) out.push_back(r);
  return out;
}

Port induced_from_prefix(const Port& base, const std::vector<Int>& prefix) {
  return induced_port(base, PrimeFactorization::from_primes(prefix));
}

}  // namespace

SieveModulus sieve_allowed_classes(const DiscriminantProblem& problem, std::uint32_t l, std::uint32_t cap) {
  if (l < 2 || l > cap || !is_prime_u64(l))
    throw Error(Errc::InvalidArgument, "sieve modulus " + std::to_string(l) + " is not a prime <= cap");
  SieveModulus out;
  out.l = l;
  out.qr_set = squares_mod(l);
  // D(t) = c^2 t^2 + (2 S0 c - 4R) t + (S0^2 - 4 P0), coefficients reduced mod l.
  const Int& c = problem.port.c();
  const u64 a2 = mod_u64(c * c, l);
  const u64 a1 = mod_u64(2 * problem.S0 * c - 4 * problem.port.R(), l);
  const u64 a0 = mod_u64(problem.S0 * problem.S0 - 4 * problem.P0, l);
  for (u64 t = 0; t < l; ++t) {
    const u64 value = (a2 * (t * t % l) + a1 * t + a0) % l;
    if (contains(out.qr_set, static_cast<std::uint32_t>(value))) out.allowed.push_back(static_cast<std::uint32_t>(t));
  }
  return out;
}

std::vector<std::uint32_t> default_sieve_moduli() {
  std::vector<std::uint32_t> out;
  for (auto p : small_primes()) {
    if (p > 97) break;
    out.push_back(p);
  }
  return out;
}

std::optional<Int> first_surviving_t_by_scan(const Int& T, const std::vector<SieveModulus>& moduli) {
  if (T < 0) return std::nullopt;
  if (T >= Int(kScanLimit) * 1000) throw Error(Errc::InvalidArgument, "interval too long for a direct scan");
  const u64 end = to_u64(T);
  std::vector<std::vector<bool>> allowed;
  for (const auto& m : moduli) {
    std::vector<bool> bits(m.l, false);
    for (auto r : m.allowed) bits[r] = true;
    allowed.push_back(std::move(bits));
  }
  std::vector<std::uint32_t> residue(moduli.size(), 0);
  for (u64 t = 0; t <= end; ++t) {
    bool survives = true;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (!allowed[i][residue[i]]) survives = false;
      if (++residue[i] == moduli[i].l) residue[i] = 0;
    }
    if (survives) return from_u64(t);
  }
  return std::nullopt;
}

std::optional<Int> first_surviving_t(const Int& T, const std::vector<SieveModulus>& moduli) {
  if (T < 0) return std::nullopt;
  for (const auto& m : moduli)
    if (m.allowed.empty()) return std::nullopt;
  if (T < Int(kScanLimit)) return first_surviving_t_by_scan(T, moduli);

  // Depth-first CRT over the allowed classes, keeping only representatives
  // that can still land in [0, T].
  std::optional<Int> best;
  std::function<void(std::size_t, const Int&, const Int&)> descend = [&](std::size_t i, const Int& r,
                                                                        const Int& M) {
    if (best || (M > T && r > T)) return;
    if (i == moduli.size()) {
      // r is the least representative of its class, so the class meets [0, T].
      best = r;
      return;
    }
    const Int l = moduli[i].l;
    const Int inv = *mod_inverse(mod(M, l), l);
    for (auto a : moduli[i].allowed) {
      const Int k = mod((Int(a) - r) * inv, l);
      descend(i + 1, r + M * k, M * l);
    }
  };
  descend(0, 0, 1);
  return best;
}

Int SieveExclusionCertificate::combined_modulus() const {
  Int M = 1;
  for (const auto& m : moduli) M *= m.l;
  return M;
}

namespace {

std::optional<SieveExclusionCertificate> build_for(const Port& base_port, const std::vector<Int>& prefix,
                                                   DiscriminantProblem problem,
                                                   const std::vector<std::uint32_t>& moduli) {
  std::vector<std::uint32_t> ls = moduli;
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

  SieveExclusionCertificate cert{base_port, prefix, problem, {}, true, std::nullopt};
  for (auto l : ls) cert.moduli.push_back(sieve_allowed_classes(problem, l));
  if (first_surviving_t(problem.T, cert.moduli)) return std::nullopt;

  if (problem.T == 0) {
    const Int D = discriminant(problem, 0);
    for (const auto& m : cert.moduli) {
      const auto r = static_cast<std::uint32_t>(mod_u64(D, m.l));
      if (!contains(m.qr_set, r)) {
        cert.witness = ExclusionWitness{0, D, m.l, r};
        break;
      }
    }
  }
  return cert;
}

}  // namespace

std::optional<SieveExclusionCertificate> build_exclusion_certificate(const DiscriminantProblem& problem,
                                                                     const std::vector<std::uint32_t>& moduli) {
  return build_for(problem.port, {}, problem, moduli);
}

std::optional<SieveExclusionCertificate> build_exclusion_certificate(const Port& base_port,
                                                                     const std::vector<Int>& prefix,
                                                                     const std::optional<Int>& m,
                                                                     const std::vector<std::uint32_t>& moduli) {
  auto sorted = prefix;
  std::sort(sorted.begin(), sorted.end());
  const Port induced = induced_from_prefix(base_port, sorted);
  Int floor_prime;
  if (m) {
    floor_prime = *m;
  } else if (!sorted.empty()) {
    floor_prime = sorted.back();
  } else {
    throw Error(Errc::InvalidArgument, "floor prime m is required when the prefix is empty");
  }
  return build_for(base_port, sorted, build_discriminant_problem(induced, floor_prime), moduli);
}

CertificateCheck verify_exclusion_certificate(const SieveExclusionCertificate& cert) {
  auto bad = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  try {
    if (!std::is_sorted(cert.prefix.begin(), cert.prefix.end())) return bad("prefix not ascending");
    const Port induced = induced_from_prefix(cert.base_port, cert.prefix);
    if (!(induced == cert.problem.port)) return bad("port does not match base port and prefix");
    if (!cert.prefix.empty() && cert.problem.m < cert.prefix.back()) return bad("m below the last prefix prime");
    const auto fresh = build_discriminant_problem(induced, cert.problem.m);
    if (fresh.P0 != cert.problem.P0) return bad("P0 mismatch");
    if (fresh.S0 != cert.problem.S0) return bad("S0 mismatch");
    if (fresh.U != cert.problem.U) return bad("U mismatch");
    if (fresh.T != cert.problem.T) return bad("T mismatch");

    for (std::size_t i = 0; i < cert.moduli.size(); ++i) {
      const auto& m = cert.moduli[i];
      if (i > 0 && cert.moduli[i - 1].l >= m.l) return bad("moduli not strictly increasing");
      SieveModulus recomputed;
      try {
        recomputed = sieve_allowed_classes(fresh, m.l);
      } catch (const Error&) {
        return bad("modulus " + std::to_string(m.l) + " is not an admissible prime");
      }
      if (recomputed.qr_set != m.qr_set) return bad("Q mismatch at l=" + std::to_string(m.l));
      if (recomputed.allowed != m.allowed) return bad("E mismatch at l=" + std::to_string(m.l));
    }

    const auto survivor = first_surviving_t(fresh.T, cert.moduli);
    if (cert.excluded && survivor) return bad("t=" + to_string(*survivor) + " survives every modulus");
    if (!cert.excluded && !survivor) return bad("stated not-excluded but coverage is total");

    if (cert.witness) {
      const auto& w = *cert.witness;
      if (w.t < 0 || w.t > fresh.T) return bad("witness t outside interval");
      if (discriminant(fresh, w.t) != w.D) return bad("witness D(t) mismatch");
      const auto it = std::find_if(cert.moduli.begin(), cert.moduli.end(),
                                   [&](const SieveModulus& m) { return m.l == w.l; });
      if (it == cert.moduli.end()) return bad("witness modulus not listed");
      if (mod_u64(w.D, w.l) != w.residue) return bad("witness residue mismatch");
      if (contains(it->qr_set, w.residue)) return bad("witness residue is a square");
    }
  } catch (const Error& e) {
    return bad(e.what());
  }
  return {true, {}};
}

}  // namespace ppn
