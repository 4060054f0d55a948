// Acceptance run: one PASS/FAIL line per criterion, each with its wall time
// and time limit. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "ppn/channels.hpp"
#include "ppn/constants.hpp"
#include "ppn/error.hpp"
#include "ppn/five_split.hpp"
#include "ppn/pocklington.hpp"
#include "ppn/prefix_search.hpp"
#include "ppn/sieve.hpp"

using namespace ppn;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

template <class A, class B>
void require_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == b)) {
    std::ostringstream s;
    s << what << ": got " << a << ", want " << b;
    throw Failure{s.str()};
  }
}

PrimeFactorization pf(std::initializer_list<long> primes) {
  std::vector<Int> v;
  for (long p : primes) v.emplace_back(p);
  return PrimeFactorization::from_primes(v);
}

std::vector<Int> ints(std::span<const std::string_view> list) {
  std::vector<Int> out;
  for (auto s : list) out.push_back(parse_int(s));
  return out;
}

const Port& H() {
  static const Port h = known::key_port();
  return h;
}

// 1
void ppn_identities() {
  for (auto n : known::kSmallPPNs) {
    const auto f = factor_squarefree(parse_int(n));
    require(is_ppn(f), std::string(n) + " is_ppn");
    require(is_ppn_rational(f), std::string(n) + " rational form");
  }
  for (const auto& [f, value] : {std::pair{known::n9(), known::kN9}, std::pair{known::n10(), known::kN10}}) {
    require_eq(f.value(), parse_int(value), "value");
    require(is_ppn(f) && is_ppn_rational(f), std::string(value) + " is_ppn");
  }
}

// 2
void key_port_chain() {
  Port p = Port::ambient(pf({2, 3}));
  require_eq(p.to_string(), std::string("(6,1)"), "start");
  const std::pair<int, const char*> steps[] = {{11, "(66,5)"}, {17, "(1122,19)"}, {101, "(113322,797)"}};
  for (const auto& [q, want] : steps) {
    p = transition(p, q);
    require_eq(p.to_string(), std::string(want), "after " + std::to_string(q));
  }
  require_eq(ambient_port(factor_squarefree(113322)).to_string(), std::string("(113322,797)"), "ambient");
}

// 3
void congruences() {
  const auto [b, d] = port_congruences(H());
  require_eq(b, Int(9953), "B mod R");
  require_eq(d, Int(70), "d(B) mod c");
  require_eq(mod(known::b2().value(), 113322), Int(9953), "B2 mod 113322");
  require_eq(mod(known::n9().value(), 288), Int(258), "N9 mod 288");
  require_eq(mod(known::n10().value(), 288), Int(6), "N10 mod 288");
}

// 4
void primitivity_audit() {
  const auto b4 = port_primitive_audit(H(), known::b4());
  require_eq(b4.rows.size(), std::size_t{14}, "B4 rows");
  for (std::size_t i = 0; i < 14; ++i) {
    require_eq(b4.rows[i].divisor.to_string(), std::string(known::kB4Audit[i].divisor), "divisor order");
    require_eq(b4.rows[i].delta, parse_int(known::kB4Audit[i].delta), "delta of " + b4.rows[i].divisor.to_string());
  }
  require(b4.verdict == AuditVerdict::Primitive, "B4 primitive");
  require(port_primitive_audit(H(), known::b2()).verdict == AuditVerdict::Primitive, "B2 primitive");
  const auto b5 = port_primitive_audit(H(), known::b5());
  require(b5.verdict == AuditVerdict::Inherited && b5.inherited_from == known::b4(), "B5 inherited via B4");
}

// 5
void pocklington() {
  const auto p10 = certify_prime(parse_int(known::kP10));
  require_eq(p10.base, Int(3), "p10 base");
  const auto rep = pocklington_verify(p10);
  require(rep.verdict == CertVerdict::Verified && rep.fermat_holds, "p10 verifies");
  require_eq(rep.gcd_rows.size(), std::size_t{9}, "p10 gcd rows");
  for (const auto& g : rep.gcd_rows) require_eq(g.gcd, Int(1), "gcd for q=" + to_string(g.q));

  for (const auto& row : known::kTopLevelCerts) {
    const auto cert = certify_prime(parse_int(row.p));
    require(cert.p_minus_1_factors == known::parse_prime_powers(row.p_minus_1), std::string(row.p) + " p-1");
    require_eq(cert.base, Int(row.base), std::string(row.p) + " base");
    require(pocklington_verify(cert).verdict == CertVerdict::Verified, std::string(row.p) + " tree verifies");
  }

  auto tampered = p10;
  tampered.base = 1;
  require(!pocklington_verify(tampered).ok(), "base 1 rejected");
  tampered = p10;
  tampered.p += 2;
  require(!pocklington_verify(tampered).ok(), "perturbed p rejected");
  tampered = p10;
  tampered.p_minus_1_factors[3].prime = 19;
  require(!pocklington_verify(tampered).ok(), "perturbed factor rejected");
}

std::string joined(std::span<const std::string_view> list) {
  std::string out;
  for (auto s : list) out += (out.empty() ? "" : "*") + std::string(s);
  return out;
}

// 6
void successor_exclusions() {
  require_eq(factorize(parse_int(known::kN10Plus1)).to_string(), joined(known::kN10Plus1Factors), "N10+1");
  const auto a = analyze_inherit_two(known::n10());
  require_eq(a.candidates.size(), std::size_t{4}, "N10 divisors");
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& c = a.candidates[i];
    require_eq(c.d, parse_int(known::kN10TwoPrimeRows[i].d), "divisor");
    require(c.p_witness && *c.p_witness == known::kN10TwoPrimeRows[i].witness,
            "witness for d=" + to_string(c.d));
  }
  require(a.pairs.empty(), "no N10 pairs");
  const auto b = analyze_inherit_two(known::n9());
  require_eq(b.candidates.size(), std::size_t{8}, "N9 pairs");
  require(b.pairs.empty(), "no N9 prime pairs");
}

DiscriminantProblem example_problem() {
  const Port induced = induced_port(H(), PrimeFactorization::from_primes(ints(known::kExclusionPrefix)));
  return build_discriminant_problem(induced, 81199);
}

// 7
void discriminant_machinery() {
  const auto p = example_problem();
  require_eq(p.P0, parse_int(known::kExclusionP0), "P0");
  require_eq(p.S0, parse_int(known::kExclusionS0), "S0");
  require_eq(p.U, parse_int(known::kExclusionU), "U");
  require_eq(p.T, Int(0), "T");
  const Int d0 = discriminant(p, 0);
  require_eq(d0, parse_int(known::kExclusionD0), "D(0)");
  require_eq(mod_u64(d0, 11), std::uint64_t{10}, "D(0) mod 11");
  require(sieve_allowed_classes(p, 11).qr_set == std::vector<std::uint32_t>{0, 1, 3, 4, 5, 9}, "Q11");
  const auto cert = build_exclusion_certificate(H(), ints(known::kExclusionPrefix), std::nullopt, {11});
  require(cert && cert->excluded, "certificate builds");
  require(verify_exclusion_certificate(*cert).valid, "certificate verifies");
}

// 8
void t_examples() {
  const auto h = build_discriminant_problem(H(), 101);
  require_eq(h.T, Int(31), "T for H");
  const auto hits = scan_last_two(h);
  require(std::find(hits.begin(), hits.end(), TwoPrimeHit{4, 149, 3109}) != hits.end(), "(149,3109) at t=4");
  const Port induced(parse_int(known::kInduced157R), parse_int(known::kInduced157C));
  require(induced == induced_port(H(), pf({157, 1979})), "induced port");
  const auto one = scan_last_two(build_discriminant_problem(induced, 1979), 0, 0);
  require(one.size() == 1 && one[0] == TwoPrimeHit{0, 10093, 16879}, "(10093,16879) at t=0");
}

// 9
void prefix_layer() {
  PrefixSearchConfig config{H()};
  config.k = 6;
  config.depth = 1;
  std::vector<Int> got;
  enumerate_prefixes(config, [&](const PrefixNode& n) {
    got.push_back(n.prefix.at(0));
    return true;
  });
  std::vector<Int> want;
  for (auto p : oracle::primes_up_to(829))
    if (p >= 149) want.push_back(from_u64(p));
  require_eq(got.size(), std::size_t{111}, "count");
  require(got == want, "exactly the primes in [149, 829]");
}

// 10
void property_suites() {
  std::mt19937_64 rng(2024);
  const auto pool = oracle::primes_up_to(3000);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(0, 4);
  std::uniform_int_distribution<oracle::u64> val(1, 1'000'000);

  auto to_pf = [](const std::vector<oracle::u64>& v) {
    std::vector<Int> out;
    for (auto p : v) out.push_back(from_u64(p));
    return PrimeFactorization::from_primes(out);
  };

  // composition law
  for (int i = 0; i < 500; ++i) {
    const Port port(from_u64(val(rng)), from_u64(val(rng)));
    std::vector<oracle::u64> a, b;
    auto grow = [&](std::vector<oracle::u64>& v, std::size_t n) {
      while (v.size() < n) {
        const auto p = pool[pick(rng)];
        if (mod_u64(port.R(), p) == 0 || std::count(a.begin(), a.end(), p) || std::count(b.begin(), b.end(), p))
          continue;
        v.push_back(p);
      }
    };
    grow(a, len(rng));
    grow(b, len(rng));
    const auto A = to_pf(a), B = to_pf(b);
    const Int whole = delta(port, A.merged(B));
    const Int dA = delta(port, A), dB = delta(port, B);
    require_eq(whole, dA * B.value() - port.R() * A.value() * derivative(B), "composition");
    require_eq(whole, dB * A.value() - port.R() * B.value() * derivative(A), "dual composition");
    if (dA >= 1) require_eq(whole, delta(induced_port(port, A), B), "induced port");
  }

  // reachable-port gcd
  for (int done = 0; done < 500;) {
    std::vector<oracle::u64> r;
    const std::size_t n = 1 + len(rng) % 4;
    while (r.size() < n) {
      const auto p = pool[pick(rng)];
      if (!std::count(r.begin(), r.end(), p)) r.push_back(p);
    }
    const auto Rf = to_pf(r);
    if (defect(Rf) < 1) continue;
    const Port port = Port::ambient(Rf);
    const Int q = from_u64(pool[pick(rng)]);
    if (!port.coprime() || Rf.contains(q) || port.c() * q - port.R() < 1) continue;
    const Port next = transition(port, q);
    require_eq(gcd(next.R(), next.c()), Int(1), "reachable gcd");
    require_eq(next.c(), defect(Rf.with_prime(q)), "reachable ambient");
    ++done;
  }

  // sieve soundness
  std::vector<DiscriminantProblem> corpus = {build_discriminant_problem(H(), 101),
                                             build_discriminant_problem(induced_port(H(), pf({157, 1979})), 1979),
                                             build_discriminant_problem(Port(6, 1), 5),
                                             build_discriminant_problem(Port(66, 5), 11), example_problem()};
  std::size_t squares = 0;
  for (const auto& p : corpus) {
    std::vector<SieveModulus> moduli;
    for (auto l : default_sieve_moduli()) moduli.push_back(sieve_allowed_classes(p, l));
    for (Int t = 0; t <= p.T; ++t) {
      if (!exact_sqrt(discriminant(p, t))) continue;
      ++squares;
      for (const auto& m : moduli)
        require(std::binary_search(m.allowed.begin(), m.allowed.end(), static_cast<std::uint32_t>(mod_u64(t, m.l))),
                "square at t=" + to_string(t) + " sieved out by " + std::to_string(m.l));
    }
  }
  require(squares >= 3, "corpus has square hits");

  // toy port oracle equivalence
  const Port toy = Port::ambient(pf({2, 3}));
  {
    std::vector<std::vector<oracle::u64>> brute2;
    for (const auto& pr : oracle::two_prime_fillings(6, 1, 5, 1000)) brute2.push_back({pr.u, pr.v});
    PrefixSearchConfig c2{toy};
    c2.k = 2;
    std::vector<std::vector<oracle::u64>> found2;
    enumerate_prefixes(c2, [&](const PrefixNode& n) {
      for (const auto& h : scan_last_two(*n.problem)) found2.push_back({to_u64(h.u), to_u64(h.v)});
      return true;
    });
    require(found2 == brute2 && found2 == std::vector<std::vector<oracle::u64>>{{7, 43}}, "k=2 fillings of (6,1)");

    std::vector<std::vector<oracle::u64>> brute3;
    const auto small = oracle::primes_up_to(1000);
    for (std::size_t i = 2; i < small.size(); ++i)
      for (std::size_t j = i + 1; j < small.size(); ++j)
        for (std::size_t k = j + 1; k < small.size(); ++k)
          if (oracle::delta(6, 1, {small[i], small[j], small[k]}) == 1) brute3.push_back({small[i], small[j], small[k]});
    PrefixSearchConfig c3{toy};
    c3.k = 3;
    c3.t_cap = Int("1000000000");
    const auto outcome = run_prefix_search(c3, {});
    std::vector<std::vector<oracle::u64>> found3;
    for (const auto& b : outcome.snapshot.branches)
      for (const auto& f : b.fillings) found3.push_back({to_u64(f.prefix[0]), to_u64(f.hit.u), to_u64(f.hit.v)});
    require(outcome.finished && found3 == brute3 && found3 == std::vector<std::vector<oracle::u64>>{{11, 23, 31}},
            "k=3 fillings of (6,1)");
    require_eq(assemble_ppn(toy, pf({7, 43})).value(), Int(1806), "1806");
    require_eq(assemble_ppn(toy, pf({11, 23, 31})).value(), Int(47058), "47058");
  }

  // exact_sqrt round trip
  gmp_randclass grng(gmp_randinit_default);
  grng.seed(17);
  for (int i = 0; i < 100'000; ++i) {
    const Int r = grng.get_z_bits(1 + i % 256);
    require(exact_sqrt(r * r) == r, "sqrt of square");
    if (r >= 2) require(!exact_sqrt(r * r + 1) && !exact_sqrt(r * r - 1), "non-square neighbours");
  }

  // certificate mutations
  const auto cert = certify_prime(Int("1701301706648581"));
  std::vector<std::function<void(PocklingtonCertificate&)>> edits = {
      [](auto& c) { c.p += 2; },
      [](auto& c) { c.base -= 1; },
      [](auto& c) { c.base = 1; },
      [](auto& c) { c.leaf = true; },
      [](auto& c) { c.p_minus_1_factors[0].exponent += 1; },
      [](auto& c) { c.p_minus_1_factors.back().prime += 2; },
      [](auto& c) { c.children.clear(); },
      [](auto& c) { c.children[0].base -= 1; },
      [](auto& c) { c.children[0].p_minus_1_factors[0].exponent += 1; },
  };
  for (std::size_t i = 0; i < edits.size(); ++i) {
    auto m = cert;
    edits[i](m);
    require(!pocklington_verify(m).ok(), "Pocklington mutation " + std::to_string(i));
  }
  const auto ex = *build_exclusion_certificate(H(), ints(known::kExclusionPrefix), std::nullopt, {11});
  std::vector<std::function<void(SieveExclusionCertificate&)>> ex_edits = {
      [](auto& c) { c.problem.P0 += 1; },
      [](auto& c) { c.problem.S0 += 1; },
      [](auto& c) { c.problem.U += 1; },
      [](auto& c) { c.problem.T += 1; },
      [](auto& c) { c.problem.m += 1000000; },
      [](auto& c) { c.prefix[0] = 401; },
      [](auto& c) { c.base_port = Port(c.base_port.R(), c.base_port.c() + 1); },
      [](auto& c) { c.moduli[0].allowed.insert(c.moduli[0].allowed.begin(), 0); },
      [](auto& c) { c.moduli[0].qr_set.pop_back(); },
      [](auto& c) { c.excluded = false; },
      [](auto& c) { c.witness->D += 11; },
  };
  for (std::size_t i = 0; i < ex_edits.size(); ++i) {
    auto m = ex;
    ex_edits[i](m);
    require(!verify_exclusion_certificate(m).valid, "exclusion mutation " + std::to_string(i));
  }
}

// 11
void five_split() {
  const TerminalPort big(parse_int(known::kN9), 1, parse_int(known::kP10));
  const TerminalPort toy(6, 1, 7);
  for (const auto* tp : {&big, &toy}) {
    for (auto l : small_primes()) {
      if (l > 1000) break;
      require(eval_F_mod(*tp, local_witness(*tp, l), l) == 0, "witness at l=" + std::to_string(l));
    }
    if (fits_u64(tp->p())) {
      const auto p = to_u64(tp->p());
      require(eval_F_mod(*tp, local_witness(*tp, p), p) == 0, "witness at l=p");
    }
    for (std::uint64_t l : {2u, 3u, 5u, 7u, 11u, 13u}) require(local_bruteforce(*tp, l) >= 1, "count at l=" + std::to_string(l));
  }
  Rational cr(big.c(), big.R());
  cr.canonicalize();
  const auto w = real_witness(big, cr / 1000000);
  require(w.residual < Rational(Int(1), Int("1000000000000000000000000000000")), "residual below 1e-30");
  Rational rel = (w.s - cr / 4) / (cr / 4);
  if (rel < 0) rel = -rel;
  require(rel < Rational(1, 1000), "s within 1e-3 of c/(4R)");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  void (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "PPN identities", 1, ppn_identities},
      {2, "key-port chain", 1, key_port_chain},
      {3, "congruences", 1, congruences},
      {4, "primitivity audit", 1, primitivity_audit},
      {5, "Pocklington certificates", 300, pocklington},
      {6, "successor exclusions", 300, successor_exclusions},
      {7, "discriminant machinery", 1, discriminant_machinery},
      {8, "t-examples", 1, t_examples},
      {9, "prefix layer", 1, prefix_layer},
      {10, "property suites", 120, property_suites},
      {11, "five-split checkers", 60, five_split},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const Failure& f) {
      error = f.what;
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && secs > c.limit_seconds) error = "too slow";
    const bool ok = error.empty();
    failures += ok ? 0 : 1;
    std::printf("%s criterion %2d  %-26s %8.3fs (limit %gs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_seconds, ok ? "" : "  ", error.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
