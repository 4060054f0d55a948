#include "ppn/reproduction.hpp"

#include <functional>
#include <sstream>

#include "ppn/channels.hpp"
#include "ppn/constants.hpp"
#include "ppn/error.hpp"
#include "ppn/five_split.hpp"
#include "ppn/pocklington.hpp"
#include "ppn/prefix_search.hpp"
#include "ppn/sieve.hpp"

namespace ppn {

std::size_t ReproductionReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

std::size_t ReproductionReport::failed() const { return checks.size() - passed(); }

std::string ReproductionReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.claim;
    if (c.pass) {
      constexpr std::size_t kShown = 72;
      out << " => " << (c.computed.size() > kShown ? c.computed.substr(0, kShown) + "..." : c.computed);
    }
    out << '\n';
    if (!c.pass) {
      out << "     inputs:   " << c.inputs << '\n';
      out << "     expected: " << c.expected << " (" << c.source << ")\n";
      out << "     computed: " << c.computed << '\n';
    }
  }
  out << passed() << " passed, " << failed() << " failed, " << checks.size() << " total\n";
  return out.str();
}

std::vector<std::string> reproduction_groups() {
  return {"ppn",       "chain",       "congruence", "mod288",   "filling", "znam",      "audit",  "pocklington",
          "successor", "channel",     "inherit",    "discriminant", "texample", "prefix", "fivesplit"};
}

namespace {

constexpr const char* kPublished = "published value";
constexpr const char* kDerived = "independent computation";

std::string powers(const std::vector<PrimePower>& f) {
  GeneralFactorization g;
  g.factors = f;
  return g.to_string();
}

std::string primes_text(std::span<const std::string_view> list) {
  std::string out;
  for (auto p : list) {
    if (!out.empty()) out += "*";
    out += p;
  }
  return out;
}

std::string perturb(std::string s) {
  if (!s.empty() && s.back() >= '0' && s.back() <= '9') {
    s.back() = s.back() == '9' ? '0' : static_cast<char>(s.back() + 1);
  } else {
    s += "?";
  }
  return s;
}

std::string yesno(bool b) { return b ? "true" : "false"; }

class Runner {
 public:
  explicit Runner(const ReproductionOptions& options) : options_(options) {}

  bool wants(std::string_view group) const {
    if (options_.only.empty()) return true;
    for (const auto& s : options_.only) {
      if (s == group) return true;
      if (s.size() > group.size() && s.compare(0, group.size(), group) == 0 && s[group.size()] == '.') return true;
    }
    return false;
  }

  void check(const std::string& id, std::string claim, std::string inputs, std::string expected, const char* source,
             const std::function<std::string()>& compute) {
    if (!selected(id)) return;
    ReproductionCheck c{id, std::move(claim), std::move(inputs), std::move(expected), source, {}, false};
    if (options_.corrupt && *options_.corrupt == id) c.expected = perturb(c.expected);
    try {
      c.computed = compute();
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
    }
    c.pass = c.computed == c.expected;
    report_.checks.push_back(std::move(c));
  }

  const FactorBudget& budget() const { return options_.budget; }
  ReproductionReport take() { return std::move(report_); }

 private:
  bool selected(const std::string& id) const {
    if (options_.only.empty()) return true;
    for (const auto& s : options_.only) {
      if (id == s) return true;
      if (id.size() > s.size() && id.compare(0, s.size(), s) == 0 && id[s.size()] == '.') return true;
    }
    return false;
  }

  const ReproductionOptions& options_;
  ReproductionReport report_;
};

void ppn_checks(Runner& r) {
  for (auto n : known::kSmallPPNs) {
    r.check("ppn." + std::string(n), "is a primary pseudoperfect number", std::string(n), "ppn=true rational=true",
            kPublished, [&] {
              const auto f = factor_squarefree(parse_int(n), r.budget());
              return "ppn=" + yesno(is_ppn(f)) + " rational=" + yesno(is_ppn_rational(f));
            });
  }
  r.check("ppn.N9", "113322*B4 is a primary pseudoperfect number", primes_text(known::kKeyPrimes) + "*" +
          primes_text(known::kB4), std::string(known::kN9) + " ppn=true rational=true", kPublished, [] {
            const auto f = known::n9();
            return to_string(f.value()) + " ppn=" + yesno(is_ppn(f)) + " rational=" + yesno(is_ppn_rational(f));
          });
  r.check("ppn.N9-sum", "1 + sum N9/p equals N9", std::string(known::kN9), std::string(known::kN9), kPublished, [] {
    const auto f = known::n9();
    Int s = 1;
    for (const auto& p : f.primes()) s += f.value() / p;
    return to_string(s);
  });
  r.check("ppn.N10", "N9*p10 is a primary pseudoperfect number", "N9*" + std::string(known::kP10),
          std::string(known::kN10) + " ppn=true rational=true", kPublished, [] {
            const auto f = known::n10();
            return to_string(f.value()) + " ppn=" + yesno(is_ppn(f)) + " rational=" + yesno(is_ppn_rational(f));
          });
}

void chain_checks(Runner& r) {
  r.check("chain.key", "transition chain to the key port", "(6,1) with 11, 17, 101",
          "(6,1) (66,5) (1122,19) (113322,797)", kPublished, [] {
            Port p = Port::ambient(PrimeFactorization::from_primes({2, 3}));
            std::string out = p.to_string();
            for (int q : {11, 17, 101}) {
              p = transition(p, q);
              out += " " + p.to_string();
            }
            return out;
          });
  r.check("chain.ambient", "ambient port of 113322", primes_text(known::kKeyPrimes), "(113322,797)", kPublished,
          [] { return ambient_port(known::key_primes()).to_string(); });
  r.check("chain.defect", "one-step completions 2 -> 6 -> 42 -> 1806", "{2}", "3 7 43", kPublished, [] {
    auto s = DefectState::of(PrimeFactorization::from_primes({2}));
    std::string out;
    for (int i = 0; i < 3; ++i) {
      const auto q = chain_completion_prime(s);
      if (!q) return out + " none";
      out += (out.empty() ? "" : " ") + to_string(*q);
      s = defect_step(s, *q);
    }
    return out;
  });
  r.check("chain.p10", "N9 + 1 completes N9", "N9", std::string(known::kP10), kPublished, [] {
    const auto q = chain_completion_prime(DefectState::of(known::n9()));
    return q ? to_string(*q) : std::string("none");
  });
}

void congruence_checks(Runner& r) {
  r.check("congruence.H", "c^{-1} mod R and -R^{-1} mod c for the key port", "(113322,797)", "9953 70", kPublished,
          [] {
            const auto [a, b] = port_congruences(known::key_port());
            return to_string(a) + " " + to_string(b);
          });
  r.check("congruence.B2", "B2 mod 113322", primes_text(known::kB2), "9953", kPublished,
          [] { return to_string(mod(known::b2().value(), 113322)); });
  r.check("congruence.B4", "B4 mod 113322 and derivative(B4) mod 797", primes_text(known::kB4), "9953 70", kDerived,
          [] {
            const auto b = known::b4();
            return to_string(mod(b.value(), 113322)) + " " + to_string(mod(derivative(b), 797));
          });
}

void mod288_checks(Runner& r) {
  r.check("mod288.N9", "N9 mod 288", std::string(known::kN9), "258", kPublished,
          [] { return to_string(mod(known::n9().value(), 288)); });
  r.check("mod288.N10", "N10 mod 288", std::string(known::kN10), "6", kPublished,
          [] { return to_string(mod(known::n10().value(), 288)); });
}

void filling_checks(Runner& r) {
  const Port H = known::key_port();
  r.check("filling.B2", "B2 fills H", primes_text(known::kB2), "1", kPublished, [&] { return to_string(delta(H, known::b2())); });
  r.check("filling.B4", "B4 fills H", primes_text(known::kB4), "1", kPublished, [&] { return to_string(delta(H, known::b4())); });
  r.check("filling.B4-value", "B4 and its derivative", primes_text(known::kB4),
          std::string(known::kB4Value) + " " + std::string(known::kB4Derivative), kPublished, [] {
            const auto b = known::b4();
            return to_string(b.value()) + " " + to_string(derivative(b));
          });
  r.check("filling.B5", "B4*p10 fills H", "B4*p10", "1", kPublished, [&] { return to_string(delta(H, known::b5())); });
  r.check("filling.K7", "113322*B2", primes_text(known::kB2), std::string(known::kK7), kPublished,
          [&] { return to_string(assemble_ppn(H, known::b2()).value()); });
  r.check("filling.N9", "113322*B4", primes_text(known::kB4), std::string(known::kN9), kPublished,
          [&] { return to_string(assemble_ppn(H, known::b4()).value()); });
  r.check("filling.N10", "113322*B5", "B4*p10", std::string(known::kN10), kPublished,
          [&] { return to_string(assemble_ppn(H, known::b5()).value()); });
}

std::string residues(const std::vector<Int>& v) { return join(v, " "); }

void znam_checks(Runner& r) {
  const Port H = known::key_port();
  r.check("znam.B2", "R*(B/q)+1 mod q for q in B2", primes_text(known::kB2), "0 0", kDerived,
          [&] { return residues(znam_residues(H, known::b2())); });
  r.check("znam.B4", "R*(B/q)+1 mod q for q in B4", primes_text(known::kB4), "0 0 0 0", kDerived,
          [&] { return residues(znam_residues(H, known::b4())); });
}

void audit_checks(Runner& r) {
  const Port H = known::key_port();
  std::string table;
  for (const auto& e : known::kB4Audit) {
    if (!table.empty()) table += " ";
    table += std::string(e.divisor) + ":" + std::string(e.delta);
  }
  r.check("audit.B4-table", "delta of the 14 proper divisors of B4", primes_text(known::kB4), table, kPublished, [&] {
    const auto a = port_primitive_audit(H, known::b4());
    std::string out;
    for (const auto& row : a.rows) {
      if (!out.empty()) out += " ";
      out += row.divisor.to_string() + ":" + to_string(row.delta);
    }
    return out;
  });
  r.check("audit.B4", "B4 is port-primitive", primes_text(known::kB4), "primitive", kPublished, [&] {
    return port_primitive_audit(H, known::b4()).verdict == AuditVerdict::Primitive ? "primitive" : "inherited";
  });
  r.check("audit.B2", "B2 is port-primitive", primes_text(known::kB2), "primitive rows=2", kPublished, [&] {
    const auto a = port_primitive_audit(H, known::b2());
    return std::string(a.verdict == AuditVerdict::Primitive ? "primitive" : "inherited") +
           " rows=" + std::to_string(a.rows.size());
  });
  r.check("audit.B5", "B5 is inherited from B4", "B4*p10", "inherited from " + primes_text(known::kB4), kPublished,
          [&] {
            const auto a = port_primitive_audit(H, known::b5());
            if (a.verdict == AuditVerdict::Primitive) return std::string("primitive");
            return "inherited from " + a.inherited_from->to_string();
          });
}

void pocklington_checks(Runner& r) {
  r.check("pocklington.p10-table", "fixed certificate for p10 with base 3", std::string(known::kP10),
          "verified fermat=true gcds=1,1,1,1,1,1,1,1,1", kPublished, [] {
            PocklingtonCertificate cert;
            cert.p = parse_int(known::kP10);
            cert.base = 3;
            cert.p_minus_1_factors = known::parse_prime_powers(known::kTopLevelCerts[0].p_minus_1);
            const auto rep = pocklington_verify(cert);
            std::string gcds;
            for (const auto& g : rep.gcd_rows) gcds += (gcds.empty() ? "" : ",") + to_string(g.gcd);
            return std::string(verdict_name(rep.verdict)) + " fermat=" + yesno(rep.fermat_holds) + " gcds=" + gcds;
          });
  r.check("pocklington.p10-base-1", "base 1 is rejected for p10", std::string(known::kP10), "invalid", kDerived, [] {
    PocklingtonCertificate cert;
    cert.p = parse_int(known::kP10);
    cert.base = 1;
    cert.p_minus_1_factors = known::parse_prime_powers(known::kTopLevelCerts[0].p_minus_1);
    return std::string(verdict_name(pocklington_verify(cert).verdict));
  });
  for (const auto& row : known::kTopLevelCerts) {
    const std::string expected = powers(known::parse_prime_powers(row.p_minus_1)) +
                                 " base=" + std::to_string(row.base) + " verified";
    r.check("pocklington." + std::string(row.p), "recursive certificate, top-level data", std::string(row.p), expected,
            kPublished, [&] {
              const auto cert = certify_prime(parse_int(row.p), r.budget());
              return powers(cert.p_minus_1_factors) + " base=" + to_string(cert.base) + " " +
                     std::string(verdict_name(pocklington_verify(cert).verdict));
            });
  }
}

std::string candidate_rows(const TwoPrimeAnalysis& a) {
  std::string out;
  for (const auto& c : a.candidates) {
    if (!out.empty()) out += " ";
    out += to_string(c.d) + ":" + (c.p_witness ? std::to_string(*c.p_witness) : (c.p_prime ? "prime" : "?"));
  }
  return out + " pairs=" + std::to_string(a.pairs.size());
}

void successor_checks(Runner& r) {
  r.check("successor.N10-plus-1", "factorization of N10 + 1", std::string(known::kN10Plus1),
          primes_text(known::kN10Plus1Factors), kPublished,
          [&] { return factorize(parse_int(known::kN10Plus1), r.budget()).to_string(); });
  r.check("successor.N10-one-prime", "N10 + 1 is not prime", std::string(known::kN10), "none", kPublished, [] {
    const auto q = inherit_one(known::n10());
    return q ? to_string(*q) : std::string("none");
  });
  r.check("successor.N10-square", "factorization of N10^2 + 1", "N10", primes_text(known::kN10SquarePlus1Factors),
          kPublished, [&] {
            const Int n = parse_int(known::kN10);
            return factorize(n * n + 1, r.budget()).to_string();
          });
  std::string rows;
  for (const auto& row : known::kN10TwoPrimeRows)
    rows += (rows.empty() ? "" : " ") + std::string(row.d) + ":" + std::to_string(row.witness);
  r.check("successor.N10-two-prime", "divisors d and small factors of N10 + d", "N10", rows + " pairs=0", kPublished,
          [&] { return candidate_rows(analyze_inherit_two(known::n10(), r.budget())); });
  r.check("successor.N9-square", "factorization of N9^2 + 1", "N9", primes_text(known::kN9SquarePlus1Factors),
          kPublished, [&] {
            const Int n = parse_int(known::kN9);
            return factorize(n * n + 1, r.budget()).to_string();
          });
}

void channel_checks(Runner& r) {
  if (!r.wants("channel")) return;
  std::optional<ChannelAudit> audit;
  auto get = [&]() -> const ChannelAudit& {
    if (!audit) audit = h6_channel_audit(r.budget());
    return *audit;
  };
  auto find = [&](std::string_view name) -> const ChannelReport& {
    for (const auto& ch : get().channels)
      if (ch.name == name) return ch;
    throw Error(Errc::InvalidArgument, "no channel " + std::string(name));
  };
  r.check("channel.B4", "two-prime channel through B4", "N9", "pairs=8 prime_pairs=0", kPublished, [&] {
    const auto& a = std::get<TwoPrimeChannel>(find("B4").channel).analysis;
    return "pairs=" + std::to_string(a.candidates.size()) + " prime_pairs=" + std::to_string(a.pairs.size());
  });
  r.check("channel.B5", "one-prime channel through B5", "N10", primes_text(known::kN10Plus1Factors) + " composite",
          kPublished, [&] {
            const auto& one = std::get<OnePrimeChannel>(find("B5").channel);
            return one.k_plus_1.to_string() + (one.prime ? " prime" : " composite");
          });
  r.check("channel.B2", "residual subproblem through B2", "K7", std::string(known::kK7) + " omega=4", kPublished, [&] {
    const auto& open = std::get<OpenSubproblem>(find("B2").channel);
    return to_string(open.K) + " omega=" + std::to_string(open.omega);
  });
}

void inherit_checks(Runner& r) {
  r.check("inherit.one-42", "42 + 1 is prime", "42", "43", kPublished, [] {
    const auto q = inherit_one(PrimeFactorization::from_primes({2, 3, 7}));
    return q ? to_string(*q) : std::string("none");
  });
  r.check("inherit.two-6", "two-prime inheritance from 6", "6", "7 43", kDerived, [] {
    std::string out;
    for (const auto& p : inherit_two(PrimeFactorization::from_primes({2, 3})))
      out += (out.empty() ? "" : " ") + to_string(p.p) + " " + to_string(p.q);
    return out;
  });
  r.check("inherit.three-6", "three-prime inheritance from 6 with 11, 23", "6, 11, 23", "31", kDerived, [] {
    const auto z = inherit_three(PrimeFactorization::from_primes({2, 3}), 11, 23);
    return z ? to_string(*z) : std::string("none");
  });
}

std::vector<Int> to_ints(std::span<const std::string_view> list) {
  std::vector<Int> out;
  for (auto s : list) out.push_back(parse_int(s));
  return out;
}

void discriminant_checks(Runner& r) {
  const Port H = known::key_port();
  const auto prefix = to_ints(known::kExclusionPrefix);
  const std::string prefix_text = primes_text(known::kExclusionPrefix);
  auto problem = [&] {
    const Port induced = induced_port(H, PrimeFactorization::from_primes(prefix));
    return build_discriminant_problem(induced, prefix.back());
  };
  r.check("discriminant.H", "P0 S0 U T for H with m = 101", "(113322,797) m=101", "9953 70 143 31", kDerived, [&] {
    const auto p = build_discriminant_problem(H, 101);
    return to_string(p.P0) + " " + to_string(p.S0) + " " + to_string(p.U) + " " + to_string(p.T);
  });
  r.check("discriminant.example-port", "induced port of the four-prime prefix", prefix_text,
          "(" + std::string(known::kExclusionR) + "," + std::string(known::kExclusionC) + ")", kPublished,
          [&] { return problem().port.to_string(); });
  r.check("discriminant.example-data", "P0 S0 U T for the four-prime prefix", prefix_text,
          std::string(known::kExclusionP0) + " " + std::string(known::kExclusionS0) + " " +
              std::string(known::kExclusionU) + " 0",
          kPublished, [&] {
            const auto p = problem();
            return to_string(p.P0) + " " + to_string(p.S0) + " " + to_string(p.U) + " " + to_string(p.T);
          });
  r.check("discriminant.example-D0", "D(0)", prefix_text, std::string(known::kExclusionD0), kPublished,
          [&] { return to_string(discriminant(problem(), 0)); });
  r.check("discriminant.example-mod11", "D(0) mod 11 and the squares mod 11", prefix_text, "10 {0,1,3,4,5,9}",
          kPublished, [&] {
            const auto p = problem();
            const auto s = sieve_allowed_classes(p, 11);
            std::string q;
            for (auto v : s.qr_set) q += (q.empty() ? "" : ",") + std::to_string(v);
            return std::to_string(mod_u64(discriminant(p, 0), 11)) + " {" + q + "}";
          });
  r.check("discriminant.example-certificate", "exclusion certificate with l = 11", prefix_text, "excluded valid",
          kPublished, [&] {
            const auto cert = build_exclusion_certificate(H, prefix, std::nullopt, {11});
            if (!cert) return std::string("not excluded");
            const auto v = verify_exclusion_certificate(*cert);
            return std::string(cert->excluded ? "excluded" : "not-excluded") + (v.valid ? " valid" : " " + v.reason);
          });
}

std::string has_hit(const std::vector<TwoPrimeHit>& hits, const TwoPrimeHit& want) {
  for (const auto& h : hits)
    if (h == want) return "t=" + to_string(h.t) + " " + to_string(h.u) + " " + to_string(h.v);
  std::string all = "missing; hits:";
  for (const auto& h : hits) all += " t=" + to_string(h.t) + " " + to_string(h.u) + " " + to_string(h.v);
  return all;
}

void texample_checks(Runner& r) {
  const Port H = known::key_port();
  r.check("texample.H", "two-prime completion of H above 101", "(113322,797) m=101", "t=4 149 3109 T=31", kPublished,
          [&] {
            const auto p = build_discriminant_problem(H, 101);
            return has_hit(scan_last_two(p), {4, 149, 3109}) + " T=" + to_string(p.T);
          });
  r.check("texample.induced", "two-prime completion after 157, 1979", "157*1979 m=1979",
          "(" + std::string(known::kInduced157R) + "," + std::string(known::kInduced157C) + ") t=0 10093 16879",
          kPublished, [&] {
            const Port induced = induced_port(H, known::primes_of(known::kPrefix157));
            const auto p = build_discriminant_problem(induced, 1979);
            return induced.to_string() + " " + has_hit(scan_last_two(p, 0, 0), {0, 10093, 16879});
          });
}

void prefix_checks(Runner& r) {
  r.check("prefix.first-primes", "admissible first primes for six-prime fillings of H", "(113322,797) k=6",
          "111 primes in [149, 829]", kPublished, [] {
            PrefixSearchConfig config{known::key_port()};
            config.k = 6;
            const auto q = first_prime_candidates(config);
            if (q.empty()) return std::string("none");
            return std::to_string(q.size()) + " primes in [" + to_string(q.front()) + ", " + to_string(q.back()) + "]";
          });
}

void fivesplit_checks(Runner& r) {
  auto sweep = [](const TerminalPort& tp) {
    std::uint64_t bad = 0, tested = 0;
    for (auto l : small_primes()) {
      if (l > 1000) break;
      ++tested;
      if (eval_F_mod(tp, local_witness(tp, l), l) != 0) ++bad;
    }
    if (fits_u64(tp.p())) {
      const auto p = to_u64(tp.p());
      ++tested;
      if (eval_F_mod(tp, local_witness(tp, p), p) != 0) ++bad;
    }
    return std::to_string(tested) + " moduli, " + std::to_string(bad) + " failures";
  };
  r.check("fivesplit.local-N9", "local witnesses on (N9, 1, p10) for l <= 1000 and l = p10", "(N9,1,p10)",
          "169 moduli, 0 failures", kDerived,
          [&] { return sweep(TerminalPort(parse_int(known::kN9), 1, parse_int(known::kP10))); });
  r.check("fivesplit.local-6", "local witnesses on (6, 1, 7) for l <= 1000 and l = 7", "(6,1,7)",
          "169 moduli, 0 failures", kDerived, [&] { return sweep(TerminalPort(6, 1, 7)); });
  r.check("fivesplit.real-N9", "positive real point near c/(4R)", "(N9,1,p10), y5 = (c/R)/10^6",
          "residual<1e-30 relative<1e-3 above_p=true", kDerived, [] {
            const TerminalPort tp(parse_int(known::kN9), 1, parse_int(known::kP10));
            Rational cr(tp.c(), tp.R());
            cr.canonicalize();
            const Rational y5 = cr / 1000000;
            const auto w = real_witness(tp, y5);
            const Rational limit = cr / 4;
            Rational rel = (w.s - limit) / limit;
            if (rel < 0) rel = -rel;
            const Rational tiny(Int(1), Int("1000000000000000000000000000000"));
            return std::string(w.residual < tiny ? "residual<1e-30" : "residual too large") +
                   (rel < Rational(1, 1000) ? " relative<1e-3" : " relative too large") +
                   " above_p=" + yesno(w.coordinates_exceed_p);
          });
}

}  // namespace

ReproductionReport run_reproduction(const ReproductionOptions& options) {
  Runner r(options);
  ppn_checks(r);
  chain_checks(r);
  congruence_checks(r);
  mod288_checks(r);
  filling_checks(r);
  znam_checks(r);
  audit_checks(r);
  pocklington_checks(r);
  successor_checks(r);
  channel_checks(r);
  inherit_checks(r);
  discriminant_checks(r);
  texample_checks(r);
  prefix_checks(r);
  fivesplit_checks(r);
  return r.take();
}

}  // namespace ppn
