#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "ppn/constants.hpp"
#include "ppn/error.hpp"
#include "ppn/ports.hpp"

using namespace ppn;

namespace {

PrimeFactorization pf(std::initializer_list<long> primes) {
  std::vector<Int> v;
  for (long p : primes) v.emplace_back(p);
  return PrimeFactorization::from_primes(v);
}

PrimeFactorization from_u64s(const std::vector<oracle::u64>& v) {
  std::vector<Int> ints;
  for (auto p : v) ints.push_back(from_u64(p));
  return PrimeFactorization::from_primes(ints);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ppn::Error thrown";
  return Errc::InvalidArgument;
}

const Port H = known::key_port();

}  // namespace

TEST(Port, Construction) {
  EXPECT_EQ(code_of([] { Port(0, 1); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { Port(5, 0); }), Errc::NonpositiveC);
  EXPECT_FALSE(Port(6, 1).is_ambient());
  EXPECT_TRUE(H.is_ambient());
  EXPECT_EQ(H.R(), 113322);
  EXPECT_EQ(H.c(), 797);
}

TEST(Delta, Examples) {
  EXPECT_EQ(delta(H, pf({149, 3109})), 1);
  EXPECT_EQ(delta(Port(66, 5), pf({23, 31})), 1);
  EXPECT_EQ(delta(H, pf({157})), 11807);
  EXPECT_EQ(delta(H, PrimeFactorization{}), 797);
}

TEST(Transition, Examples) {
  EXPECT_EQ(transition(Port(66, 5), 17), Port(1122, 19));
  EXPECT_EQ(transition(Port(1122, 19), 101), Port(113322, 797));
  EXPECT_EQ(transition(Port(6, 1), 11), Port(66, 5));
}

TEST(Transition, Errors) {
  EXPECT_EQ(code_of([] { transition(Port(66, 5), 11); }), Errc::PrimeDividesModulus);
  EXPECT_EQ(code_of([] { transition(Port(66, 5), 13); }), Errc::NonpositiveC);
  EXPECT_EQ(code_of([] { transition(Port(66, 5), 21); }), Errc::NotPrime);
}

TEST(Transition, KeepsAmbientFlag) {
  Port p = Port::ambient(pf({2, 3}));
  for (int q : {11, 17, 101}) p = transition(p, q);
  EXPECT_TRUE(p.is_ambient());
  EXPECT_EQ(p, H);
  EXPECT_EQ(*p.R_factorization(), known::key_primes());
}

TEST(InducedPort, Examples) {
  EXPECT_EQ(induced_port(H, pf({157, 1979})), Port(Int("35209485366"), 5574499));
  EXPECT_EQ(induced_port(H, PrimeFactorization{}), H);
  EXPECT_EQ(induced_port(H, pf({409, 419, 457, 81199})), Port(Int("720640129429941666"), Int("673363850881")));
  EXPECT_EQ(code_of([] { induced_port(H, pf({17, 149})); }), Errc::NotCoprime);
}

TEST(AmbientPort, Examples) {
  EXPECT_EQ(ambient_port(pf({2, 3, 11, 17, 101})), H);
  EXPECT_EQ(ambient_port(pf({2, 3, 11})), Port(66, 5));
  EXPECT_EQ(ambient_port(pf({2, 3})), Port(6, 1));
  EXPECT_EQ(code_of([] { ambient_port(pf({2, 3, 5})); }), Errc::NonpositiveDefect);
}

TEST(AssemblePPN, Examples) {
  EXPECT_EQ(assemble_ppn(H, known::b2()).value(), Int("52495396602"));
  EXPECT_EQ(assemble_ppn(H, known::b4()).value(), Int("5998279018951962402"));
  EXPECT_EQ(assemble_ppn(Port::ambient(pf({2, 3})), pf({7})), pf({2, 3, 7}));
}

TEST(AssemblePPN, Errors) {
  EXPECT_EQ(code_of([] { assemble_ppn(Port(113322, 797), known::b2()); }), Errc::NotAmbient);
  EXPECT_EQ(code_of([] { assemble_ppn(H, pf({149})); }), Errc::NotAFilling);
  EXPECT_EQ(code_of([] { assemble_ppn(H, pf({101, 149})); }), Errc::NotCoprime);
}

TEST(Znam, Examples) {
  EXPECT_EQ(znam_residues(H, known::b2()), (std::vector<Int>{0, 0}));
  EXPECT_EQ(znam_residues(Port(6, 1), pf({7})), (std::vector<Int>{0}));
  EXPECT_EQ(znam_residues(H, known::b4()), (std::vector<Int>{0, 0, 0, 0}));
  // not a filling: 113322*1 + 1 = 113323 = 13 * 23 * 379
  EXPECT_NE(znam_residues(H, pf({149})), (std::vector<Int>{0}));
}

TEST(Congruences, Examples) {
  EXPECT_EQ(port_congruences(H), std::make_pair(Int(9953), Int(70)));
  EXPECT_EQ(port_congruences(Port(6, 1)), std::make_pair(Int(1), Int(0)));
  EXPECT_EQ(port_congruences(Port(66, 5)), std::make_pair(Int(53), Int(4)));
  EXPECT_EQ(code_of([] { port_congruences(Port(6, 4)); }), Errc::NotCoprimePort);
}

TEST(Audit, B4Table) {
  const auto report = port_primitive_audit(H, known::b4());
  ASSERT_EQ(report.rows.size(), 14u);
  for (std::size_t i = 0; i < 14; ++i) {
    EXPECT_EQ(report.rows[i].divisor.to_string(), known::kB4Audit[i].divisor);
    EXPECT_EQ(report.rows[i].delta, parse_int(known::kB4Audit[i].delta));
  }
  EXPECT_EQ(report.verdict, AuditVerdict::Primitive);
  EXPECT_FALSE(report.inherited_from);
}

TEST(Audit, B2AndB5) {
  const auto b2 = port_primitive_audit(H, known::b2());
  EXPECT_EQ(b2.rows.size(), 2u);
  EXPECT_EQ(b2.verdict, AuditVerdict::Primitive);
  const auto b5 = port_primitive_audit(H, known::b5());
  EXPECT_EQ(b5.rows.size(), 30u);
  EXPECT_EQ(b5.verdict, AuditVerdict::Inherited);
  EXPECT_EQ(*b5.inherited_from, known::b4());
}

TEST(Audit, Errors) {
  EXPECT_EQ(code_of([] { port_primitive_audit(H, pf({149})); }), Errc::NotAFilling);
  EXPECT_EQ(code_of([] { port_primitive_audit(H, known::b4(), 3); }), Errc::TooManyDivisors);
}

TEST(InheritOne, Examples) {
  EXPECT_EQ(inherit_one(pf({2, 3, 7})), Int(43));
  EXPECT_EQ(inherit_one(pf({2, 3, 7, 43})), std::nullopt);
  EXPECT_EQ(inherit_one(known::n9()), Int("5998279018951962403"));
  EXPECT_EQ(code_of([] { inherit_one(pf({2, 5})); }), Errc::NotPPN);
}

TEST(InheritTwo, Examples) {
  const auto six = inherit_two(pf({2, 3}));
  ASSERT_EQ(six.size(), 1u);
  EXPECT_EQ(six[0].p, 7);
  EXPECT_EQ(six[0].q, 43);
  EXPECT_TRUE(inherit_two(known::n9()).empty());
  EXPECT_TRUE(inherit_two(known::n10()).empty());
}

TEST(InheritTwo, N10Witnesses) {
  const auto a = analyze_inherit_two(known::n10());
  ASSERT_EQ(a.candidates.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a.candidates[i].d, parse_int(known::kN10TwoPrimeRows[i].d));
    ASSERT_TRUE(a.candidates[i].p_witness);
    EXPECT_EQ(*a.candidates[i].p_witness, known::kN10TwoPrimeRows[i].witness);
  }
}

TEST(InheritTwo, N9HasEightPairs) {
  const auto a = analyze_inherit_two(known::n9());
  EXPECT_EQ(a.candidates.size(), 8u);
  EXPECT_TRUE(a.pairs.empty());
  for (const auto& c : a.candidates) EXPECT_EQ((c.p - known::n9().value()) * (c.q - known::n9().value()),
                                               known::n9().value() * known::n9().value() + 1);
}

TEST(InheritThree, Examples) {
  EXPECT_EQ(inherit_three(pf({2, 3}), 11, 23), Int(31));
  EXPECT_EQ(inherit_three(pf({2, 3}), 7, 11), std::nullopt);
  EXPECT_EQ(inherit_three(pf({2, 3}), 11, 29), std::nullopt);
  EXPECT_EQ(code_of([] { inherit_three(pf({2, 3}), 11, 11); }), Errc::InvalidArgument);
}

// -- Properties ---------------------------------------------------------------

TEST(Properties, CompositionLaw) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<oracle::u64> val(1, 1'000'000);
  const auto pool = oracle::primes_up_to(3000);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(0, 4);
  int cases = 0;
  while (cases < 500) {
    const oracle::u64 R = val(rng), c = val(rng);
    std::vector<oracle::u64> a, b;
    auto fill = [&](std::vector<oracle::u64>& v, std::size_t n) {
      while (v.size() < n) {
        const auto p = pool[pick(rng)];
        if (R % p == 0 || std::count(a.begin(), a.end(), p) || std::count(b.begin(), b.end(), p)) continue;
        v.push_back(p);
      }
    };
    fill(a, len(rng));
    fill(b, len(rng));
    const Port port(from_u64(R), from_u64(c));
    const auto A = from_u64s(a), B = from_u64s(b);
    const Int whole = delta(port, A.merged(B));
    EXPECT_EQ(whole, oracle::delta(port.R(), port.c(), [&] {
                auto all = a;
                all.insert(all.end(), b.begin(), b.end());
                return all;
              }()));
    const Int dA = delta(port, A), dB = delta(port, B);
    // induced ports need a positive numerator; compare the raw formula otherwise
    if (dA >= 1) EXPECT_EQ(whole, delta(induced_port(port, A), B));
    else EXPECT_EQ(whole, dA * B.value() - port.R() * A.value() * derivative(B));
    if (dB >= 1) EXPECT_EQ(whole, delta(induced_port(port, B), A));
    else EXPECT_EQ(whole, dB * A.value() - port.R() * B.value() * derivative(A));
    ++cases;
  }
}

TEST(Properties, ReachablePortsStayCoprime) {
  std::mt19937_64 rng(12);
  const auto pool = oracle::primes_up_to(2000);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(1, 4);
  int cases = 0;
  while (cases < 500) {
    std::vector<oracle::u64> r;
    const std::size_t n = len(rng);
    while (r.size() < n) {
      const auto p = pool[pick(rng)];
      if (!std::count(r.begin(), r.end(), p)) r.push_back(p);
    }
    const auto Rf = from_u64s(r);
    if (defect(Rf) < 1) continue;
    const Port port = Port::ambient(Rf);
    if (!port.coprime()) continue;
    const Int q = from_u64(pool[pick(rng)]);
    if (Rf.contains(q) || port.c() * q - port.R() < 1) continue;
    const Port next = transition(port, q);
    const auto Rq = Rf.with_prime(q);
    EXPECT_EQ(next.c(), Rq.value() - derivative(Rq));
    EXPECT_EQ(gcd(next.R(), next.c()), 1);
    ++cases;
  }
}

TEST(Properties, FillingsSatisfyZnamAndCongruence) {
  struct Case {
    Port port;
    PrimeFactorization B;
  };
  const std::vector<Case> corpus = {
      {H, known::b2()},
      {H, known::b4()},
      {H, known::b5()},
      {Port(6, 1), pf({7, 43})},
      {Port(66, 5), pf({23, 31})},
      {Port(6, 1), pf({11, 23, 31})},
      {Port(2, 1), pf({3, 7, 43})},
      {Port(6, 1), pf({7})},
  };
  for (const auto& c : corpus) {
    ASSERT_TRUE(fills(c.port, c.B)) << c.B.to_string();
    for (const auto& r : znam_residues(c.port, c.B)) EXPECT_EQ(r, 0);
    EXPECT_EQ(mod(c.B.value(), c.port.R()), port_congruences(c.port).first);
  }
  for (const auto& B : {known::b2(), known::b4(), known::b5()}) {
    EXPECT_TRUE(is_ppn(assemble_ppn(H, B)));
  }
}
