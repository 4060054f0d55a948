#pragma once

#include <array>
#include <string_view>

#include "ppn/arith.hpp"
#include "ppn/ports.hpp"

// Reference values used by the reproduction suite, the CLI and the tests.
namespace ppn::known {

inline constexpr std::array<std::string_view, 8> kSmallPPNs = {
    "2", "6", "42", "1806", "47058", "2214502422", "52495396602", "8490421583559688410706771261086"};

inline constexpr std::string_view kK7 = "52495396602";

inline constexpr std::array<std::string_view, 5> kKeyPrimes = {"2", "3", "11", "17", "101"};
inline constexpr std::string_view kKeyR = "113322";
inline constexpr std::string_view kKeyC = "797";

inline constexpr std::array<std::string_view, 2> kB2 = {"149", "3109"};
inline constexpr std::array<std::string_view, 4> kB4 = {"157", "1979", "10093", "16879"};
inline constexpr std::string_view kB4Value = "52931284472141";
inline constexpr std::string_view kB4Derivative = "372268700908";

inline constexpr std::string_view kN9 = "5998279018951962402";
inline constexpr std::string_view kP10 = "5998279018951962403";
inline constexpr std::string_view kN10 = "35979351189199316534587473905773572006";
inline constexpr std::string_view kN10Plus1 = "35979351189199316534587473905773572007";

inline constexpr std::array<std::string_view, 6> kN10Plus1Factors = {
    "7", "37", "73", "407221", "2746750419901", "1701301706648581"};
inline constexpr std::array<std::string_view, 4> kN9SquarePlus1Factors = {
    "5", "22861", "34646497971913", "9085080009049858397"};
inline constexpr std::array<std::string_view, 3> kN10SquarePlus1Factors = {
    "21807157", "480382349", "123572138719194583969192220095883252267503088389616114960309"};

struct SuccessorRow {
  std::string_view d;
  unsigned witness;
};
inline constexpr std::array<SuccessorRow, 4> kN10TwoPrimeRows = {
    {{"1", 7}, {"21807157", 7}, {"480382349", 5}, {"10475773304671793", 2141}}};

struct AuditEntry {
  std::string_view divisor;  // '*'-separated primes
  std::string_view delta;
};
inline constexpr std::array<AuditEntry, 14> kB4Audit = {{
    {"157", "11807"},
    {"1979", "1463941"},
    {"10093", "7930799"},
    {"16879", "13339241"},
    {"157*1979", "5574499"},
    {"157*10093", "101376497"},
    {"157*16879", "181498799"},
    {"1979*10093", "14551292275"},
    {"1979*16879", "24485595901"},
    {"10093*16879", "132720197375"},
    {"157*1979*10093", "21053933041"},
    {"157*1979*16879", "58882483255"},
    {"157*10093*16879", "1531563738341"},
    {"1979*10093*16879", "243347763355591"},
}};

struct CertRow {
  std::string_view p;
  std::string_view p_minus_1;  // "q^e*q*..." as printed
  unsigned base;
};
inline constexpr std::array<CertRow, 9> kTopLevelCerts = {{
    {"5998279018951962403", "2*3*11*17*101*157*1979*10093*16879", 3},
    {"407221", "2^2*3*5*11*617", 2},
    {"2746750419901", "2^2*3^2*5^2*23*769*172553", 7},
    {"1701301706648581", "2^2*3*5*28355028444143", 6},
    {"34646497971913", "2^3*3^2*53*373*24341209", 5},
    {"9085080009049858397", "2^2*11*206479091114769509", 2},
    {"21807157", "2^2*3*7^2*37087", 2},
    {"480382349", "2^2*120095587", 2},
    {"123572138719194583969192220095883252267503088389616114960309",
     "2^2*59*523610757284722813428780593626623950286030035549220826103", 2},
}};

// The induced ports of the worked examples.
inline constexpr std::array<std::string_view, 2> kPrefix157 = {"157", "1979"};
inline constexpr std::string_view kInduced157R = "35209485366";
inline constexpr std::string_view kInduced157C = "5574499";

inline constexpr std::array<std::string_view, 4> kExclusionPrefix = {"409", "419", "457", "81199"};
inline constexpr std::string_view kExclusionR = "720640129429941666";
inline constexpr std::string_view kExclusionC = "673363850881";
inline constexpr std::string_view kExclusionP0 = "695935036388423125";
inline constexpr std::string_view kExclusionS0 = "650279490314";
inline constexpr std::string_view kExclusionU = "1070210";
inline constexpr std::string_view kExclusionD0 = "422860631782890066126096";

// Convenience builders.
PrimeFactorization primes_of(std::span<const std::string_view> primes);
PrimeFactorization key_primes();  // 2*3*11*17*101
Port key_port();                  // H = (113322, 797), ambient
PrimeFactorization b2();
PrimeFactorization b4();
PrimeFactorization b5();
PrimeFactorization n9();
PrimeFactorization n10();

/// "2^2*3*5" -> prime powers.
std::vector<PrimePower> parse_prime_powers(std::string_view text);

}  // namespace ppn::known
