#include "ppn/bigint.hpp"

#include "ppn/error.hpp"

namespace ppn {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::FactorizationIncomplete: return "FactorizationIncomplete";
    case Errc::DuplicatePrime: return "DuplicatePrime";
    case Errc::NonpositiveDefect: return "NonpositiveDefect";
    case Errc::PrimeDividesModulus: return "PrimeDividesModulus";
    case Errc::NonpositiveC: return "NonpositiveC";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotAmbient: return "NotAmbient";
    case Errc::NotAFilling: return "NotAFilling";
    case Errc::NotCoprimePort: return "NotCoprimePort";
    case Errc::TooManyDivisors: return "TooManyDivisors";
    case Errc::NotPPN: return "NotPPN";
    case Errc::RangeExceedsBound: return "RangeExceedsBound";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::SmallTerminalPrime: return "SmallTerminalPrime";
    case Errc::ModulusTooLarge: return "ModulusTooLarge";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ResumeMismatch: return "ResumeMismatch";
  }
  return "Unknown";
}

Int parse_int(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\r')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && s[start] == ' ') ++start;
  s = s.substr(start);
  std::size_t digits = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == digits) throw Error(Errc::ParseError, "empty integer literal");
  for (std::size_t i = digits; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(Errc::ParseError, "not a decimal integer: '" + s + "'");
  }
  return Int(s, 10);
}

std::vector<Int> parse_int_list(std::string_view text) {
  std::vector<Int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    auto piece = text.substr(pos, next - pos);
    if (!piece.empty()) out.push_back(parse_int(piece));
    pos = next + 1;
  }
  return out;
}

std::string to_string(const Int& n) { return n.get_str(10); }

std::string join(std::span<const Int> values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += to_string(values[i]);
  }
  return out;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::uint64_t mod_u64(const Int& a, std::uint64_t m) {
  return to_u64(mod(a, from_u64(m)));
}

std::optional<Int> mod_inverse(const Int& a, const Int& m) {
  if (m == 1) return Int(0);
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int product(std::span<const Int> values) {
  Int p = 1;
  for (const auto& v : values) p *= v;
  return p;
}

std::uint64_t to_u64(const Int& n) {
  if (!fits_u64(n)) throw Error(Errc::InvalidArgument, "integer does not fit in 64 bits: " + to_string(n));
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Int from_u64(std::uint64_t v) {
  Int out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

}  // namespace ppn
