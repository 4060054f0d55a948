#include "ppn/constants.hpp"

#include <string>

#include "ppn/error.hpp"

namespace ppn::known {

PrimeFactorization primes_of(std::span<const std::string_view> primes) {
  std::vector<Int> out;
  out.reserve(primes.size());
  for (auto p : primes) out.push_back(parse_int(p));
  return PrimeFactorization::from_primes(std::move(out));
}

PrimeFactorization key_primes() { return primes_of(kKeyPrimes); }
Port key_port() { return Port::ambient(key_primes()); }
PrimeFactorization b2() { return primes_of(kB2); }
PrimeFactorization b4() { return primes_of(kB4); }
PrimeFactorization b5() { return b4().with_prime(parse_int(kP10)); }
PrimeFactorization n9() { return key_primes().merged(b4()); }
PrimeFactorization n10() { return n9().with_prime(parse_int(kP10)); }

std::vector<PrimePower> parse_prime_powers(std::string_view text) {
  std::vector<PrimePower> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('*', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    PrimePower pp;
    const auto caret = item.find('^');
    if (caret == std::string_view::npos) {
      pp.prime = parse_int(item);
    } else {
      pp.prime = parse_int(item.substr(0, caret));
      pp.exponent = static_cast<unsigned>(std::stoul(std::string(item.substr(caret + 1))));
    }
    out.push_back(std::move(pp));
    pos = end + 1;
  }
  return out;
}

}  // namespace ppn::known
