#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppn {

using Int = mpz_class;
using Rational = mpq_class;

/// Parses a base-10 integer with optional leading '-'. Throws Error(ParseError).
Int parse_int(std::string_view text);

/// Parses a comma-separated list of decimal integers ("2,3,11").
std::vector<Int> parse_int_list(std::string_view text);

std::string to_string(const Int& n);
std::string join(std::span<const Int> values, std::string_view sep = "*");

/// Least nonnegative residue of a modulo m (m > 0).
Int mod(const Int& a, const Int& m);
std::uint64_t mod_u64(const Int& a, std::uint64_t m);

std::optional<Int> mod_inverse(const Int& a, const Int& m);

Int gcd(const Int& a, const Int& b);

Int product(std::span<const Int> values);

inline bool fits_u64(const Int& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Int& n);
Int from_u64(std::uint64_t v);

}  // namespace ppn
