#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace pblimp {

// Exact arbitrary-precision rational. boost keeps values in lowest terms
// with a positive denominator, so structural equality is value equality.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Natural number as used by program expressions and variable assignments.
using Nat = std::uint64_t;

inline Rat rat_of(Nat n) { return Rat(BigInt(n)); }

// Renders "num/den" with an explicit denominator ("3/4", "1/1", "0/1").
std::string rat_to_string(const Rat& r);

// Accepts "a/b", integers ("3"), and decimal literals ("0.95", ".5"),
// all parsed exactly.
std::optional<Rat> rat_from_string(const std::string& text);

double rat_to_double(const Rat& r);

Rat rat_pow(const Rat& base, unsigned exp);

}  // namespace pblimp
