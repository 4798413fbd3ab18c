#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace csft {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt from_int128(__int128 value);
BigInt factorial(int n);
BigInt binomial(int n, int k);

inline std::string to_string(const BigInt& value) { return value.str(); }

}  // namespace csft
