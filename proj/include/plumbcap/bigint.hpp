#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace plumbcap {

using BigInt = boost::multiprecision::cpp_int;

// Throws plumbcap::Error when the value does not fit.
std::int64_t to_int64(const BigInt &value);

// Accepts an optional leading '-' followed by decimal digits, nothing else.
bool parse_decimal(std::string_view text, BigInt &out);

inline std::string to_string(const BigInt &value) { return value.str(); }

} // namespace plumbcap
