#include "plumbcap/bigint.hpp"

#include <limits>

#include "plumbcap/errors.hpp"

namespace plumbcap {

std::int64_t to_int64(const BigInt &value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min())
    throw Error("integer " + value.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(value);
}

bool parse_decimal(std::string_view text, BigInt &out) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty())
    return false;
  BigInt value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      return false;
    value = value * 10 + (ch - '0');
  }
  out = negative ? BigInt(-value) : value;
  return true;
}

} // namespace plumbcap
