#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mukai/integer.hpp"

namespace mukai {

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mukai

namespace nlohmann {

/// Integers travel as JSON numbers when they fit in int64 and as decimal
/// strings otherwise. Both forms are accepted on input.
template <>
struct adl_serializer<mpz_class> {
  static void to_json(json& j, const mpz_class& x) {
    if (mukai::fits_int64(x)) {
      j = static_cast<std::int64_t>(x.get_si());
    } else {
      j = x.get_str();
    }
  }

  static void from_json(const json& j, mpz_class& x) {
    if (j.is_number_unsigned()) {
      x = mpz_class(std::to_string(j.get<std::uint64_t>()));
    } else if (j.is_number_integer()) {
      x = mpz_class(std::to_string(j.get<std::int64_t>()));
    } else if (j.is_string()) {
      const auto& s = j.get_ref<const std::string&>();
      std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
        throw mukai::ParseError("not an integer: \"" + s + "\"");
      }
      x.set_str(s[0] == '+' ? s.substr(1) : s, 10);
    } else {
      throw mukai::ParseError("expected an integer, got " + j.dump());
    }
  }
};

}  // namespace nlohmann
