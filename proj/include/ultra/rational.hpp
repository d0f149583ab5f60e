#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace ultra {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

// Parses "42", "-3", "0.25", ".5" and "3/4" into an exact rational.
// Binary floating point never appears anywhere in the pipeline.
inline Rat parse_rat(std::string_view text) {
  std::string_view s = detail::trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw input_error("empty numeral: '" + std::string(text) + "'");

  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw input_error("bad rational numeral: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d.is_zero()) throw input_error("zero denominator: '" + std::string(text) + "'");
    value = Rat(BigInt{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw input_error("bad decimal numeral: '" + std::string(text) + "'");
    if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac)))
      throw input_error("bad decimal numeral: '" + std::string(text) + "'");
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt units = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt sub = frac.empty() ? BigInt(0) : BigInt{std::string(frac)};
    value = Rat(units * scale + sub, scale);
  } else {
    if (!detail::all_digits(s))
      throw input_error("bad numeral: '" + std::string(text) + "'");
    value = Rat(BigInt{std::string(s)});
  }
  return negative ? Rat(-value) : value;
}

// Lowest terms, "p/q" when the denominator is not 1.
inline std::string format_rat(const Rat& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Exact non-negative distance value. Two Dist compare equal iff their
/// rationals are identical; there is no tolerance anywhere.
class Dist {
public:
  Dist() = default;
  Dist(int v) : v_(v) { check(); }  // NOLINT: implicit by intent, for literals
  explicit Dist(Rat v) : v_(std::move(v)) { check(); }

  static Dist parse(std::string_view text) { return Dist(parse_rat(text)); }

  const Rat& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  std::string str() const { return format_rat(v_); }

  Dist half() const { return Dist(Rat(v_ / 2)); }
  Dist scaled(const Rat& factor) const {
    if (factor <= 0) throw precondition_error("scale factor must be positive");
    return Dist(Rat(v_ * factor));
  }

  friend bool operator==(const Dist& a, const Dist& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Dist& a, const Dist& b) { return a.v_ != b.v_; }
  friend bool operator<(const Dist& a, const Dist& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Dist& a, const Dist& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Dist& a, const Dist& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Dist& a, const Dist& b) { return a.v_ >= b.v_; }

private:
  void check() const {
    if (v_ < 0) throw input_error("negative distance: " + format_rat(v_));
  }
  Rat v_{};
};

}  // namespace ultra
