#pragma once

// Exact rational arithmetic used for every time, distance, profit and bound.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uwvrp {

using Ratio = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline mpz_class parse_signed_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  mpz_class value(std::string(s), 10);
  return negative ? mpz_class(-value) : value;
}

inline mpz_class pow10(unsigned exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, exponent);
  return p;
}

}  // namespace detail

/// Parses a rational literal exactly: `p/q`, an integer, or a decimal such as `0.125`.
/// num/den in lowest terms. mpq_class's two-argument constructor does not reduce,
/// and GMP arithmetic assumes reduced operands.
inline Ratio make_ratio(long num, long den) {
  Ratio r(num, den);
  r.canonicalize();
  return r;
}

inline Ratio parse_ratio(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = detail::parse_signed_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!detail::all_digits(den_text))
      throw std::invalid_argument("malformed denominator in '" + std::string(text) + "'");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Ratio r(num, den);
    r.canonicalize();
    return r;
  }

  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view whole = body, frac;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    whole = body.substr(0, dot);
    frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  } else if (!detail::all_digits(whole)) {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  }

  std::string digits = std::string(whole) + std::string(frac);
  if (digits.empty()) digits = "0";
  Ratio r(mpz_class(digits, 10), detail::pow10(static_cast<unsigned>(frac.size())));
  r.canonicalize();
  return negative ? Ratio(-r) : r;
}

/// Canonical literal: `p` for integers, `p/q` otherwise.
inline std::string to_string(const Ratio& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer out of range: " + z.get_str());
  return z.get_si();
}

inline std::int64_t floor_to_int(const Ratio& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(q);
}

inline std::int64_t ceil_to_int(const Ratio& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(q);
}

/// Fixed-point preview rounded half-to-even, e.g. 11/36 -> "0.3056" at 4 places.
inline std::string decimal_preview(const Ratio& r, unsigned places = 4) {
  Ratio scaled = r * Ratio(detail::pow10(places));
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Ratio rest = scaled - Ratio(q);
  int cmp_half = cmp(rest, Ratio(1, 2));
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  bool negative = q < 0;
  if (negative) q = -q;
  std::string digits = q.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return out;
}

}  // namespace uwvrp
