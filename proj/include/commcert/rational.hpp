#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace commcert {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  if (k > n) return r;  // 0
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigRat pow_rat(const BigRat& base, long e) {
  BigRat r;
  if (e >= 0) {
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  } else {
    mpz_pow_ui(r.get_num_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(-e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(-e));
  }
  r.canonicalize();
  return r;
}

// Parse "7/10", "0.7", ".7", or "1" into an exact rational.
inline BigRat parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt num(s.substr(0, slash));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("parse_rational: malformed decimal");
    BigInt num(whole.empty() || whole == "-" ? std::string(whole + "0") : whole);
    const bool negative = !whole.empty() && whole[0] == '-';
    const BigInt scale = pow_int(BigInt(10), frac.size());
    num = num * scale;
    if (!frac.empty()) {
      const BigInt f(frac);
      num += negative ? -f : f;
    }
    BigRat r(num, scale);
    r.canonicalize();
    return r;
  }
  return BigRat(BigInt(s));
}

// Largest multiple of 10^-digits that is <= v. Used to convert a double
// probability bound into a rational without ever rounding it up.
inline BigRat floor_to_decimal(double v, int digits = 15) {
  const BigInt scale = pow_int(BigInt(10), static_cast<unsigned long>(digits));
  BigRat exact(v);  // doubles are dyadic rationals, so this is lossless
  exact.canonicalize();
  BigRat scaled = exact * BigRat(scale);
  BigInt floored;
  mpz_fdiv_q(floored.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  BigRat r(floored, scale);
  r.canonicalize();
  return r;
}

inline std::string to_decimal_string(const BigRat& r, int digits) {
  const bool negative = r < 0;
  BigRat a = negative ? BigRat(-r) : r;
  BigInt whole = a.get_num() / a.get_den();
  BigRat frac = a - BigRat(whole);
  std::string out = (negative ? "-" : "") + whole.get_str();
  if (digits <= 0) return out;
  out += '.';
  for (int i = 0; i < digits; ++i) {
    frac *= 10;
    BigInt d = frac.get_num() / frac.get_den();
    out += static_cast<char>('0' + d.get_si());
    frac -= BigRat(d);
  }
  return out;
}

}  // namespace commcert
