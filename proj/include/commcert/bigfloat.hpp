#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "commcert/rational.hpp"

namespace commcert {

// 256-bit float used as the mirror arithmetic for certification when the
// noise parameter has no small rational form. Round-to-nearest throughout;
// callers that compare against a threshold apply their own safety margin.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  BigFloat() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
  explicit BigFloat(double d) { mpfr_init2(v_, kPrecision); mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit BigFloat(unsigned long u) { mpfr_init2(v_, kPrecision); mpfr_set_ui(v_, u, MPFR_RNDN); }
  explicit BigFloat(long i) { mpfr_init2(v_, kPrecision); mpfr_set_si(v_, i, MPFR_RNDN); }
  explicit BigFloat(const BigInt& z) { mpfr_init2(v_, kPrecision); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  explicit BigFloat(const BigRat& q) { mpfr_init2(v_, kPrecision); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

  BigFloat(const BigFloat& o) { mpfr_init2(v_, kPrecision); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, kPrecision); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(BigFloat o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~BigFloat() { mpfr_clear(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend BigFloat pow_ui(const BigFloat& a, unsigned long e) {
    BigFloat r; mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN); return r;
  }

  int compare(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.compare(b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.compare(b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.compare(b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.compare(b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.compare(b) == 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str(int digits = 30) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
};

}  // namespace commcert
