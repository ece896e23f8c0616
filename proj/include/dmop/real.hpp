#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace dmop {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Arbitrary-precision real backed by MPFR, rounded to nearest throughout.
/// Value semantics. Binary operators produce a result at the wider of the
/// two operand precisions; precision never grows implicitly beyond that.
class Real {
 public:
  Real() { init(kDefaultPrecision); }
  explicit Real(mpfr_prec_t prec) { init(prec); }

  Real(long value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(int value, mpfr_prec_t prec) : Real(static_cast<long>(value), prec) {}
  Real(unsigned long value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_ui(v_, value, MPFR_RNDN);
  }
  Real(double value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(const mpz_class& value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }
  /// Parses a decimal literal. Throws std::invalid_argument on trailing junk.
  Real(const std::string& text, mpfr_prec_t prec) {
    init(prec);
    if (mpfr_set_str(v_, text.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("not a decimal number: '" + text + "'");
    }
  }

  Real(const Real& other) {
    init(other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    init(MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, other.precision());
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// ln|x| as a double; -inf for zero. Safe for values far outside
  /// double range.
  double log_abs() const {
    if (is_zero()) return -INFINITY;
    long exp2 = 0;
    double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
  }

  Real& operator+=(const Real& rhs) {
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& rhs) {
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& rhs) {
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& rhs) {
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long rhs) {
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long rhs) {
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }

  friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.v_, b.v_); }

 private:
  void init(mpfr_prec_t prec) { mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec); }

  mpfr_t v_;
};

inline mpfr_prec_t wider(const Real& a, const Real& b) {
  return a.precision() > b.precision() ? a.precision() : b.precision();
}

#define DMOP_REAL_BINOP(op, fn)                            \
  inline Real operator op(const Real& a, const Real& b) {  \
    Real r(wider(a, b));                                   \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);              \
    return r;                                              \
  }
DMOP_REAL_BINOP(+, mpfr_add)
DMOP_REAL_BINOP(-, mpfr_sub)
DMOP_REAL_BINOP(*, mpfr_mul)
DMOP_REAL_BINOP(/, mpfr_div)
#undef DMOP_REAL_BINOP

inline Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator/(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}

inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

inline Real abs(const Real& a) {
  Real r(a.precision());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real sqrt(const Real& a) {
  Real r(a.precision());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real sqrt_ui(unsigned long a, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_sqrt_ui(r.raw(), a, MPFR_RNDN);
  return r;
}
/// x^n for n >= 0, exact power semantics of MPFR (single rounding).
inline Real pow_ui(const Real& a, unsigned long n) {
  Real r(a.precision());
  mpfr_pow_ui(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
inline Real sin(const Real& a) {
  Real r(a.precision());
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real cos(const Real& a) {
  Real r(a.precision());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
/// Rounds a to the target precision (widening is exact).
inline Real round_to(const Real& a, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

/// Scientific form with the given number of significant digits.
inline std::string to_string(const Real& a, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", significant_digits - 1, a.raw());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Real& a) {
  return os << to_string(a, 20);
}

}  // namespace dmop
