#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace inbl {

// Exact number of the form mantissa * 2^exp2.
//
// Canonical form: mantissa is odd, or the value is zero with exp2 == 0. Two
// equal values therefore have identical representations, and == is a plain
// field comparison. Mantissas that fit in 64 bits are kept inline; larger
// ones spill into a GMP integer. Addition, subtraction and multiplication
// never round.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t value);  // NOLINT: implicit from integers is intended
  Dyadic(std::int64_t mantissa, std::int64_t exp2);

  static Dyadic from_mpz(const mpz_class& mantissa, std::int64_t exp2);
  // Parses the decimal mantissa text produced by mantissa_string().
  static Dyadic from_parts(const std::string& mantissa, std::int64_t exp2);
  static Dyadic pow2(std::int64_t k) { return Dyadic(1, k); }

  bool is_zero() const { return !big_ && small_ == 0; }
  int sign() const;
  std::int64_t exp2() const { return exp2_; }
  mpz_class mantissa() const;
  std::string mantissa_string() const;

  Dyadic abs() const;
  Dyadic operator-() const;

  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);

  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
  friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
  friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // Nearest double; only for statistics and display, never for decisions.
  double to_double() const;
  // "p", "p/2^k" style rendering, e.g. "-9/4", "3", "1/1024".
  std::string to_string() const;

 private:
  void normalize_small(__int128 value, std::int64_t exp2);
  void normalize_big(mpz_class value, std::int64_t exp2);

  std::int64_t small_ = 0;
  std::int64_t exp2_ = 0;
  bool big_ = false;
  std::optional<mpz_class> big_value_;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

}  // namespace inbl
