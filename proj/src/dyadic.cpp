#include "inbl/dyadic.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace inbl {

namespace {

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

int ctz128(unsigned __int128 u) {
  const auto lo = static_cast<std::uint64_t>(u);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(u >> 64));
}

}  // namespace

Dyadic::Dyadic(std::int64_t value) { normalize_small(value, 0); }

Dyadic::Dyadic(std::int64_t mantissa, std::int64_t exp2) { normalize_small(mantissa, exp2); }

Dyadic Dyadic::from_mpz(const mpz_class& mantissa, std::int64_t exp2) {
  Dyadic d;
  d.normalize_big(mantissa, exp2);
  return d;
}

Dyadic Dyadic::from_parts(const std::string& mantissa, std::int64_t exp2) {
  mpz_class m;
  if (m.set_str(mantissa, 10) != 0) {
    throw std::invalid_argument("invalid dyadic mantissa '" + mantissa + "'");
  }
  return from_mpz(m, exp2);
}

void Dyadic::normalize_small(__int128 value, std::int64_t exp2) {
  if (value == 0) {
    small_ = 0;
    exp2_ = 0;
    big_ = false;
    big_value_.reset();
    return;
  }
  const bool neg = value < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(value) : static_cast<unsigned __int128>(value);
  const int tz = ctz128(u);
  u >>= tz;
  exp2 += tz;
  if (u <= static_cast<unsigned __int128>(kSmallMax)) {
    const auto m = static_cast<std::int64_t>(u);
    small_ = neg ? -m : m;
    exp2_ = exp2;
    big_ = false;
    big_value_.reset();
    return;
  }
  const __int128 signed_u = static_cast<__int128>(u);
  big_value_ = to_mpz(neg ? -signed_u : signed_u);
  big_ = true;
  small_ = 0;
  exp2_ = exp2;
}

void Dyadic::normalize_big(mpz_class value, std::int64_t exp2) {
  if (value == 0) {
    normalize_small(0, 0);
    return;
  }
  const auto tz = mpz_scan1(value.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), tz);
    exp2 += static_cast<std::int64_t>(tz);
  }
  if (mpz_fits_slong_p(value.get_mpz_t()) && value != std::numeric_limits<long>::min()) {
    small_ = value.get_si();
    exp2_ = exp2;
    big_ = false;
    big_value_.reset();
    return;
  }
  big_value_ = std::move(value);
  big_ = true;
  small_ = 0;
  exp2_ = exp2;
}

int Dyadic::sign() const {
  if (big_) return sgn(*big_value_);
  return (small_ > 0) - (small_ < 0);
}

mpz_class Dyadic::mantissa() const {
  if (big_) return *big_value_;
  return mpz_class(static_cast<long>(small_));
}

std::string Dyadic::mantissa_string() const {
  if (big_) return big_value_->get_str(10);
  return std::to_string(small_);
}

Dyadic Dyadic::abs() const { return sign() < 0 ? -*this : *this; }

Dyadic Dyadic::operator-() const {
  if (!big_) return Dyadic(-small_, exp2_);
  return from_mpz(-*big_value_, exp2_);
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (!big_ && !rhs.big_) {
    const __int128 diff = static_cast<__int128>(exp2_) - rhs.exp2_;
    if (diff >= 0 && diff <= 63) {
      const __int128 shifted = static_cast<__int128>(small_) << static_cast<int>(diff);
      normalize_small(shifted + rhs.small_, rhs.exp2_);
      return *this;
    }
    if (diff < 0 && diff >= -63) {
      const __int128 shifted = static_cast<__int128>(rhs.small_) << static_cast<int>(-diff);
      normalize_small(shifted + small_, exp2_);
      return *this;
    }
  }
  mpz_class a = mantissa();
  mpz_class b = rhs.mantissa();
  std::int64_t exp = exp2_;
  if (exp2_ > rhs.exp2_) {
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(exp2_ - rhs.exp2_));
    exp = rhs.exp2_;
  } else if (rhs.exp2_ > exp2_) {
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(rhs.exp2_ - exp2_));
  }
  normalize_big(a + b, exp);
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  if (is_zero() || rhs.is_zero()) {
    normalize_small(0, 0);
    return *this;
  }
  const std::int64_t exp = exp2_ + rhs.exp2_;
  if (!big_ && !rhs.big_) {
    normalize_small(static_cast<__int128>(small_) * rhs.small_, exp);
    return *this;
  }
  normalize_big(mantissa() * rhs.mantissa(), exp);
  return *this;
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  if (a.exp2_ != b.exp2_ || a.big_ != b.big_) return false;
  if (!a.big_) return a.small_ == b.small_;
  return *a.big_value_ == *b.big_value_;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  if (!big_) return std::ldexp(static_cast<double>(small_), static_cast<int>(exp2_));
  long e = 0;
  const double m = mpz_get_d_2exp(&e, big_value_->get_mpz_t());
  return std::ldexp(m, static_cast<int>(e + exp2_));
}

std::string Dyadic::to_string() const {
  if (exp2_ >= 0) {
    mpz_class v = mantissa();
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(exp2_));
    return v.get_str(10);
  }
  if (exp2_ >= -64) {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp2_));
    return mantissa_string() + "/" + den.get_str(10);
  }
  return mantissa_string() + "/2^" + std::to_string(-exp2_);
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }

}  // namespace inbl
