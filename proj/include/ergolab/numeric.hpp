#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>

// Exact fixed-point arithmetic on the unit interval and wide integers.
//
// Phases of unimodular numbers are kept as 384-bit binary fractions
// (FixedFrac), so n*alpha mod 1 and polynomial phases p(n) mod 1 are computed
// exactly modulo 1 up to the 2^-384 resolution of the stored constant. This
// keeps orbit generators pure functions of the index n: re-evaluating at any
// n gives bit-identical results, which the deterministic parallel summation
// relies on.

namespace ergolab::num {

inline constexpr int kLimbs = 6;  // 6 * 64 = 384 bits

// Unsigned 384-bit magnitude, little-endian limbs.
struct Mag384 {
  std::array<std::uint64_t, kLimbs> limb{};

  bool is_zero() const {
    for (auto l : limb) {
      if (l != 0) return false;
    }
    return true;
  }

  static int compare(const Mag384& a, const Mag384& b) {
    for (int i = kLimbs - 1; i >= 0; --i) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
    }
    return 0;
  }

  // Returns the carry out of the top limb.
  bool add(const Mag384& o) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < kLimbs; ++i) {
      unsigned __int128 s =
          static_cast<unsigned __int128>(limb[i]) + o.limb[i] + carry;
      limb[i] = static_cast<std::uint64_t>(s);
      carry = s >> 64;
    }
    return carry != 0;
  }

  // Wrapping subtraction mod 2^384.
  void sub(const Mag384& o) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < kLimbs; ++i) {
      unsigned __int128 d =
          static_cast<unsigned __int128>(limb[i]) - o.limb[i] - borrow;
      limb[i] = static_cast<std::uint64_t>(d);
      borrow = (d >> 64) & 1;
    }
  }

  // Shift left one bit; returns the bit shifted out of the top.
  bool shl1() {
    bool carry = false;
    for (int i = 0; i < kLimbs; ++i) {
      bool next = (limb[i] >> 63) & 1;
      limb[i] = (limb[i] << 1) | (carry ? 1 : 0);
      carry = next;
    }
    return carry;
  }

  // Multiply by m; returns the overflow limb (0 when the product fits).
  std::uint64_t mul_u64(std::uint64_t m) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < kLimbs; ++i) {
      unsigned __int128 p =
          static_cast<unsigned __int128>(limb[i]) * m + carry;
      limb[i] = static_cast<std::uint64_t>(p);
      carry = p >> 64;
    }
    return static_cast<std::uint64_t>(carry);
  }

  std::uint64_t mod_u64(std::uint64_t m) const {
    unsigned __int128 r = 0;
    for (int i = kLimbs - 1; i >= 0; --i) {
      r = ((r << 64) | limb[i]) % m;
    }
    return static_cast<std::uint64_t>(r);
  }

  double to_double() const {
    double v = 0;
    for (int i = kLimbs - 1; i >= 0; --i) {
      v = v * 0x1p64 + static_cast<double>(limb[i]);
    }
    return v;
  }
};

// Signed wide integer (sign and 384-bit magnitude). Wide enough for
// integer-coefficient polynomials of degree <= 8 evaluated at n <= 2^20
// with 64-bit coefficients: |p(n)| <= 9 * 2^63 * 2^160 < 2^384.
class WideInt {
 public:
  WideInt() = default;

  static WideInt from_i64(std::int64_t v) {
    WideInt w;
    w.neg_ = v < 0;
    w.mag_.limb[0] = v < 0 ? ~static_cast<std::uint64_t>(v) + 1
                           : static_cast<std::uint64_t>(v);
    return w;
  }

  static WideInt from_u64(std::uint64_t v) {
    WideInt w;
    w.mag_.limb[0] = v;
    return w;
  }

  static WideInt from_i128(__int128 v) {
    WideInt w;
    w.neg_ = v < 0;
    unsigned __int128 m = v < 0 ? ~static_cast<unsigned __int128>(v) + 1
                                : static_cast<unsigned __int128>(v);
    w.mag_.limb[0] = static_cast<std::uint64_t>(m);
    w.mag_.limb[1] = static_cast<std::uint64_t>(m >> 64);
    return w;
  }

  bool negative() const { return neg_; }
  bool is_zero() const { return mag_.is_zero(); }
  const Mag384& magnitude() const { return mag_; }

  WideInt& mul_u64_checked(std::uint64_t m) {
    if (mag_.mul_u64(m) != 0) {
      throw std::overflow_error("wide integer accumulator overflow");
    }
    if (mag_.is_zero()) neg_ = false;
    return *this;
  }

  WideInt& add_i64(std::int64_t v) {
    WideInt o = from_i64(v);
    return add(o);
  }

  WideInt& add(const WideInt& o) {
    if (neg_ == o.neg_) {
      if (mag_.add(o.mag_)) {
        throw std::overflow_error("wide integer accumulator overflow");
      }
    } else {
      int c = Mag384::compare(mag_, o.mag_);
      if (c == 0) {
        mag_ = Mag384{};
        neg_ = false;
      } else if (c > 0) {
        mag_.sub(o.mag_);
      } else {
        Mag384 t = o.mag_;
        t.sub(mag_);
        mag_ = t;
        neg_ = o.neg_;
      }
    }
    if (mag_.is_zero()) neg_ = false;
    return *this;
  }

  std::optional<std::int64_t> to_i64() const {
    for (int i = 1; i < kLimbs; ++i) {
      if (mag_.limb[i] != 0) return std::nullopt;
    }
    std::uint64_t m = mag_.limb[0];
    if (neg_) {
      if (m > static_cast<std::uint64_t>(1) << 63) return std::nullopt;
      return -static_cast<std::int64_t>(m - 1) - 1;
    }
    if (m > static_cast<std::uint64_t>(INT64_MAX)) return std::nullopt;
    return static_cast<std::int64_t>(m);
  }

  // Mathematical remainder in [0, m).
  std::uint64_t mod_u64(std::uint64_t m) const {
    std::uint64_t r = mag_.mod_u64(m);
    if (neg_ && r != 0) r = m - r;
    return r;
  }

  double to_double() const {
    double v = mag_.to_double();
    return neg_ ? -v : v;
  }

 private:
  bool neg_ = false;
  Mag384 mag_{};
};

// A real number modulo 1 with 384 fraction bits. Value = L / 2^384 where L
// is the little-endian limb array. All arithmetic is exact modulo 1.
struct FixedFrac {
  std::array<std::uint64_t, kLimbs> limb{};

  bool operator==(const FixedFrac&) const = default;

  bool is_zero() const {
    for (auto l : limb) {
      if (l != 0) return false;
    }
    return true;
  }

  // Exact fractional part of a finite double (bits below 2^-384 dropped).
  static FixedFrac from_double(double v) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("FixedFrac: non-finite value");
    }
    if (v == 0.0) return {};
    int e = 0;
    double m = std::frexp(v, &e);  // v = m * 2^e, |m| in [0.5, 1)
    bool negv = m < 0;
    auto mant = static_cast<std::uint64_t>(std::ldexp(std::fabs(m), 53));
    FixedFrac out;
    out.or_shifted(mant, e - 53 + 384);
    return negv ? out.negated() : out;
  }

  // num/den modulo 1, rounded down at bit 384.
  static FixedFrac from_ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("FixedFrac: zero denominator");
    FixedFrac out;
    std::uint64_t rem = num % den;
    for (int i = kLimbs - 1; i >= 0; --i) {
      unsigned __int128 cur = static_cast<unsigned __int128>(rem) << 64;
      out.limb[i] = static_cast<std::uint64_t>(cur / den);
      rem = static_cast<std::uint64_t>(cur % den);
    }
    return out;
  }

  // (sqrt(5)-1)/2 to 384 bits, from a Fibonacci continued-fraction
  // convergent F_280/F_281 (error < 1/F_281^2 < 2^-388).
  static const FixedFrac& golden();

  FixedFrac& operator+=(const FixedFrac& o) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < kLimbs; ++i) {
      unsigned __int128 s =
          static_cast<unsigned __int128>(limb[i]) + o.limb[i] + carry;
      limb[i] = static_cast<std::uint64_t>(s);
      carry = s >> 64;
    }
    return *this;  // carry discarded: arithmetic is mod 1
  }

  FixedFrac& operator-=(const FixedFrac& o) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < kLimbs; ++i) {
      unsigned __int128 d =
          static_cast<unsigned __int128>(limb[i]) - o.limb[i] - borrow;
      limb[i] = static_cast<std::uint64_t>(d);
      borrow = (d >> 64) & 1;
    }
    return *this;
  }

  friend FixedFrac operator+(FixedFrac a, const FixedFrac& b) { return a += b; }
  friend FixedFrac operator-(FixedFrac a, const FixedFrac& b) { return a -= b; }

  FixedFrac negated() const {
    FixedFrac z;
    return z -= *this;
  }

  FixedFrac times_u64(std::uint64_t m) const {
    FixedFrac out = *this;
    unsigned __int128 carry = 0;
    for (int i = 0; i < kLimbs; ++i) {
      unsigned __int128 p =
          static_cast<unsigned __int128>(out.limb[i]) * m + carry;
      out.limb[i] = static_cast<std::uint64_t>(p);
      carry = p >> 64;
    }
    return out;  // overflow limbs are the integer part
  }

  FixedFrac times_i64(std::int64_t m) const {
    if (m >= 0) return times_u64(static_cast<std::uint64_t>(m));
    std::uint64_t mag = ~static_cast<std::uint64_t>(m) + 1;
    return times_u64(mag).negated();
  }

  FixedFrac shifted_left_64() const {
    FixedFrac out;
    for (int i = kLimbs - 1; i >= 1; --i) out.limb[i] = limb[i - 1];
    out.limb[0] = 0;
    return out;
  }

  FixedFrac times_wide(const WideInt& w) const {
    FixedFrac acc;
    FixedFrac y = *this;
    for (int i = 0; i < kLimbs; ++i) {
      if (w.magnitude().limb[i] != 0) {
        acc += y.times_u64(w.magnitude().limb[i]);
      }
      if (i + 1 < kLimbs) y = y.shifted_left_64();
    }
    return w.negative() ? acc.negated() : acc;
  }

  double to_double() const {
    return std::ldexp(static_cast<double>(limb[kLimbs - 1]), -64) +
           std::ldexp(static_cast<double>(limb[kLimbs - 2]), -128);
  }

  void set_bit(int idx) {  // idx in [0, 384), 0 = least significant
    limb[idx / 64] |= std::uint64_t{1} << (idx % 64);
  }

 private:
  // OR a 64-bit chunk shifted so bit j of `value` lands at index shift + j.
  void or_shifted(std::uint64_t value, int shift) {
    if (shift <= -64 || shift >= 384) return;
    if (shift < 0) {
      value >>= -shift;
      shift = 0;
    }
    int i = shift / 64;
    int off = shift % 64;
    if (i < kLimbs) limb[i] |= value << off;
    if (off != 0 && i + 1 < kLimbs) limb[i + 1] |= value >> (64 - off);
  }
};

// e^{2 pi i f} for an exact fraction.
inline std::complex<double> exp2pi(const FixedFrac& f) {
  double t = f.to_double();
  if (t >= 0.5) t -= 1.0;
  double a = 6.283185307179586476925286766559 * t;
  return {std::cos(a), std::sin(a)};
}

// e^{2 pi i turns} for a plain double phase (reduced to [-1/2, 1/2]).
inline std::complex<double> exp2pi(double turns) {
  double t = turns - std::nearbyint(turns);
  double a = 6.283185307179586476925286766559 * t;
  return {std::cos(a), std::sin(a)};
}

}  // namespace ergolab::num
