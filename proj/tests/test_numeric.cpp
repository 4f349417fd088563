#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ergolab/numeric.hpp"
#include "ergolab/summation.hpp"

using ergolab::num::FixedFrac;
using ergolab::num::WideInt;

namespace {
// F_91 / F_92, the largest Fibonacci convergent pair that fits in 64 bits.
constexpr std::uint64_t kFib91 = 4660046610375530309ull;
constexpr std::uint64_t kFib92 = 7540113804746346429ull;

double dist_to_integer(const FixedFrac& f) {
  double t = f.to_double();
  return std::min(t, 1.0 - t);
}
}  // namespace

TEST_CASE("from_double extracts exact fraction bits") {
  CHECK(FixedFrac::from_double(0.0).is_zero());
  FixedFrac half = FixedFrac::from_double(0.5);
  CHECK(half.limb[5] == (std::uint64_t{1} << 63));
  for (int i = 0; i < 5; ++i) CHECK(half.limb[i] == 0);

  CHECK(FixedFrac::from_double(1.75).to_double() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(FixedFrac::from_double(-0.25).to_double() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(FixedFrac::from_double(3.0).is_zero());

  // Dyadic doubles round-trip exactly.
  double v = 0x1.23456789abcdp-3;
  CHECK(FixedFrac::from_double(v).to_double() == doctest::Approx(v).epsilon(1e-16));
}

TEST_CASE("from_ratio and wrap-around multiplication") {
  FixedFrac third = FixedFrac::from_ratio(1, 3);
  CHECK(third.to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // 3 * (1/3) should be an integer modulo 1 up to the 2^-384 truncation.
  CHECK(dist_to_integer(third.times_u64(3)) < 1e-30);

  FixedFrac r = FixedFrac::from_ratio(7, 10);
  CHECK(r.times_i64(-1).to_double() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(dist_to_integer(r + r.negated()) < 1e-30);
}

TEST_CASE("golden ratio conjugate matches the Fibonacci convergent") {
  const FixedFrac& g = FixedFrac::golden();
  CHECK(g.to_double() == doctest::Approx(0.6180339887498949).epsilon(1e-15));
  // |alpha - F91/F92| <= 1/F92^2, so alpha * F92 is within 1/F92 of an
  // integer. This checks ~63 bits beyond double precision.
  CHECK(dist_to_integer(g.times_u64(kFib92)) < 2e-19);
  (void)kFib91;
}

TEST_CASE("times_wide agrees with shifting") {
  FixedFrac third = FixedFrac::from_ratio(1, 3);
  WideInt big = WideInt::from_i64(1);
  for (int i = 0; i < 10; ++i) big.mul_u64_checked(1024);  // 2^100
  // 2^100 / 3 mod 1 = 1/3 (even shift of the 01 pattern).
  CHECK(third.times_wide(big).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  WideInt neg = WideInt::from_i64(-5);
  CHECK(third.times_wide(neg).to_double() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));  // -5/3 mod 1 = 1/3
}

TEST_CASE("wide integer arithmetic") {
  WideInt w = WideInt::from_i64(2);
  w.mul_u64_checked(10).add_i64(-1);  // 19
  CHECK(w.to_i64().value() == 19);

  WideInt h = WideInt::from_i64(0);
  // Horner for 2n^3 - n at n = 10.
  std::int64_t coeffs[] = {0, -1, 0, 2};
  for (int i = 3; i >= 0; --i) {
    h.mul_u64_checked(10).add_i64(coeffs[i]);
  }
  CHECK(h.to_i64().value() == 1990);

  CHECK(WideInt::from_i64(-5).mod_u64(3) == 1);
  CHECK(WideInt::from_i64(5).mod_u64(3) == 2);
  CHECK(WideInt::from_i128(static_cast<__int128>(1) << 100).to_double() ==
        doctest::Approx(std::ldexp(1.0, 100)).epsilon(1e-12));

  WideInt of = WideInt::from_i64(1);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 7; ++i) of.mul_u64_checked(std::uint64_t{1} << 63);
      }(),
      std::overflow_error);
}

TEST_CASE("exp2pi special angles") {
  auto i1 = ergolab::num::exp2pi(FixedFrac::from_ratio(1, 4));
  CHECK(std::abs(i1 - std::complex<double>{0.0, 1.0}) < 1e-15);
  auto m1 = ergolab::num::exp2pi(FixedFrac::from_ratio(1, 2));
  CHECK(std::abs(m1 - std::complex<double>{-1.0, 0.0}) < 1e-15);
  CHECK(std::abs(ergolab::num::exp2pi(0.25) - std::complex<double>{0.0, 1.0}) < 1e-15);
}

TEST_CASE("compensated pairwise machinery") {
  ergolab::sums::Kahan k;
  for (int i = 0; i < 1000; ++i) {
    k.add(1e16);
    k.add(1.0);
    k.add(-1e16);
  }
  CHECK(k.value() == doctest::Approx(1000.0).epsilon(1e-12));

  std::vector<std::complex<double>> v(7, {1.0, -2.0});
  auto s = ergolab::sums::pairwise_sum(std::span<const std::complex<double>>(v));
  CHECK(std::abs(s - std::complex<double>{7.0, -14.0}) < 1e-12);
}
