#include "ergolab/numeric.hpp"

namespace ergolab::num {

namespace {

// Fraction bits of a/b for 0 <= a < b, by restoring binary long division.
// The wrapping subtraction absorbs the carry out of the shift: the true
// remainder always stays below b < 2^384.
FixedFrac fraction_of_ratio(const Mag384& a, const Mag384& b) {
  FixedFrac out;
  Mag384 rem = a;
  for (int bit = kLimbs * 64 - 1; bit >= 0; --bit) {
    bool carry = rem.shl1();
    if (carry || Mag384::compare(rem, b) >= 0) {
      rem.sub(b);
      out.set_bit(bit);
    }
  }
  return out;
}

FixedFrac compute_golden() {
  Mag384 a{};  // F_0
  Mag384 b{};  // F_1
  b.limb[0] = 1;
  for (int i = 0; i < 280; ++i) {
    Mag384 c = a;
    c.add(b);
    a = b;
    b = c;
  }
  // a = F_280, b = F_281
  return fraction_of_ratio(a, b);
}

}  // namespace

const FixedFrac& FixedFrac::golden() {
  static const FixedFrac g = compute_golden();
  return g;
}

}  // namespace ergolab::num
