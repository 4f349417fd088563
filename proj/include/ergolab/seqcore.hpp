#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ergolab/sequence.hpp"

namespace ergolab::seq {

enum class CesaroMode { kValues, kAbsolute };

// Checkpointed Cesaro averages of a_n (kValues) or |a_n| (kAbsolute).
AverageTrace cesaro_trace(const WeightSequence& seq,
                          const std::vector<std::uint64_t>& horizons,
                          CesaroMode mode = CesaroMode::kValues,
                          double tol = 1e-3, int threads = 1);

struct NullCheck {
  double residual = 0;  // (1/N) sum |c_n| at the horizon
  bool is_null = false; // residual <= tol
};

NullCheck cesaro_null_check(const WeightSequence& seq, std::uint64_t horizon,
                            double tol, int threads = 1);

// One level of the density-one extraction: all n > start in the set satisfy
// |c_n| <= epsilon. start is the first index where the running mean of |c|
// drops to epsilon^2; `certified` records whether that happened below the
// horizon.
struct KvnLevel {
  double epsilon = 0;
  std::uint64_t start = 0;
  bool certified = false;
};

// Index set of density one along which the sequence tends to zero, built at
// a finite horizon. Membership: n belongs to the set when the deepest
// certified level with start < n has |c_n| <= epsilon.
class DensityOneSet {
 public:
  DensityOneSet(WeightSequence seq, std::uint64_t horizon,
                std::vector<KvnLevel> levels);

  bool contains(std::uint64_t n) const;
  std::uint64_t member_count(std::uint64_t n_max) const;
  double observed_density(std::uint64_t n_max) const;  // exact count / N
  // member_count at each checkpoint, single pass.
  std::vector<std::uint64_t> count_profile(
      const std::vector<std::uint64_t>& checkpoints) const;

  const std::vector<KvnLevel>& levels() const { return levels_; }
  std::uint64_t horizon() const { return horizon_; }
  bool fully_certified() const;

 private:
  WeightSequence seq_;
  std::uint64_t horizon_;
  std::vector<KvnLevel> levels_;
};

// Koopman-von-Neumann style extraction of a density-one subsequence along
// which c_n -> 0, at finite horizon. Thresholds must decrease strictly.
// Levels whose running-mean crossing does not occur below the horizon are
// reported uncertified and do not contribute to membership.
DensityOneSet kvn_extract(const WeightSequence& seq, std::uint64_t horizon,
                          const std::vector<double>& levels);

// Fourier-Bohr coefficient (1/N) sum a_n conj(lambda)^n.
std::complex<double> bohr_coefficient(const WeightSequence& seq,
                                      const num::FixedFrac& lambda_turns,
                                      std::uint64_t horizon, int threads = 1);
// Overload validating |lambda| = 1 within tol.
std::complex<double> bohr_coefficient(const WeightSequence& seq,
                                      std::complex<double> lambda,
                                      std::uint64_t horizon, int threads = 1,
                                      double tol = 1e-9);

// Sup-distance between a trig polynomial and a sequence over [first, last].
double ap_distance(const TrigPolynomial& p, const WeightSequence& seq,
                   std::uint64_t first, std::uint64_t last);

}  // namespace ergolab::seq
