#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergolab/numeric.hpp"

namespace ergolab::seq {

using Complex = std::complex<double>;

// A reader over a bounded sequence a_n, n >= 1. at(n) must be a pure
// function of n; sequential ascending calls are the fast path. Stateful
// implementations (operator orbits, sliding windows) re-seed at fixed
// 1024-aligned positions so the value never depends on the call pattern.
// One cursor must not be shared between threads; clone via the owning
// WeightSequence instead.
class Cursor {
 public:
  virtual ~Cursor() = default;
  virtual Complex at(std::uint64_t n) = 0;
};

// Bounded complex sequence with a declared sup-norm bound. Copies share the
// immutable description; cursor() hands out private iteration state.
class WeightSequence {
 public:
  using CursorFactory = std::function<std::unique_ptr<Cursor>()>;

  WeightSequence() = default;
  WeightSequence(std::string label, double sup_bound, CursorFactory factory)
      : label_(std::move(label)),
        sup_bound_(sup_bound),
        factory_(std::move(factory)) {}

  // Stateless sequence defined by a pure function of n.
  static WeightSequence from_function(std::string label, double sup_bound,
                                      std::function<Complex(std::uint64_t)> fn);

  static WeightSequence constant(Complex value);
  // a_n = e^{2 pi i n alpha}
  static WeightSequence unimodular(num::FixedFrac alpha, std::string label = "");
  // a_n = ratio^n (|ratio| <= 1)
  static WeightSequence geometric(Complex ratio);
  // indicator of the perfect squares
  static WeightSequence square_indicator();

  std::unique_ptr<Cursor> cursor() const { return factory_(); }
  Complex at(std::uint64_t n) const { return factory_()->at(n); }  // one-shot
  double sup_bound() const { return sup_bound_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  double sup_bound_ = 0;
  CursorFactory factory_;
};

// Finite trigonometric polynomial sum_k c_k lambda_k^n with unimodular
// frequencies stored as exact phase fractions.
struct TrigTerm {
  Complex coefficient;
  num::FixedFrac frequency;  // lambda = e^{2 pi i frequency}

  Complex lambda() const { return num::exp2pi(frequency); }
};

class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<TrigTerm> terms);

  static TrigTerm term_from_lambda(Complex coefficient, Complex lambda,
                                   double tol = 1e-9);

  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Powers by argument multiplication: the phase n * frequency is computed
  // exactly mod 1, never by repeated complex multiplication.
  Complex eval(std::uint64_t n) const;

  double sup_bound() const;  // sum of |c_k|
  WeightSequence as_weight(std::string label = "trigpoly") const;

 private:
  std::vector<TrigTerm> terms_;
};

enum class VerdictKind { kConverged, kDiverged, kUndecided };

struct Verdict {
  VerdictKind kind = VerdictKind::kUndecided;
  Complex limit{0.0, 0.0};   // converged: value at the last checkpoint
  double radius = 0;         // converged: max deviation over the certifying tail
  std::uint64_t since = 0;   // converged: first certifying checkpoint
  double gap = 0;            // diameter of the tail checkpoint values

  const char* name() const {
    switch (kind) {
      case VerdictKind::kConverged: return "converged";
      case VerdictKind::kDiverged: return "diverged";
      default: return "undecided";
    }
  }
};

// Checkpointed partial averages A_N with a convergence verdict.
struct AverageTrace {
  std::vector<std::uint64_t> checkpoints;
  std::vector<Complex> values;
  std::vector<double> abs_means;  // optional: (1/N) sum |a_n|
  std::vector<double> bounds;     // optional: per-checkpoint bound column
  std::vector<double> l2_norms;   // optional: L2 traces
  std::vector<double> gaps;       // optional: L2 Cauchy gaps to the final F_N
  Verdict verdict;
};

// Dyadic Cauchy rule: converged when the last three checkpoint values stay
// within tol of the final one; diverged when the tail values spread wider
// than 10 * tol; undecided otherwise.
Verdict assess_verdict(std::span<const std::uint64_t> checkpoints,
                       std::span<const Complex> values, double tol);

struct TraceOptions {
  std::vector<std::uint64_t> horizons;  // strictly increasing, max <= 2^32
  double tol = 1e-3;
  int threads = 1;
  bool track_abs = false;  // also trace (1/N) sum |a_n|
};

std::vector<std::uint64_t> dyadic_horizons(int m_min, int m_max);

void validate_horizons(std::span<const std::uint64_t> horizons);

// Deterministic checkpointed Cesaro averages of the summand produced by
// `make`. Work is split into 1024-long blocks, compensated within each
// block, and combined with the fixed pairwise tree; results are identical
// for every thread count.
AverageTrace compute_trace(const WeightSequence::CursorFactory& make,
                           const TraceOptions& opt);

inline AverageTrace compute_trace(const WeightSequence& seq,
                                  const TraceOptions& opt) {
  return compute_trace([&seq] { return seq.cursor(); }, opt);
}

}  // namespace ergolab::seq
