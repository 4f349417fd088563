#include "ergolab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ergolab/summation.hpp"

namespace ergolab::seq {

namespace {

class FunctionCursor final : public Cursor {
 public:
  explicit FunctionCursor(std::function<Complex(std::uint64_t)> fn)
      : fn_(std::move(fn)) {}
  Complex at(std::uint64_t n) override { return fn_(n); }

 private:
  std::function<Complex(std::uint64_t)> fn_;
};

}  // namespace

WeightSequence WeightSequence::from_function(
    std::string label, double sup_bound,
    std::function<Complex(std::uint64_t)> fn) {
  return WeightSequence(std::move(label), sup_bound,
                        [fn = std::move(fn)] {
                          return std::make_unique<FunctionCursor>(fn);
                        });
}

WeightSequence WeightSequence::constant(Complex value) {
  return from_function("constant", std::abs(value),
                       [value](std::uint64_t) { return value; });
}

WeightSequence WeightSequence::unimodular(num::FixedFrac alpha,
                                          std::string label) {
  if (label.empty()) label = "unimodular";
  return from_function(std::move(label), 1.0, [alpha](std::uint64_t n) {
    return num::exp2pi(alpha.times_u64(n));
  });
}

WeightSequence WeightSequence::geometric(Complex ratio) {
  if (std::abs(ratio) > 1.0 + 1e-12) {
    throw std::invalid_argument("geometric weight requires |ratio| <= 1");
  }
  return from_function("geometric", std::abs(ratio), [ratio](std::uint64_t n) {
    return std::pow(ratio, static_cast<double>(n));
  });
}

WeightSequence WeightSequence::square_indicator() {
  return from_function("square-indicator", 1.0, [](std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  });
}

TrigPolynomial::TrigPolynomial(std::vector<TrigTerm> terms)
    : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      if (std::abs(terms_[i].lambda() - terms_[j].lambda()) <= 1e-12) {
        throw std::invalid_argument(
            "trig polynomial frequencies must be pairwise distinct");
      }
    }
  }
}

TrigTerm TrigPolynomial::term_from_lambda(Complex coefficient, Complex lambda,
                                          double tol) {
  if (std::fabs(std::abs(lambda) - 1.0) > tol) {
    throw std::invalid_argument("frequency is not unimodular");
  }
  double turns = std::atan2(lambda.imag(), lambda.real()) /
                 6.283185307179586476925286766559;
  return TrigTerm{coefficient, num::FixedFrac::from_double(turns)};
}

Complex TrigPolynomial::eval(std::uint64_t n) const {
  Complex s{0.0, 0.0};
  for (const auto& t : terms_) {
    s += t.coefficient * num::exp2pi(t.frequency.times_u64(n));
  }
  return s;
}

double TrigPolynomial::sup_bound() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

WeightSequence TrigPolynomial::as_weight(std::string label) const {
  auto terms = terms_;
  return WeightSequence::from_function(
      std::move(label), sup_bound(), [terms](std::uint64_t n) {
        Complex s{0.0, 0.0};
        for (const auto& t : terms) {
          s += t.coefficient * num::exp2pi(t.frequency.times_u64(n));
        }
        return s;
      });
}

Verdict assess_verdict(std::span<const std::uint64_t> checkpoints,
                       std::span<const Complex> values, double tol) {
  Verdict v;
  const std::size_t n = values.size();
  if (n < 2) return v;

  const Complex last = values[n - 1];
  const std::size_t certify = std::min<std::size_t>(3, n);
  double radius = 0;
  for (std::size_t i = n - certify; i < n; ++i) {
    radius = std::max(radius, std::abs(values[i] - last));
  }

  const std::size_t tail = std::min(n, std::max<std::size_t>(3, n / 2));
  double gap = 0;
  for (std::size_t i = n - tail; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      gap = std::max(gap, std::abs(values[i] - values[j]));
    }
  }
  v.gap = gap;

  if (radius <= tol) {
    v.kind = VerdictKind::kConverged;
    v.limit = last;
    v.radius = radius;
    v.since = checkpoints[n - certify];
  } else if (gap > 10.0 * tol) {
    v.kind = VerdictKind::kDiverged;
  }
  return v;
}

std::vector<std::uint64_t> dyadic_horizons(int m_min, int m_max) {
  std::vector<std::uint64_t> out;
  for (int m = m_min; m <= m_max; ++m) out.push_back(std::uint64_t{1} << m);
  return out;
}

void validate_horizons(std::span<const std::uint64_t> horizons) {
  if (horizons.empty()) {
    throw std::invalid_argument("horizons must be nonempty");
  }
  if (horizons.front() < 1) {
    throw std::invalid_argument("horizons must be >= 1");
  }
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) {
      throw std::invalid_argument("horizons must be strictly increasing");
    }
  }
  if (horizons.back() > (std::uint64_t{1} << 32)) {
    throw std::invalid_argument("horizon overflow: max horizon is 2^32");
  }
}

namespace {

struct BlockSums {
  std::vector<Complex> values;
  std::vector<double> abs_values;
};

BlockSums block_sums(const WeightSequence::CursorFactory& make,
                     std::uint64_t nblocks, int threads, bool track_abs) {
  BlockSums out;
  out.values.assign(nblocks, Complex{0.0, 0.0});
  if (track_abs) out.abs_values.assign(nblocks, 0.0);
  if (nblocks == 0) return out;

  auto run = [&](std::uint64_t b0, std::uint64_t b1) {
    auto cur = make();
    for (std::uint64_t b = b0; b < b1; ++b) {
      sums::KahanC acc;
      sums::Kahan aacc;
      const std::uint64_t first = b * sums::kBlockLen + 1;
      const std::uint64_t last = (b + 1) * sums::kBlockLen;
      for (std::uint64_t n = first; n <= last; ++n) {
        Complex z = cur->at(n);
        acc.add(z);
        if (track_abs) aacc.add(std::abs(z));
      }
      out.values[b] = acc.value();
      if (track_abs) out.abs_values[b] = aacc.value();
    }
  };

  const int workers = std::clamp<int>(
      threads, 1, static_cast<int>(std::min<std::uint64_t>(nblocks, 64)));
  if (workers <= 1) {
    run(0, nblocks);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t per = (nblocks + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t b0 = per * w;
      const std::uint64_t b1 = std::min(nblocks, b0 + per);
      if (b0 >= b1) break;
      pool.emplace_back(run, b0, b1);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace

AverageTrace compute_trace(const WeightSequence::CursorFactory& make,
                           const TraceOptions& opt) {
  validate_horizons(opt.horizons);

  const std::uint64_t max_n = opt.horizons.back();
  const std::uint64_t nblocks = max_n / sums::kBlockLen;
  BlockSums bs = block_sums(make, nblocks, opt.threads, opt.track_abs);

  AverageTrace trace;
  trace.checkpoints = opt.horizons;
  trace.values.reserve(opt.horizons.size());
  if (opt.track_abs) trace.abs_means.reserve(opt.horizons.size());

  for (std::uint64_t horizon : opt.horizons) {
    const std::uint64_t full = horizon / sums::kBlockLen;
    sums::KahanC tail;
    sums::Kahan abs_tail;
    if (full * sums::kBlockLen < horizon) {
      auto cur = make();
      for (std::uint64_t n = full * sums::kBlockLen + 1; n <= horizon; ++n) {
        Complex z = cur->at(n);
        tail.add(z);
        if (opt.track_abs) abs_tail.add(std::abs(z));
      }
    }
    Complex total =
        sums::pairwise_sum(
            std::span<const Complex>(bs.values.data(), full)) +
        tail.value();
    trace.values.push_back(total / static_cast<double>(horizon));
    if (opt.track_abs) {
      double atotal =
          sums::pairwise_sum(std::span<const double>(
              bs.abs_values.data(), full)) +
          abs_tail.value();
      trace.abs_means.push_back(atotal / static_cast<double>(horizon));
    }
  }

  trace.verdict = assess_verdict(trace.checkpoints, trace.values, opt.tol);
  return trace;
}

}  // namespace ergolab::seq
