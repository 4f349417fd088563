#include "ergolab/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergolab/summation.hpp"

namespace ergolab::seq {

AverageTrace cesaro_trace(const WeightSequence& seq,
                          const std::vector<std::uint64_t>& horizons,
                          CesaroMode mode, double tol, int threads) {
  TraceOptions opt;
  opt.horizons = horizons;
  opt.tol = tol;
  opt.threads = threads;
  if (mode == CesaroMode::kValues) return compute_trace(seq, opt);
  return compute_trace(
      [&seq] {
        class AbsCursor final : public Cursor {
         public:
          explicit AbsCursor(std::unique_ptr<Cursor> inner)
              : inner_(std::move(inner)) {}
          Complex at(std::uint64_t n) override {
            return {std::abs(inner_->at(n)), 0.0};
          }

         private:
          std::unique_ptr<Cursor> inner_;
        };
        return std::make_unique<AbsCursor>(seq.cursor());
      },
      opt);
}

NullCheck cesaro_null_check(const WeightSequence& seq, std::uint64_t horizon,
                            double tol, int threads) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  AverageTrace t = cesaro_trace(seq, {horizon}, CesaroMode::kAbsolute, tol,
                                threads);
  NullCheck out;
  out.residual = t.values.back().real();
  out.is_null = out.residual <= tol;
  return out;
}

DensityOneSet::DensityOneSet(WeightSequence seq, std::uint64_t horizon,
                             std::vector<KvnLevel> levels)
    : seq_(std::move(seq)), horizon_(horizon), levels_(std::move(levels)) {}

bool DensityOneSet::fully_certified() const {
  return std::all_of(levels_.begin(), levels_.end(),
                     [](const KvnLevel& l) { return l.certified; });
}

namespace {

// Deepest certified level applicable at index n (start < n), or -1.
int applicable_level(const std::vector<KvnLevel>& levels, std::uint64_t n) {
  int best = -1;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k].certified && levels[k].start < n) best = static_cast<int>(k);
  }
  return best;
}

}  // namespace

bool DensityOneSet::contains(std::uint64_t n) const {
  int k = applicable_level(levels_, n);
  if (k < 0) return false;
  return std::abs(seq_.at(n)) <= levels_[static_cast<std::size_t>(k)].epsilon;
}

std::vector<std::uint64_t> DensityOneSet::count_profile(
    const std::vector<std::uint64_t>& checkpoints) const {
  validate_horizons(checkpoints);
  std::vector<std::uint64_t> out;
  out.reserve(checkpoints.size());
  auto cur = seq_.cursor();
  std::uint64_t count = 0;
  std::size_t next_cp = 0;
  for (std::uint64_t n = 1; n <= checkpoints.back(); ++n) {
    int k = applicable_level(levels_, n);
    if (k >= 0 &&
        std::abs(cur->at(n)) <= levels_[static_cast<std::size_t>(k)].epsilon) {
      ++count;
    }
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == n) {
      out.push_back(count);
      ++next_cp;
    }
  }
  return out;
}

std::uint64_t DensityOneSet::member_count(std::uint64_t n_max) const {
  return count_profile({n_max}).front();
}

double DensityOneSet::observed_density(std::uint64_t n_max) const {
  return static_cast<double>(member_count(n_max)) /
         static_cast<double>(n_max);
}

DensityOneSet kvn_extract(const WeightSequence& seq, std::uint64_t horizon,
                          const std::vector<double>& levels) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (levels.empty()) throw std::invalid_argument("levels must be nonempty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] <= 0) throw std::invalid_argument("levels must be positive");
    if (i > 0 && levels[i] >= levels[i - 1]) {
      throw std::invalid_argument("levels must decrease strictly");
    }
  }

  std::vector<KvnLevel> found;
  found.reserve(levels.size());
  auto cur = seq.cursor();
  sums::Kahan acc;
  std::size_t pending = 0;
  for (std::uint64_t n = 1; n <= horizon && pending < levels.size(); ++n) {
    acc.add(std::abs(cur->at(n)));
    const double mean = acc.value() / static_cast<double>(n);
    while (pending < levels.size() &&
           mean <= levels[pending] * levels[pending]) {
      found.push_back(KvnLevel{levels[pending], n, true});
      ++pending;
    }
  }
  for (; pending < levels.size(); ++pending) {
    found.push_back(KvnLevel{levels[pending], horizon, false});
  }
  return DensityOneSet(seq, horizon, std::move(found));
}

std::complex<double> bohr_coefficient(const WeightSequence& seq,
                                      const num::FixedFrac& lambda_turns,
                                      std::uint64_t horizon, int threads) {
  TraceOptions opt;
  opt.horizons = {horizon};
  opt.threads = threads;
  auto trace = compute_trace(
      [&seq, &lambda_turns] {
        class ModulatedCursor final : public Cursor {
         public:
          ModulatedCursor(std::unique_ptr<Cursor> inner, num::FixedFrac turns)
              : inner_(std::move(inner)), turns_(turns) {}
          Complex at(std::uint64_t n) override {
            return inner_->at(n) *
                   num::exp2pi(turns_.times_u64(n).negated());
          }

         private:
          std::unique_ptr<Cursor> inner_;
          num::FixedFrac turns_;
        };
        return std::make_unique<ModulatedCursor>(seq.cursor(), lambda_turns);
      },
      opt);
  return trace.values.back();
}

std::complex<double> bohr_coefficient(const WeightSequence& seq,
                                      std::complex<double> lambda,
                                      std::uint64_t horizon, int threads,
                                      double tol) {
  if (std::fabs(std::abs(lambda) - 1.0) > tol) {
    throw std::invalid_argument("bohr_coefficient: lambda is not unimodular");
  }
  double turns = std::atan2(lambda.imag(), lambda.real()) /
                 6.283185307179586476925286766559;
  return bohr_coefficient(seq, num::FixedFrac::from_double(turns), horizon,
                          threads);
}

double ap_distance(const TrigPolynomial& p, const WeightSequence& seq,
                   std::uint64_t first, std::uint64_t last) {
  if (first < 1 || last < first) {
    throw std::invalid_argument("ap_distance: empty window");
  }
  auto cur = seq.cursor();
  double d = 0;
  for (std::uint64_t n = first; n <= last; ++n) {
    d = std::max(d, std::abs(p.eval(n) - cur->at(n)));
  }
  return d;
}

}  // namespace ergolab::seq
