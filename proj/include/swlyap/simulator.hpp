#pragma once

// Ground-truth propagation of piecewise-constant controls.  Segment
// exponentials are exact (closed form), the running product is renormalized
// in the log domain, so horizons far past the double range are fine.

#include <cstdint>
#include <optional>
#include <vector>

#include "swlyap/periodic.hpp"
#include "swlyap/sl2.hpp"

namespace swlyap {

struct Segment {
  double duration = 0.0;  // > 0
  double u = 0.0;         // in [0, 1]; velocity u A + (1 - u) B
};

class ControlSchedule {
 public:
  ControlSchedule() = default;
  // Throws DomainError on an empty list, a nonpositive duration or u outside [0,1].
  ControlSchedule(std::vector<Segment> segments, bool periodic);

  static ControlSchedule constant(double u, double duration);
  static ControlSchedule two_phase(const PeriodPair& p);

  const std::vector<Segment>& segments() const { return segments_; }
  bool periodic() const { return periodic_; }
  double total_duration() const;

 private:
  std::vector<Segment> segments_;
  bool periodic_ = false;
};

struct GrowthEstimate {
  double horizon = 0.0;
  double log_norm = 0.0;  // ln ||X(horizon)|| (operator 2-norm)
  double rate = 0.0;      // log_norm / horizon
  // (ln||X(T)|| - ln||X(T0)||) / (T - T0) over the second half of the run,
  // with T0 a whole number of periods before T for periodic schedules.  The
  // O(1/T) transient of `rate` cancels in the difference.
  double tail_rate = 0.0;
  double tail_start = 0.0;
  double max_det_drift = 0.0;  // max |det(X) - e^{-2 log_scale}| / ||X||^2 over the run
};

struct PropagateOptions {
  double renormalize_above = 1e100;
};

// A non-periodic schedule must cover the horizon (DomainError otherwise).
GrowthEstimate propagate(const Sl2& a, const Sl2& b, const ControlSchedule& sched, double horizon,
                         const PropagateOptions& opts = {});

struct GridSpec {
  double t_max = 1.0;
  double s_max = 1.0;
  int n = 2;
};

struct GridResult {
  double best_rate = 0.0;
  PeriodPair best_pair;
};

// max of periodic_exponent over {(i t_max/n, j s_max/n) : 1 <= i, j <= n}.
// Ties go to the lexicographically smallest (t, s); the result does not
// depend on the worker count (0 = hardware concurrency).
GridResult brute_force_lower_bound(const Sl2& a, const Sl2& b, const GridSpec& grid,
                                   unsigned workers = 0);

struct ProbeOptions {
  // Mean of the exponential segment durations; <= 0 selects
  // 0.5 / max(alpha_A, alpha_B, 1).
  double mean_duration = 0.0;
  std::optional<int> force_u;  // pin every segment to u = 0 or 1
  unsigned workers = 0;
};

// Best finite-horizon rate over `trials` random bang-bang schedules.
//
// Trial k draws from std::mt19937_64 seeded with splitmix64(seed + k);
// uniforms take the top 53 bits, durations are -mean * log1p(-U), and the
// first control is the low bit of the first draw.  Controls alternate.
double random_schedule_probe(const Sl2& a, const Sl2& b, double horizon, int trials,
                             std::uint64_t seed, const ProbeOptions& opts = {});

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace swlyap
