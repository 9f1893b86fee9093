#include "swlyap/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "swlyap/errors.hpp"

namespace swlyap {

namespace {

// Largest |alpha dt| per exact sub-step; keeps every factor far from overflow.
constexpr double kMaxStepExponent = 50.0;

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

// Runs body(i) for i in [0, jobs) on `workers` threads.
template <class Body>
void parallel_for(std::size_t jobs, unsigned workers, Body body) {
  workers = resolve_workers(workers, jobs);
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < jobs; i = next++) body(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = jobs;
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

class Propagator {
 public:
  Propagator(const Sl2& a, const Sl2& b, double threshold) : a_(a), b_(b), threshold_(threshold) {}

  void advance(double u, double dt) {
    const Sl2 m = u * a_ + (1.0 - u) * b_;
    const auto ep = eigen_parameter(m);
    const int pieces =
        ep.kind == EigenKind::Real
            ? std::max(1, static_cast<int>(std::ceil(ep.alpha * dt / kMaxStepExponent)))
            : 1;
    const double h = dt / pieces;
    const auto f = flow_coefficients(ep, h);
    const Mat2 step = f.ch * Mat2::identity() + f.sh * m.mat();
    for (int i = 0; i < pieces; ++i) {
      x_ = x_ * step;
      const double n = x_.op_norm();
      const double drift = std::abs(x_.det() - std::exp(-2.0 * log_scale_)) / (n * n);
      max_drift_ = std::max(max_drift_, drift);
      if (n > threshold_) {
        log_scale_ += std::log(n);
        x_ = (1.0 / n) * x_;
      }
    }
  }

  double log_norm() const { return log_scale_ + std::log(x_.op_norm()); }
  double max_drift() const { return max_drift_; }

 private:
  Sl2 a_;
  Sl2 b_;
  double threshold_;
  Mat2 x_ = Mat2::identity();
  double log_scale_ = 0.0;
  double max_drift_ = 0.0;
};

double uniform53(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ControlSchedule::ControlSchedule(std::vector<Segment> segments, bool periodic)
    : segments_(std::move(segments)), periodic_(periodic) {
  if (segments_.empty()) throw DomainError("control schedule has no segments");
  for (const auto& seg : segments_) {
    if (!(seg.duration > 0.0 && std::isfinite(seg.duration)))
      throw DomainError("segment duration must be positive and finite");
    if (!(seg.u >= 0.0 && seg.u <= 1.0)) throw DomainError("segment control must lie in [0, 1]");
  }
}

ControlSchedule ControlSchedule::constant(double u, double duration) {
  return ControlSchedule({{duration, u}}, true);
}

ControlSchedule ControlSchedule::two_phase(const PeriodPair& p) {
  std::vector<Segment> segs;
  if (p.t > 0.0) segs.push_back({p.t, 1.0});
  if (p.s > 0.0) segs.push_back({p.s, 0.0});
  return ControlSchedule(std::move(segs), true);
}

double ControlSchedule::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments_) total += seg.duration;
  return total;
}

GrowthEstimate propagate(const Sl2& a, const Sl2& b, const ControlSchedule& sched, double horizon,
                         const PropagateOptions& opts) {
  if (!(horizon > 0.0 && std::isfinite(horizon))) throw DomainError("horizon must be positive");
  const double period = sched.total_duration();
  if (!sched.periodic() && period < horizon * (1.0 - 1e-12))
    throw DomainError("non-periodic schedule is shorter than the horizon");

  double tail_start = 0.5 * horizon;
  if (sched.periodic()) {
    const double whole = std::floor(horizon / period + 1e-9);
    if (whole >= 2.0) tail_start = horizon - std::floor(0.5 * whole) * period;
  }

  Propagator prop(a, b, opts.renormalize_above);
  const auto& segs = sched.segments();
  double elapsed = 0.0;
  double log_mid = 0.0;
  bool mid_recorded = false;
  std::size_t k = 0;
  while (elapsed < horizon) {
    if (k == segs.size()) {
      if (!sched.periodic()) break;
      k = 0;
    }
    const double u = segs[k].u;
    const bool last = segs[k].duration >= horizon - elapsed;
    double dt = last ? horizon - elapsed : segs[k].duration;
    ++k;
    if (!mid_recorded && elapsed + dt >= tail_start) {
      const double first = tail_start - elapsed;
      if (first > 0.0) prop.advance(u, first);
      log_mid = prop.log_norm();
      mid_recorded = true;
      dt -= first;
      elapsed = tail_start;
    }
    if (dt > 0.0) prop.advance(u, dt);
    elapsed = last ? horizon : elapsed + dt;
  }

  GrowthEstimate out;
  out.horizon = horizon;
  out.log_norm = prop.log_norm();
  out.rate = out.log_norm / horizon;
  out.tail_start = tail_start;
  out.tail_rate = (out.log_norm - log_mid) / (horizon - tail_start);
  out.max_det_drift = prop.max_drift();
  return out;
}

GridResult brute_force_lower_bound(const Sl2& a, const Sl2& b, const GridSpec& grid,
                                   unsigned workers) {
  if (grid.n < 2 || !(grid.t_max > 0.0) || !(grid.s_max > 0.0))
    throw DomainError("grid needs n >= 2 and positive extents");
  const auto n = static_cast<std::size_t>(grid.n);
  struct RowBest {
    double rate;
    std::size_t j;
  };
  std::vector<RowBest> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const double t = grid.t_max * static_cast<double>(i + 1) / grid.n;
    RowBest best{-1.0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      const double s = grid.s_max * static_cast<double>(j + 1) / grid.n;
      const double r = periodic_exponent(a, b, {t, s});
      if (r > best.rate) best = {r, j};
    }
    rows[i] = best;
  });

  GridResult out{-1.0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].rate > out.best_rate) {
      out.best_rate = rows[i].rate;
      out.best_pair = {grid.t_max * static_cast<double>(i + 1) / grid.n,
                       grid.s_max * static_cast<double>(rows[i].j + 1) / grid.n};
    }
  }
  return out;
}

double random_schedule_probe(const Sl2& a, const Sl2& b, double horizon, int trials,
                             std::uint64_t seed, const ProbeOptions& opts) {
  if (trials < 1) throw DomainError("random_schedule_probe needs at least one trial");
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  double mean = opts.mean_duration;
  if (!(mean > 0.0))
    mean = 0.5 / std::max({eigen_parameter(a).alpha, eigen_parameter(b).alpha, 1.0});

  std::vector<double> rates(static_cast<std::size_t>(trials));
  parallel_for(rates.size(), opts.workers, [&](std::size_t k) {
    std::mt19937_64 gen(splitmix64(seed + k));
    int u = static_cast<int>(gen() & 1u);
    if (opts.force_u) u = *opts.force_u;
    std::vector<Segment> segs;
    double total = 0.0;
    while (total < horizon) {
      const double d = -mean * std::log1p(-uniform53(gen));
      if (d <= 0.0) continue;
      segs.push_back({d, static_cast<double>(u)});
      total += d;
      if (!opts.force_u) u = 1 - u;
    }
    rates[k] = propagate(a, b, ControlSchedule(std::move(segs), false), horizon).rate;
  });
  return *std::max_element(rates.begin(), rates.end());
}

}  // namespace swlyap
