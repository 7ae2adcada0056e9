#include "fbdp/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbdp {
namespace mc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long kEventCap = 1000000;

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Welford {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / n_;
    m2_ += d * (x - mean_);
  }
  MCEstimate estimate() const {
    MCEstimate e;
    e.mean = mean_;
    e.n_samples = n_;
    e.stderr_ = n_ > 1 ? std::sqrt(m2_ / (n_ - 1.0) / n_) : 0.0;
    return e;
  }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

Rng::Rng(RngSpec spec) {
  std::uint64_t s = spec.seed;
  std::uint64_t a = splitmix64(s);
  s ^= 0xD1B54A32D192ED03ULL * (spec.stream + 1);
  std::uint64_t b = splitmix64(s);
  engine_.seed(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("exponential needs a positive rate");
  return -std::log(uniform()) / rate;
}

double Rng::normal() {
  // Marsaglia polar, no spare caching so the draw count stays deterministic
  // per call site.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) throw std::domain_error("gamma needs positive parameters");
  if (shape < 1.0) {
    // boost via G(a) = G(a+1) U^{1/a}
    const double g = gamma(shape + 1.0, 1.0);
    return g * std::pow(uniform(), 1.0 / shape) / rate;
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

Path gillespie(const RateModel& model, double horizon, Rng& rng) {
  if (!(horizon >= 0.0)) throw std::domain_error("horizon must be nonnegative");
  Path path;
  path.jump_times.push_back(0.0);
  path.states.push_back(1);
  int state = 1;
  double now = 0.0;
  for (long ev = 0; ev < kEventCap; ++ev) {
    const double lam = model.lambda_at(state);
    const double mu = model.mu_at(state);
    const double total = lam + mu;
    if (total == 0.0) return path;  // absorbed (state 0, or a zero-rate interior state)
    now += rng.exponential(total);
    if (now > horizon) return path;
    if (rng.uniform() < lam / total) {
      ++state;
      ++path.births;
    } else {
      --state;
      ++path.deaths;
    }
    path.jump_times.push_back(now);
    path.states.push_back(state);
    if (state == 0) {
      path.extinct_at = now;
      return path;
    }
  }
  path.censored = true;
  return path;
}

double sample_positive_stable(double alpha, Rng& rng) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("positive stable sampler needs alpha in (0,1)");
  }
  // Kanter's representation: E e^{-eta S} = e^{-eta^alpha}
  const double u = kPi * rng.uniform();
  const double e = rng.exponential(1.0);
  return std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha) *
         std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
}

double sample_inverse_stable(double alpha, double t, Rng& rng) {
  FractionalOrder order(alpha);
  if (t < 0.0) throw std::domain_error("time must be nonnegative");
  if (t == 0.0) return 0.0;
  if (alpha == 1.0) return t;  // degenerate time change
  return std::pow(t / sample_positive_stable(alpha, rng), alpha);
}

UniformizationResult uniformization_pmf(const RateModel& model, int n_max, double t) {
  if (n_max < 1) throw std::domain_error("uniformization needs n_max >= 1");
  if (t < 0.0) throw std::domain_error("uniformization needs t >= 0");
  UniformizationResult out;
  out.probs.assign(n_max + 1, 0.0);
  if (t == 0.0) {
    out.probs[1] = 1.0;
    return out;
  }
  std::vector<double> lam(n_max + 1), mu(n_max + 1);
  double q = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    lam[n] = model.lambda_at(n);
    mu[n] = model.mu_at(n);
    q = std::max(q, lam[n] + mu[n]);
  }
  if (q == 0.0) {
    out.probs[1] = 1.0;
    return out;
  }
  const double qt = q * t;
  std::vector<double> v(n_max + 1, 0.0), next(n_max + 1, 0.0);
  v[1] = 1.0;
  const double log_qt = std::log(qt);
  double covered = 0.0;
  const long j_cap = static_cast<long>(qt + 12.0 * std::sqrt(qt + 16.0) + 64.0);
  for (long j = 0; j <= j_cap; ++j) {
    const double w = std::exp(-qt + j * log_qt - std::lgamma(j + 1.0));
    if (w > 0.0) {
      for (int n = 0; n <= n_max; ++n) out.probs[n] += w * v[n];
      covered += w;
      if (1.0 - covered < 1e-14 && j > qt) break;
    }
    // one step of v P with P = I + Q/q; births out of n_max leak away
    for (int n = 0; n <= n_max; ++n) {
      double acc = v[n] * (1.0 - (lam[n] + mu[n]) / q);
      if (n > 0) acc += v[n - 1] * lam[n - 1] / q;
      if (n < n_max) acc += v[n + 1] * mu[n + 1] / q;
      next[n] = acc;
    }
    v.swap(next);
  }
  double mass = 0.0;
  for (double p : out.probs) mass += p;
  out.leak = std::max(0.0, 1.0 - mass);
  return out;
}

MCEstimate fbdp_pmf_mc(const RateModel& model, double alpha, int n, double t, long n_samples,
                       RngSpec spec, PmfMcMode mode, int n_trunc) {
  FractionalOrder order(alpha);
  if (n < 0) throw std::domain_error("state index must be nonnegative");
  if (n_samples < 2) throw std::domain_error("need at least 2 replicates");
  Welford acc;
  for (long i = 0; i < n_samples; ++i) {
    Rng rng(spec.substream(static_cast<std::uint64_t>(i)));
    const double tau = sample_inverse_stable(order.alpha, t, rng);
    if (mode == PmfMcMode::Paths) {
      const Path path = gillespie(model, tau, rng);
      acc.add(path.states.back() == n ? 1.0 : 0.0);
    } else {
      const UniformizationResult u = uniformization_pmf(model, n_trunc, tau);
      acc.add(n <= n_trunc ? u.probs[n] : 0.0);
    }
  }
  return acc.estimate();
}

double sample_extinction_time_timechanged(const SubordinatorModel& sub, double lambda, double mu,
                                          Rng& rng, double horizon) {
  const RateModel model = RateModel::linear(lambda, mu);
  const Path path = gillespie(model, horizon, rng);
  if (!path.extinct_at.has_value()) {
    return std::numeric_limits<double>::infinity();  // censored or supercritical survival
  }
  const double T = *path.extinct_at;
  switch (sub.family()) {
    case SubordinatorModel::Family::Stable:
      // S(T) has the exact marginal T^{1/alpha} S(1)
      return std::pow(T, 1.0 / sub.stable_alpha()) * sample_positive_stable(sub.stable_alpha(), rng);
    case SubordinatorModel::Family::Gamma:
      return rng.gamma(sub.gamma_shape() * T, sub.gamma_rate());
  }
  return std::numeric_limits<double>::quiet_NaN();
}

JointEstimates simulate_joint_nb(const LinearParams& p, double t, long n_samples, RngSpec spec,
                                 int n_batches) {
  if (n_samples < 2 * n_batches || n_batches < 2) {
    throw std::domain_error("joint simulation needs at least 2 samples per batch");
  }
  const RateModel model = RateModel::linear(p.lambda, p.mu);
  JointEstimates out;
  Welford mean_n, mean_b, mean_d;
  Welford bvar_n, bvar_b, bcov;
  const long per_batch = n_samples / n_batches;
  long replicate = 0;
  for (int batch = 0; batch < n_batches; ++batch) {
    double sn = 0.0, sb = 0.0, snn = 0.0, sbb = 0.0, snb = 0.0;
    for (long k = 0; k < per_batch; ++k, ++replicate) {
      Rng rng(spec.substream(static_cast<std::uint64_t>(replicate)));
      const double tau = sample_inverse_stable(p.order.alpha, t, rng);
      const Path path = gillespie(model, tau, rng);
      if (path.censored) ++out.censored;
      const double N = path.states.back();
      const double B = static_cast<double>(path.births) + 1.0;  // progenitor included
      mean_n.add(N);
      mean_b.add(B);
      mean_d.add(static_cast<double>(path.deaths));
      sn += N;
      sb += B;
      snn += N * N;
      sbb += B * B;
      snb += N * B;
    }
    const double m = static_cast<double>(per_batch);
    bvar_n.add((snn - sn * sn / m) / (m - 1.0));
    bvar_b.add((sbb - sb * sb / m) / (m - 1.0));
    bcov.add((snb - sn * sb / m) / (m - 1.0));
  }
  out.mean_n = mean_n.estimate();
  out.mean_b = mean_b.estimate();
  out.mean_d = mean_d.estimate();
  out.var_n = bvar_n.estimate();
  out.var_b = bvar_b.estimate();
  out.cov_nb = bcov.estimate();
  return out;
}

double sample_inverse_subordinator_path(const SubordinatorModel& sub, double t, double grid_step,
                                        Rng& rng) {
  if (!(grid_step > 0.0)) throw std::domain_error("grid step must be positive");
  if (t < 0.0) throw std::domain_error("time must be nonnegative");
  if (t == 0.0) return 0.0;
  double step = grid_step;
  for (int refine = 0; refine <= 10; ++refine) {
    double s = 0.0;
    for (long k = 1; k < (1L << 40); ++k) {
      double inc;
      switch (sub.family()) {
        case SubordinatorModel::Family::Stable:
          inc = std::pow(step, 1.0 / sub.stable_alpha()) *
                sample_positive_stable(sub.stable_alpha(), rng);
          break;
        case SubordinatorModel::Family::Gamma:
          inc = rng.gamma(sub.gamma_shape() * step, sub.gamma_rate());
          break;
        default:
          inc = 0.0;
      }
      s += inc;
      if (s > t) {
        if (k == 1) break;  // overshot immediately: step too coarse, refine
        return k * step;
      }
    }
    step *= 0.5;
  }
  throw std::runtime_error("inverse subordinator path: step still too coarse after 2^10 refinement");
}

}  // namespace mc
}  // namespace fbdp
