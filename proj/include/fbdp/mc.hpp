#ifndef FBDP_MC_HPP
#define FBDP_MC_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fbdp/rates.hpp"
#include "fbdp/linear.hpp"
#include "fbdp/subordinator.hpp"

namespace fbdp {
namespace mc {

/// Identical (seed, stream) reproduces identical output bit-for-bit; estimators
/// hand replicate i the substream stream + i, so concurrent runs are
/// order-independent.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  RngSpec substream(std::uint64_t i) const { return {seed, stream + i}; }
};

/// Deterministic generator: mt19937_64 whitened from (seed, stream), with
/// self-contained uniform/exponential/normal/gamma transforms (the std
/// distributions are not bit-pinned across library implementations).
class Rng {
 public:
  explicit Rng(RngSpec spec);
  std::uint64_t next_u64() { return engine_(); }
  double uniform();                 // (0, 1)
  double exponential(double rate);  // rate > 0
  double normal();
  double gamma(double shape, double rate);

 private:
  std::mt19937_64 engine_;
};

struct Path {
  std::vector<double> jump_times;  // starts at 0 with the initial state
  std::vector<int> states;         // states[0] = 1, steps of +-1
  long births = 0;                 // up-jumps (the progenitor is not counted)
  long deaths = 0;
  std::optional<double> extinct_at;
  bool censored = false;           // event cap hit before horizon/extinction
};

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample std / sqrt(n)
  long n_samples = 0;
};

/// Event-driven simulation from one progenitor: exponential holding times at
/// rate Lambda_n, birth with probability lambda_n / Lambda_n. Absorbs at 0 and
/// at interior zero-rate states; caps at 10^6 events (censored flag).
Path gillespie(const RateModel& model, double horizon, Rng& rng);

/// Positive stable variate with E e^{-eta S} = e^{-eta^alpha} (Kanter form).
double sample_positive_stable(double alpha, Rng& rng);

/// Inverse-stable variate at time t via the self-similar form (t / S(1))^alpha;
/// returns t exactly at alpha = 1.
double sample_inverse_stable(double alpha, double t, Rng& rng);

enum class PmfMcMode { Paths, Uniformization };

/// Time-change estimator of the state probability: each replicate draws a
/// random clock reading tau and either runs a path to horizon tau or evaluates
/// the deterministic transient solution at tau (variance-reduced default).
MCEstimate fbdp_pmf_mc(const RateModel& model, double alpha, int n, double t, long n_samples,
                       RngSpec spec, PmfMcMode mode = PmfMcMode::Uniformization,
                       int n_trunc = 128);

struct UniformizationResult {
  std::vector<double> probs;  // states 0..n_max
  double leak = 0.0;          // truncation mass lost past n_max
};

/// Poisson-mixture transient solution of the classical system over states
/// 0..n_max. Mass crossing the truncation boundary is removed and reported as
/// leak; callers are warned above 1e-6.
UniformizationResult uniformization_pmf(const RateModel& model, int n_max, double t);

/// Extinction time of the time-changed linear chain: classical extinction time
/// by simulation, then one subordinator increment at that time (exact marginal
/// for both families). Returns infinity for censored/surviving paths.
double sample_extinction_time_timechanged(const SubordinatorModel& sub, double lambda, double mu,
                                          Rng& rng, double horizon = 1e7);

struct JointEstimates {
  MCEstimate mean_n, mean_b, mean_d;  // B counts the progenitor
  MCEstimate var_n, var_b, cov_nb;    // batch-mean second moments
  long censored = 0;
};

/// Joint (N, B, D) sample moments at the time-changed horizon; feeds the
/// cumulative-births validation.
JointEstimates simulate_joint_nb(const LinearParams& p, double t, long n_samples, RngSpec spec,
                                 int n_batches = 100);

/// First passage of a discretized subordinator path (bias O(grid_step)); the
/// step auto-refines up to 2^10 times when the first increment already
/// overshoots t.
double sample_inverse_subordinator_path(const SubordinatorModel& sub, double t, double grid_step,
                                        Rng& rng);

}  // namespace mc
}  // namespace fbdp

#endif  // FBDP_MC_HPP
