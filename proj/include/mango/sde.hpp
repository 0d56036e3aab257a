#pragma once

#include <cstddef>
#include <vector>

#include "mango/types.hpp"

namespace mango {

/// Variance-preserving noise schedule with linear rate
///   beta(t) = beta_min + (beta_max - beta_min) * t,  t in [0, 1],
/// and signal level
///   alpha_bar(t) = exp(-(beta_max - beta_min) t^2 / 2 - beta_min t).
///
/// Defaults are continuous-time rates giving alpha_bar(1) ~ 4.3e-5, i.e. a
/// terminal law close to the standard normal prior. Per-step discrete rates
/// can be reproduced by scaling: beta_cont = steps * beta_disc (see
/// VPSchedule::scaled).
struct VPSchedule {
    double beta_min = 0.1;
    double beta_max = 20.0;
    std::size_t steps = 200;

    static VPSchedule scaled(double beta_min, double beta_max, std::size_t steps,
                             double schedule_scale);
};

void validate(const VPSchedule& s);

double beta_at(const VPSchedule& s, double t);
double alpha_bar_at(const VPSchedule& s, double t);

struct Perturbed {
    AugmentedSample xt;
    /// Conditional score grad log p_t(xt | x0) = -noise / sqrt(1 - alpha_bar).
    std::vector<double> score_target;
};

/// Closed-form forward kernel: xt = sqrt(ab) x0 + sqrt(1-ab) noise.
/// `noise` must be a unit-Gaussian draw of length d+m. t = 0 is rejected
/// ("degenerate time") because the score target divides by sqrt(1-ab).
Perturbed perturb(const VPSchedule& s, const AugmentedSample& x0, double t,
                  const std::vector<double>& noise);

/// Posterior-mean denoising: (xt + sqrt(1-ab) * score) / sqrt(ab), split back
/// into (x_{0|t}, y_{0|t}). Rejects alpha_bar below 1e-12 ("vanishing signal").
AugmentedSample tweedie_denoise(const VPSchedule& s, const AugmentedSample& xt,
                                double t, const std::vector<double>& score_out);

}  // namespace mango
