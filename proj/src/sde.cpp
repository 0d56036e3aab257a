#include "mango/sde.hpp"

#include <cmath>
#include <stdexcept>

namespace mango {

namespace {

void check_time(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("time outside [0,1]");
    }
}

}  // namespace

VPSchedule VPSchedule::scaled(double beta_min, double beta_max, std::size_t steps,
                              double schedule_scale) {
    VPSchedule s;
    s.beta_min = beta_min * schedule_scale;
    s.beta_max = beta_max * schedule_scale;
    s.steps = steps;
    validate(s);
    return s;
}

void validate(const VPSchedule& s) {
    if (!(s.beta_min > 0.0) || !(s.beta_max > s.beta_min)) {
        throw std::invalid_argument("schedule requires 0 < beta_min < beta_max");
    }
    if (s.steps < 1) {
        throw std::invalid_argument("schedule requires steps >= 1");
    }
}

double beta_at(const VPSchedule& s, double t) {
    check_time(t);
    return s.beta_min + (s.beta_max - s.beta_min) * t;
}

double alpha_bar_at(const VPSchedule& s, double t) {
    check_time(t);
    return std::exp(-(s.beta_max - s.beta_min) * t * t / 2.0 - s.beta_min * t);
}

Perturbed perturb(const VPSchedule& s, const AugmentedSample& x0, double t,
                  const std::vector<double>& noise) {
    if (noise.size() != x0.dim()) {
        throw std::invalid_argument("dimension mismatch: noise length != d + m");
    }
    const double ab = alpha_bar_at(s, t);
    const double one_minus = 1.0 - ab;
    if (!(one_minus > 0.0)) {
        throw std::invalid_argument("degenerate time: score target undefined at t = 0");
    }
    const double sa = std::sqrt(ab);
    const double sn = std::sqrt(one_minus);

    std::vector<double> flat = concat(x0);
    Perturbed out;
    out.score_target.resize(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) {
        out.score_target[i] = -noise[i] / sn;
        flat[i] = sa * flat[i] + sn * noise[i];
    }
    out.xt = split(flat, x0.design.dim(), x0.score.dim());
    return out;
}

AugmentedSample tweedie_denoise(const VPSchedule& s, const AugmentedSample& xt,
                                double t, const std::vector<double>& score_out) {
    if (score_out.size() != xt.dim()) {
        throw std::invalid_argument("dimension mismatch: score length != d + m");
    }
    const double ab = alpha_bar_at(s, t);
    if (ab < 1e-12) {
        throw std::invalid_argument("vanishing signal: alpha_bar below 1e-12");
    }
    const double sa = std::sqrt(ab);
    const double sn = std::sqrt(std::max(0.0, 1.0 - ab));

    std::vector<double> flat = concat(xt);
    for (std::size_t i = 0; i < flat.size(); ++i) {
        flat[i] = (flat[i] + sn * score_out[i]) / sa;
    }
    return split(flat, xt.design.dim(), xt.score.dim());
}

}  // namespace mango
