#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "mango/types.hpp"

namespace mango {

/// Time-dependent score approximator s_theta(x_hat, t): a sinusoidal time
/// embedding concatenated with the augmented sample, `depth` fully connected
/// SiLU layers of `hidden_width`, and a linear output of size d + m. The
/// output layer is zero-initialized so an untrained network predicts the
/// zero score.
struct ScoreNetwork {
    std::size_t d = 0;
    std::size_t m = 0;
    std::size_t hidden_width = 256;
    std::size_t depth = 3;
    std::size_t time_embed_dim = 64;
    std::uint64_t seed = 0;
    Eigen::VectorXd params;

    std::size_t input_dim() const { return d + m + time_embed_dim; }
    std::size_t output_dim() const { return d + m; }
};

std::size_t param_count(std::size_t d, std::size_t m, std::size_t hidden_width,
                        std::size_t depth, std::size_t time_embed_dim);

ScoreNetwork init_network(std::size_t d, std::size_t m, std::size_t hidden_width,
                          std::size_t depth, std::size_t time_embed_dim,
                          std::uint64_t seed);

std::vector<double> time_embedding(double t, std::size_t dim);

std::vector<double> forward(const ScoreNetwork& net, const AugmentedSample& xhat, double t);

/// Batched evaluation, one row per sample, all rows at the same time t.
Eigen::MatrixXd forward_batch(const ScoreNetwork& net, const Eigen::MatrixXd& x, double t);

/// Batched evaluation with a per-row time.
Eigen::MatrixXd forward_batch(const ScoreNetwork& net, const Eigen::MatrixXd& x,
                              const std::vector<double>& t);

struct LossItem {
    std::vector<double> xt;
    double t = 0.0;
    std::vector<double> target;
    double weight = 1.0;
};

struct LossGrad {
    double loss = 0.0;
    Eigen::VectorXd grad;
};

/// Weighted denoising-score-matching objective
///   loss = mean_i lambda(t_i) * weight_i * ||s_theta(xt_i, t_i) - target_i||^2
/// with the exact analytic gradient w.r.t. the flat parameter vector.
LossGrad loss_grad(const ScoreNetwork& net, const std::vector<LossItem>& batch,
                   const std::function<double(double)>& lambda_of_t);

}  // namespace mango
