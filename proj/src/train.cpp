#include "mango/train.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mango/pareto.hpp"
#include "mango/rng.hpp"

namespace mango {

namespace {
constexpr double kTimeEps = 1e-3;  // lower cutoff; the score target is singular at t = 0
}

void validate(const TrainConfig& cfg) {
    if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (cfg.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (!(cfg.lr_peak > 0.0)) throw std::invalid_argument("lr_peak must be > 0");
    if (cfg.weight_decay < 0.0) throw std::invalid_argument("weight_decay must be >= 0");
    validate(cfg.schedule);
}

SampleWeights compute_weights(const OfflineDataset& dataset) {
    if (dataset.size() < 2) throw std::invalid_argument("dataset needs at least 2 samples");
    SampleWeights out;
    out.weights.resize(dataset.size());
    if (dataset.m == 1) {
        double lo = dataset.samples.front().score.values[0];
        double hi = lo;
        for (const auto& s : dataset.samples) {
            lo = std::min(lo, s.score.values[0]);
            hi = std::max(hi, s.score.values[0]);
        }
        if (hi <= lo) {
            out.weights.assign(dataset.size(), 1.0);
            return out;
        }
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            out.weights[i] = (hi - dataset.samples[i].score.values[0]) / (hi - lo);
        }
        return out;
    }
    std::vector<ScoreVector> scores;
    scores.reserve(dataset.size());
    for (const auto& s : dataset.samples) scores.push_back(s.score);
    const FrontAssignment fa = non_dominated_sort(scores);
    if (fa.front_count <= 1) {
        out.weights.assign(dataset.size(), 1.0);
        return out;
    }
    const double denom = static_cast<double>(fa.front_count - 1);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out.weights[i] = static_cast<double>(fa.front_count - fa.front_of[i]) / denom;
    }
    return out;
}

double lr_at(const TrainConfig& cfg, std::size_t step, std::size_t total_steps) {
    const std::size_t warmup = std::max<std::size_t>(1, total_steps / 10);
    if (step < warmup) {
        return cfg.lr_peak * static_cast<double>(step + 1) / static_cast<double>(warmup);
    }
    const double floor_lr = cfg.lr_peak / 25.0;
    if (total_steps <= warmup) return cfg.lr_peak;
    const double progress = static_cast<double>(step - warmup) /
                            static_cast<double>(total_steps - warmup);
    return floor_lr + (cfg.lr_peak - floor_lr) * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

TrainResult train(const OfflineDataset& dataset, const TrainConfig& cfg,
                  const ScoreNetwork& net0) {
    validate(cfg);
    if (dataset.d != net0.d || dataset.m != net0.m) {
        throw std::invalid_argument("dimension mismatch: dataset vs network");
    }
    const std::size_t n = dataset.size();
    if (n < 2) throw std::invalid_argument("dataset needs at least 2 samples");

    const SampleWeights weights = compute_weights(dataset);
    std::vector<std::vector<double>> flat(n);
    for (std::size_t i = 0; i < n; ++i) flat[i] = concat(dataset.samples[i]);

    TrainResult result;
    result.net = net0;
    Eigen::VectorXd& params = result.net.params;
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(params.size());
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(params.size());
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;

    const VPSchedule& sched = cfg.schedule;
    auto lambda_of_t = [&sched](double t) { return 1.0 - alpha_bar_at(sched, t); };

    const std::size_t steps_per_epoch = (n + cfg.batch_size - 1) / cfg.batch_size;
    const std::size_t total_steps = steps_per_epoch * cfg.epochs;
    const std::size_t dm = dataset.d + dataset.m;

    std::vector<LossItem> batch(cfg.batch_size);
    std::size_t global_step = 0;
    std::size_t adam_t = 0;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        double epoch_loss = 0.0;
        double last_lr = 0.0;
        for (std::size_t s = 0; s < steps_per_epoch; ++s, ++global_step) {
            auto eng = rng::engine(cfg.seed, rng::kTrainStep, global_step);
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            std::uniform_real_distribution<double> tdist(kTimeEps, 1.0);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (std::size_t b = 0; b < cfg.batch_size; ++b) {
                const std::size_t idx = pick(eng);
                const double t = tdist(eng);
                const double ab = alpha_bar_at(sched, t);
                const double sa = std::sqrt(ab);
                const double sn = std::sqrt(1.0 - ab);
                LossItem& item = batch[b];
                item.t = t;
                item.weight = weights.weights[idx];
                item.xt.resize(dm);
                item.target.resize(dm);
                for (std::size_t j = 0; j < dm; ++j) {
                    const double eps = normal(eng);
                    item.xt[j] = sa * flat[idx][j] + sn * eps;
                    item.target[j] = -eps / sn;
                }
            }

            const LossGrad lg = loss_grad(result.net, batch, lambda_of_t);
            if (!std::isfinite(lg.loss)) {
                result.diverged = true;
                result.log.epoch_loss.push_back(lg.loss);
                result.log.epoch_lr.push_back(last_lr);
                return result;
            }
            epoch_loss += lg.loss;
            last_lr = lr_at(cfg, global_step, total_steps);

            ++adam_t;
            m1 = kBeta1 * m1 + (1.0 - kBeta1) * lg.grad;
            m2 = kBeta2 * m2 + (1.0 - kBeta2) * lg.grad.cwiseProduct(lg.grad);
            const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(adam_t));
            const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(adam_t));
            params -= last_lr * ((m1 / bc1).cwiseQuotient(
                                     ((m2 / bc2).cwiseSqrt().array() + kEps).matrix()) +
                                 cfg.weight_decay * params);
        }
        result.log.epoch_loss.push_back(epoch_loss / static_cast<double>(steps_per_epoch));
        result.log.epoch_lr.push_back(last_lr);
    }
    return result;
}

}  // namespace mango
