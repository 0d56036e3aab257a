#pragma once

#include <cstdint>
#include <vector>

#include "mango/net.hpp"
#include "mango/sde.hpp"
#include "mango/types.hpp"

namespace mango {

struct TrainConfig {
    std::size_t epochs = 800;
    std::size_t batch_size = 128;
    double lr_peak = 5e-5;
    double weight_decay = 1e-4;
    std::uint64_t seed = 0;
    VPSchedule schedule;
};

void validate(const TrainConfig& cfg);

/// Score-based loss reweighting. Single objective: min-max normalized
/// distance to the worst score, so the best sample gets weight 1. Multiple
/// objectives: (L - l_i) / (L - 1) from the non-dominated-sort front index.
/// Degenerate inputs (constant scores, a single front) weight everything 1.
struct SampleWeights {
    std::vector<double> weights;
};

SampleWeights compute_weights(const OfflineDataset& dataset);

struct TrainLog {
    std::vector<double> epoch_loss;
    std::vector<double> epoch_lr;
};

struct TrainResult {
    ScoreNetwork net;
    TrainLog log;
    /// Set when a non-finite loss aborted the run; `net` then holds the last
    /// finite parameters.
    bool diverged = false;
};

/// One-cycle learning rate: linear warmup over the first 10% of steps, then
/// cosine decay to lr_peak / 25.
double lr_at(const TrainConfig& cfg, std::size_t step, std::size_t total_steps);

/// Weighted denoising-score-matching training. `dataset` must already be
/// normalized. The loop is deterministic in cfg.seed.
TrainResult train(const OfflineDataset& dataset, const TrainConfig& cfg,
                  const ScoreNetwork& net0);

}  // namespace mango
