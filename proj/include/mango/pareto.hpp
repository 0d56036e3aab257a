#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mango/types.hpp"

namespace mango {

/// Non-dominated sort result: 1-based front index per point. Front 1 is the
/// non-dominated set; front k is non-dominated once fronts 1..k-1 are removed.
struct FrontAssignment {
    std::vector<std::size_t> front_of;
    std::size_t front_count = 0;
};

/// Per-run evaluation metrics. When `normalized` is false the training
/// reference had a degenerate (zero) denominator and normalized_* carry the
/// raw values instead.
struct EvalReport {
    double hv = 0.0;
    double igd = 0.0;
    double normalized_hv = 0.0;
    double normalized_igd = 0.0;
    std::size_t k = 0;
    bool normalized = true;
};

/// Strict Pareto dominance in minimization sense: a <= b componentwise with
/// a < b somewhere.
bool dominates(const ScoreVector& a, const ScoreVector& b);

FrontAssignment non_dominated_sort(const std::vector<ScoreVector>& points);

/// Indices of the non-dominated points (front 1).
std::vector<std::size_t> pareto_front_indices(const std::vector<ScoreVector>& points);

/// Dominated volume versus `ref` (minimization; only points strictly inside
/// the reference box contribute). m <= 2 is exact; m >= 3 falls back to a
/// seeded Monte-Carlo estimate with 1e6 samples.
double hypervolume(const std::vector<ScoreVector>& points, const ScoreVector& ref,
                   std::uint64_t seed = 0);

struct HvEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo hypervolume over the [component-wise min, ref] box.
HvEstimate hypervolume_mc(const std::vector<ScoreVector>& points, const ScoreVector& ref,
                          std::size_t n_samples, std::uint64_t seed);

/// Mean distance from each reference-front point to its nearest candidate.
double igd(const std::vector<ScoreVector>& candidates,
           const std::vector<ScoreVector>& pf_reference);

/// Reference point for hypervolume: dataset score nadir plus 10% of each
/// coordinate's range.
ScoreVector hv_reference_point(const std::vector<ScoreVector>& training_scores);

}  // namespace mango
