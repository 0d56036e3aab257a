#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mango {

/// A design vector x in task units, length d.
struct Design {
    std::vector<double> values;

    Design() = default;
    explicit Design(std::vector<double> v) : values(std::move(v)) {}
    std::size_t dim() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// A vector of objective values y, length m. Internally every objective is
/// stored in minimization sense (smaller is better).
struct ScoreVector {
    std::vector<double> values;

    ScoreVector() = default;
    explicit ScoreVector(std::vector<double> v) : values(std::move(v)) {}
    std::size_t dim() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// A design concatenated with its score vector; the unit the diffusion model
/// is trained on. Concatenation order is design-then-score everywhere.
struct AugmentedSample {
    Design design;
    ScoreVector score;

    std::size_t dim() const { return design.dim() + score.dim(); }
};

/// Flattens (x, y) into a single vector of length d + m.
std::vector<double> concat(const AugmentedSample& s);
/// Splits a flat vector back into (x, y). Exact inverse of concat.
AugmentedSample split(const std::vector<double>& flat, std::size_t d, std::size_t m);

enum class Sense { Min, Max };

std::string to_string(Sense s);
Sense sense_from_string(const std::string& s);

struct OfflineDataset {
    std::vector<AugmentedSample> samples;
    std::string task_id;
    std::size_t d = 0;
    std::size_t m = 0;
    /// Original optimization sense per objective. Maximization objectives are
    /// stored negated so the internal sense is always minimization.
    std::vector<Sense> sense_original;

    std::size_t size() const { return samples.size(); }
};

/// Per-coordinate [lo, hi] box.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const { return lo.size(); }
};

struct TaskSpec {
    std::string task_id;
    std::size_t d = 0;
    std::size_t m = 0;
    Box bounds;
    std::optional<ScoreVector> known_optimum;
    std::optional<std::vector<ScoreVector>> pf_reference;
};

/// Per-coordinate min/max used by min-max normalization. Degenerate
/// coordinates (min == max) map to 0 and invert back to the stored min.
struct MinMaxStats {
    std::vector<double> mins;
    std::vector<double> maxs;

    std::size_t dim() const { return mins.size(); }
    double normalize(double v, std::size_t i) const;
    double denormalize(double v, std::size_t i) const;
    std::vector<double> normalize(const std::vector<double>& v) const;
    std::vector<double> denormalize(const std::vector<double>& v) const;
};

/// Normalization state of a dataset: design block and score block.
struct NormStats {
    MinMaxStats design;
    MinMaxStats score;
};

/// Builds the joint design-score dataset. Maximization objectives are negated
/// per `sense` so every stored objective is minimized.
OfflineDataset augment(const std::vector<Design>& designs,
                       const std::vector<ScoreVector>& scores,
                       std::vector<Sense> sense = {},
                       std::string task_id = {});

/// Min-max normalizes every score coordinate to [0,1]; constant coordinates
/// map to 0. Returns the transformed dataset and the stats for round-trips.
std::pair<OfflineDataset, MinMaxStats> normalize_scores(const OfflineDataset& ds);

/// Same mapping applied to the design block.
std::pair<OfflineDataset, MinMaxStats> normalize_designs(const OfflineDataset& ds);

/// Normalizes both blocks; the model always trains in this space.
std::pair<OfflineDataset, NormStats> normalize_dataset(const OfflineDataset& ds);

/// Maps a normalized sample back to task units.
AugmentedSample denormalize_sample(const AugmentedSample& s, const NormStats& stats);
AugmentedSample normalize_sample(const AugmentedSample& s, const NormStats& stats);

/// Applies sense_original to map internal (minimization) scores back to the
/// task's native sense. An involution together with augment's negation.
ScoreVector to_original_sense(const ScoreVector& y, const std::vector<Sense>& sense);

}  // namespace mango
