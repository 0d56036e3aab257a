#include "mango/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mango {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string("non-finite entry in ") + what);
        }
    }
}

}  // namespace

std::vector<double> concat(const AugmentedSample& s) {
    std::vector<double> flat;
    flat.reserve(s.dim());
    flat.insert(flat.end(), s.design.values.begin(), s.design.values.end());
    flat.insert(flat.end(), s.score.values.begin(), s.score.values.end());
    return flat;
}

AugmentedSample split(const std::vector<double>& flat, std::size_t d, std::size_t m) {
    if (flat.size() != d + m) {
        throw std::invalid_argument("dimension mismatch: flat vector is not d + m");
    }
    AugmentedSample s;
    s.design.values.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(d));
    s.score.values.assign(flat.begin() + static_cast<std::ptrdiff_t>(d), flat.end());
    return s;
}

std::string to_string(Sense s) { return s == Sense::Min ? "min" : "max"; }

Sense sense_from_string(const std::string& s) {
    if (s == "min") return Sense::Min;
    if (s == "max") return Sense::Max;
    throw std::invalid_argument("unknown sense: " + s);
}

double MinMaxStats::normalize(double v, std::size_t i) const {
    const double lo = mins[i], hi = maxs[i];
    if (hi <= lo) return 0.0;
    return (v - lo) / (hi - lo);
}

double MinMaxStats::denormalize(double v, std::size_t i) const {
    const double lo = mins[i], hi = maxs[i];
    if (hi <= lo) return lo;
    return lo + v * (hi - lo);
}

std::vector<double> MinMaxStats::normalize(const std::vector<double>& v) const {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = normalize(v[i], i);
    return out;
}

std::vector<double> MinMaxStats::denormalize(const std::vector<double>& v) const {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = denormalize(v[i], i);
    return out;
}

OfflineDataset augment(const std::vector<Design>& designs,
                       const std::vector<ScoreVector>& scores,
                       std::vector<Sense> sense, std::string task_id) {
    if (designs.size() != scores.size()) {
        throw std::invalid_argument("length mismatch: designs and scores differ in count");
    }
    if (designs.empty()) {
        throw std::invalid_argument("length mismatch: empty input");
    }
    const std::size_t d = designs.front().dim();
    const std::size_t m = scores.front().dim();
    if (d < 1 || m < 1) {
        throw std::invalid_argument("dimension mismatch: d and m must be >= 1");
    }
    if (sense.empty()) sense.assign(m, Sense::Min);
    if (sense.size() != m) {
        throw std::invalid_argument("dimension mismatch: sense length != m");
    }

    OfflineDataset ds;
    ds.task_id = std::move(task_id);
    ds.d = d;
    ds.m = m;
    ds.sense_original = std::move(sense);
    ds.samples.reserve(designs.size());
    for (std::size_t i = 0; i < designs.size(); ++i) {
        if (designs[i].dim() != d || scores[i].dim() != m) {
            throw std::invalid_argument("dimension mismatch: sample " + std::to_string(i));
        }
        check_finite(designs[i].values, "design");
        check_finite(scores[i].values, "score");
        AugmentedSample s;
        s.design = designs[i];
        s.score = scores[i];
        for (std::size_t j = 0; j < m; ++j) {
            if (ds.sense_original[j] == Sense::Max) s.score.values[j] = -s.score.values[j];
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

namespace {

MinMaxStats block_stats(const OfflineDataset& ds, bool design_block) {
    const std::size_t n = design_block ? ds.d : ds.m;
    MinMaxStats st;
    st.mins.assign(n, std::numeric_limits<double>::infinity());
    st.maxs.assign(n, -std::numeric_limits<double>::infinity());
    for (const auto& s : ds.samples) {
        const auto& v = design_block ? s.design.values : s.score.values;
        for (std::size_t i = 0; i < n; ++i) {
            st.mins[i] = std::min(st.mins[i], v[i]);
            st.maxs[i] = std::max(st.maxs[i], v[i]);
        }
    }
    return st;
}

OfflineDataset apply_block(const OfflineDataset& ds, const MinMaxStats& st, bool design_block) {
    OfflineDataset out = ds;
    for (auto& s : out.samples) {
        auto& v = design_block ? s.design.values : s.score.values;
        v = st.normalize(v);
    }
    return out;
}

}  // namespace

std::pair<OfflineDataset, MinMaxStats> normalize_scores(const OfflineDataset& ds) {
    if (ds.size() < 2) throw std::invalid_argument("dataset needs at least 2 samples");
    MinMaxStats st = block_stats(ds, false);
    return {apply_block(ds, st, false), std::move(st)};
}

std::pair<OfflineDataset, MinMaxStats> normalize_designs(const OfflineDataset& ds) {
    if (ds.size() < 2) throw std::invalid_argument("dataset needs at least 2 samples");
    MinMaxStats st = block_stats(ds, true);
    return {apply_block(ds, st, true), std::move(st)};
}

std::pair<OfflineDataset, NormStats> normalize_dataset(const OfflineDataset& ds) {
    auto [d1, design_stats] = normalize_designs(ds);
    auto [d2, score_stats] = normalize_scores(d1);
    return {std::move(d2), NormStats{std::move(design_stats), std::move(score_stats)}};
}

AugmentedSample denormalize_sample(const AugmentedSample& s, const NormStats& stats) {
    AugmentedSample out;
    out.design.values = stats.design.denormalize(s.design.values);
    out.score.values = stats.score.denormalize(s.score.values);
    return out;
}

AugmentedSample normalize_sample(const AugmentedSample& s, const NormStats& stats) {
    AugmentedSample out;
    out.design.values = stats.design.normalize(s.design.values);
    out.score.values = stats.score.normalize(s.score.values);
    return out;
}

ScoreVector to_original_sense(const ScoreVector& y, const std::vector<Sense>& sense) {
    ScoreVector out = y;
    for (std::size_t i = 0; i < out.values.size() && i < sense.size(); ++i) {
        if (sense[i] == Sense::Max) out.values[i] = -out.values[i];
    }
    return out;
}

}  // namespace mango
