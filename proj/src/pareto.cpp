#include "mango/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mango/rng.hpp"

namespace mango {

bool dominates(const ScoreVector& a, const ScoreVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("length mismatch: score vectors differ in dimension");
    }
    bool strict = false;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.values[i] > b.values[i]) return false;
        if (a.values[i] < b.values[i]) strict = true;
    }
    return strict;
}

namespace {

bool dominates_raw(const std::vector<double>& a, const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

// Sweep-based sort for two objectives, O(N log N). Points are processed in
// (f1, f2) lexicographic order; the last member added to a front carries the
// front's minimal f2 and maximal f1 among processed members, so one dominance
// test against it decides membership, and the front index is monotone, which
// permits binary search.
FrontAssignment sort_biobjective(const std::vector<ScoreVector>& points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].values[0] != points[b].values[0])
            return points[a].values[0] < points[b].values[0];
        return points[a].values[1] < points[b].values[1];
    });

    FrontAssignment fa;
    fa.front_of.assign(n, 0);
    std::vector<std::size_t> last;  // last-added point per front
    for (std::size_t idx : order) {
        const auto& p = points[idx];
        std::size_t lo = 0, hi = last.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (dominates(points[last[mid]], p)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo == last.size()) last.push_back(idx);
        else last[lo] = idx;
        fa.front_of[idx] = lo + 1;
    }
    fa.front_count = last.size();
    return fa;
}

// Peeling sort for m != 2: dominance counts are maintained in O(N) memory and
// refreshed by rescanning the removed front, O(m N^2) total.
FrontAssignment sort_peeling(const std::vector<ScoreVector>& points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> dom_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates_raw(points[j].values, points[i].values)) ++dom_count[i];
        }
    }

    FrontAssignment fa;
    fa.front_of.assign(n, 0);
    std::vector<std::size_t> alive(n);
    std::iota(alive.begin(), alive.end(), 0);
    std::size_t front = 0;
    while (!alive.empty()) {
        ++front;
        std::vector<std::size_t> current, rest;
        for (std::size_t i : alive) {
            (dom_count[i] == 0 ? current : rest).push_back(i);
        }
        if (current.empty()) {
            throw std::logic_error("non_dominated_sort: dominance cycle");
        }
        for (std::size_t i : current) fa.front_of[i] = front;
        for (std::size_t i : current) {
            for (std::size_t j : rest) {
                if (dominates_raw(points[i].values, points[j].values)) --dom_count[j];
            }
        }
        alive.swap(rest);
    }
    fa.front_count = front;
    return fa;
}

}  // namespace

FrontAssignment non_dominated_sort(const std::vector<ScoreVector>& points) {
    if (points.empty()) throw std::invalid_argument("non_dominated_sort: empty input");
    const std::size_t m = points.front().dim();
    for (const auto& p : points) {
        if (p.dim() != m) throw std::invalid_argument("length mismatch in point set");
    }
    if (m == 2) return sort_biobjective(points);
    return sort_peeling(points);
}

std::vector<std::size_t> pareto_front_indices(const std::vector<ScoreVector>& points) {
    FrontAssignment fa = non_dominated_sort(points);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (fa.front_of[i] == 1) idx.push_back(i);
    }
    return idx;
}

namespace {

// Exact sweep for m == 2: staircase of mutually non-dominated points inside
// the reference box, summed left to right.
double hv_exact_2d(std::vector<std::pair<double, double>> pts, double r1, double r2) {
    std::erase_if(pts, [&](const auto& p) { return p.first >= r1 || p.second >= r2; });
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    double best_f2 = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> stair;
    for (const auto& p : pts) {
        if (p.second < best_f2) {
            stair.push_back(p);
            best_f2 = p.second;
        }
    }
    for (std::size_t i = 0; i < stair.size(); ++i) {
        const double next_f1 = (i + 1 < stair.size()) ? stair[i + 1].first : r1;
        hv += (next_f1 - stair[i].first) * (r2 - stair[i].second);
    }
    return hv;
}

}  // namespace

HvEstimate hypervolume_mc(const std::vector<ScoreVector>& points, const ScoreVector& ref,
                          std::size_t n_samples, std::uint64_t seed) {
    const std::size_t m = ref.dim();
    std::vector<const std::vector<double>*> inside;
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    for (const auto& p : points) {
        if (p.dim() != m) throw std::invalid_argument("length mismatch vs reference point");
        bool in = true;
        for (std::size_t i = 0; i < m; ++i) in = in && p.values[i] < ref.values[i];
        if (!in) continue;
        inside.push_back(&p.values);
        for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], p.values[i]);
    }
    if (inside.empty()) return {0.0, 0.0};

    double box = 1.0;
    for (std::size_t i = 0; i < m; ++i) box *= ref.values[i] - lo[i];

    // Stratified by fixed-size chunks so the result is independent of the
    // number of worker threads.
    constexpr std::size_t kChunk = 65536;
    std::size_t hits = 0;
    std::vector<double> u(m);
    for (std::size_t start = 0, chunk = 0; start < n_samples; start += kChunk, ++chunk) {
        const std::size_t n = std::min(kChunk, n_samples - start);
        auto eng = rng::engine(seed, rng::kMonteCarlo, chunk);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t i = 0; i < m; ++i) u[i] = lo[i] + unif(eng) * (ref.values[i] - lo[i]);
            for (const auto* p : inside) {
                bool dom = true;
                for (std::size_t i = 0; i < m; ++i) dom = dom && (*p)[i] <= u[i];
                if (dom) {
                    ++hits;
                    break;
                }
            }
        }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    HvEstimate est;
    est.value = box * p;
    est.std_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return est;
}

double hypervolume(const std::vector<ScoreVector>& points, const ScoreVector& ref,
                   std::uint64_t seed) {
    const std::size_t m = ref.dim();
    if (m == 1) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : points) {
            if (p.dim() != 1) throw std::invalid_argument("length mismatch vs reference point");
            best = std::min(best, p.values[0]);
        }
        return best < ref.values[0] ? ref.values[0] - best : 0.0;
    }
    if (m == 2) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(points.size());
        for (const auto& p : points) {
            if (p.dim() != 2) throw std::invalid_argument("length mismatch vs reference point");
            pts.emplace_back(p.values[0], p.values[1]);
        }
        return hv_exact_2d(std::move(pts), ref.values[0], ref.values[1]);
    }
    return hypervolume_mc(points, ref, 1'000'000, seed).value;
}

double igd(const std::vector<ScoreVector>& candidates,
           const std::vector<ScoreVector>& pf_reference) {
    if (candidates.empty() || pf_reference.empty()) {
        throw std::invalid_argument("igd: empty input");
    }
    const std::size_t m = pf_reference.front().dim();
    double total = 0.0;
    for (const auto& r : pf_reference) {
        if (r.dim() != m) throw std::invalid_argument("length mismatch in reference front");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) {
            if (c.dim() != m) throw std::invalid_argument("length mismatch in candidates");
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double diff = c.values[i] - r.values[i];
                acc += diff * diff;
            }
            best = std::min(best, acc);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(pf_reference.size());
}

ScoreVector hv_reference_point(const std::vector<ScoreVector>& training_scores) {
    if (training_scores.empty()) {
        throw std::invalid_argument("hv_reference_point: empty input");
    }
    const std::size_t m = training_scores.front().dim();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (const auto& y : training_scores) {
        for (std::size_t i = 0; i < m; ++i) {
            lo[i] = std::min(lo[i], y.values[i]);
            hi[i] = std::max(hi[i], y.values[i]);
        }
    }
    ScoreVector ref;
    ref.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double range = hi[i] - lo[i];
        ref.values[i] = hi[i] + 0.1 * (range > 0 ? range : std::abs(hi[i]) + 1.0);
    }
    return ref;
}

}  // namespace mango
