#include "mango/net.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mango/rng.hpp"

namespace mango {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using ConstMap = Eigen::Map<const MatrixXd>;
using MutMap = Eigen::Map<MatrixXd>;

struct LayerDims {
    std::size_t rows;
    std::size_t cols;  // bias length == cols
};

// Parameter layout: [W0 | b0 | W1 | b1 | ... | Wout | bout], each W stored
// column-major, mapped in place from the flat vector.
std::vector<LayerDims> layer_dims(const ScoreNetwork& net) {
    std::vector<LayerDims> dims;
    dims.push_back({net.input_dim(), net.hidden_width});
    for (std::size_t k = 1; k < net.depth; ++k) {
        dims.push_back({net.hidden_width, net.hidden_width});
    }
    dims.push_back({net.hidden_width, net.output_dim()});
    return dims;
}

double silu(double z) { return z / (1.0 + std::exp(-z)); }

double silu_grad(double z) {
    const double s = 1.0 / (1.0 + std::exp(-z));
    return s * (1.0 + z * (1.0 - s));
}

void fill_embedding_row(Eigen::Ref<Eigen::RowVectorXd> row, double t, std::size_t dim) {
    const std::size_t half = (dim + 1) / 2;
    // t in [0,1] is stretched by 1000 so the highest frequency resolves
    // individual reverse steps.
    const double ts = 1000.0 * t;
    for (std::size_t j = 0; j < half; ++j) {
        const double freq =
            half > 1 ? std::exp(-std::log(10000.0) * static_cast<double>(j) /
                                static_cast<double>(half - 1))
                     : 1.0;
        const double arg = ts * freq;
        row(static_cast<Eigen::Index>(2 * j)) = std::sin(arg);
        if (2 * j + 1 < dim) row(static_cast<Eigen::Index>(2 * j + 1)) = std::cos(arg);
    }
}

struct ForwardCache {
    MatrixXd input;                // B x in
    std::vector<MatrixXd> pre;     // pre-activation per hidden layer
    std::vector<MatrixXd> act;     // post-activation per hidden layer
    MatrixXd out;                  // B x (d+m)
};

ForwardCache run_forward(const ScoreNetwork& net, MatrixXd input, bool keep_cache) {
    const auto dims = layer_dims(net);
    ForwardCache cache;
    const double* p = net.params.data();
    std::size_t off = 0;
    MatrixXd cur = std::move(input);
    if (keep_cache) cache.input = cur;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        ConstMap w(p + off, static_cast<Eigen::Index>(dims[k].rows),
                   static_cast<Eigen::Index>(dims[k].cols));
        off += dims[k].rows * dims[k].cols;
        ConstMap b(p + off, 1, static_cast<Eigen::Index>(dims[k].cols));
        off += dims[k].cols;
        MatrixXd z = cur * w;
        z.rowwise() += b.row(0);
        if (k + 1 == dims.size()) {
            cache.out = std::move(z);
        } else {
            MatrixXd a = z.unaryExpr([](double v) { return silu(v); });
            if (keep_cache) {
                cache.pre.push_back(std::move(z));
                cache.act.push_back(a);
            }
            cur = std::move(a);
        }
    }
    return cache;
}

MatrixXd build_input(const ScoreNetwork& net, const MatrixXd& x,
                     const std::vector<double>& t) {
    if (static_cast<std::size_t>(x.cols()) != net.d + net.m) {
        throw std::invalid_argument("dimension mismatch: sample width != d + m");
    }
    MatrixXd input(x.rows(), static_cast<Eigen::Index>(net.input_dim()));
    input.leftCols(x.cols()) = x;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        fill_embedding_row(input.row(i).rightCols(static_cast<Eigen::Index>(net.time_embed_dim)),
                           t[static_cast<std::size_t>(i)], net.time_embed_dim);
    }
    return input;
}

}  // namespace

std::size_t param_count(std::size_t d, std::size_t m, std::size_t hidden_width,
                        std::size_t depth, std::size_t time_embed_dim) {
    const std::size_t in = d + m + time_embed_dim;
    const std::size_t out = d + m;
    std::size_t count = in * hidden_width + hidden_width;
    count += (depth - 1) * (hidden_width * hidden_width + hidden_width);
    count += hidden_width * out + out;
    return count;
}

ScoreNetwork init_network(std::size_t d, std::size_t m, std::size_t hidden_width,
                          std::size_t depth, std::size_t time_embed_dim,
                          std::uint64_t seed) {
    if (d < 1 || m < 1 || hidden_width < 1 || depth < 1 || time_embed_dim < 1) {
        throw std::invalid_argument("network sizes must be >= 1");
    }
    ScoreNetwork net;
    net.d = d;
    net.m = m;
    net.hidden_width = hidden_width;
    net.depth = depth;
    net.time_embed_dim = time_embed_dim;
    net.seed = seed;
    net.params = VectorXd::Zero(
        static_cast<Eigen::Index>(param_count(d, m, hidden_width, depth, time_embed_dim)));

    const auto dims = layer_dims(net);
    auto eng = rng::engine(seed, rng::kNetInit);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t off = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const std::size_t n = dims[k].rows * dims[k].cols;
        if (k + 1 < dims.size()) {
            const double scale = 1.0 / std::sqrt(static_cast<double>(dims[k].rows));
            for (std::size_t i = 0; i < n; ++i) {
                net.params(static_cast<Eigen::Index>(off + i)) = scale * normal(eng);
            }
        }
        // biases stay zero; the output layer stays zero entirely so the
        // untrained model matches the unconditional prior score.
        off += n + dims[k].cols;
    }
    return net;
}

std::vector<double> time_embedding(double t, std::size_t dim) {
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(dim));
    fill_embedding_row(row, t, dim);
    return {row.data(), row.data() + dim};
}

std::vector<double> forward(const ScoreNetwork& net, const AugmentedSample& xhat, double t) {
    if (xhat.dim() != net.d + net.m) {
        throw std::invalid_argument("dimension mismatch: sample dim != d + m");
    }
    MatrixXd x(1, static_cast<Eigen::Index>(net.d + net.m));
    const auto flat = concat(xhat);
    for (std::size_t i = 0; i < flat.size(); ++i) x(0, static_cast<Eigen::Index>(i)) = flat[i];
    MatrixXd out = forward_batch(net, x, t);
    return {out.data(), out.data() + out.cols()};
}

Eigen::MatrixXd forward_batch(const ScoreNetwork& net, const Eigen::MatrixXd& x, double t) {
    std::vector<double> ts(static_cast<std::size_t>(x.rows()), t);
    return forward_batch(net, x, ts);
}

Eigen::MatrixXd forward_batch(const ScoreNetwork& net, const Eigen::MatrixXd& x,
                              const std::vector<double>& t) {
    if (t.size() != static_cast<std::size_t>(x.rows())) {
        throw std::invalid_argument("dimension mismatch: one time per row required");
    }
    return run_forward(net, build_input(net, x, t), false).out;
}

LossGrad loss_grad(const ScoreNetwork& net, const std::vector<LossItem>& batch,
                   const std::function<double(double)>& lambda_of_t) {
    if (batch.empty()) throw std::invalid_argument("empty batch");
    const std::size_t b = batch.size();
    const std::size_t dm = net.d + net.m;

    MatrixXd x(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(dm));
    MatrixXd target(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(dm));
    std::vector<double> ts(b);
    VectorXd coef(static_cast<Eigen::Index>(b));
    for (std::size_t i = 0; i < b; ++i) {
        const auto& item = batch[i];
        if (item.xt.size() != dm || item.target.size() != dm) {
            throw std::invalid_argument("dimension mismatch in batch item");
        }
        if (item.weight < 0.0) throw std::invalid_argument("negative sample weight");
        for (std::size_t j = 0; j < dm; ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = item.xt[j];
            target(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = item.target[j];
        }
        ts[i] = item.t;
        coef(static_cast<Eigen::Index>(i)) = lambda_of_t(item.t) * item.weight;
    }

    ForwardCache cache = run_forward(net, build_input(net, x, ts), true);
    MatrixXd err = cache.out - target;
    const double inv_b = 1.0 / static_cast<double>(b);
    const double loss = inv_b * (coef.asDiagonal() * err.rowwise().squaredNorm().matrix()).sum();

    LossGrad result;
    result.loss = loss;
    result.grad = VectorXd::Zero(net.params.size());

    const auto dims = layer_dims(net);
    // offsets of each layer inside the flat vector
    std::vector<std::size_t> offs(dims.size());
    std::size_t off = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        offs[k] = off;
        off += dims[k].rows * dims[k].cols + dims[k].cols;
    }

    MatrixXd delta = (2.0 * inv_b) * (coef.asDiagonal() * err);  // dL/dOut
    for (std::size_t k = dims.size(); k-- > 0;) {
        const MatrixXd& below = (k == 0) ? cache.input : cache.act[k - 1];
        MutMap gw(result.grad.data() + offs[k], static_cast<Eigen::Index>(dims[k].rows),
                  static_cast<Eigen::Index>(dims[k].cols));
        MutMap gb(result.grad.data() + offs[k] + dims[k].rows * dims[k].cols, 1,
                  static_cast<Eigen::Index>(dims[k].cols));
        gw = below.transpose() * delta;
        gb = delta.colwise().sum();
        if (k == 0) break;
        ConstMap w(net.params.data() + offs[k], static_cast<Eigen::Index>(dims[k].rows),
                   static_cast<Eigen::Index>(dims[k].cols));
        MatrixXd dact = delta * w.transpose();
        delta = dact.cwiseProduct(
            cache.pre[k - 1].unaryExpr([](double z) { return silu_grad(z); }));
    }
    return result;
}

}  // namespace mango
