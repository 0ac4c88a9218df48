#include "hinbench/verse.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace hinbench {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double neg_log_sigmoid(double x) {
    if (x >= 0.0) return std::log1p(std::exp(-x));
    return -x + std::log1p(std::exp(x));
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0, 1)");
}

}  // namespace

std::vector<double> ppr_distribution(const TypedGraph& g, NodeId source, double alpha,
                                     double tolerance) {
    check_alpha(alpha);
    if (!g.has_node(source)) throw std::out_of_range("unknown source node");
    if (g.degree(source) == 0) throw std::invalid_argument("isolated source node");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    const std::size_t n = g.node_count();
    std::vector<double> pi(n, 0.0);
    std::vector<double> next(n, 0.0);
    pi[source] = 1.0;

    // ||pi_k - pi*||_1 <= alpha/(1-alpha) * ||pi_k - pi_{k-1}||_1
    const double stop = tolerance * (1.0 - alpha) / alpha;
    for (int iter = 0; iter < 100000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        next[source] = 1.0 - alpha;
        for (NodeId u = 0; u < n; ++u) {
            if (pi[u] == 0.0) continue;
            const auto nbrs = g.neighbors(u);
            const double share = alpha * pi[u] / static_cast<double>(nbrs.size());
            for (NodeId v : nbrs) next[v] += share;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - pi[i]);
        pi.swap(next);
        if (delta <= stop) return pi;
    }
    throw std::runtime_error("ppr_distribution failed to converge");
}

NodeId ppr_sample(const TypedGraph& g, NodeId source, double alpha, Rng& rng) {
    NodeId cur = source;
    while (rng.next_double() < alpha) {
        const auto nbrs = g.neighbors(cur);
        if (nbrs.empty()) break;
        cur = nbrs[rng.next_below(nbrs.size())];
    }
    return cur;
}

VerseGradients verse_objective(std::span<const double> source_vec,
                               std::span<const double> positive_vec,
                               const std::vector<std::vector<double>>& negative_vecs) {
    const std::size_t dim = source_vec.size();
    if (positive_vec.size() != dim)
        throw std::invalid_argument("verse_objective: dimension mismatch");
    for (const auto& v : negative_vecs)
        if (v.size() != dim) throw std::invalid_argument("verse_objective: dimension mismatch");

    VerseGradients g;
    g.d_source.assign(dim, 0.0);
    g.d_positive.assign(dim, 0.0);
    g.d_negatives.assign(negative_vecs.size(), std::vector<double>(dim, 0.0));

    double score = 0.0;
    for (std::size_t d = 0; d < dim; ++d) score += source_vec[d] * positive_vec[d];
    g.loss = neg_log_sigmoid(score);
    const double pos_coeff = sigmoid(score) - 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
        g.d_source[d] += pos_coeff * positive_vec[d];
        g.d_positive[d] = pos_coeff * source_vec[d];
    }

    for (std::size_t k = 0; k < negative_vecs.size(); ++k) {
        double ns = 0.0;
        for (std::size_t d = 0; d < dim; ++d) ns += source_vec[d] * negative_vecs[k][d];
        g.loss += neg_log_sigmoid(-ns);
        const double coeff = sigmoid(ns);
        for (std::size_t d = 0; d < dim; ++d) {
            g.d_source[d] += coeff * negative_vecs[k][d];
            g.d_negatives[k][d] = coeff * source_vec[d];
        }
    }
    return g;
}

EmbeddingMatrix train_verse(const TypedGraph& g, const VerseConfig& cfg) {
    check_alpha(cfg.alpha);
    if (cfg.dim < 1) throw std::invalid_argument("verse: dim must be >= 1");
    if (cfg.negatives < 1) throw std::invalid_argument("verse: negatives must be >= 1");
    if (!(cfg.lr > 0.0)) throw std::invalid_argument("verse: lr must be positive");
    if (g.edge_count() == 0) throw std::invalid_argument("verse: graph has no edges");

    const std::size_t n = g.node_count();
    const std::size_t dim = static_cast<std::size_t>(cfg.dim);
    const std::uint64_t steps = cfg.steps > 0 ? cfg.steps : cfg.steps_per_node * n;

    std::vector<NodeId> trainable;
    for (NodeId u = 0; u < n; ++u)
        if (g.degree(u) > 0) trainable.push_back(u);

    std::vector<double> table(n * dim);
    {
        Rng init_rng(derive_seed(cfg.seed, 0x696e6974ULL));
        const double scale = 0.5 / static_cast<double>(dim);
        for (double& v : table) v = (init_rng.next_double() * 2.0 - 1.0) * scale;
    }

    // Each step computes every role's gradient from the pre-step table and
    // accumulates by node before applying, so a node sampled in several roles
    // (e.g. the source as its own negative) receives the summed gradient.
    auto run = [&](std::uint64_t step_begin, std::uint64_t step_end, int tid) {
        Rng rng(derive_seed(cfg.seed, 0x747261696eULL, static_cast<std::uint64_t>(tid)));
        std::vector<NodeId> touched;
        std::vector<std::vector<double>> grads;
        grads.resize(2 + static_cast<std::size_t>(cfg.negatives),
                     std::vector<double>(dim, 0.0));
        for (std::uint64_t s = step_begin; s < step_end; ++s) {
            const NodeId src = trainable[rng.next_below(trainable.size())];
            const NodeId pos = ppr_sample(g, src, cfg.alpha, rng);
            const double* u = table.data() + static_cast<std::size_t>(src) * dim;

            touched.clear();
            auto slot = [&](NodeId node) -> std::vector<double>& {
                for (std::size_t i = 0; i < touched.size(); ++i)
                    if (touched[i] == node) return grads[i];
                touched.push_back(node);
                std::fill(grads[touched.size() - 1].begin(), grads[touched.size() - 1].end(), 0.0);
                return grads[touched.size() - 1];
            };

            auto accumulate = [&](NodeId other, double label) {
                const double* v = table.data() + static_cast<std::size_t>(other) * dim;
                double score = 0.0;
                for (std::size_t d = 0; d < dim; ++d) score += u[d] * v[d];
                const double coeff = sigmoid(score) - label;
                auto& g_u = slot(src);
                auto& g_other = slot(other);  // aliases g_u when other == src
                for (std::size_t d = 0; d < dim; ++d) {
                    g_u[d] += coeff * v[d];
                    g_other[d] += coeff * u[d];
                }
            };
            accumulate(pos, 1.0);
            for (int k = 0; k < cfg.negatives; ++k)
                accumulate(static_cast<NodeId>(rng.next_below(n)), 0.0);

            for (std::size_t i = 0; i < touched.size(); ++i) {
                double* row = table.data() + static_cast<std::size_t>(touched[i]) * dim;
                for (std::size_t d = 0; d < dim; ++d) row[d] -= cfg.lr * grads[i][d];
            }
        }
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        run(0, steps, 0);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (steps + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::uint64_t b = static_cast<std::uint64_t>(t) * chunk;
            const std::uint64_t e = std::min<std::uint64_t>(steps, b + chunk);
            if (b >= e) break;
            pool.emplace_back(run, b, e, t);
        }
        for (auto& th : pool) th.join();
    }

    EmbeddingMatrix m(dim);
    for (NodeId u = 0; u < n; ++u) {
        auto dst = m.insert(node_key(g.type_label(g.type_of(u)), g.name_of(u)));
        std::copy_n(table.data() + static_cast<std::size_t>(u) * dim, dim, dst.begin());
    }
    return m;
}

}  // namespace hinbench
