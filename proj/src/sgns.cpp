#include "hinbench/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace hinbench {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// -log sigmoid(x), computed without overflow for large |x|
double neg_log_sigmoid(double x) {
    if (x >= 0.0) return std::log1p(std::exp(-x));
    return -x + std::log1p(std::exp(x));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Vocab Vocab::build(const WalkCorpus& corpus) {
    if (corpus.walks.empty()) throw std::invalid_argument("build_vocab: empty corpus");
    std::map<NodeId, std::size_t> counts;
    for (const auto& walk : corpus.walks)
        for (NodeId n : walk) ++counts[n];

    Vocab v;
    v.nodes_.reserve(counts.size());
    v.counts_.reserve(counts.size());
    double total = 0.0;
    for (const auto& [node, c] : counts) {
        v.nodes_.push_back(node);
        v.counts_.push_back(c);
        total += std::pow(static_cast<double>(c), 0.75);
    }
    v.noise_cdf_.reserve(counts.size());
    double acc = 0.0;
    for (std::size_t c : v.counts_) {
        acc += std::pow(static_cast<double>(c), 0.75) / total;
        v.noise_cdf_.push_back(acc);
    }
    v.noise_cdf_.back() = 1.0;  // guard against round-off at the top
    return v;
}

std::size_t Vocab::index_of(NodeId node) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end() || *it != node)
        throw std::out_of_range("node not in vocab: " + std::to_string(node));
    return static_cast<std::size_t>(it - nodes_.begin());
}

double Vocab::noise_prob(std::size_t i) const {
    return i == 0 ? noise_cdf_[0] : noise_cdf_[i] - noise_cdf_[i - 1];
}

std::size_t Vocab::sample_noise(Rng& rng) const {
    const double r = rng.next_double();
    const auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), r);
    return std::min<std::size_t>(static_cast<std::size_t>(it - noise_cdf_.begin()),
                                 noise_cdf_.size() - 1);
}

SgnsGradients sgns_objective(std::span<const double> center_vec, std::span<const double> context_vec,
                             const std::vector<std::vector<double>>& negative_vecs) {
    const std::size_t dim = center_vec.size();
    if (context_vec.size() != dim) throw std::invalid_argument("sgns_objective: dimension mismatch");
    for (const auto& n : negative_vecs)
        if (n.size() != dim) throw std::invalid_argument("sgns_objective: dimension mismatch");

    SgnsGradients g;
    g.d_center.assign(dim, 0.0);
    g.d_context.assign(dim, 0.0);
    g.d_negatives.assign(negative_vecs.size(), std::vector<double>(dim, 0.0));

    const double pos_score = dot(center_vec, context_vec);
    g.loss = neg_log_sigmoid(pos_score);
    const double pos_coeff = sigmoid(pos_score) - 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
        g.d_center[d] += pos_coeff * context_vec[d];
        g.d_context[d] = pos_coeff * center_vec[d];
    }

    for (std::size_t k = 0; k < negative_vecs.size(); ++k) {
        const double neg_score = dot(center_vec, negative_vecs[k]);
        g.loss += neg_log_sigmoid(-neg_score);
        const double neg_coeff = sigmoid(neg_score);
        for (std::size_t d = 0; d < dim; ++d) {
            g.d_center[d] += neg_coeff * negative_vecs[k][d];
            g.d_negatives[k][d] = neg_coeff * center_vec[d];
        }
    }
    return g;
}

std::size_t count_skipgram_pairs(const WalkCorpus& corpus, int window) {
    std::size_t total = 0;
    const std::size_t w = static_cast<std::size_t>(window);
    for (const auto& walk : corpus.walks) {
        const std::size_t len = walk.size();
        for (std::size_t i = 0; i < len; ++i) {
            const std::size_t lo = i > w ? i - w : 0;
            const std::size_t hi = std::min(len - 1, i + w);
            total += hi - lo;  // excludes j == i
        }
    }
    return total;
}

namespace {

struct TrainState {
    std::size_t dim;
    std::vector<double> center;   // vocab_size x dim
    std::vector<double> context;  // vocab_size x dim
    double* center_row(std::size_t i) { return center.data() + i * dim; }
    double* context_row(std::size_t i) { return context.data() + i * dim; }
};

// One (center, context) pair with its negatives; updates context/negative
// rows in place, then the center row. Returns the pair loss when asked.
// `u_grad` is caller-provided scratch of size dim.
double train_pair(TrainState& st, const Vocab& vocab, const SgnsConfig& cfg, std::size_t center_idx,
                  std::size_t context_idx, double lr, Rng& rng, bool want_loss,
                  std::vector<double>& u_grad) {
    const std::size_t dim = st.dim;
    double* u = st.center_row(center_idx);
    std::fill(u_grad.begin(), u_grad.end(), 0.0);
    double loss = 0.0;

    auto push = [&](std::size_t row_idx, double label) {
        double* v = st.context_row(row_idx);
        double score = 0.0;
        for (std::size_t d = 0; d < dim; ++d) score += u[d] * v[d];
        if (want_loss) loss += label > 0.5 ? neg_log_sigmoid(score) : neg_log_sigmoid(-score);
        const double coeff = sigmoid(score) - label;
        for (std::size_t d = 0; d < dim; ++d) {
            u_grad[d] += coeff * v[d];
            v[d] -= lr * coeff * u[d];
        }
    };

    push(context_idx, 1.0);
    for (int k = 0; k < cfg.negatives; ++k) push(vocab.sample_noise(rng), 0.0);

    for (std::size_t d = 0; d < dim; ++d) u[d] -= lr * u_grad[d];
    return loss;
}

void validate(const SgnsConfig& cfg) {
    if (cfg.dim < 1) throw std::invalid_argument("sgns: dim must be >= 1");
    if (cfg.window < 1) throw std::invalid_argument("sgns: window must be >= 1");
    if (cfg.negatives < 1) throw std::invalid_argument("sgns: negatives must be >= 1");
    if (cfg.epochs < 1) throw std::invalid_argument("sgns: epochs must be >= 1");
    if (!(cfg.initial_lr > 0.0)) throw std::invalid_argument("sgns: initial_lr must be positive");
    if (cfg.subsample < 0.0) throw std::invalid_argument("sgns: subsample must be >= 0");
}

}  // namespace

SgnsResult train_sgns(const WalkCorpus& corpus, const SgnsConfig& cfg) {
    validate(cfg);
    if (corpus.graph == nullptr) throw std::invalid_argument("train_sgns: corpus has no graph");
    const Vocab vocab = Vocab::build(corpus);
    const std::size_t dim = static_cast<std::size_t>(cfg.dim);

    TrainState st;
    st.dim = dim;
    st.center.resize(vocab.size() * dim);
    st.context.assign(vocab.size() * dim, 0.0);
    {
        Rng init_rng(derive_seed(cfg.seed, 0x696e6974ULL));
        const double scale = 0.5 / static_cast<double>(dim);
        for (double& v : st.center) v = (init_rng.next_double() * 2.0 - 1.0) * scale;
    }

    const std::size_t pairs_per_epoch = count_skipgram_pairs(corpus, cfg.window);
    const std::size_t total_pairs = pairs_per_epoch * static_cast<std::size_t>(cfg.epochs);
    const double lr_floor = cfg.initial_lr * 1e-4;

    std::size_t total_tokens = 0;
    for (const auto& w : corpus.walks) total_tokens += w.size();

    // keep probability per vocab index when subsampling is on
    std::vector<double> keep_prob;
    if (cfg.subsample > 0.0) {
        keep_prob.resize(vocab.size());
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            const double f =
                static_cast<double>(vocab.count_at(i)) / static_cast<double>(total_tokens);
            const double r = cfg.subsample / f;
            keep_prob[i] = std::min(1.0, std::sqrt(r) + r);
        }
    }

    // translate the corpus to vocab indices once; the hot loop never searches
    std::vector<std::vector<std::size_t>> indexed(corpus.walks.size());
    for (std::size_t wi = 0; wi < corpus.walks.size(); ++wi) {
        indexed[wi].reserve(corpus.walks[wi].size());
        for (NodeId n : corpus.walks[wi]) indexed[wi].push_back(vocab.index_of(n));
    }

    std::atomic<std::size_t> processed{0};
    const int threads = std::max(1, cfg.threads);
    const bool track_loss = cfg.track_loss && threads == 1;

    std::vector<double> epoch_loss(static_cast<std::size_t>(cfg.epochs), 0.0);
    std::vector<std::size_t> epoch_pairs(static_cast<std::size_t>(cfg.epochs), 0);

    auto run_shard = [&](std::size_t walk_begin, std::size_t walk_end, int tid) {
        Rng rng(derive_seed(cfg.seed, 0x747261696eULL, static_cast<std::uint64_t>(tid)));
        std::vector<double> u_grad(dim, 0.0);
        std::size_t local = 0;
        double lr = cfg.initial_lr;
        for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
            for (std::size_t wi = walk_begin; wi < walk_end; ++wi) {
                const auto& walk = indexed[wi];
                const std::size_t len = walk.size();
                for (std::size_t i = 0; i < len; ++i) {
                    const std::size_t ci = walk[i];
                    if (!keep_prob.empty() && rng.next_double() >= keep_prob[ci]) continue;
                    const std::size_t w = static_cast<std::size_t>(cfg.window);
                    const std::size_t lo = i > w ? i - w : 0;
                    const std::size_t hi = std::min(len - 1, i + w);
                    for (std::size_t j = lo; j <= hi; ++j) {
                        if (j == i) continue;
                        if ((local++ & 1023) == 0) {
                            const std::size_t done =
                                processed.fetch_add(1024, std::memory_order_relaxed);
                            lr = std::max(lr_floor,
                                          cfg.initial_lr *
                                              (1.0 - static_cast<double>(done) /
                                                         static_cast<double>(total_pairs)));
                        }
                        const double pair_loss =
                            train_pair(st, vocab, cfg, ci, walk[j], lr, rng, track_loss, u_grad);
                        if (track_loss) {
                            epoch_loss[static_cast<std::size_t>(epoch)] += pair_loss;
                            ++epoch_pairs[static_cast<std::size_t>(epoch)];
                        }
                    }
                }
            }
        }
    };

    if (threads == 1) {
        run_shard(0, corpus.walks.size(), 0);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (corpus.walks.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::size_t b = static_cast<std::size_t>(t) * chunk;
            const std::size_t e = std::min(corpus.walks.size(), b + chunk);
            if (b >= e) break;
            pool.emplace_back(run_shard, b, e, t);
        }
        for (auto& th : pool) th.join();
    }

    SgnsResult result;
    result.embeddings = EmbeddingMatrix(dim);
    result.context_vectors = EmbeddingMatrix(dim);
    const TypedGraph& g = *corpus.graph;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const NodeId node = vocab.node_at(i);
        const std::string key = node_key(g.type_label(g.type_of(node)), g.name_of(node));
        auto dst = result.embeddings.insert(key);
        std::copy_n(st.center.data() + i * dim, dim, dst.begin());
        auto ctx = result.context_vectors.insert(key);
        std::copy_n(st.context.data() + i * dim, dim, ctx.begin());
    }
    if (track_loss) {
        for (std::size_t e = 0; e < epoch_loss.size(); ++e)
            result.epoch_mean_loss.push_back(
                epoch_pairs[e] ? epoch_loss[e] / static_cast<double>(epoch_pairs[e]) : 0.0);
    }
    return result;
}

}  // namespace hinbench
