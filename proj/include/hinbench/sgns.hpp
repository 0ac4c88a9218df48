#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hinbench/embedding.hpp"
#include "hinbench/rng.hpp"
#include "hinbench/walks.hpp"

namespace hinbench {

/// Corpus vocabulary with the count^0.75 noise distribution.
class Vocab {
public:
    static Vocab build(const WalkCorpus& corpus);

    std::size_t size() const { return nodes_.size(); }
    NodeId node_at(std::size_t i) const { return nodes_[i]; }
    std::size_t index_of(NodeId node) const;
    std::size_t count_at(std::size_t i) const { return counts_[i]; }
    double noise_prob(std::size_t i) const;

    /// Inverse-CDF sample from the noise distribution.
    std::size_t sample_noise(Rng& rng) const;

private:
    std::vector<NodeId> nodes_;   // ascending node id
    std::vector<std::size_t> counts_;
    std::vector<double> noise_cdf_;
};

struct SgnsConfig {
    int dim = 100;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double initial_lr = 0.025;
    double subsample = 0.0;  // word2vec-style frequency subsampling threshold; 0 disables
    std::uint64_t seed = 1;
    int threads = 1;         // > 1 selects the racy throughput mode
    bool track_loss = false; // record mean loss per epoch (single-worker only)
};

struct SgnsGradients {
    double loss = 0.0;
    std::vector<double> d_center;
    std::vector<double> d_context;
    std::vector<std::vector<double>> d_negatives;
};

/// loss = -log sigmoid(u.v) - sum_k log sigmoid(-u.n_k), with exact gradients.
SgnsGradients sgns_objective(std::span<const double> center_vec, std::span<const double> context_vec,
                             const std::vector<std::vector<double>>& negative_vecs);

/// Exact number of (center, context) pairs one pass over the corpus emits.
std::size_t count_skipgram_pairs(const WalkCorpus& corpus, int window);

struct SgnsResult {
    EmbeddingMatrix embeddings;       // input ("center") vectors
    EmbeddingMatrix context_vectors;  // retained for testing
    std::vector<double> epoch_mean_loss;
};

/// Skip-gram negative sampling over a walk corpus. Deterministic with
/// threads == 1; with more threads updates race and only statistical
/// guarantees hold.
SgnsResult train_sgns(const WalkCorpus& corpus, const SgnsConfig& cfg);

}  // namespace hinbench
