#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hinbench/embedding.hpp"
#include "hinbench/rng.hpp"
#include "hinbench/typed_graph.hpp"

namespace hinbench {

struct VerseConfig {
    int dim = 100;
    double alpha = 0.85;  // walk continuation probability
    int negatives = 3;
    std::uint64_t steps = 0;          // total update steps; 0 means steps_per_node * |nodes|
    std::uint64_t steps_per_node = 100;  // used only when steps == 0
    double lr = 0.0025;
    std::uint64_t seed = 1;
    int threads = 1;  // > 1 selects the racy throughput mode
};

/// Personalized PageRank by power iteration on pi = alpha*pi*P + (1-alpha)*e_s
/// with P the uniform random-walk transition matrix. The result is within
/// `tolerance` of the exact fixed point in L1.
std::vector<double> ppr_distribution(const TypedGraph& g, NodeId source, double alpha,
                                     double tolerance);

/// Restart-walk sample from the source's PPR distribution: walk uniformly,
/// continue with probability alpha, emit the stop node.
NodeId ppr_sample(const TypedGraph& g, NodeId source, double alpha, Rng& rng);

struct VerseGradients {
    double loss = 0.0;
    std::vector<double> d_source;
    std::vector<double> d_positive;
    std::vector<std::vector<double>> d_negatives;
};

/// Same contrastive loss as SGNS but over a single shared table:
/// -log sigmoid(u.v+) - sum_k log sigmoid(-u.v-_k). When one node plays
/// several roles the caller accumulates the per-role gradients by node.
VerseGradients verse_objective(std::span<const double> source_vec,
                               std::span<const double> positive_vec,
                               const std::vector<std::vector<double>>& negative_vecs);

/// Per step: uniform source among non-isolated nodes, one PPR positive via
/// restart walk, `negatives` uniform noise nodes, one SGD step on the shared
/// table. Deterministic with threads == 1.
EmbeddingMatrix train_verse(const TypedGraph& g, const VerseConfig& cfg);

}  // namespace hinbench
