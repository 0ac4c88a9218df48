#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hinbench/typed_graph.hpp"

namespace hinbench {

struct WalkConfig {
    int walks_per_node = 10;
    int walk_length = 80;  // number of nodes per walk
    double p = 1.0;        // return parameter
    double q = 1.0;        // in-out parameter
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Walk corpus over dense node ids. Names are resolved only at serialization.
struct WalkCorpus {
    std::vector<std::vector<NodeId>> walks;
    const TypedGraph* graph = nullptr;
};

/// walks_per_node walks from every node with degree >= 1, each step uniform
/// over the current adjacency. Isolated nodes are skipped.
WalkCorpus uniform_walks(const TypedGraph& g, const WalkConfig& cfg);

/// Unnormalized 2nd-order bias: 1/p back to prev, 1 to common neighbors of
/// prev and cur, 1/q to the rest. Returned probabilities are parallel to
/// g.neighbors(cur) and sum to 1. Shared by the walk generator and its tests.
std::vector<double> node2vec_step_distribution(const TypedGraph& g, NodeId prev, NodeId cur,
                                               double p, double q);

/// First step uniform, later steps sampled from node2vec_step_distribution.
WalkCorpus node2vec_walks(const TypedGraph& g, const WalkConfig& cfg);

/// Walks start at nodes of the schema's first type and follow the schema
/// cyclically, stepping uniformly within neighbors_of_type(current, next).
/// A walk with no admissible neighbor truncates; truncated walks shorter
/// than 2 nodes are dropped.
WalkCorpus metapath_walks(const TypedGraph& g, const MetaPathSchema& schema, const WalkConfig& cfg);

/// One walk per line, space-separated TYPE:name tokens ('%' and ' ' in names
/// are percent-escaped).
void write_walks(std::ostream& out, const WalkCorpus& corpus);
WalkCorpus read_walks(std::istream& in, const TypedGraph& g);

}  // namespace hinbench
