#include "hinbench/walks.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "hinbench/parallel.hpp"
#include "hinbench/rng.hpp"
#include "hinbench/text_util.hpp"

namespace hinbench {

namespace {

void check_config(const TypedGraph& g, const WalkConfig& cfg) {
    if (!g.frozen()) throw std::logic_error("walks require a frozen graph");
    if (cfg.walk_length < 2) throw std::invalid_argument("walk_length must be >= 2");
    if (cfg.walks_per_node < 1) throw std::invalid_argument("walks_per_node must be >= 1");
    if (!(cfg.p > 0.0) || !(cfg.q > 0.0)) throw std::invalid_argument("p and q must be positive");
}

std::vector<NodeId> eligible_starts(const TypedGraph& g) {
    std::vector<NodeId> starts;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (g.degree(u) > 0) starts.push_back(u);
    return starts;
}

// Generates walks_per_node walks per start into preallocated slots; the
// per-walk stream depends only on (seed, start, walk index), so the corpus is
// identical for any worker count.
template <class StepFn>
WalkCorpus generate(const TypedGraph& g, const WalkConfig& cfg, const std::vector<NodeId>& starts,
                    StepFn&& step) {
    WalkCorpus corpus;
    corpus.graph = &g;
    const std::size_t wpn = static_cast<std::size_t>(cfg.walks_per_node);
    corpus.walks.assign(starts.size() * wpn, {});

    parallel_for(starts.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t si = begin; si < end; ++si) {
            const NodeId start = starts[si];
            for (std::size_t w = 0; w < wpn; ++w) {
                Rng rng(derive_seed(cfg.seed, start, w));
                std::vector<NodeId>& walk = corpus.walks[si * wpn + w];
                walk.reserve(static_cast<std::size_t>(cfg.walk_length));
                walk.push_back(start);
                while (walk.size() < static_cast<std::size_t>(cfg.walk_length)) {
                    NodeId next;
                    if (!step(walk, rng, next)) break;
                    walk.push_back(next);
                }
            }
        }
    });

    // drop walks that truncated below 2 nodes (meta-path dead ends at the start)
    std::erase_if(corpus.walks, [](const std::vector<NodeId>& w) { return w.size() < 2; });
    return corpus;
}

NodeId sample_uniform(std::span<const NodeId> candidates, Rng& rng) {
    return candidates[rng.next_below(candidates.size())];
}

}  // namespace

WalkCorpus uniform_walks(const TypedGraph& g, const WalkConfig& cfg) {
    check_config(g, cfg);
    const auto starts = eligible_starts(g);
    return generate(g, cfg, starts, [&g](const std::vector<NodeId>& walk, Rng& rng, NodeId& next) {
        const auto nbrs = g.neighbors(walk.back());
        if (nbrs.empty()) return false;
        next = sample_uniform(nbrs, rng);
        return true;
    });
}

std::vector<double> node2vec_step_distribution(const TypedGraph& g, NodeId prev, NodeId cur,
                                               double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("p and q must be positive");
    if (!g.has_edge(prev, cur)) throw std::invalid_argument("(prev, cur) is not an edge");
    const auto nbrs = g.neighbors(cur);
    std::vector<double> probs(nbrs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const NodeId x = nbrs[i];
        double w;
        if (x == prev)
            w = 1.0 / p;
        else if (g.has_edge(prev, x))
            w = 1.0;
        else
            w = 1.0 / q;
        probs[i] = w;
        total += w;
    }
    for (double& v : probs) v /= total;
    return probs;
}

WalkCorpus node2vec_walks(const TypedGraph& g, const WalkConfig& cfg) {
    check_config(g, cfg);
    const auto starts = eligible_starts(g);
    return generate(g, cfg, starts, [&](const std::vector<NodeId>& walk, Rng& rng, NodeId& next) {
        const NodeId cur = walk.back();
        const auto nbrs = g.neighbors(cur);
        if (nbrs.empty()) return false;
        if (walk.size() == 1) {
            next = sample_uniform(nbrs, rng);
            return true;
        }
        const NodeId prev = walk[walk.size() - 2];
        const auto probs = node2vec_step_distribution(g, prev, cur, cfg.p, cfg.q);
        double r = rng.next_double();
        std::size_t pick = probs.size() - 1;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            r -= probs[i];
            if (r < 0.0) {
                pick = i;
                break;
            }
        }
        next = nbrs[pick];
        return true;
    });
}

WalkCorpus metapath_walks(const TypedGraph& g, const MetaPathSchema& schema, const WalkConfig& cfg) {
    check_config(g, cfg);
    if (!schema.symmetric())
        throw std::invalid_argument("meta-path schema must be symmetric (first type = last type)");
    const std::vector<TypeId> types = schema.resolve(g);  // throws if a type is absent
    const std::size_t cycle = types.size() - 1;

    const auto starts = g.nodes_of_type(types[0]);
    return generate(g, cfg, starts, [&](const std::vector<NodeId>& walk, Rng& rng, NodeId& next) {
        const TypeId want = types[walk.size() % cycle];
        const auto nbrs = g.neighbors_of_type(walk.back(), want);
        if (nbrs.empty()) return false;  // dead end: truncate
        next = sample_uniform(nbrs, rng);
        return true;
    });
}

void write_walks(std::ostream& out, const WalkCorpus& corpus) {
    if (corpus.graph == nullptr) throw std::logic_error("corpus has no graph reference");
    const TypedGraph& g = *corpus.graph;
    for (const auto& walk : corpus.walks) {
        for (std::size_t i = 0; i < walk.size(); ++i) {
            if (i) out << ' ';
            out << g.type_label(g.type_of(walk[i])) << ':' << escape_token(g.name_of(walk[i]));
        }
        out << '\n';
    }
}

WalkCorpus read_walks(std::istream& in, const TypedGraph& g) {
    WalkCorpus corpus;
    corpus.graph = &g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<NodeId> walk;
        for (const auto& token : split(line, ' ')) {
            if (token.empty()) continue;
            const auto colon = token.find(':');
            if (colon == std::string::npos)
                throw std::runtime_error("walk file line " + std::to_string(line_no) +
                                         ": token without TYPE: prefix");
            NodeRef ref;
            if (!g.find_node(token.substr(0, colon), unescape_token(token.substr(colon + 1)), ref))
                throw std::runtime_error("walk file line " + std::to_string(line_no) +
                                         ": node '" + token + "' not in graph");
            walk.push_back(ref.id);
        }
        if (!walk.empty()) corpus.walks.push_back(std::move(walk));
    }
    return corpus;
}

}  // namespace hinbench
