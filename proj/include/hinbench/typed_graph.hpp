#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hinbench {

using NodeId = std::uint32_t;
using TypeId = std::uint32_t;

struct NodeRef {
    NodeId id = 0;
    TypeId type = 0;
    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

/// Undirected, unweighted graph whose nodes carry a type label.
///
/// Nodes get dense ids in insertion order. Adjacency is kept sorted by id,
/// both as one list per node and partitioned per neighbor type, so walks can
/// index a type bucket in O(1). Construction is single-writer; after freeze()
/// the graph is immutable and safe to share across concurrent readers.
class TypedGraph {
public:
    TypedGraph() = default;

    /// Idempotent on (type label, name). Names are whitespace-trimmed but not
    /// case-folded. Rejects empty labels/names and names containing tab or
    /// newline (they would break the text formats).
    NodeRef add_node(std::string_view type_label, std::string_view name);

    /// Returns true if the edge is new. Duplicate inserts are no-ops returning
    /// false; self-loops and unknown ids are rejected.
    bool add_edge(NodeRef u, NodeRef v);
    bool add_edge(NodeId u, NodeId v);

    /// Marks the graph immutable. Further mutation throws.
    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::size_t node_count() const { return node_types_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t type_count() const { return type_labels_.size(); }

    bool has_node(NodeId id) const { return id < node_types_.size(); }
    NodeRef node_ref(NodeId id) const;
    TypeId type_of(NodeId id) const;
    const std::string& name_of(NodeId id) const;
    const std::string& type_label(TypeId t) const;

    /// Type id for a label, or -1 cast to TypeId if the label is unknown.
    TypeId find_type(std::string_view label) const;
    /// Node lookup by (type label, name); returns false if absent.
    bool find_node(std::string_view type_label, std::string_view name, NodeRef& out) const;

    std::span<const NodeId> neighbors(NodeId u) const;
    /// Neighbors of u with type t, sorted by id; empty if none.
    std::span<const NodeId> neighbors_of_type(NodeId u, TypeId t) const;
    std::size_t degree(NodeId u) const;
    bool has_edge(NodeId u, NodeId v) const;

    /// All node ids of one type, ascending.
    std::vector<NodeId> nodes_of_type(TypeId t) const;

    struct Summary {
        std::map<std::string, std::size_t> nodes_by_type;  // type label -> count
        std::size_t edges = 0;
        friend bool operator==(const Summary&, const Summary&) = default;
    };
    Summary summarize() const;

    /// Text edge list, one `TYPE:name<TAB>TYPE:name` per line. Dump order is
    /// canonical (by node id pair) so dump/load round-trips bit-exact modulo
    /// the line order of the input.
    void dump_edges(std::ostream& out) const;
    static TypedGraph load_edges(std::istream& in);

private:
    void check_mutable() const;
    void check_node(NodeId id) const;
    TypeId intern_type(std::string_view label);

    bool frozen_ = false;
    std::size_t edge_count_ = 0;

    std::vector<std::string> type_labels_;
    std::unordered_map<std::string, TypeId> type_ids_;

    std::vector<TypeId> node_types_;
    std::vector<std::string> node_names_;
    // (type, name) -> id; key is "label\x1fname"
    std::unordered_map<std::string, NodeId> node_lookup_;

    std::vector<std::vector<NodeId>> adj_;
    // adj_by_type_[u][t] mirrors adj_[u] restricted to type t
    std::vector<std::vector<std::vector<NodeId>>> adj_by_type_;
};

/// Cyclic node-type sequence constraining meta-path walks, e.g. A-P-A.
class MetaPathSchema {
public:
    explicit MetaPathSchema(std::vector<std::string> type_labels);

    static MetaPathSchema parse(std::string_view text);  // "A,P,A" or "A-P-A"

    std::size_t length() const { return labels_.size(); }
    const std::string& label_at(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool symmetric() const { return labels_.front() == labels_.back(); }

    /// Required type label at walk position i for a symmetric schema used
    /// cyclically: schema[i mod (L-1)].
    const std::string& label_at_walk_position(std::size_t i) const {
        return labels_[i % (labels_.size() - 1)];
    }

    std::string to_string() const;

    /// Resolves labels against a graph; throws if any type is absent.
    std::vector<TypeId> resolve(const TypedGraph& g) const;

private:
    std::vector<std::string> labels_;
};

}  // namespace hinbench
