#include "hinbench/typed_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "hinbench/text_util.hpp"

namespace hinbench {

namespace {
const std::vector<NodeId> kEmpty;

std::string lookup_key(std::string_view type_label, std::string_view name) {
    std::string key;
    key.reserve(type_label.size() + 1 + name.size());
    key.append(type_label);
    key.push_back('\x1f');
    key.append(name);
    return key;
}
}  // namespace

void TypedGraph::check_mutable() const {
    if (frozen_) throw std::logic_error("graph is frozen");
}

void TypedGraph::check_node(NodeId id) const {
    if (!has_node(id)) throw std::out_of_range("unknown node id " + std::to_string(id));
}

TypeId TypedGraph::intern_type(std::string_view label) {
    auto it = type_ids_.find(std::string(label));
    if (it != type_ids_.end()) return it->second;
    const TypeId t = static_cast<TypeId>(type_labels_.size());
    type_labels_.emplace_back(label);
    type_ids_.emplace(std::string(label), t);
    return t;
}

NodeRef TypedGraph::add_node(std::string_view type_label, std::string_view name) {
    check_mutable();
    const std::string label = trim(type_label);
    const std::string node_name = trim(name);
    if (label.empty()) throw std::invalid_argument("empty node type label");
    if (node_name.empty()) throw std::invalid_argument("empty node name");
    if (label.find_first_of("\t\n:") != std::string::npos)
        throw std::invalid_argument("node type label may not contain tab, newline or ':'");
    if (node_name.find_first_of("\t\n") != std::string::npos)
        throw std::invalid_argument("node name may not contain tab or newline");

    const std::string key = lookup_key(label, node_name);
    auto it = node_lookup_.find(key);
    if (it != node_lookup_.end()) {
        const NodeId id = it->second;
        return NodeRef{id, node_types_[id]};
    }

    const TypeId t = intern_type(label);
    const NodeId id = static_cast<NodeId>(node_types_.size());
    node_types_.push_back(t);
    node_names_.push_back(node_name);
    node_lookup_.emplace(key, id);
    adj_.emplace_back();
    adj_by_type_.emplace_back();
    return NodeRef{id, t};
}

bool TypedGraph::add_edge(NodeRef u, NodeRef v) { return add_edge(u.id, v.id); }

bool TypedGraph::add_edge(NodeId u, NodeId v) {
    check_mutable();
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loops are not allowed");

    auto& adj_u = adj_[u];
    auto pos = std::lower_bound(adj_u.begin(), adj_u.end(), v);
    if (pos != adj_u.end() && *pos == v) return false;
    adj_u.insert(pos, v);

    auto& adj_v = adj_[v];
    adj_v.insert(std::lower_bound(adj_v.begin(), adj_v.end(), u), u);

    auto insert_bucket = [this](NodeId from, NodeId to) {
        auto& buckets = adj_by_type_[from];
        const TypeId t = node_types_[to];
        if (buckets.size() <= t) buckets.resize(type_labels_.size());
        auto& bucket = buckets[t];
        bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), to), to);
    };
    insert_bucket(u, v);
    insert_bucket(v, u);

    ++edge_count_;
    return true;
}

NodeRef TypedGraph::node_ref(NodeId id) const {
    check_node(id);
    return NodeRef{id, node_types_[id]};
}

TypeId TypedGraph::type_of(NodeId id) const {
    check_node(id);
    return node_types_[id];
}

const std::string& TypedGraph::name_of(NodeId id) const {
    check_node(id);
    return node_names_[id];
}

const std::string& TypedGraph::type_label(TypeId t) const {
    if (t >= type_labels_.size()) throw std::out_of_range("unknown type id");
    return type_labels_[t];
}

TypeId TypedGraph::find_type(std::string_view label) const {
    auto it = type_ids_.find(std::string(trim(label)));
    if (it == type_ids_.end()) return static_cast<TypeId>(-1);
    return it->second;
}

bool TypedGraph::find_node(std::string_view type_label, std::string_view name, NodeRef& out) const {
    auto it = node_lookup_.find(lookup_key(trim(type_label), trim(name)));
    if (it == node_lookup_.end()) return false;
    out = NodeRef{it->second, node_types_[it->second]};
    return true;
}

std::span<const NodeId> TypedGraph::neighbors(NodeId u) const {
    check_node(u);
    return adj_[u];
}

std::span<const NodeId> TypedGraph::neighbors_of_type(NodeId u, TypeId t) const {
    check_node(u);
    const auto& buckets = adj_by_type_[u];
    if (t >= buckets.size()) return kEmpty;
    return buckets[t];
}

std::size_t TypedGraph::degree(NodeId u) const {
    check_node(u);
    return adj_[u].size();
}

bool TypedGraph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto& adj_u = adj_[u];
    return std::binary_search(adj_u.begin(), adj_u.end(), v);
}

std::vector<NodeId> TypedGraph::nodes_of_type(TypeId t) const {
    std::vector<NodeId> out;
    for (NodeId id = 0; id < node_types_.size(); ++id)
        if (node_types_[id] == t) out.push_back(id);
    return out;
}

TypedGraph::Summary TypedGraph::summarize() const {
    Summary s;
    for (TypeId t : node_types_) ++s.nodes_by_type[type_labels_[t]];
    s.edges = edge_count_;
    return s;
}

void TypedGraph::dump_edges(std::ostream& out) const {
    for (NodeId u = 0; u < adj_.size(); ++u) {
        for (NodeId v : adj_[u]) {
            if (v < u) continue;  // each edge once
            out << type_labels_[node_types_[u]] << ':' << node_names_[u] << '\t'
                << type_labels_[node_types_[v]] << ':' << node_names_[v] << '\n';
        }
    }
}

TypedGraph TypedGraph::load_edges(std::istream& in) {
    TypedGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("edge list line " + std::to_string(line_no) + ": missing tab");
        auto parse_endpoint = [&](std::string_view tok) {
            const auto colon = tok.find(':');
            if (colon == std::string_view::npos)
                throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                         ": token without TYPE: prefix");
            return g.add_node(tok.substr(0, colon), tok.substr(colon + 1));
        };
        const NodeRef u = parse_endpoint(std::string_view(line).substr(0, tab));
        const NodeRef v = parse_endpoint(std::string_view(line).substr(tab + 1));
        g.add_edge(u, v);
    }
    return g;
}

MetaPathSchema::MetaPathSchema(std::vector<std::string> type_labels) : labels_(std::move(type_labels)) {
    if (labels_.size() < 2) throw std::invalid_argument("meta-path schema needs at least 2 types");
    for (auto& l : labels_) {
        l = trim(l);
        if (l.empty()) throw std::invalid_argument("meta-path schema has an empty type label");
    }
}

MetaPathSchema MetaPathSchema::parse(std::string_view text) {
    const char sep = text.find(',') != std::string_view::npos ? ',' : '-';
    return MetaPathSchema(split(text, sep));
}

std::string MetaPathSchema::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i) out += '-';
        out += labels_[i];
    }
    return out;
}

std::vector<TypeId> MetaPathSchema::resolve(const TypedGraph& g) const {
    std::vector<TypeId> ids;
    ids.reserve(labels_.size());
    for (const auto& l : labels_) {
        const TypeId t = g.find_type(l);
        if (t == static_cast<TypeId>(-1))
            throw std::invalid_argument("meta-path type '" + l + "' absent from graph");
        ids.push_back(t);
    }
    return ids;
}

}  // namespace hinbench
