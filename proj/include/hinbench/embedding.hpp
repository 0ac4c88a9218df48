#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hinbench {

/// Node key -> d-dimensional vector. Keys are "TYPE:name" strings so matrices
/// stay meaningful independent of any particular graph's dense ids.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    explicit EmbeddingMatrix(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return keys_.size(); }

    bool contains(const std::string& key) const { return index_.count(key) != 0; }

    /// Adds a row (or returns the existing one) and exposes it for writing.
    std::span<double> insert(const std::string& key);
    std::span<const double> at(const std::string& key) const;
    const std::vector<std::string>& keys() const { return keys_; }
    std::span<const double> row(std::size_t i) const;
    std::span<double> row_mut(std::size_t i);
    std::size_t index_of(const std::string& key) const;

    /// First line "N dim", then one row per line: key v1 .. v_dim. Values are
    /// printed with 17 significant digits so load(dump(m)) is bit-exact.
    void save(std::ostream& out) const;
    static EmbeddingMatrix load(std::istream& in);

private:
    std::size_t dim_ = 0;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> data_;
};

std::string node_key(std::string_view type_label, std::string_view name);

}  // namespace hinbench
