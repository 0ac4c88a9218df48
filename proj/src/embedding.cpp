#include "hinbench/embedding.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "hinbench/text_util.hpp"

namespace hinbench {

std::span<double> EmbeddingMatrix::insert(const std::string& key) {
    auto it = index_.find(key);
    if (it == index_.end()) {
        it = index_.emplace(key, keys_.size()).first;
        keys_.push_back(key);
        data_.resize(data_.size() + dim_, 0.0);
    }
    return std::span<double>(data_.data() + it->second * dim_, dim_);
}

std::span<const double> EmbeddingMatrix::at(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("embedding has no key '" + key + "'");
    return row(it->second);
}

std::span<const double> EmbeddingMatrix::row(std::size_t i) const {
    return std::span<const double>(data_.data() + i * dim_, dim_);
}

std::span<double> EmbeddingMatrix::row_mut(std::size_t i) {
    return std::span<double>(data_.data() + i * dim_, dim_);
}

std::size_t EmbeddingMatrix::index_of(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("embedding has no key '" + key + "'");
    return it->second;
}

void EmbeddingMatrix::save(std::ostream& out) const {
    out << keys_.size() << ' ' << dim_ << '\n';
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        out << escape_token(keys_[i]);
        const auto r = row(i);
        for (double v : r) out << ' ' << format_double(v);
        out << '\n';
    }
}

EmbeddingMatrix EmbeddingMatrix::load(std::istream& in) {
    std::size_t n = 0;
    std::size_t dim = 0;
    if (!(in >> n >> dim)) throw std::runtime_error("embedding file: bad header");
    std::string line;
    std::getline(in, line);  // rest of header line

    EmbeddingMatrix m(dim);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("embedding file: truncated");
        const auto cols = split(line, ' ');
        if (cols.size() != dim + 1)
            throw std::runtime_error("embedding file: row " + std::to_string(i + 1) + " has " +
                                     std::to_string(cols.size() - 1) + " values, expected " +
                                     std::to_string(dim));
        auto r = m.insert(unescape_token(cols[0]));
        for (std::size_t d = 0; d < dim; ++d) {
            char* end = nullptr;
            r[d] = std::strtod(cols[d + 1].c_str(), &end);
            if (end == cols[d + 1].c_str())
                throw std::runtime_error("embedding file: bad float '" + cols[d + 1] + "'");
        }
    }
    return m;
}

std::string node_key(std::string_view type_label, std::string_view name) {
    std::string key;
    key.reserve(type_label.size() + 1 + name.size());
    key.append(type_label);
    key.push_back(':');
    key.append(name);
    return key;
}

}  // namespace hinbench
