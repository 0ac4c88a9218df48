#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hinbench/classifiers.hpp"
#include "hinbench/corpus.hpp"
#include "hinbench/embedding.hpp"

namespace hinbench {

/// Element-wise product; the node-pair featurizer.
std::vector<double> hadamard_features(std::span<const double> u, std::span<const double> v);

/// Per-node concatenation in list order; all inputs must carry an identical
/// node set or the call throws naming offending nodes.
EmbeddingMatrix concat_embeddings(const std::vector<const EmbeddingMatrix*>& matrices);

/// Keys present in every input matrix, sorted.
std::vector<std::string> common_keys(const std::vector<const EmbeddingMatrix*>& matrices);

/// Copy of `m` keeping only `keys` (which must all be present).
EmbeddingMatrix restrict_embeddings(const EmbeddingMatrix& m, const std::vector<std::string>& keys);

/// Unordered pair with canonical (min, max) order.
using NamePair = std::pair<std::string, std::string>;
NamePair make_pair_key(std::string_view a, std::string_view b);

/// round(ratio * |positives|) uniform unordered non-positive, non-self pairs
/// over `universe`. Deterministic given seed; throws when more pairs are
/// requested than exist.
std::set<NamePair> sample_nonedges(const std::set<NamePair>& positives,
                                   const std::vector<std::string>& universe, double ratio,
                                   std::uint64_t seed);

struct CoverageReport {
    std::size_t items_total = 0;    // candidate pairs / labeled authors
    std::size_t items_kept = 0;     // with full embedding coverage
    std::size_t authors_total = 0;
    std::size_t authors_embedded = 0;
    double fraction_kept() const {
        return items_total ? static_cast<double>(items_kept) / static_cast<double>(items_total) : 1.0;
    }
};

struct BuiltDataset {
    LabeledDataset data;
    CoverageReport coverage;
};

/// Positives: distinct co-author pairs of `eval_records` with both endpoints
/// embedded; negatives via sample_nonedges over the embedded eval authors;
/// features via the Hadamard operator; labels 1/0. Pairs with an unembedded
/// endpoint are dropped and counted in the coverage report.
BuiltDataset build_linkpred_dataset(const std::vector<BibRecord>& eval_records,
                                    const EmbeddingMatrix& embeddings, double negative_ratio,
                                    std::uint64_t seed);

/// One row per embedded labeled author: feature = embedding vector, label =
/// the author's area. Throws if fewer than two areas survive.
BuiltDataset build_area_dataset(const std::map<std::string, std::string>& labels,
                                const EmbeddingMatrix& embeddings);

struct EvalReport {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // population standard deviation
    std::size_t repeats = 0;
    std::size_t n_samples = 0;
    std::vector<double> accuracies;  // one per repeat
};

/// `repeats` rounds of fresh uniform shuffle + train_fraction/1-train_fraction
/// split, training with per-repeat sub-seeds and scoring the held-out part.
/// A split that leaves single-class training data is retried with the next
/// sub-seed (bounded), then rejected.
EvalReport repeated_eval(const LabeledDataset& dataset, const ClassifierSpec& spec,
                         double train_fraction, std::size_t repeats, std::uint64_t seed);

/// One output row of the benchmark grid.
struct ReportRow {
    std::string task;
    std::string network;
    std::string method;
    std::string classifier;
    EvalReport eval;
    double coverage = 1.0;
};

/// CSV with header: task,network,method,classifier,mean_accuracy,
/// std_accuracy,repeats,n_samples,coverage
std::string report_csv(const std::vector<ReportRow>& rows);

}  // namespace hinbench
