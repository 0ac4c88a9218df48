#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hinbench {

struct LabeledDataset {
    std::size_t n_features = 0;
    std::vector<double> features;  // row-major rows() x n_features
    std::vector<int> labels;
    std::vector<std::string> class_names;

    std::size_t rows() const { return labels.size(); }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(features.data() + i * n_features, n_features);
    }
    void add_row(std::span<const double> feats, int label) {
        features.insert(features.end(), feats.begin(), feats.end());
        labels.push_back(label);
    }
    std::size_t num_classes() const { return class_names.size(); }
};

enum class ClassifierKind { LR, GNB, DT, RF };

ClassifierKind parse_classifier_kind(std::string_view name);  // LR/GNB|NB/DT/RF
std::string to_string(ClassifierKind kind);

struct LrParams {
    double l2 = 1e-4;
    int max_iters = 1000;
    double tol = 1e-7;        // relative loss-change stopping threshold
    double initial_step = 1.0;
};

struct GnbParams {
    double var_floor = 1e-9;
};

struct DtParams {
    int max_depth = 16;        // <= 0 means unlimited
    int min_samples_leaf = 2;
};

struct RfParams {
    int trees = 100;
    int feature_subset = 0;    // per-split subset size; 0 means ceil(sqrt(d))
    bool bootstrap = true;
    DtParams tree;
};

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::LR;
    LrParams lr;
    GnbParams gnb;
    DtParams dt;
    RfParams rf;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual int predict(std::span<const double> features) const = 0;
};

/// Trains one model. LR is multinomial logistic regression by full-batch
/// gradient descent with L2 and internal feature standardization (train
/// statistics applied at prediction time); GNB fits per-class Gaussians with a
/// variance floor; DT is CART with Gini impurity and threshold splits; RF
/// bags CART trees with per-split feature subsampling and majority vote.
/// Rejects single-class training data. Deterministic given seed.
std::unique_ptr<Classifier> train_classifier(const ClassifierSpec& spec,
                                             const LabeledDataset& train, std::uint64_t seed);

/// Fraction of rows (restricted to `indices` if non-empty) the model labels
/// correctly.
double accuracy(const Classifier& model, const LabeledDataset& data,
                std::span<const std::size_t> indices = {});

/// Training-loss trace of the last LR fit on this model; exposed for the
/// monotone-descent property.
const std::vector<double>& lr_loss_trace(const Classifier& model);

}  // namespace hinbench
