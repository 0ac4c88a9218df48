#include "hinbench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hinbench/rng.hpp"
#include "hinbench/text_util.hpp"

namespace hinbench {

namespace {

int count_classes(const LabeledDataset& data) {
    int max_label = -1;
    for (int l : data.labels) max_label = std::max(max_label, l);
    return max_label + 1;
}

void check_trainable(const LabeledDataset& data) {
    if (data.rows() == 0) throw std::invalid_argument("empty training set");
    const int first = data.labels.front();
    for (int l : data.labels)
        if (l != first) return;
    throw std::invalid_argument("single-class training data");
}

// ---------------------------------------------------------------------------
// Logistic regression (multinomial softmax, full-batch GD, L2, standardized)

class LogisticRegressionModel final : public Classifier {
public:
    LogisticRegressionModel(const LrParams& params, const LabeledDataset& data) {
        const std::size_t n = data.rows();
        const std::size_t d = data.n_features;
        k_ = count_classes(data);
        d_ = d;

        mean_.assign(d, 0.0);
        scale_.assign(d, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = data.row(i);
            for (std::size_t j = 0; j < d; ++j) mean_[j] += r[j];
        }
        for (double& m : mean_) m /= static_cast<double>(n);
        std::vector<double> var(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = data.row(i);
            for (std::size_t j = 0; j < d; ++j) {
                const double c = r[j] - mean_[j];
                var[j] += c * c;
            }
        }
        for (std::size_t j = 0; j < d; ++j) {
            const double s = std::sqrt(var[j] / static_cast<double>(n));
            scale_[j] = s > 1e-12 ? s : 1.0;
        }

        std::vector<double> x(n * d);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = data.row(i);
            for (std::size_t j = 0; j < d; ++j) x[i * d + j] = (r[j] - mean_[j]) / scale_[j];
        }

        const std::size_t kd = static_cast<std::size_t>(k_) * (d + 1);
        weights_.assign(kd, 0.0);
        std::vector<double> grad(kd), cand(kd), cand_grad(kd), probs(static_cast<std::size_t>(k_));

        double loss = loss_and_grad(x, data.labels, params.l2, weights_, probs, &grad);
        trace_.push_back(loss);
        double step = params.initial_step;
        bool converged = false;

        for (int iter = 0; iter < params.max_iters && !converged; ++iter) {
            bool accepted = false;
            while (step > 1e-14) {
                for (std::size_t i = 0; i < kd; ++i) cand[i] = weights_[i] - step * grad[i];
                const double cand_loss =
                    loss_and_grad(x, data.labels, params.l2, cand, probs, &cand_grad);
                if (cand_loss <= loss) {
                    weights_.swap(cand);
                    grad.swap(cand_grad);
                    const double improvement = loss - cand_loss;
                    loss = cand_loss;
                    trace_.push_back(loss);
                    step *= 1.1;
                    accepted = true;
                    converged = improvement <= params.tol * std::max(1.0, std::abs(loss));
                    break;
                }
                step *= 0.5;  // loss went up: halve and retry
            }
            if (!accepted) break;
        }
    }

    int predict(std::span<const double> features) const override {
        if (features.size() != d_) throw std::invalid_argument("LR: feature length mismatch");
        int best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < k_; ++c) {
            const double* w = weights_.data() + static_cast<std::size_t>(c) * (d_ + 1);
            double s = w[d_];
            for (std::size_t j = 0; j < d_; ++j) s += w[j] * (features[j] - mean_[j]) / scale_[j];
            if (s > best_score) {
                best_score = s;
                best = c;
            }
        }
        return best;
    }

    const std::vector<double>& trace() const { return trace_; }

private:
    // mean cross-entropy + 0.5*l2*||W||^2 (bias unpenalized); grad optional
    double loss_and_grad(const std::vector<double>& x, const std::vector<int>& y, double l2,
                         const std::vector<double>& w, std::vector<double>& probs,
                         std::vector<double>* grad) const {
        const std::size_t n = y.size();
        const std::size_t d = d_;
        const std::size_t stride = d + 1;
        if (grad) std::fill(grad->begin(), grad->end(), 0.0);
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* xi = x.data() + i * d;
            double max_s = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < k_; ++c) {
                const double* wc = w.data() + static_cast<std::size_t>(c) * stride;
                double s = wc[d];
                for (std::size_t j = 0; j < d; ++j) s += wc[j] * xi[j];
                probs[static_cast<std::size_t>(c)] = s;
                max_s = std::max(max_s, s);
            }
            double z = 0.0;
            for (int c = 0; c < k_; ++c) {
                probs[static_cast<std::size_t>(c)] = std::exp(probs[static_cast<std::size_t>(c)] - max_s);
                z += probs[static_cast<std::size_t>(c)];
            }
            loss += -std::log(probs[static_cast<std::size_t>(y[i])] / z);
            if (grad) {
                for (int c = 0; c < k_; ++c) {
                    const double coeff =
                        probs[static_cast<std::size_t>(c)] / z - (c == y[i] ? 1.0 : 0.0);
                    double* gc = grad->data() + static_cast<std::size_t>(c) * stride;
                    for (std::size_t j = 0; j < d; ++j) gc[j] += coeff * xi[j];
                    gc[d] += coeff;
                }
            }
        }
        loss /= static_cast<double>(n);
        double penalty = 0.0;
        for (int c = 0; c < k_; ++c) {
            const double* wc = w.data() + static_cast<std::size_t>(c) * stride;
            for (std::size_t j = 0; j < d; ++j) penalty += wc[j] * wc[j];
        }
        loss += 0.5 * l2 * penalty;
        if (grad) {
            for (double& g : *grad) g /= static_cast<double>(n);
            for (int c = 0; c < k_; ++c) {
                double* gc = grad->data() + static_cast<std::size_t>(c) * stride;
                const double* wc = w.data() + static_cast<std::size_t>(c) * stride;
                for (std::size_t j = 0; j < d; ++j) gc[j] += l2 * wc[j];
            }
        }
        return loss;
    }

    int k_ = 0;
    std::size_t d_ = 0;
    std::vector<double> mean_, scale_;
    std::vector<double> weights_;  // k x (d+1), bias last
    std::vector<double> trace_;
};

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

class GnbModel final : public Classifier {
public:
    GnbModel(const GnbParams& params, const LabeledDataset& data) {
        const std::size_t n = data.rows();
        const std::size_t d = data.n_features;
        k_ = count_classes(data);
        d_ = d;
        mean_.assign(static_cast<std::size_t>(k_) * d, 0.0);
        var_.assign(static_cast<std::size_t>(k_) * d, 0.0);
        log_prior_.assign(static_cast<std::size_t>(k_), 0.0);

        std::vector<std::size_t> counts(static_cast<std::size_t>(k_), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = data.row(i);
            const auto c = static_cast<std::size_t>(data.labels[i]);
            ++counts[c];
            for (std::size_t j = 0; j < d; ++j) mean_[c * d + j] += r[j];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k_); ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) mean_[c * d + j] /= static_cast<double>(counts[c]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = data.row(i);
            const auto c = static_cast<std::size_t>(data.labels[i]);
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = r[j] - mean_[c * d + j];
                var_[c * d + j] += diff * diff;
            }
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k_); ++c) {
            log_prior_[c] = counts[c] ? std::log(static_cast<double>(counts[c]) / static_cast<double>(n))
                                      : -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < d; ++j) {
                double v = counts[c] ? var_[c * d + j] / static_cast<double>(counts[c]) : 0.0;
                var_[c * d + j] = std::max(v, params.var_floor);
            }
        }
    }

    int predict(std::span<const double> features) const override {
        if (features.size() != d_) throw std::invalid_argument("GNB: feature length mismatch");
        int best = 0;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < k_; ++c) {
            double ll = log_prior_[static_cast<std::size_t>(c)];
            if (!std::isfinite(ll)) continue;
            const double* mu = mean_.data() + static_cast<std::size_t>(c) * d_;
            const double* va = var_.data() + static_cast<std::size_t>(c) * d_;
            for (std::size_t j = 0; j < d_; ++j) {
                const double diff = features[j] - mu[j];
                ll += -0.5 * (std::log(2.0 * 3.14159265358979323846 * va[j]) + diff * diff / va[j]);
            }
            if (ll > best_ll) {
                best_ll = ll;
                best = c;
            }
        }
        return best;
    }

private:
    int k_ = 0;
    std::size_t d_ = 0;
    std::vector<double> mean_, var_, log_prior_;
};

// ---------------------------------------------------------------------------
// CART decision tree (Gini impurity, threshold splits)

struct TreeNode {
    bool leaf = true;
    int label = 0;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
};

class CartTree {
public:
    // feature_subset == 0 considers all features; otherwise `feature_subset`
    // features are drawn without replacement per split from `rng`.
    void fit(const LabeledDataset& data, std::span<const std::size_t> sample_indices,
             const DtParams& params, int feature_subset, Rng* rng) {
        k_ = count_classes(data);
        std::vector<std::size_t> indices(sample_indices.begin(), sample_indices.end());
        nodes_.clear();
        build(data, indices, 0, params, feature_subset, rng);
    }

    int predict(std::span<const double> features) const {
        std::size_t at = 0;
        for (;;) {
            const TreeNode& node = nodes_[at];
            if (node.leaf) return node.label;
            at = features[node.feature] <= node.threshold ? node.left : node.right;
        }
    }

private:
    int majority(const LabeledDataset& data, const std::vector<std::size_t>& idx) const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(k_), 0);
        for (std::size_t i : idx) ++counts[static_cast<std::size_t>(data.labels[i])];
        return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    }

    static double gini(std::span<const std::size_t> counts, double n) {
        double s = 1.0;
        for (std::size_t c : counts) {
            const double p = static_cast<double>(c) / n;
            s -= p * p;
        }
        return s;
    }

    std::size_t build(const LabeledDataset& data, std::vector<std::size_t>& idx, int depth,
                      const DtParams& params, int feature_subset, Rng* rng) {
        const std::size_t me = nodes_.size();
        nodes_.push_back(TreeNode{});
        nodes_[me].label = majority(data, idx);

        std::vector<std::size_t> counts(static_cast<std::size_t>(k_), 0);
        for (std::size_t i : idx) ++counts[static_cast<std::size_t>(data.labels[i])];
        const bool pure =
            std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
        const std::size_t min_leaf = static_cast<std::size_t>(std::max(1, params.min_samples_leaf));
        if (pure || idx.size() < 2 * min_leaf ||
            (params.max_depth > 0 && depth >= params.max_depth))
            return me;

        // candidate features for this split
        std::vector<std::size_t> feats(data.n_features);
        std::iota(feats.begin(), feats.end(), 0);
        std::size_t n_feats = feats.size();
        if (feature_subset > 0 && static_cast<std::size_t>(feature_subset) < n_feats) {
            for (int s = 0; s < feature_subset; ++s) {
                const std::size_t j = s + static_cast<std::size_t>(rng->next_below(n_feats - s));
                std::swap(feats[static_cast<std::size_t>(s)], feats[j]);
            }
            n_feats = static_cast<std::size_t>(feature_subset);
            std::sort(feats.begin(), feats.begin() + static_cast<std::ptrdiff_t>(n_feats));
        }

        const double n = static_cast<double>(idx.size());
        double best_impurity = gini(counts, n);
        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        bool found = false;

        std::vector<std::size_t> sorted = idx;
        std::vector<std::size_t> left_counts(static_cast<std::size_t>(k_));
        for (std::size_t fi = 0; fi < n_feats; ++fi) {
            const std::size_t f = feats[fi];
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                const double va = data.row(a)[f];
                const double vb = data.row(b)[f];
                return va < vb || (va == vb && a < b);
            });
            std::fill(left_counts.begin(), left_counts.end(), 0);
            for (std::size_t pos = 0; pos + 1 < sorted.size(); ++pos) {
                ++left_counts[static_cast<std::size_t>(data.labels[sorted[pos]])];
                const double v = data.row(sorted[pos])[f];
                const double v_next = data.row(sorted[pos + 1])[f];
                if (v == v_next) continue;
                const std::size_t n_left = pos + 1;
                const std::size_t n_right = sorted.size() - n_left;
                if (n_left < min_leaf || n_right < min_leaf) continue;
                std::vector<std::size_t> right_counts(static_cast<std::size_t>(k_));
                for (std::size_t c = 0; c < right_counts.size(); ++c)
                    right_counts[c] = counts[c] - left_counts[c];
                const double impurity =
                    (static_cast<double>(n_left) * gini(left_counts, static_cast<double>(n_left)) +
                     static_cast<double>(n_right) *
                         gini(right_counts, static_cast<double>(n_right))) /
                    n;
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_feature = f;
                    best_threshold = v + 0.5 * (v_next - v);
                    found = true;
                }
            }
        }
        if (!found) return me;

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx)
            (data.row(i)[best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);

        nodes_[me].leaf = false;
        nodes_[me].feature = best_feature;
        nodes_[me].threshold = best_threshold;
        const std::size_t l = build(data, left_idx, depth + 1, params, feature_subset, rng);
        nodes_[me].left = l;
        const std::size_t r = build(data, right_idx, depth + 1, params, feature_subset, rng);
        nodes_[me].right = r;
        return me;
    }

    int k_ = 0;
    std::vector<TreeNode> nodes_;
};

class DtModel final : public Classifier {
public:
    DtModel(const DtParams& params, const LabeledDataset& data) {
        std::vector<std::size_t> all(data.rows());
        std::iota(all.begin(), all.end(), 0);
        tree_.fit(data, all, params, 0, nullptr);
    }
    int predict(std::span<const double> features) const override { return tree_.predict(features); }

private:
    CartTree tree_;
};

class RfModel final : public Classifier {
public:
    RfModel(const RfParams& params, const LabeledDataset& data, std::uint64_t seed) {
        if (params.trees < 1) throw std::invalid_argument("RF: trees must be >= 1");
        k_ = count_classes(data);
        const int subset =
            params.feature_subset > 0
                ? params.feature_subset
                : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(data.n_features))));
        trees_.resize(static_cast<std::size_t>(params.trees));
        for (std::size_t t = 0; t < trees_.size(); ++t) {
            Rng rng(derive_seed(seed, 0x666f72657374ULL, t));
            std::vector<std::size_t> sample(data.rows());
            if (params.bootstrap) {
                for (auto& s : sample) s = static_cast<std::size_t>(rng.next_below(data.rows()));
            } else {
                std::iota(sample.begin(), sample.end(), 0);
            }
            const int effective_subset =
                static_cast<std::size_t>(subset) >= data.n_features ? 0 : subset;
            trees_[t].fit(data, sample, params.tree, effective_subset, &rng);
        }
    }

    int predict(std::span<const double> features) const override {
        std::vector<std::size_t> votes(static_cast<std::size_t>(k_), 0);
        for (const auto& t : trees_) ++votes[static_cast<std::size_t>(t.predict(features))];
        return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    }

private:
    int k_ = 0;
    std::vector<CartTree> trees_;
};

}  // namespace

ClassifierKind parse_classifier_kind(std::string_view name) {
    const std::string n = trim(name);
    if (n == "LR") return ClassifierKind::LR;
    if (n == "GNB" || n == "NB") return ClassifierKind::GNB;
    if (n == "DT") return ClassifierKind::DT;
    if (n == "RF") return ClassifierKind::RF;
    throw std::invalid_argument("unknown classifier '" + n + "'");
}

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::LR: return "LR";
        case ClassifierKind::GNB: return "NB";
        case ClassifierKind::DT: return "DT";
        case ClassifierKind::RF: return "RF";
    }
    throw std::logic_error("bad classifier kind");
}

std::unique_ptr<Classifier> train_classifier(const ClassifierSpec& spec,
                                             const LabeledDataset& train, std::uint64_t seed) {
    check_trainable(train);
    switch (spec.kind) {
        case ClassifierKind::LR: return std::make_unique<LogisticRegressionModel>(spec.lr, train);
        case ClassifierKind::GNB: return std::make_unique<GnbModel>(spec.gnb, train);
        case ClassifierKind::DT: return std::make_unique<DtModel>(spec.dt, train);
        case ClassifierKind::RF: return std::make_unique<RfModel>(spec.rf, train, seed);
    }
    throw std::logic_error("bad classifier kind");
}

double accuracy(const Classifier& model, const LabeledDataset& data,
                std::span<const std::size_t> indices) {
    std::size_t correct = 0;
    std::size_t total = 0;
    auto check = [&](std::size_t i) {
        ++total;
        if (model.predict(data.row(i)) == data.labels[i]) ++correct;
    };
    if (indices.empty()) {
        for (std::size_t i = 0; i < data.rows(); ++i) check(i);
    } else {
        for (std::size_t i : indices) check(i);
    }
    return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

const std::vector<double>& lr_loss_trace(const Classifier& model) {
    const auto* lr = dynamic_cast<const LogisticRegressionModel*>(&model);
    if (!lr) throw std::invalid_argument("model is not a logistic regression");
    return lr->trace();
}

}  // namespace hinbench
