#include "hinbench/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "hinbench/rng.hpp"
#include "hinbench/text_util.hpp"

namespace hinbench {

std::vector<double> hadamard_features(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw std::invalid_argument("hadamard: length mismatch");
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * v[i];
    return out;
}

std::vector<std::string> common_keys(const std::vector<const EmbeddingMatrix*>& matrices) {
    if (matrices.empty()) return {};
    std::vector<std::string> keys = matrices.front()->keys();
    std::sort(keys.begin(), keys.end());
    for (std::size_t m = 1; m < matrices.size(); ++m) {
        std::erase_if(keys, [&](const std::string& k) { return !matrices[m]->contains(k); });
    }
    return keys;
}

EmbeddingMatrix restrict_embeddings(const EmbeddingMatrix& m, const std::vector<std::string>& keys) {
    EmbeddingMatrix out(m.dim());
    for (const auto& k : keys) {
        const auto src = m.at(k);
        auto dst = out.insert(k);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

EmbeddingMatrix concat_embeddings(const std::vector<const EmbeddingMatrix*>& matrices) {
    if (matrices.empty()) throw std::invalid_argument("concat: no matrices");

    // identical node sets required; report the offenders otherwise
    std::vector<std::string> missing;
    for (std::size_t m = 0; m < matrices.size(); ++m) {
        for (const auto& key : matrices[m]->keys()) {
            for (std::size_t o = 0; o < matrices.size(); ++o) {
                if (o != m && !matrices[o]->contains(key)) {
                    missing.push_back(key + " (absent from input " + std::to_string(o) + ")");
                    break;
                }
            }
        }
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string msg = "concat: node sets differ:";
        for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 8); ++i)
            msg += " " + missing[i];
        if (missing.size() > 8) msg += " (+" + std::to_string(missing.size() - 8) + " more)";
        throw std::invalid_argument(msg);
    }

    std::size_t total_dim = 0;
    for (const auto* m : matrices) total_dim += m->dim();
    EmbeddingMatrix out(total_dim);

    std::vector<std::string> keys = matrices.front()->keys();
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) {
        auto dst = out.insert(key);
        std::size_t off = 0;
        for (const auto* m : matrices) {
            const auto src = m->at(key);
            std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(off));
            off += m->dim();
        }
    }
    return out;
}

NamePair make_pair_key(std::string_view a, std::string_view b) {
    std::string sa(a), sb(b);
    if (sb < sa) std::swap(sa, sb);
    return {std::move(sa), std::move(sb)};
}

std::set<NamePair> sample_nonedges(const std::set<NamePair>& positives,
                                   const std::vector<std::string>& universe, double ratio,
                                   std::uint64_t seed) {
    if (ratio < 0.0) throw std::invalid_argument("sample_nonedges: ratio must be >= 0");
    std::vector<std::string> nodes = universe;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    const std::size_t n = nodes.size();

    const std::size_t want =
        static_cast<std::size_t>(std::llround(ratio * static_cast<double>(positives.size())));
    if (want == 0) return {};

    std::unordered_set<std::string> in_universe(nodes.begin(), nodes.end());
    std::size_t positives_inside = 0;
    for (const auto& p : positives)
        if (in_universe.count(p.first) && in_universe.count(p.second)) ++positives_inside;

    const std::size_t all_pairs = n >= 2 ? n * (n - 1) / 2 : 0;
    if (all_pairs < positives_inside + want)
        throw std::invalid_argument("sample_nonedges: requested " + std::to_string(want) +
                                    " pairs but only " +
                                    std::to_string(all_pairs - std::min(all_pairs, positives_inside)) +
                                    " non-edges exist");
    const std::size_t available = all_pairs - positives_inside;

    Rng rng(derive_seed(seed, 0x6e6f6e65646765ULL));
    std::set<NamePair> picked;

    if (want * 2 >= available) {
        // dense request: enumerate every non-edge, shuffle, take the head
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        candidates.reserve(available);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!positives.count({nodes[i], nodes[j]})) candidates.emplace_back(i, j);
        rng.shuffle(candidates);
        for (std::size_t k = 0; k < want; ++k)
            picked.insert({nodes[candidates[k].first], nodes[candidates[k].second]});
        return picked;
    }

    while (picked.size() < want) {
        const std::size_t i = static_cast<std::size_t>(rng.next_below(n));
        const std::size_t j = static_cast<std::size_t>(rng.next_below(n));
        if (i == j) continue;
        NamePair pair = make_pair_key(nodes[i], nodes[j]);
        if (positives.count(pair)) continue;
        picked.insert(std::move(pair));
    }
    return picked;
}

BuiltDataset build_linkpred_dataset(const std::vector<BibRecord>& eval_records,
                                    const EmbeddingMatrix& embeddings, double negative_ratio,
                                    std::uint64_t seed) {
    std::set<std::string> eval_authors;
    std::set<NamePair> all_pairs;
    for (const auto& r : eval_records) {
        for (const auto& a : r.authors) eval_authors.insert(a);
        for (std::size_t i = 0; i < r.authors.size(); ++i)
            for (std::size_t j = i + 1; j < r.authors.size(); ++j)
                all_pairs.insert(make_pair_key(r.authors[i], r.authors[j]));
    }

    std::vector<std::string> embedded_authors;
    for (const auto& a : eval_authors)
        if (embeddings.contains(node_key(kAuthorType, a))) embedded_authors.push_back(a);
    std::unordered_set<std::string> embedded_set(embedded_authors.begin(), embedded_authors.end());

    std::set<NamePair> positives;
    for (const auto& p : all_pairs)
        if (embedded_set.count(p.first) && embedded_set.count(p.second)) positives.insert(p);

    BuiltDataset out;
    out.coverage.items_total = all_pairs.size();
    out.coverage.items_kept = positives.size();
    out.coverage.authors_total = eval_authors.size();
    out.coverage.authors_embedded = embedded_authors.size();
    if (positives.empty())
        throw std::invalid_argument("linkpred: no co-author pair has embedding coverage");

    const std::set<NamePair> negatives =
        sample_nonedges(positives, embedded_authors, negative_ratio, seed);

    out.data.n_features = embeddings.dim();
    out.data.class_names = {"noncoauthor", "coauthor"};
    auto add = [&](const NamePair& p, int label) {
        const auto fu = embeddings.at(node_key(kAuthorType, p.first));
        const auto fv = embeddings.at(node_key(kAuthorType, p.second));
        out.data.add_row(hadamard_features(fu, fv), label);
    };
    for (const auto& p : positives) add(p, 1);
    for (const auto& p : negatives) add(p, 0);
    return out;
}

BuiltDataset build_area_dataset(const std::map<std::string, std::string>& labels,
                                const EmbeddingMatrix& embeddings) {
    std::set<std::string> areas;
    for (const auto& [author, field] : labels)
        if (embeddings.contains(node_key(kAuthorType, author))) areas.insert(field);
    if (areas.size() < 2)
        throw std::invalid_argument("areaclass: need at least two areas among embedded authors");

    std::map<std::string, int> area_id;
    BuiltDataset out;
    for (const auto& a : areas) {
        area_id[a] = static_cast<int>(out.data.class_names.size());
        out.data.class_names.push_back(a);
    }

    out.data.n_features = embeddings.dim();
    out.coverage.items_total = labels.size();
    out.coverage.authors_total = labels.size();
    for (const auto& [author, field] : labels) {
        const std::string key = node_key(kAuthorType, author);
        if (!embeddings.contains(key)) continue;
        out.data.add_row(embeddings.at(key), area_id.at(field));
        ++out.coverage.items_kept;
        ++out.coverage.authors_embedded;
    }
    return out;
}

EvalReport repeated_eval(const LabeledDataset& dataset, const ClassifierSpec& spec,
                         double train_fraction, std::size_t repeats, std::uint64_t seed) {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
        throw std::invalid_argument("repeated_eval: train_fraction must be in (0,1)");
    if (repeats < 1) throw std::invalid_argument("repeated_eval: repeats must be >= 1");
    const std::size_t n = dataset.rows();
    if (n < 2) throw std::invalid_argument("repeated_eval: need at least 2 rows");

    const std::size_t n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n))), 1, n - 1);

    EvalReport report;
    report.repeats = repeats;
    report.n_samples = n;

    constexpr std::size_t kMaxRetries = 16;
    for (std::size_t r = 0; r < repeats; ++r) {
        bool done = false;
        for (std::size_t attempt = 0; attempt < kMaxRetries && !done; ++attempt) {
            Rng rng(derive_seed(seed, r, attempt));
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);

            LabeledDataset train;
            train.n_features = dataset.n_features;
            train.class_names = dataset.class_names;
            for (std::size_t i = 0; i < n_train; ++i)
                train.add_row(dataset.row(perm[i]), dataset.labels[perm[i]]);

            const int first = train.labels.front();
            if (std::all_of(train.labels.begin(), train.labels.end(),
                            [&](int l) { return l == first; }))
                continue;  // single-class split: retry with the next sub-seed

            const auto model =
                train_classifier(spec, train, derive_seed(seed, 0x636c66ULL + r, attempt));
            const std::span<const std::size_t> test(perm.data() + n_train, n - n_train);
            report.accuracies.push_back(accuracy(*model, dataset, test));
            done = true;
        }
        if (!done)
            throw std::runtime_error("repeated_eval: could not produce a two-class training split");
    }

    const double mean =
        std::accumulate(report.accuracies.begin(), report.accuracies.end(), 0.0) /
        static_cast<double>(repeats);
    double var = 0.0;
    for (double a : report.accuracies) var += (a - mean) * (a - mean);
    report.mean_accuracy = mean;
    report.std_accuracy = std::sqrt(var / static_cast<double>(repeats));
    return report;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "task,network,method,classifier,mean_accuracy,std_accuracy,repeats,n_samples,coverage\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%s,%.6f,%.6f,%zu,%zu,%.6f\n", r.task.c_str(),
                      r.network.c_str(), r.method.c_str(), r.classifier.c_str(),
                      r.eval.mean_accuracy, r.eval.std_accuracy, r.eval.repeats, r.eval.n_samples,
                      r.coverage);
        out << buf;
    }
    return out.str();
}

}  // namespace hinbench
