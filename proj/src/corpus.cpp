#include "hinbench/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hinbench/rng.hpp"
#include "hinbench/text_util.hpp"

namespace hinbench {

ParseResult parse_records(std::istream& in) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (trim(line).empty()) continue;

        const auto cols = split(line, '\t');
        if (cols.size() != 5) {
            result.errors.push_back({line_no, "expected 5 tab-separated columns, got " +
                                                  std::to_string(cols.size())});
            continue;
        }

        BibRecord rec;
        rec.paper_id = trim(cols[0]);
        if (rec.paper_id.empty()) {
            result.errors.push_back({line_no, "empty paper id"});
            continue;
        }

        const std::string year_str = trim(cols[1]);
        try {
            std::size_t pos = 0;
            rec.year = std::stoi(year_str, &pos);
            if (pos != year_str.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            result.errors.push_back({line_no, "non-integer year '" + year_str + "'"});
            continue;
        }
        if (rec.year <= 0) {
            result.errors.push_back({line_no, "year must be positive"});
            continue;
        }

        rec.venue = trim(cols[2]);
        rec.field = trim(cols[3]);
        if (rec.venue.empty() || rec.field.empty()) {
            result.errors.push_back({line_no, "empty venue or field"});
            continue;
        }

        std::unordered_set<std::string> seen;
        for (const auto& a : split(cols[4], '|')) {
            const std::string name = trim(a);
            if (name.empty()) continue;
            if (seen.insert(name).second) rec.authors.push_back(name);
        }
        if (rec.authors.empty()) {
            result.errors.push_back({line_no, "empty author list"});
            continue;
        }

        result.records.push_back(std::move(rec));
    }
    return result;
}

void write_records(std::ostream& out, const std::vector<BibRecord>& records) {
    for (const auto& r : records) {
        out << r.paper_id << '\t' << r.year << '\t' << r.venue << '\t' << r.field << '\t';
        for (std::size_t i = 0; i < r.authors.size(); ++i) {
            if (i) out << '|';
            out << r.authors[i];
        }
        out << '\n';
    }
}

TemporalSplit temporal_split(const std::vector<BibRecord>& records, int cutoff_year) {
    TemporalSplit s;
    for (const auto& r : records) {
        (r.year <= cutoff_year ? s.train : s.eval).push_back(r);
    }
    return s;
}

NetworkVariant parse_network_variant(std::string_view name) {
    const std::string n = trim(name);
    if (n == "AA") return NetworkVariant::AA;
    if (n == "APA") return NetworkVariant::APA;
    if (n == "AVA") return NetworkVariant::AVA;
    if (n == "ALL" || n == "All" || n == "all") return NetworkVariant::ALL;
    throw std::invalid_argument("unknown network variant '" + n + "'");
}

std::string to_string(NetworkVariant v) {
    switch (v) {
        case NetworkVariant::AA: return "AA";
        case NetworkVariant::APA: return "APA";
        case NetworkVariant::AVA: return "AVA";
        case NetworkVariant::ALL: return "ALL";
    }
    throw std::logic_error("bad variant");
}

TypedGraph build_network(const std::vector<BibRecord>& records, NetworkVariant variant) {
    if (records.empty()) throw std::invalid_argument("build_network: no records");
    TypedGraph g;
    for (const auto& r : records) {
        std::vector<NodeRef> authors;
        authors.reserve(r.authors.size());
        for (const auto& a : r.authors) authors.push_back(g.add_node(kAuthorType, a));

        switch (variant) {
            case NetworkVariant::AA:
                for (std::size_t i = 0; i < authors.size(); ++i)
                    for (std::size_t j = i + 1; j < authors.size(); ++j)
                        g.add_edge(authors[i], authors[j]);
                break;
            case NetworkVariant::APA: {
                const NodeRef paper = g.add_node(kPaperType, r.paper_id);
                for (const NodeRef& a : authors) g.add_edge(a, paper);
                break;
            }
            case NetworkVariant::AVA: {
                const NodeRef venue = g.add_node(kVenueType, r.venue);
                for (const NodeRef& a : authors) g.add_edge(a, venue);
                break;
            }
            case NetworkVariant::ALL: {
                const NodeRef paper = g.add_node(kPaperType, r.paper_id);
                const NodeRef venue = g.add_node(kVenueType, r.venue);
                g.add_edge(paper, venue);
                for (const NodeRef& a : authors) {
                    g.add_edge(a, paper);
                    g.add_edge(a, venue);
                }
                break;
            }
        }
    }
    g.freeze();
    return g;
}

std::map<std::string, std::string> derive_author_labels(const std::vector<BibRecord>& records) {
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    for (const auto& r : records)
        for (const auto& a : r.authors) ++counts[a][r.field];

    std::map<std::string, std::string> labels;
    for (const auto& [author, fields] : counts) {
        // std::map iterates fields in lexicographic order, so keeping a strict
        // '>' max implements the smallest-name tie-break.
        std::size_t best = 0;
        std::string best_field;
        for (const auto& [field, n] : fields) {
            if (n > best) {
                best = n;
                best_field = field;
            }
        }
        labels.emplace(author, best_field);
    }
    return labels;
}

void write_labels(std::ostream& out, const std::map<std::string, std::string>& labels) {
    for (const auto& [author, field] : labels) out << author << '\t' << field << '\n';
}

std::map<std::string, std::string> read_labels(std::istream& in) {
    std::map<std::string, std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::runtime_error("label line without tab: " + line);
        labels[trim(line.substr(0, tab))] = trim(line.substr(tab + 1));
    }
    return labels;
}

namespace {

std::string zero_padded(std::string_view prefix, int i, int width) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%0*d", std::string(prefix).c_str(), width, i);
    return std::string(buf);
}

void validate(const SynthConfig& c) {
    if (c.num_authors <= 0 || c.num_areas <= 0 || c.num_venues_per_area <= 0)
        throw std::invalid_argument("synth: counts must be positive");
    if (c.papers_per_author < 1.0)
        throw std::invalid_argument("synth: papers_per_author mean must be >= 1");
    if (c.coauthors_per_paper < 0.0)
        throw std::invalid_argument("synth: coauthors_per_paper mean must be >= 0");
    if (c.cross_area_probability < 0.0 || c.cross_area_probability > 1.0)
        throw std::invalid_argument("synth: cross_area_probability must be in [0,1]");
    if (c.venue_noise_probability < 0.0 || c.venue_noise_probability > 1.0)
        throw std::invalid_argument("synth: venue_noise_probability must be in [0,1]");
    if (c.interdisciplinary_probability < 0.0 || c.interdisciplinary_probability > 1.0)
        throw std::invalid_argument("synth: interdisciplinary_probability must be in [0,1]");
    if (c.eval_fraction < 0.0 || c.eval_fraction > 1.0)
        throw std::invalid_argument("synth: eval_fraction must be in [0,1]");
    if (c.num_authors < c.num_areas)
        throw std::invalid_argument("synth: need at least one author per area");
    if (c.coauthors_per_paper + 1.0 > static_cast<double>(c.num_authors))
        throw std::invalid_argument("synth: mean co-author count exceeds the author pool");
    if (c.cutoff_year <= 0) throw std::invalid_argument("synth: cutoff_year must be positive");
}

}  // namespace

std::vector<BibRecord> synth_generate(const SynthConfig& config) {
    validate(config);
    Rng rng(derive_seed(config.seed, 0x53594e5448ULL));  // corpus-level stream

    const int n = config.num_authors;
    std::vector<int> home_area(n);
    std::vector<std::vector<int>> area_members(config.num_areas);
    for (int a = 0; a < n; ++a) {
        home_area[a] = a % config.num_areas;  // balanced areas
        area_members[home_area[a]].push_back(a);
    }

    // collaboration lives in home_area; publication venues follow pub_area
    std::vector<int> pub_area = home_area;
    for (int a = 0; a < n; ++a) {
        if (rng.next_double() < config.interdisciplinary_probability)
            pub_area[a] = static_cast<int>(rng.next_below(
                static_cast<std::uint64_t>(config.num_areas)));
    }

    std::vector<std::string> author_names(n);
    for (int a = 0; a < n; ++a) author_names[a] = zero_padded("a", a, 5);

    std::vector<std::string> area_names(config.num_areas);
    for (int k = 0; k < config.num_areas; ++k) area_names[k] = zero_padded("area", k, 2);

    // venue pool per area
    std::vector<std::vector<std::string>> venues(config.num_areas);
    for (int k = 0; k < config.num_areas; ++k)
        for (int v = 0; v < config.num_venues_per_area; ++v)
            venues[k].push_back(area_names[k] + "_venue" + std::to_string(v));

    std::vector<BibRecord> records;
    int paper_seq = 0;
    for (int focal = 0; focal < n; ++focal) {
        // every author writes at least one paper so networks have no orphan authors
        const std::size_t papers = 1 + rng.poisson(config.papers_per_author - 1.0);
        for (std::size_t p = 0; p < papers; ++p) {
            BibRecord rec;
            rec.paper_id = zero_padded("p", paper_seq++, 6);
            const int area = home_area[focal];
            const int venue_area = rng.next_double() < config.venue_noise_probability
                                       ? static_cast<int>(rng.next_below(
                                             static_cast<std::uint64_t>(config.num_areas)))
                                       : pub_area[focal];
            rec.venue = venues[venue_area][rng.next_below(venues[venue_area].size())];
            rec.field = area_names[venue_area];  // the field attribute follows the venue

            const bool is_eval = rng.next_double() < config.eval_fraction;
            rec.year = is_eval ? config.cutoff_year + 1 + static_cast<int>(rng.next_below(3))
                               : config.cutoff_year - static_cast<int>(rng.next_below(10));

            rec.authors.push_back(author_names[focal]);
            std::unordered_set<int> picked{focal};
            std::size_t want = rng.poisson(config.coauthors_per_paper);
            const std::size_t same_pool = area_members[area].size() - 1;
            for (std::size_t c = 0; c < want; ++c) {
                const bool same_area = rng.next_double() >= config.cross_area_probability;
                if (same_area && same_pool == 0) continue;
                int candidate = -1;
                for (int tries = 0; tries < 64; ++tries) {
                    const int cand =
                        same_area
                            ? area_members[area][rng.next_below(area_members[area].size())]
                            : static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
                    if (!picked.count(cand)) {
                        candidate = cand;
                        break;
                    }
                }
                if (candidate < 0) continue;  // pool exhausted
                picked.insert(candidate);
                rec.authors.push_back(author_names[candidate]);
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

}  // namespace hinbench
