#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hinbench/typed_graph.hpp"

namespace hinbench {

/// One publication.
struct BibRecord {
    std::string paper_id;
    int year = 0;
    std::string venue;
    std::string field;
    std::vector<std::string> authors;
    friend bool operator==(const BibRecord&, const BibRecord&) = default;
};

struct ParseError {
    std::size_t line_no = 0;
    std::string message;
};

struct ParseResult {
    std::vector<BibRecord> records;
    std::vector<ParseError> errors;
};

/// Record TSV: paper_id<TAB>year<TAB>venue<TAB>field<TAB>author1|author2|...
/// '#'-prefixed lines and blank lines are skipped. Malformed lines are
/// reported per line and skipped, never a global abort.
ParseResult parse_records(std::istream& in);
void write_records(std::ostream& out, const std::vector<BibRecord>& records);

struct TemporalSplit {
    std::vector<BibRecord> train;  // year <= cutoff
    std::vector<BibRecord> eval;   // year >  cutoff
};
TemporalSplit temporal_split(const std::vector<BibRecord>& records, int cutoff_year);

enum class NetworkVariant { AA, APA, AVA, ALL };

NetworkVariant parse_network_variant(std::string_view name);
std::string to_string(NetworkVariant v);

inline constexpr const char* kAuthorType = "A";
inline constexpr const char* kPaperType = "P";
inline constexpr const char* kVenueType = "V";

/// Builds one of the four experimental networks. AA connects co-authors
/// directly; APA is the author-paper bipartite graph; AVA the author-venue
/// bipartite graph; ALL is the union of author-paper, author-venue and
/// paper-venue relations (authors are never adjacent to authors in ALL).
/// The returned graph is frozen.
TypedGraph build_network(const std::vector<BibRecord>& records, NetworkVariant variant);

/// Author -> field with the highest publication count; ties broken by
/// lexicographically smallest field name.
std::map<std::string, std::string> derive_author_labels(const std::vector<BibRecord>& records);

void write_labels(std::ostream& out, const std::map<std::string, std::string>& labels);
std::map<std::string, std::string> read_labels(std::istream& in);

/// Planted-partition stand-in for the real bibliographic corpus.
struct SynthConfig {
    int num_authors = 500;
    int num_areas = 5;
    int num_venues_per_area = 2;
    double papers_per_author = 4.0;   // mean of a count distribution (>= 1 per author)
    double coauthors_per_paper = 1.5; // mean number of co-authors beyond the focal author
    double cross_area_probability = 0.1;
    double venue_noise_probability = 0.0;  // chance a paper lands at a random area's venue
    // chance an author's publication venues follow an area other than the one
    // their collaborations live in (decouples the two signals, as in DBLP)
    double interdisciplinary_probability = 0.0;
    double eval_fraction = 0.3;       // fraction of papers dated after cutoff_year
    int cutoff_year = 2008;
    std::uint64_t seed = 1;
};

/// Each author gets a home area; papers are drawn by a focal author with
/// co-authors from the same area with probability 1 - cross_area_probability
/// (else uniform over all authors); the venue comes from the focal author's
/// area pool (or, with venue_noise_probability, any area's) and the record's
/// field is the venue's area. Deterministic given seed.
std::vector<BibRecord> synth_generate(const SynthConfig& config);

}  // namespace hinbench
