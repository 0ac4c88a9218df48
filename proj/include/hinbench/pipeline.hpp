#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hinbench/corpus.hpp"
#include "hinbench/evalkit.hpp"
#include "hinbench/sgns.hpp"
#include "hinbench/verse.hpp"
#include "hinbench/walks.hpp"

namespace hinbench {

enum class Method { Metapath2vec, Node2vec, Verse, Combine };

Method parse_method(std::string_view name);
std::string to_string(Method m);

enum class EvalTask { LinkPred, AreaClass };

EvalTask parse_task(std::string_view name);
std::string to_string(EvalTask t);

/// Declarative description of a full experiment run.
struct PipelineConfig {
    // input: either a records TSV path or a synthetic corpus
    std::string input_records;  // empty when synthetic
    bool use_synth = true;
    SynthConfig synth;

    int cutoff_year = 2008;
    std::vector<NetworkVariant> networks = {NetworkVariant::AA, NetworkVariant::APA,
                                            NetworkVariant::AVA, NetworkVariant::ALL};
    std::vector<Method> methods = {Method::Metapath2vec, Method::Node2vec, Method::Verse,
                                   Method::Combine};
    std::vector<EvalTask> tasks = {EvalTask::LinkPred, EvalTask::AreaClass};
    std::vector<ClassifierKind> classifiers = {ClassifierKind::GNB, ClassifierKind::RF,
                                               ClassifierKind::DT, ClassifierKind::LR};

    std::map<std::string, std::string> metapaths;  // network name -> schema text

    WalkConfig walks;
    SgnsConfig sgns;
    VerseConfig verse;
    ClassifierSpec classifier_params;  // shared hyper-parameters for all kinds

    double negative_ratio = 1.0;
    double train_fraction = 0.8;
    std::size_t repeats = 10;

    std::string out_dir = "run";
    std::uint64_t seed = 1;
    int threads = 1;
    bool deterministic = true;  // forces single-worker training modes

    /// Schema used by metapath2vec on `net` (configured or default:
    /// AA -> A-A, APA -> A-P-A, AVA -> A-V-A, ALL -> A-P-A).
    MetaPathSchema schema_for(NetworkVariant net) const;

    /// Throws std::invalid_argument on an inconsistent request.
    void validate() const;

    /// Key-value lines "key = value"; '#' lines are comments. Unknown keys are
    /// rejected. See README for the key list.
    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig from_string(const std::string& text);

    /// Canonical listing of every resolved key (also the config hash input).
    std::map<std::string, std::string> resolved() const;
};

struct StageRecord {
    std::string name;
    std::string command;  // replayable CLI equivalent
    std::string input_hash;
    std::vector<std::pair<std::string, std::string>> outputs;  // path, content hash
    bool cached = false;
    double seconds = 0.0;
};

struct RunManifest {
    std::map<std::string, std::string> config;
    std::vector<StageRecord> stages;
    std::vector<ReportRow> rows;
};

/// Raised when a stage fails; carries the stage name and a replayable command.
struct StageError : std::runtime_error {
    StageError(const std::string& stage, const std::string& command, const std::string& what)
        : std::runtime_error("stage '" + stage + "' failed: " + what +
                             (command.empty() ? "" : "\n  replay: " + command)),
          stage_name(stage),
          replay_command(command) {}
    std::string stage_name;
    std::string replay_command;
};

/// Executes the experiment with content-addressed stage caching; unchanged
/// stage inputs are skipped. Artifacts land under config.out_dir, the manifest
/// at <out_dir>/manifest.json and the grid at <out_dir>/report.csv.
RunManifest run_pipeline(const PipelineConfig& config);

/// Checks that every artifact recorded in <out_dir>/manifest.json still exists
/// and hash-matches; returns the mismatches (empty means verified).
std::vector<std::string> verify_manifest(const std::string& out_dir);

std::vector<ReportRow> load_report_csv(const std::string& path);

/// Aligned per-task tables: rows = classifiers, column groups = methods x
/// networks, best LR cell per method group starred. Missing cells stay blank
/// and are listed in a footnote.
std::string render_tables(const std::vector<ReportRow>& rows);

}  // namespace hinbench
