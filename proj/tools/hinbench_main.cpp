#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hinbench/pipeline.hpp"
#include "hinbench/rng.hpp"
#include "hinbench/text_util.hpp"

namespace fs = std::filesystem;
using namespace hinbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitStageFailure = 2;

std::string apply_out_root(const std::string& dir) {
    const char* root = std::getenv("HINBENCH_OUT");
    if (root && *root && fs::path(dir).is_relative()) return (fs::path(root) / dir).string();
    return dir;
}

TypedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    TypedGraph g = TypedGraph::load_edges(in);
    g.freeze();
    return g;
}

std::vector<BibRecord> load_records_file(const std::string& path, bool warn) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open records file: " + path);
    ParseResult parsed = parse_records(in);
    if (warn && !parsed.errors.empty()) {
        std::cerr << "skipped " << parsed.errors.size() << " malformed line(s):\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(parsed.errors.size(), 5); ++i)
            std::cerr << "  line " << parsed.errors[i].line_no << ": " << parsed.errors[i].message
                      << "\n";
    }
    return std::move(parsed.records);
}

void print_summary(const TypedGraph::Summary& s) {
    for (const auto& [label, count] : s.nodes_by_type)
        std::cout << "nodes[" << label << "] = " << count << "\n";
    std::cout << "edges = " << s.edges << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hinbench: heterogeneous bibliographic network embedding benchmark"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "generate a planted-area synthetic corpus");
    SynthConfig synth;
    std::string synth_out;
    synth_cmd->add_option("--authors", synth.num_authors);
    synth_cmd->add_option("--areas", synth.num_areas);
    synth_cmd->add_option("--venues-per-area", synth.num_venues_per_area);
    synth_cmd->add_option("--papers-per-author", synth.papers_per_author);
    synth_cmd->add_option("--coauthors-per-paper", synth.coauthors_per_paper);
    synth_cmd->add_option("--cross-area-prob", synth.cross_area_probability);
    synth_cmd->add_option("--eval-fraction", synth.eval_fraction);
    synth_cmd->add_option("--cutoff", synth.cutoff_year);
    synth_cmd->add_option("--seed", synth.seed);
    synth_cmd->add_option("--out", synth_out)->required();

    // ---- ingest ----
    auto* ingest_cmd = app.add_subcommand("ingest", "validate a records TSV and write it canonicalized");
    std::string ingest_in, ingest_out;
    ingest_cmd->add_option("--records", ingest_in)->required();
    ingest_cmd->add_option("--out", ingest_out)->required();

    // ---- build-net ----
    auto* net_cmd = app.add_subcommand("build-net", "build one experimental network from records");
    std::string net_records, net_variant = "ALL", net_out, net_slice = "train";
    int net_cutoff = 2008;
    net_cmd->add_option("--records", net_records)->required();
    net_cmd->add_option("--variant", net_variant, "AA|APA|AVA|ALL");
    net_cmd->add_option("--cutoff", net_cutoff);
    net_cmd->add_option("--slice", net_slice, "train|eval|all (relative to cutoff)");
    net_cmd->add_option("--out", net_out, "edge list output (optional; summary prints regardless)");

    // ---- walk ----
    auto* walk_cmd = app.add_subcommand("walk", "generate a walk corpus over a network");
    std::string walk_graph, walk_mode = "uniform", walk_schema, walk_out;
    WalkConfig walk_cfg;
    walk_cmd->add_option("--graph", walk_graph)->required();
    walk_cmd->add_option("--mode", walk_mode, "uniform|node2vec|metapath");
    walk_cmd->add_option("--metapath", walk_schema, "schema like A,P,A (implies --mode metapath)");
    walk_cmd->add_option("--walks-per-node", walk_cfg.walks_per_node);
    walk_cmd->add_option("--walk-length", walk_cfg.walk_length);
    walk_cmd->add_option("--p", walk_cfg.p);
    walk_cmd->add_option("--q", walk_cfg.q);
    walk_cmd->add_option("--seed", walk_cfg.seed);
    walk_cmd->add_option("--threads", walk_cfg.threads);
    walk_cmd->add_option("--out", walk_out)->required();

    // ---- embed ----
    auto* embed_cmd = app.add_subcommand("embed", "train an embedding (sgns, verse or combine)");
    std::string embed_mode = "sgns", embed_graph, embed_walks, embed_inputs, embed_out;
    SgnsConfig sgns_cfg;
    VerseConfig verse_cfg;
    bool embed_throughput = false;
    int embed_threads = 1;
    std::uint64_t embed_seed = 1;
    int embed_dim = 100;
    embed_cmd->add_option("--mode", embed_mode, "sgns|verse|combine");
    embed_cmd->add_option("--graph", embed_graph);
    embed_cmd->add_option("--walks", embed_walks, "walk corpus (sgns mode)");
    embed_cmd->add_option("--inputs", embed_inputs, "comma-separated matrices (combine mode)");
    embed_cmd->add_option("--dim", embed_dim);
    embed_cmd->add_option("--window", sgns_cfg.window);
    embed_cmd->add_option("--negatives", sgns_cfg.negatives);
    embed_cmd->add_option("--epochs", sgns_cfg.epochs);
    embed_cmd->add_option("--lr", sgns_cfg.initial_lr);
    embed_cmd->add_option("--subsample", sgns_cfg.subsample);
    embed_cmd->add_option("--alpha", verse_cfg.alpha);
    embed_cmd->add_option("--verse-negatives", verse_cfg.negatives);
    embed_cmd->add_option("--steps", verse_cfg.steps);
    embed_cmd->add_option("--verse-lr", verse_cfg.lr);
    embed_cmd->add_option("--seed", embed_seed);
    embed_cmd->add_option("--threads", embed_threads);
    embed_cmd->add_flag("--throughput", embed_throughput,
                        "allow racy multi-worker updates (non-deterministic)");
    embed_cmd->add_option("--out", embed_out)->required();

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "evaluate one embedding on one task");
    std::string eval_records, eval_emb, eval_task = "linkpred", eval_classifiers = "LR",
                eval_out, eval_labels;
    int eval_cutoff = 2008;
    double eval_ratio = 1.0, eval_train_fraction = 0.8;
    std::size_t eval_repeats = 10;
    std::uint64_t eval_seed = 1;
    eval_cmd->add_option("--records", eval_records)->required();
    eval_cmd->add_option("--embeddings", eval_emb)->required();
    eval_cmd->add_option("--task", eval_task, "linkpred|areaclass");
    eval_cmd->add_option("--cutoff", eval_cutoff);
    eval_cmd->add_option("--labels", eval_labels, "label TSV (default: derived from eval slice)");
    eval_cmd->add_option("--classifiers", eval_classifiers, "comma list of NB,RF,DT,LR");
    eval_cmd->add_option("--ratio", eval_ratio, "negatives per positive");
    eval_cmd->add_option("--train-fraction", eval_train_fraction);
    eval_cmd->add_option("--repeats", eval_repeats);
    eval_cmd->add_option("--seed", eval_seed);
    eval_cmd->add_option("--out", eval_out, "append rows to this CSV (default: stdout)");

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "render tables from a run directory");
    std::string report_dir;
    bool report_verify = false;
    report_cmd->add_option("--run-dir", report_dir)->required();
    report_cmd->add_flag("--verify", report_verify, "check manifest artifact hashes");

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "execute the full pipeline from a config file");
    std::string run_config, run_out;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false, run_det = false, run_no_det = false;
    int run_threads = 0;
    run_cmd->add_option("--config", run_config)->required();
    run_cmd->add_option("--out", run_out, "override the config's output directory");
    run_cmd->add_option("--seed", run_seed)->each([&](const std::string&) { run_seed_set = true; });
    run_cmd->add_option("--threads", run_threads);
    run_cmd->add_flag("--deterministic", run_det);
    run_cmd->add_flag("--no-deterministic", run_no_det);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*synth_cmd) {
            const auto records = synth_generate(synth);
            std::ofstream out(synth_out);
            if (!out) throw std::invalid_argument("cannot write " + synth_out);
            write_records(out, records);
            std::cout << "wrote " << records.size() << " records to " << synth_out << "\n";
        } else if (*ingest_cmd) {
            const auto records = load_records_file(ingest_in, true);
            if (records.empty()) throw std::invalid_argument("no usable records in " + ingest_in);
            std::ofstream out(ingest_out);
            if (!out) throw std::invalid_argument("cannot write " + ingest_out);
            write_records(out, records);
            std::cout << "wrote " << records.size() << " records to " << ingest_out << "\n";
        } else if (*net_cmd) {
            const auto records = load_records_file(net_records, true);
            const TemporalSplit sp = temporal_split(records, net_cutoff);
            const std::vector<BibRecord>& slice =
                net_slice == "train" ? sp.train : net_slice == "eval" ? sp.eval : records;
            const TypedGraph g = build_network(slice, parse_network_variant(net_variant));
            print_summary(g.summarize());
            if (!net_out.empty()) {
                std::ofstream out(net_out);
                if (!out) throw std::invalid_argument("cannot write " + net_out);
                g.dump_edges(out);
            }
        } else if (*walk_cmd) {
            const TypedGraph g = load_graph_file(walk_graph);
            if (!walk_schema.empty()) walk_mode = "metapath";
            WalkCorpus corpus;
            if (walk_mode == "uniform") {
                corpus = uniform_walks(g, walk_cfg);
            } else if (walk_mode == "node2vec") {
                corpus = node2vec_walks(g, walk_cfg);
            } else if (walk_mode == "metapath") {
                if (walk_schema.empty())
                    throw std::invalid_argument("metapath mode needs --metapath");
                corpus = metapath_walks(g, MetaPathSchema::parse(walk_schema), walk_cfg);
            } else {
                throw std::invalid_argument("unknown walk mode '" + walk_mode + "'");
            }
            std::ofstream out(walk_out);
            if (!out) throw std::invalid_argument("cannot write " + walk_out);
            write_walks(out, corpus);
            std::cout << "wrote " << corpus.walks.size() << " walks to " << walk_out << "\n";
        } else if (*embed_cmd) {
            EmbeddingMatrix result;
            if (embed_mode == "sgns") {
                if (embed_graph.empty() || embed_walks.empty())
                    throw std::invalid_argument("sgns mode needs --graph and --walks");
                const TypedGraph g = load_graph_file(embed_graph);
                std::ifstream win(embed_walks);
                if (!win) throw std::invalid_argument("cannot open " + embed_walks);
                const WalkCorpus corpus = read_walks(win, g);
                sgns_cfg.dim = embed_dim;
                sgns_cfg.seed = embed_seed;
                sgns_cfg.threads = embed_throughput ? embed_threads : 1;
                result = train_sgns(corpus, sgns_cfg).embeddings;
            } else if (embed_mode == "verse") {
                if (embed_graph.empty()) throw std::invalid_argument("verse mode needs --graph");
                const TypedGraph g = load_graph_file(embed_graph);
                verse_cfg.dim = embed_dim;
                verse_cfg.seed = embed_seed;
                verse_cfg.threads = embed_throughput ? embed_threads : 1;
                result = train_verse(g, verse_cfg);
            } else if (embed_mode == "combine") {
                if (embed_inputs.empty()) throw std::invalid_argument("combine mode needs --inputs");
                std::vector<EmbeddingMatrix> loaded;
                for (const auto& p : split(embed_inputs, ',')) {
                    std::ifstream in(trim(p));
                    if (!in) throw std::invalid_argument("cannot open " + p);
                    loaded.push_back(EmbeddingMatrix::load(in));
                }
                std::vector<const EmbeddingMatrix*> parts;
                for (const auto& m : loaded) parts.push_back(&m);
                const auto keys = common_keys(parts);
                std::vector<EmbeddingMatrix> restricted;
                for (const auto& m : loaded) restricted.push_back(restrict_embeddings(m, keys));
                parts.clear();
                for (const auto& m : restricted) parts.push_back(&m);
                result = concat_embeddings(parts);
            } else {
                throw std::invalid_argument("unknown embed mode '" + embed_mode + "'");
            }
            std::ofstream out(embed_out);
            if (!out) throw std::invalid_argument("cannot write " + embed_out);
            result.save(out);
            std::cout << "wrote " << result.size() << " x " << result.dim() << " embedding to "
                      << embed_out << "\n";
        } else if (*eval_cmd) {
            const auto records = load_records_file(eval_records, true);
            const TemporalSplit sp = temporal_split(records, eval_cutoff);
            std::ifstream ein(eval_emb);
            if (!ein) throw std::invalid_argument("cannot open " + eval_emb);
            const EmbeddingMatrix emb = EmbeddingMatrix::load(ein);

            BuiltDataset built;
            if (parse_task(eval_task) == EvalTask::LinkPred) {
                built = build_linkpred_dataset(sp.eval, emb, eval_ratio,
                                               derive_seed(eval_seed, fnv1a("dataset")));
            } else {
                std::map<std::string, std::string> labels;
                if (eval_labels.empty()) {
                    labels = derive_author_labels(sp.eval);
                } else {
                    std::ifstream lin(eval_labels);
                    if (!lin) throw std::invalid_argument("cannot open " + eval_labels);
                    labels = read_labels(lin);
                }
                built = build_area_dataset(labels, emb);
            }

            std::vector<ReportRow> rows;
            for (const auto& cname : split(eval_classifiers, ',')) {
                ClassifierSpec spec;
                spec.kind = parse_classifier_kind(cname);
                ReportRow row;
                row.task = eval_task;
                row.network = "-";
                row.method = "-";
                row.classifier = to_string(spec.kind);
                row.eval = repeated_eval(built.data, spec, eval_train_fraction, eval_repeats,
                                         derive_seed(eval_seed, fnv1a("eval/" + row.classifier)));
                row.coverage = built.coverage.fraction_kept();
                rows.push_back(std::move(row));
            }
            const std::string csv = report_csv(rows);
            if (eval_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(eval_out);
                if (!out) throw std::invalid_argument("cannot write " + eval_out);
                out << csv;
            }
        } else if (*report_cmd) {
            const std::string dir = apply_out_root(report_dir);
            if (report_verify) {
                const auto problems = verify_manifest(dir);
                if (!problems.empty()) {
                    for (const auto& p : problems) std::cerr << "verify: " << p << "\n";
                    return kExitStageFailure;
                }
                std::cout << "manifest verified\n";
            }
            const auto rows = load_report_csv((fs::path(dir) / "report.csv").string());
            std::cout << render_tables(rows);
        } else if (*run_cmd) {
            PipelineConfig config = PipelineConfig::from_file(run_config);
            if (!run_out.empty()) config.out_dir = run_out;
            config.out_dir = apply_out_root(config.out_dir);
            if (run_seed_set) config.seed = run_seed;
            if (run_threads > 0) config.threads = run_threads;
            if (run_det) config.deterministic = true;
            if (run_no_det) config.deterministic = false;

            const RunManifest manifest = run_pipeline(config);
            for (const auto& s : manifest.stages)
                std::cout << (s.cached ? "[cached] " : "[run]    ") << s.name << "\n";
            std::cout << "\n" << render_tables(manifest.rows);
            std::cout << "artifacts: " << config.out_dir << "\n";
        }
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStageFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStageFailure;
    }
    return kExitOk;
}
