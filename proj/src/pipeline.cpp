#include "hinbench/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hinbench/rng.hpp"
#include "hinbench/text_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hinbench {

Method parse_method(std::string_view name) {
    const std::string n = trim(name);
    if (n == "metapath2vec") return Method::Metapath2vec;
    if (n == "node2vec") return Method::Node2vec;
    if (n == "verse") return Method::Verse;
    if (n == "combine") return Method::Combine;
    throw std::invalid_argument("unknown method '" + n + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Metapath2vec: return "metapath2vec";
        case Method::Node2vec: return "node2vec";
        case Method::Verse: return "verse";
        case Method::Combine: return "combine";
    }
    throw std::logic_error("bad method");
}

EvalTask parse_task(std::string_view name) {
    const std::string n = trim(name);
    if (n == "linkpred") return EvalTask::LinkPred;
    if (n == "areaclass") return EvalTask::AreaClass;
    throw std::invalid_argument("unknown task '" + n + "'");
}

std::string to_string(EvalTask t) {
    switch (t) {
        case EvalTask::LinkPred: return "linkpred";
        case EvalTask::AreaClass: return "areaclass";
    }
    throw std::logic_error("bad task");
}

MetaPathSchema PipelineConfig::schema_for(NetworkVariant net) const {
    const std::string name = to_string(net);
    auto it = metapaths.find(name);
    if (it != metapaths.end()) return MetaPathSchema::parse(it->second);
    switch (net) {
        case NetworkVariant::AA: return MetaPathSchema::parse("A,A");
        case NetworkVariant::APA: return MetaPathSchema::parse("A,P,A");
        case NetworkVariant::AVA: return MetaPathSchema::parse("A,V,A");
        case NetworkVariant::ALL: return MetaPathSchema::parse("A,P,A");
    }
    throw std::logic_error("bad variant");
}

void PipelineConfig::validate() const {
    if (networks.empty()) throw std::invalid_argument("config: no networks requested");
    if (methods.empty()) throw std::invalid_argument("config: no methods requested");
    if (tasks.empty()) throw std::invalid_argument("config: no tasks requested");
    if (classifiers.empty()) throw std::invalid_argument("config: no classifiers requested");
    if (!use_synth && input_records.empty())
        throw std::invalid_argument("config: either synth mode or an input records path is required");

    auto has = [&](Method m) {
        return std::find(methods.begin(), methods.end(), m) != methods.end();
    };
    if (has(Method::Combine) &&
        !(has(Method::Metapath2vec) && has(Method::Node2vec) && has(Method::Verse)))
        throw std::invalid_argument(
            "config: combine requires metapath2vec, node2vec and verse to be enabled");

    for (NetworkVariant net : networks) {
        const MetaPathSchema schema = schema_for(net);
        if (!schema.symmetric())
            throw std::invalid_argument("config: meta-path for " + to_string(net) +
                                        " must be symmetric");
    }
    if (!(negative_ratio >= 0.0)) throw std::invalid_argument("config: negative_ratio < 0");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("config: train_fraction must be in (0,1)");
    if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

namespace {

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse&& parse) {
    std::vector<T> out;
    for (const auto& item : split(text, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(parse(t));
    }
    return out;
}

int to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + v + "'");
    }
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs a number, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: key '" + key + "' needs a boolean, got '" + v + "'");
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return static_cast<std::uint64_t>(x);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + v + "'");
    }
}

}  // namespace

PipelineConfig PipelineConfig::from_string(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "input") {
            cfg.input_records = value;
            cfg.use_synth = false;
        } else if (key == "synth") {
            cfg.use_synth = to_bool(value, key);
        } else if (key == "synth.authors") {
            cfg.synth.num_authors = to_int(value, key);
        } else if (key == "synth.areas") {
            cfg.synth.num_areas = to_int(value, key);
        } else if (key == "synth.venues_per_area") {
            cfg.synth.num_venues_per_area = to_int(value, key);
        } else if (key == "synth.papers_per_author") {
            cfg.synth.papers_per_author = to_double(value, key);
        } else if (key == "synth.coauthors_per_paper") {
            cfg.synth.coauthors_per_paper = to_double(value, key);
        } else if (key == "synth.cross_area_prob") {
            cfg.synth.cross_area_probability = to_double(value, key);
        } else if (key == "synth.venue_noise_prob") {
            cfg.synth.venue_noise_probability = to_double(value, key);
        } else if (key == "synth.interdisciplinary_prob") {
            cfg.synth.interdisciplinary_probability = to_double(value, key);
        } else if (key == "synth.eval_fraction") {
            cfg.synth.eval_fraction = to_double(value, key);
        } else if (key == "cutoff_year") {
            cfg.cutoff_year = to_int(value, key);
        } else if (key == "networks") {
            cfg.networks = parse_list<NetworkVariant>(
                value, [](const std::string& s) { return parse_network_variant(s); });
        } else if (key == "methods") {
            cfg.methods =
                parse_list<Method>(value, [](const std::string& s) { return parse_method(s); });
        } else if (key == "tasks") {
            cfg.tasks =
                parse_list<EvalTask>(value, [](const std::string& s) { return parse_task(s); });
        } else if (key == "classifiers") {
            cfg.classifiers = parse_list<ClassifierKind>(
                value, [](const std::string& s) { return parse_classifier_kind(s); });
        } else if (key.rfind("metapath.", 0) == 0) {
            const std::string net = key.substr(9);
            parse_network_variant(net);  // validates the name
            cfg.metapaths[net] = value;
        } else if (key == "walks.per_node") {
            cfg.walks.walks_per_node = to_int(value, key);
        } else if (key == "walks.length") {
            cfg.walks.walk_length = to_int(value, key);
        } else if (key == "walks.p") {
            cfg.walks.p = to_double(value, key);
        } else if (key == "walks.q") {
            cfg.walks.q = to_double(value, key);
        } else if (key == "sgns.dim") {
            cfg.sgns.dim = to_int(value, key);
        } else if (key == "sgns.window") {
            cfg.sgns.window = to_int(value, key);
        } else if (key == "sgns.negatives") {
            cfg.sgns.negatives = to_int(value, key);
        } else if (key == "sgns.epochs") {
            cfg.sgns.epochs = to_int(value, key);
        } else if (key == "sgns.lr") {
            cfg.sgns.initial_lr = to_double(value, key);
        } else if (key == "sgns.subsample") {
            cfg.sgns.subsample = to_double(value, key);
        } else if (key == "verse.dim") {
            cfg.verse.dim = to_int(value, key);
        } else if (key == "verse.alpha") {
            cfg.verse.alpha = to_double(value, key);
        } else if (key == "verse.negatives") {
            cfg.verse.negatives = to_int(value, key);
        } else if (key == "verse.steps") {
            cfg.verse.steps = to_u64(value, key);
        } else if (key == "verse.steps_per_node") {
            cfg.verse.steps_per_node = to_u64(value, key);
        } else if (key == "verse.lr") {
            cfg.verse.lr = to_double(value, key);
        } else if (key == "lr.l2") {
            cfg.classifier_params.lr.l2 = to_double(value, key);
        } else if (key == "lr.max_iters") {
            cfg.classifier_params.lr.max_iters = to_int(value, key);
        } else if (key == "gnb.var_floor") {
            cfg.classifier_params.gnb.var_floor = to_double(value, key);
        } else if (key == "dt.max_depth") {
            cfg.classifier_params.dt.max_depth = to_int(value, key);
        } else if (key == "dt.min_leaf") {
            cfg.classifier_params.dt.min_samples_leaf = to_int(value, key);
        } else if (key == "rf.trees") {
            cfg.classifier_params.rf.trees = to_int(value, key);
        } else if (key == "rf.feature_subset") {
            cfg.classifier_params.rf.feature_subset = to_int(value, key);
        } else if (key == "eval.negative_ratio") {
            cfg.negative_ratio = to_double(value, key);
        } else if (key == "eval.train_fraction") {
            cfg.train_fraction = to_double(value, key);
        } else if (key == "eval.repeats") {
            cfg.repeats = static_cast<std::size_t>(to_int(value, key));
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "seed") {
            cfg.seed = to_u64(value, key);
        } else if (key == "threads") {
            cfg.threads = to_int(value, key);
        } else if (key == "deterministic") {
            cfg.deterministic = to_bool(value, key);
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

std::map<std::string, std::string> PipelineConfig::resolved() const {
    std::map<std::string, std::string> m;
    auto join = [](const auto& items, auto&& fmt) {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += ',';
            s += fmt(items[i]);
        }
        return s;
    };
    m["input"] = input_records;
    m["synth"] = use_synth ? "true" : "false";
    m["synth.authors"] = std::to_string(synth.num_authors);
    m["synth.areas"] = std::to_string(synth.num_areas);
    m["synth.venues_per_area"] = std::to_string(synth.num_venues_per_area);
    m["synth.papers_per_author"] = format_double(synth.papers_per_author);
    m["synth.coauthors_per_paper"] = format_double(synth.coauthors_per_paper);
    m["synth.cross_area_prob"] = format_double(synth.cross_area_probability);
    m["synth.venue_noise_prob"] = format_double(synth.venue_noise_probability);
    m["synth.interdisciplinary_prob"] = format_double(synth.interdisciplinary_probability);
    m["synth.eval_fraction"] = format_double(synth.eval_fraction);
    m["cutoff_year"] = std::to_string(cutoff_year);
    m["networks"] = join(networks, [](NetworkVariant v) { return to_string(v); });
    m["methods"] = join(methods, [](Method v) { return to_string(v); });
    m["tasks"] = join(tasks, [](EvalTask v) { return to_string(v); });
    m["classifiers"] = join(classifiers, [](ClassifierKind v) { return to_string(v); });
    for (NetworkVariant net : networks)
        m["metapath." + to_string(net)] = schema_for(net).to_string();
    m["walks.per_node"] = std::to_string(walks.walks_per_node);
    m["walks.length"] = std::to_string(walks.walk_length);
    m["walks.p"] = format_double(walks.p);
    m["walks.q"] = format_double(walks.q);
    m["sgns.dim"] = std::to_string(sgns.dim);
    m["sgns.window"] = std::to_string(sgns.window);
    m["sgns.negatives"] = std::to_string(sgns.negatives);
    m["sgns.epochs"] = std::to_string(sgns.epochs);
    m["sgns.lr"] = format_double(sgns.initial_lr);
    m["sgns.subsample"] = format_double(sgns.subsample);
    m["verse.dim"] = std::to_string(verse.dim);
    m["verse.alpha"] = format_double(verse.alpha);
    m["verse.negatives"] = std::to_string(verse.negatives);
    m["verse.steps"] = std::to_string(verse.steps);
    m["verse.steps_per_node"] = std::to_string(verse.steps_per_node);
    m["verse.lr"] = format_double(verse.lr);
    m["lr.l2"] = format_double(classifier_params.lr.l2);
    m["lr.max_iters"] = std::to_string(classifier_params.lr.max_iters);
    m["gnb.var_floor"] = format_double(classifier_params.gnb.var_floor);
    m["dt.max_depth"] = std::to_string(classifier_params.dt.max_depth);
    m["dt.min_leaf"] = std::to_string(classifier_params.dt.min_samples_leaf);
    m["rf.trees"] = std::to_string(classifier_params.rf.trees);
    m["rf.feature_subset"] = std::to_string(classifier_params.rf.feature_subset);
    m["eval.negative_ratio"] = format_double(negative_ratio);
    m["eval.train_fraction"] = format_double(train_fraction);
    m["eval.repeats"] = std::to_string(repeats);
    m["out"] = out_dir;
    m["seed"] = std::to_string(seed);
    m["threads"] = std::to_string(threads);
    m["deterministic"] = deterministic ? "true" : "false";
    return m;
}

// ---------------------------------------------------------------------------
// stage machinery

namespace {

struct StageContext {
    fs::path out_dir;
    json previous;  // stages from an earlier manifest, keyed by name
    std::vector<StageRecord> records;

    const json* find_previous(const std::string& name) const {
        if (!previous.is_object() || !previous.contains("stages")) return nullptr;
        for (const auto& s : previous["stages"]) {
            if (s.value("name", "") == name) return &s;
        }
        return nullptr;
    }

    // Runs `body` unless the recorded input hash matches and all outputs are
    // intact. `body` must (re)create every path in `outputs`.
    template <class Body>
    void stage(const std::string& name, const std::string& command,
               const std::string& input_material, const std::vector<fs::path>& outputs,
               Body&& body) {
        StageRecord rec;
        rec.name = name;
        rec.command = command;
        rec.input_hash = hex64(fnv1a(input_material));

        if (const json* prev = find_previous(name);
            prev && prev->value("input_hash", "") == rec.input_hash) {
            bool intact = true;
            for (const auto& out : (*prev)["outputs"]) {
                const std::string path = out.value("path", "");
                const std::string want = out.value("hash", "");
                if (!fs::exists(path) || hex64(fnv1a_file(path)) != want) {
                    intact = false;
                    break;
                }
            }
            if (intact && (*prev)["outputs"].size() == outputs.size()) {
                rec.cached = true;
                for (const auto& out : (*prev)["outputs"])
                    rec.outputs.emplace_back(out.value("path", ""), out.value("hash", ""));
                records.push_back(std::move(rec));
                return;
            }
        }

        const auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const std::exception& e) {
            throw StageError(name, command, e.what());
        }
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& p : outputs) {
            if (!fs::exists(p))
                throw StageError(name, command, "stage did not produce " + p.string());
            rec.outputs.emplace_back(p.string(), hex64(fnv1a_file(p.string())));
        }
        records.push_back(std::move(rec));
    }

    std::string output_hash(const std::string& stage_name, const fs::path& path) const {
        for (const auto& rec : records) {
            if (rec.name != stage_name) continue;
            for (const auto& [p, h] : rec.outputs)
                if (p == path.string()) return h;
        }
        throw std::logic_error("no recorded output " + path.string() + " for stage " + stage_name);
    }
};

std::string join_material(std::initializer_list<std::string> parts) {
    std::string s;
    for (const auto& p : parts) {
        s += p;
        s += '\x1e';
    }
    return s;
}

std::uint64_t stage_seed(std::uint64_t seed, const std::string& tag) {
    return derive_seed(seed, fnv1a(tag));
}

std::string config_material(const std::map<std::string, std::string>& resolved,
                            std::initializer_list<const char*> keys) {
    std::string s;
    for (const char* k : keys) {
        s += k;
        s += '=';
        s += resolved.at(k);
        s += '\x1e';
    }
    return s;
}

TypedGraph load_graph(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    TypedGraph g = TypedGraph::load_edges(in);
    g.freeze();
    return g;
}

EmbeddingMatrix load_embedding(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return EmbeddingMatrix::load(in);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& config) {
    config.validate();
    const auto resolved = config.resolved();

    const fs::path out(config.out_dir);
    fs::create_directories(out / "networks");
    fs::create_directories(out / "walks");
    fs::create_directories(out / "embeddings");

    StageContext ctx;
    ctx.out_dir = out;
    if (fs::exists(out / "manifest.json")) {
        try {
            std::ifstream in(out / "manifest.json");
            in >> ctx.previous;
        } catch (const std::exception&) {
            ctx.previous = json::object();  // stale manifest: rebuild everything
        }
    }

    // resolved config snapshot, usable for replay
    {
        std::string cfg_text;
        for (const auto& [k, v] : resolved) cfg_text += k + " = " + v + "\n";
        write_file(out / "config.resolved.cfg", cfg_text);
    }
    const std::string cfg_path = (out / "config.resolved.cfg").string();

    // ---- records ----
    const fs::path records_path = out / "records.tsv";
    {
        std::string material;
        std::string command;
        if (config.use_synth) {
            material = join_material(
                {"synth", config_material(resolved, {"synth.authors", "synth.areas",
                                                     "synth.venues_per_area",
                                                     "synth.papers_per_author",
                                                     "synth.coauthors_per_paper",
                                                     "synth.cross_area_prob", "synth.venue_noise_prob",
                                                     "synth.interdisciplinary_prob",
                                                     "synth.eval_fraction",
                                                     "cutoff_year", "seed"})});
            command = "hinbench synth --authors " + resolved.at("synth.authors") + " --areas " +
                      resolved.at("synth.areas") + " --seed " + resolved.at("seed") + " --out " +
                      records_path.string();
        } else {
            command = "hinbench ingest --records " + config.input_records + " --out " +
                      records_path.string();
            if (!fs::exists(config.input_records))
                throw StageError("records", command,
                                 "input records file not found: " + config.input_records);
            material = join_material({"ingest", hex64(fnv1a_file(config.input_records))});
        }
        ctx.stage("records", command, material, {records_path}, [&] {
            if (config.use_synth) {
                SynthConfig sc = config.synth;
                sc.cutoff_year = config.cutoff_year;
                sc.seed = stage_seed(config.seed, "records");
                std::ofstream f(records_path);
                write_records(f, synth_generate(sc));
            } else {
                std::ifstream in(config.input_records);
                if (!in) throw std::runtime_error("cannot open " + config.input_records);
                ParseResult parsed = parse_records(in);
                if (!parsed.errors.empty())
                    std::cerr << "records: skipped " << parsed.errors.size()
                              << " malformed line(s); first at line " << parsed.errors[0].line_no
                              << ": " << parsed.errors[0].message << "\n";
                if (parsed.records.empty()) throw std::runtime_error("no usable records");
                std::ofstream f(records_path);
                write_records(f, parsed.records);
            }
        });
    }
    const std::string records_hash = ctx.output_hash("records", records_path);

    // later stages reload from the canonical artifact so they see exactly what
    // a replayed sub-command would
    std::vector<BibRecord> records;
    {
        std::ifstream in(records_path);
        records = parse_records(in).records;
    }
    const TemporalSplit split = temporal_split(records, config.cutoff_year);
    if (split.train.empty())
        throw StageError("records", "", "no records at or before the cutoff year");

    // ---- labels (eval-slice ground truth) ----
    const fs::path labels_path = out / "labels.tsv";
    ctx.stage("labels",
              "hinbench run --config " + cfg_path,
              join_material({"labels", records_hash, resolved.at("cutoff_year")}), {labels_path},
              [&] {
                  std::ofstream f(labels_path);
                  write_labels(f, derive_author_labels(split.eval));
              });

    // ---- networks ----
    std::map<std::string, fs::path> net_paths;
    for (NetworkVariant net : config.networks) {
        const std::string name = to_string(net);
        const fs::path path = out / "networks" / (name + ".edges");
        net_paths[name] = path;
        ctx.stage("build-net:" + name,
                  "hinbench build-net --records " + records_path.string() + " --cutoff " +
                      resolved.at("cutoff_year") + " --variant " + name + " --out " + path.string(),
                  join_material({"build-net", name, records_hash, resolved.at("cutoff_year")}),
                  {path}, [&] {
                      const TypedGraph g = build_network(split.train, net);
                      std::ofstream f(path);
                      g.dump_edges(f);
                  });
    }

    // ---- walks (metapath2vec and node2vec only) ----
    auto wants = [&](Method m) {
        return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
    };
    std::map<std::string, fs::path> walk_paths;  // "NET/method"
    for (NetworkVariant net : config.networks) {
        const std::string name = to_string(net);
        for (Method m : {Method::Metapath2vec, Method::Node2vec}) {
            if (!wants(m)) continue;
            const std::string mname = to_string(m);
            const fs::path path = out / "walks" / (name + "." + mname + ".walks");
            walk_paths[name + "/" + mname] = path;

            const std::string schema_text =
                m == Method::Metapath2vec ? config.schema_for(net).to_string() : "";
            const std::string walk_material = join_material(
                {"walk", name, mname, ctx.output_hash("build-net:" + name, net_paths[name]),
                 schema_text,
                 config_material(resolved, {"walks.per_node", "walks.length", "walks.p", "walks.q",
                                            "seed", "threads"})});
            std::string command = "hinbench walk --graph " + net_paths[name].string() +
                                  " --walks-per-node " + resolved.at("walks.per_node") +
                                  " --walk-length " + resolved.at("walks.length") + " --seed " +
                                  std::to_string(stage_seed(config.seed, "walk/" + name + "/" + mname)) +
                                  " --out " + path.string();
            if (m == Method::Metapath2vec)
                command += " --metapath " + schema_text;
            else
                command += " --p " + resolved.at("walks.p") + " --q " + resolved.at("walks.q");

            ctx.stage("walk:" + name + ":" + mname, command, walk_material, {path}, [&] {
                const TypedGraph g = load_graph(net_paths[name]);
                WalkConfig wc = config.walks;
                wc.threads = config.threads;
                wc.seed = stage_seed(config.seed, "walk/" + name + "/" + mname);
                const WalkCorpus corpus =
                    m == Method::Metapath2vec
                        ? metapath_walks(g, config.schema_for(net), wc)
                        : node2vec_walks(g, wc);
                std::ofstream f(path);
                write_walks(f, corpus);
            });
        }
    }

    // ---- embeddings ----
    std::map<std::string, fs::path> emb_paths;  // "NET/method"
    for (NetworkVariant net : config.networks) {
        const std::string name = to_string(net);
        for (Method m : config.methods) {
            if (m == Method::Combine) continue;
            const std::string mname = to_string(m);
            const fs::path path = out / "embeddings" / (name + "." + mname + ".emb");
            emb_paths[name + "/" + mname] = path;

            if (m == Method::Verse) {
                const std::string material = join_material(
                    {"embed-verse", name,
                     ctx.output_hash("build-net:" + name, net_paths[name]),
                     config_material(resolved, {"verse.dim", "verse.alpha", "verse.negatives",
                                                "verse.steps", "verse.steps_per_node",
                                                "verse.lr", "seed",
                                                "deterministic", "threads"})});
                ctx.stage("embed:" + name + ":verse",
                          "hinbench embed --mode verse --graph " + net_paths[name].string() +
                              " --dim " + resolved.at("verse.dim") + " --seed " +
                              std::to_string(stage_seed(config.seed, "embed/" + name + "/verse")) +
                              " --out " + path.string(),
                          material, {path}, [&] {
                              const TypedGraph g = load_graph(net_paths[name]);
                              VerseConfig vc = config.verse;
                              vc.seed = stage_seed(config.seed, "embed/" + name + "/verse");
                              vc.threads = config.deterministic ? 1 : config.threads;
                              const EmbeddingMatrix emb = train_verse(g, vc);
                              std::ofstream f(path);
                              emb.save(f);
                          });
            } else {
                const fs::path& wpath = walk_paths.at(name + "/" + mname);
                const std::string material = join_material(
                    {"embed-sgns", name, mname,
                     ctx.output_hash("walk:" + name + ":" + mname, wpath),
                     config_material(resolved, {"sgns.dim", "sgns.window", "sgns.negatives",
                                                "sgns.epochs", "sgns.lr", "sgns.subsample", "seed",
                                                "deterministic", "threads"})});
                ctx.stage("embed:" + name + ":" + mname,
                          "hinbench embed --mode sgns --graph " + net_paths[name].string() +
                              " --walks " + wpath.string() + " --dim " + resolved.at("sgns.dim") +
                              " --seed " +
                              std::to_string(stage_seed(config.seed, "embed/" + name + "/" + mname)) +
                              " --out " + path.string(),
                          material, {path}, [&] {
                              const TypedGraph g = load_graph(net_paths[name]);
                              std::ifstream win(wpath);
                              const WalkCorpus corpus = read_walks(win, g);
                              SgnsConfig sc = config.sgns;
                              sc.seed = stage_seed(config.seed, "embed/" + name + "/" + mname);
                              sc.threads = config.deterministic ? 1 : config.threads;
                              const SgnsResult trained = train_sgns(corpus, sc);
                              std::ofstream f(path);
                              trained.embeddings.save(f);
                          });
            }
        }
        if (wants(Method::Combine)) {
            const fs::path path = out / "embeddings" / (name + ".combine.emb");
            emb_paths[name + "/combine"] = path;
            const std::string material = join_material(
                {"combine", name,
                 ctx.output_hash("embed:" + name + ":metapath2vec", emb_paths[name + "/metapath2vec"]),
                 ctx.output_hash("embed:" + name + ":node2vec", emb_paths[name + "/node2vec"]),
                 ctx.output_hash("embed:" + name + ":verse", emb_paths[name + "/verse"])});
            ctx.stage("embed:" + name + ":combine",
                      "hinbench embed --mode combine --inputs " +
                          emb_paths[name + "/metapath2vec"].string() + "," +
                          emb_paths[name + "/node2vec"].string() + "," +
                          emb_paths[name + "/verse"].string() + " --out " + path.string(),
                      material, {path}, [&] {
                          const EmbeddingMatrix a = load_embedding(emb_paths[name + "/metapath2vec"]);
                          const EmbeddingMatrix b = load_embedding(emb_paths[name + "/node2vec"]);
                          const EmbeddingMatrix c = load_embedding(emb_paths[name + "/verse"]);
                          // the three trainers cover slightly different node
                          // sets (meta-path corpora need not touch every node),
                          // so combine on the shared subset
                          const std::vector<const EmbeddingMatrix*> parts{&a, &b, &c};
                          const auto keys = common_keys(parts);
                          const EmbeddingMatrix ra = restrict_embeddings(a, keys);
                          const EmbeddingMatrix rb = restrict_embeddings(b, keys);
                          const EmbeddingMatrix rc = restrict_embeddings(c, keys);
                          const EmbeddingMatrix combined = concat_embeddings({&ra, &rb, &rc});
                          std::ofstream f(path);
                          combined.save(f);
                      });
        }
    }

    // ---- evaluation grid ----
    const fs::path report_path = out / "report.csv";
    {
        std::string material = join_material(
            {"eval", records_hash, ctx.output_hash("labels", labels_path),
             config_material(resolved,
                             {"cutoff_year", "networks", "methods", "tasks", "classifiers",
                              "eval.negative_ratio", "eval.train_fraction", "eval.repeats",
                              "lr.l2", "lr.max_iters", "gnb.var_floor", "dt.max_depth",
                              "dt.min_leaf", "rf.trees", "rf.feature_subset", "seed"})});
        for (const auto& [key, path] : emb_paths)
            material += key + "=" + hex64(fnv1a_file(path.string())) + '\x1e';

        ctx.stage("eval", "hinbench run --config " + cfg_path, material, {report_path}, [&] {
            std::vector<ReportRow> rows;
            std::map<std::string, std::string> labels;
            {
                std::ifstream in(labels_path);
                labels = read_labels(in);
            }
            for (EvalTask task : config.tasks) {
                for (NetworkVariant net : config.networks) {
                    const std::string name = to_string(net);
                    for (Method m : config.methods) {
                        const std::string mname = to_string(m);
                        const EmbeddingMatrix emb = load_embedding(emb_paths.at(name + "/" + mname));
                        const std::string cell = to_string(task) + "/" + name + "/" + mname;
                        const BuiltDataset built =
                            task == EvalTask::LinkPred
                                ? build_linkpred_dataset(split.eval, emb, config.negative_ratio,
                                                         stage_seed(config.seed, "dataset/" + cell))
                                : build_area_dataset(labels, emb);
                        for (ClassifierKind kind : config.classifiers) {
                            ClassifierSpec spec = config.classifier_params;
                            spec.kind = kind;
                            ReportRow row;
                            row.task = to_string(task);
                            row.network = name;
                            row.method = mname;
                            row.classifier = to_string(kind);
                            row.eval = repeated_eval(
                                built.data, spec, config.train_fraction, config.repeats,
                                stage_seed(config.seed, "eval/" + cell + "/" + to_string(kind)));
                            row.coverage = built.coverage.fraction_kept();
                            rows.push_back(std::move(row));
                        }
                    }
                }
            }
            write_file(report_path, report_csv(rows));
        });
    }

    // ---- rendered tables ----
    const fs::path table_path = out / "report.txt";
    ctx.stage("report", "hinbench report --run-dir " + out.string(),
              join_material({"report", ctx.output_hash("eval", report_path)}), {table_path}, [&] {
                  write_file(table_path, render_tables(load_report_csv(report_path.string())));
              });

    // ---- manifest ----
    RunManifest manifest;
    manifest.config = resolved;
    manifest.stages = ctx.records;
    manifest.rows = load_report_csv(report_path.string());

    json j;
    j["config"] = resolved;
    j["stages"] = json::array();
    for (const auto& rec : ctx.records) {
        json s;
        s["name"] = rec.name;
        s["command"] = rec.command;
        s["input_hash"] = rec.input_hash;
        s["cached"] = rec.cached;
        s["seconds"] = rec.seconds;
        s["outputs"] = json::array();
        for (const auto& [p, h] : rec.outputs) s["outputs"].push_back({{"path", p}, {"hash", h}});
        j["stages"].push_back(std::move(s));
    }
    write_file(out / "manifest.json", j.dump(2) + "\n");
    return manifest;
}

std::vector<std::string> verify_manifest(const std::string& out_dir) {
    std::vector<std::string> problems;
    const fs::path mpath = fs::path(out_dir) / "manifest.json";
    if (!fs::exists(mpath)) {
        problems.push_back("manifest.json missing");
        return problems;
    }
    json j;
    std::ifstream in(mpath);
    in >> j;
    for (const auto& s : j["stages"]) {
        for (const auto& out : s["outputs"]) {
            const std::string path = out.value("path", "");
            const std::string want = out.value("hash", "");
            if (!fs::exists(path)) {
                problems.push_back(path + ": missing");
            } else if (hex64(fnv1a_file(path)) != want) {
                problems.push_back(path + ": content hash mismatch");
            }
        }
    }
    return problems;
}

std::vector<ReportRow> load_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report: " + path);
    std::vector<ReportRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 9) throw std::runtime_error("report row with wrong column count");
        ReportRow r;
        r.task = cols[0];
        r.network = cols[1];
        r.method = cols[2];
        r.classifier = cols[3];
        r.eval.mean_accuracy = std::stod(cols[4]);
        r.eval.std_accuracy = std::stod(cols[5]);
        r.eval.repeats = static_cast<std::size_t>(std::stoul(cols[6]));
        r.eval.n_samples = static_cast<std::size_t>(std::stoul(cols[7]));
        r.coverage = std::stod(cols[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

const std::vector<std::string> kMethodOrder = {"metapath2vec", "node2vec", "verse", "combine"};
const std::vector<std::string> kNetworkOrder = {"AA", "APA", "AVA", "ALL"};
const std::vector<std::string> kClassifierOrder = {"NB", "RF", "DT", "LR"};

std::string method_title(const std::string& m) {
    if (m == "metapath2vec") return "Metapath2vec";
    if (m == "node2vec") return "Node2vec";
    if (m == "verse") return "VERSE";
    if (m == "combine") return "Combine";
    return m;
}

std::string task_title(const std::string& t) {
    if (t == "linkpred") return "Co-authorship Prediction";
    if (t == "areaclass") return "Research Area Classification";
    return t;
}

}  // namespace

std::string render_tables(const std::vector<ReportRow>& rows) {
    // cell lookup: task -> (method, network, classifier) -> mean
    std::map<std::string, std::map<std::string, double>> cells;
    std::set<std::string> tasks_present;
    for (const auto& r : rows) {
        tasks_present.insert(r.task);
        cells[r.task][r.method + "/" + r.network + "/" + r.classifier] = r.eval.mean_accuracy;
    }

    std::ostringstream outs;
    constexpr int w = 8;  // value column width
    auto pad = [](std::string s, std::size_t width) {
        if (s.size() < width) s.resize(width, ' ');
        return s;
    };

    for (const auto& task : std::vector<std::string>{"linkpred", "areaclass"}) {
        if (!tasks_present.count(task)) continue;
        const auto& grid = cells[task];
        std::size_t missing = 0;

        outs << "== " << task_title(task) << " ==\n";
        std::string head1 = pad("", 10);
        std::string head2 = pad("Classifier", 10);
        for (const auto& m : kMethodOrder) {
            head1 += "| " + pad(method_title(m), w * kNetworkOrder.size());
            head2 += "| ";
            for (const auto& n : kNetworkOrder) head2 += pad(n == "ALL" ? "All" : n, w);
        }
        outs << head1 << "|\n" << head2 << "|\n";

        for (const auto& c : kClassifierOrder) {
            std::string row = pad(c, 10);
            for (const auto& m : kMethodOrder) {
                // best LR cell in this method group gets a star
                double best = -1.0;
                if (c == "LR") {
                    for (const auto& n : kNetworkOrder) {
                        auto it = grid.find(m + "/" + n + "/" + c);
                        if (it != grid.end()) best = std::max(best, it->second);
                    }
                }
                row += "| ";
                for (const auto& n : kNetworkOrder) {
                    auto it = grid.find(m + "/" + n + "/" + c);
                    if (it == grid.end()) {
                        ++missing;
                        row += pad("-", w);
                    } else {
                        char buf[32];
                        std::snprintf(buf, sizeof(buf), "%.3f", it->second);
                        std::string cell = buf;
                        if (c == "LR" && it->second == best) cell += '*';
                        row += pad(cell, w);
                    }
                }
            }
            outs << row << "|\n";
        }
        if (missing)
            outs << "note: " << missing << " cell(s) not present in this run (shown as '-')\n";
        outs << "\n";
    }
    return outs.str();
}

}  // namespace hinbench
