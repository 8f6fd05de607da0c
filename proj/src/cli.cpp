#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bfmn/corpus_io.hpp"
#include "bfmn/graph_io.hpp"
#include "bfmn/metrics.hpp"
#include "bfmn/normalize.hpp"
#include "bfmn/probe.hpp"
#include "bfmn/report.hpp"
#include "bfmn/valence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace bfmn {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Config precedence: CLI flag > environment variable > config file > default.
struct ConfigSource {
    json file = json::object();

    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw FileError("cannot open config file: " + path);
        try {
            in >> file;
        } catch (const json::exception& ex) {
            throw FormatError("bad config file '" + path + "': " + ex.what());
        }
    }

    std::string resolve(const CLI::Option* flag, const std::string& flag_value,
                        const char* env_name, const char* file_key,
                        const std::string& fallback) const {
        if (flag && flag->count() > 0) return flag_value;
        if (env_name) {
            if (const char* env = std::getenv(env_name); env && *env) return env;
        }
        if (file_key && file.contains(file_key)) {
            const json& v = file.at(file_key);
            return v.is_string() ? v.get<std::string>() : v.dump();
        }
        return fallback;
    }

    double resolve_number(const CLI::Option* flag, double flag_value, const char* file_key,
                          double fallback) const {
        if (flag && flag->count() > 0) return flag_value;
        if (file_key && file.contains(file_key)) return file.at(file_key).get<double>();
        return fallback;
    }
};

std::vector<CueWord> parse_cues(const std::string& spec) {
    std::vector<CueWord> cues;
    if (spec.empty()) {
        for (const std::string& c : default_cues()) cues.emplace_back(c);
        return cues;
    }
    if (fs::exists(spec) && fs::is_regular_file(spec)) {
        std::ifstream in(spec);
        if (!in) throw FileError("cannot open cue file: " + spec);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            cues.emplace_back(line);
        }
    } else {
        std::string token;
        std::istringstream in(spec);
        while (std::getline(in, token, ',')) {
            if (!token.empty()) cues.emplace_back(token);
        }
    }
    if (cues.empty()) throw UsageError("cue list is empty: " + spec);
    return cues;
}

Wordlist load_wordlist_or_empty(const std::string& path) {
    if (path.empty()) return Wordlist::from_words({});
    return Wordlist::load(path);
}

std::string normalization_report_json(const NormalizationReport& report) {
    json j;
    j["corrections"] = report.corrections;
    j["merges"] = report.merges;
    j["discarded_tokens"] = report.discarded_tokens;
    j["dropped_records"] = report.dropped_records;
    json traces = json::object();
    for (const auto& [original, t] : report.traces)
        traces[original] = {{"cleaned", t.cleaned},
                            {"corrected", t.corrected},
                            {"stem", t.stem},
                            {"count", t.count}};
    j["traces"] = traces;
    return j.dump(2) + "\n";
}

LabeledLexicon load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open labels file: " + path);
    return read_labels_csv(in);
}

std::vector<FrameMetrics> metrics_for_dir(const std::string& frames_dir,
                                          const EmotionLexicon& emolex, bool weighted) {
    std::vector<std::string> paths;
    if (fs::is_directory(frames_dir)) {
        for (const auto& entry : fs::directory_iterator(frames_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                paths.push_back(entry.path().string());
        std::sort(paths.begin(), paths.end());
    } else {
        paths.push_back(frames_dir);
    }
    if (paths.empty()) throw UsageError("no frame documents found in: " + frames_dir);
    std::vector<FrameMetrics> rows;
    for (const std::string& path : paths)
        rows.push_back(frame_metrics(frame_from_string(read_text_file(path)), emolex, weighted));
    return rows;
}

void print_campaign_stats(const CampaignStats& stats, std::ostream& err) {
    for (const auto& [cue, pc] : stats.per_cue) {
        const double rate = pc.attempts() == 0
                                ? 0.0
                                : 100.0 *
                                      static_cast<double>(pc.discarded_repetition +
                                                          pc.discarded_unparseable) /
                                      static_cast<double>(pc.attempts());
        err << "  " << cue << ": accepted " << pc.accepted << ", repetitions "
            << pc.discarded_repetition << ", unparseable " << pc.discarded_unparseable
            << " (discard rate " << rate << "%)\n";
    }
    err << "  total requests: " << stats.total_requests << "\n";
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"behavioral forma mentis networks toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags and env override it)");
    ConfigSource config;

    // ---- probe ----
    auto* probe_cmd = app.add_subcommand("probe", "collect free-association responses");
    std::string endpoint, model, cues_spec, mode_str = "live", transcript, probe_out, api_key;
    std::size_t target_n = 159, max_attempts = 1000, rating_samples = 1, concurrency = 1,
                max_retries = 5;
    double temperature = 0.7, rate_limit = 0.0;
    std::uint32_t backoff_ms = 250;
    std::uint64_t seed = 0;
    auto* endpoint_opt = probe_cmd->add_option("--endpoint", endpoint, "chat-completions URL");
    auto* model_opt = probe_cmd->add_option("--model", model, "model identifier");
    probe_cmd->add_option("--cues", cues_spec, "cue file or comma-separated list");
    probe_cmd->add_option("--n", target_n, "responses to accept per cue")->capture_default_str();
    auto* temp_opt =
        probe_cmd->add_option("--temperature", temperature, "sampling temperature")
            ->capture_default_str();
    probe_cmd->add_option("--mode", mode_str, "live|record|replay")->capture_default_str();
    probe_cmd->add_option("--transcript", transcript, "transcript path (record/replay)");
    probe_cmd->add_option("--out", probe_out, "corpus output path")->required();
    auto* key_opt = probe_cmd->add_option("--api-key", api_key, "bearer token (or LLM_API_KEY)");
    probe_cmd->add_option("--max-attempts", max_attempts, "association attempts per cue")
        ->capture_default_str();
    probe_cmd->add_option("--rate-limit", rate_limit, "max requests per second");
    probe_cmd->add_option("--cue-rating-samples", rating_samples, "ratings per cue")
        ->capture_default_str();
    probe_cmd->add_option("--concurrency", concurrency, "in-flight requests")
        ->capture_default_str();
    probe_cmd->add_option("--max-retries", max_retries, "transport retries per request")
        ->capture_default_str();
    probe_cmd->add_option("--retry-backoff-ms", backoff_ms, "initial retry backoff")
        ->capture_default_str();
    probe_cmd->add_option("--seed", seed, "campaign seed recorded in metadata");

    // ---- normalize ----
    auto* norm_cmd = app.add_subcommand("normalize", "canonicalize associate tokens");
    std::string norm_in, norm_out, wordlist_path, report_path;
    norm_cmd->add_option("--in", norm_in, "corpus input")->required();
    auto* wordlist_opt = norm_cmd->add_option("--wordlist", wordlist_path, "wordlist file");
    norm_cmd->add_option("--out", norm_out, "normalized corpus output")->required();
    norm_cmd->add_option("--report", report_path, "normalization report output");

    // ---- label ----
    auto* label_cmd = app.add_subcommand("label", "derive valence labels");
    std::string label_in, label_out, pooling = "complement";
    double alpha = 0.1;
    label_cmd->add_option("--in", label_in, "normalized corpus input")->required();
    auto* alpha_opt =
        label_cmd->add_option("--alpha", alpha, "significance level")->capture_default_str();
    label_cmd->add_option("--pooling", pooling, "complement|full")->capture_default_str();
    label_cmd->add_option("--out", label_out, "labels CSV output")->required();

    // ---- frame ----
    auto* frame_cmd = app.add_subcommand("frame", "extract a cue's semantic frame");
    std::string frame_corpus, frame_labels, frame_cue, frame_out;
    frame_cmd->add_option("--corpus", frame_corpus, "normalized corpus")->required();
    frame_cmd->add_option("--labels", frame_labels, "labels CSV")->required();
    frame_cmd->add_option("--cue", frame_cue, "cue word")->required();
    frame_cmd->add_option("--out", frame_out, "frame JSON output")->required();

    // ---- metrics ----
    auto* metrics_cmd = app.add_subcommand("metrics", "frame measurements table");
    std::string frames_dir, emolex_path, metrics_out, metrics_format = "csv", metrics_json_out,
                fractions_out, corpus_id = "corpus";
    bool weighted = false;
    metrics_cmd->add_option("--frames", frames_dir, "frame JSON directory or file")->required();
    auto* emolex_opt = metrics_cmd->add_option("--emolex", emolex_path, "emotion lexicon");
    metrics_cmd->add_option("--out", metrics_out, "table output")->required();
    metrics_cmd->add_option("--format", metrics_format, "csv|markdown")->capture_default_str();
    metrics_cmd->add_flag("--weighted", weighted, "multiplicity-weighted fractions");
    metrics_cmd->add_option("--json-out", metrics_json_out, "metrics JSON (compare input)");
    metrics_cmd->add_option("--fractions-out", fractions_out, "per-cue fractions CSV");
    metrics_cmd->add_option("--id", corpus_id, "corpus identifier")->capture_default_str();

    // ---- compare ----
    auto* compare_cmd = app.add_subcommand("compare", "align metrics across corpora");
    std::vector<std::string> compare_inputs;
    std::string compare_out, compare_format = "csv";
    compare_cmd->add_option("--inputs", compare_inputs, "metrics JSON files")->required();
    compare_cmd->add_option("--out", compare_out, "comparison output")->required();
    compare_cmd->add_option("--format", compare_format, "csv|markdown")->capture_default_str();

    // ---- circumplex ----
    auto* circ_cmd = app.add_subcommand("circumplex", "valence-arousal density grid");
    std::string circ_frame, vad_path, circ_out, bandwidth_spec;
    std::size_t grid_n = 100;
    circ_cmd->add_option("--frame", circ_frame, "frame JSON input")->required();
    auto* vad_opt = circ_cmd->add_option("--vad", vad_path, "VAD lexicon");
    auto* grid_opt =
        circ_cmd->add_option("--grid", grid_n, "grid resolution")->capture_default_str();
    circ_cmd->add_option("--bandwidth", bandwidth_spec, "fixed bandwidth bx,by");
    circ_cmd->add_option("--out", circ_out, "density output (.json or .csv)")->required();

    // ---- render ----
    auto* render_cmd = app.add_subcommand("render", "draw SVG figures");
    std::string render_kind, render_frame, render_density, render_fractions, render_out;
    render_cmd->add_option("--kind", render_kind, "star|circumplex|bars")->required();
    render_cmd->add_option("--frame", render_frame, "frame JSON (star)");
    render_cmd->add_option("--density", render_density, "density JSON (circumplex)");
    render_cmd->add_option("--fractions", render_fractions, "fractions CSV (bars)");
    render_cmd->add_option("--out", render_out, "SVG output")->required();

    // ---- export ----
    auto* export_cmd = app.add_subcommand("export", "serialize the full network");
    std::string export_corpus, export_labels, export_format = "graphml", export_out;
    export_cmd->add_option("--corpus", export_corpus, "normalized corpus")->required();
    export_cmd->add_option("--labels", export_labels, "labels CSV")->required();
    export_cmd->add_option("--format", export_format, "graphml|dot|json")->capture_default_str();
    export_cmd->add_option("--out", export_out, "graph output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (!config_path.empty()) config.load(config_path);

    if (app.got_subcommand(probe_cmd)) {
        ProbeConfig pc;
        pc.endpoint_url = config.resolve(endpoint_opt, endpoint, "BFMN_ENDPOINT", "endpoint", "");
        pc.model_id = config.resolve(model_opt, model, "BFMN_MODEL", "model", "");
        pc.api_key = config.resolve(key_opt, api_key, "LLM_API_KEY", "api_key", "");
        pc.temperature = config.resolve_number(temp_opt, temperature, "temperature", 0.7);
        pc.target_responses_per_cue = target_n;
        pc.max_attempts = max_attempts;
        pc.rate_limit = rate_limit;
        pc.transcript_path = transcript;
        pc.cue_rating_samples = rating_samples;
        pc.concurrency = concurrency;
        pc.max_retries = max_retries;
        pc.retry_backoff_ms = backoff_ms;
        pc.seed = seed;
        if (mode_str == "live")
            pc.mode = ProbeConfig::Mode::Live;
        else if (mode_str == "record")
            pc.mode = ProbeConfig::Mode::Record;
        else if (mode_str == "replay")
            pc.mode = ProbeConfig::Mode::Replay;
        else
            throw UsageError("unknown probe mode: " + mode_str);

        auto [corpus, stats] = collect_corpus(pc, parse_cues(cues_spec));
        save_corpus(corpus, probe_out);
        std::cerr << "campaign complete: " << corpus.records.size() << " records\n";
        print_campaign_stats(stats, std::cerr);
        return 0;
    }

    if (app.got_subcommand(norm_cmd)) {
        const std::string effective_wordlist =
            config.resolve(wordlist_opt, wordlist_path, nullptr, "wordlist", "");
        if (effective_wordlist.empty())
            std::cerr << "warning: no wordlist given, spell correction disabled\n";
        auto [normalized, report] =
            normalize_corpus(load_corpus(norm_in), load_wordlist_or_empty(effective_wordlist));
        save_corpus(normalized, norm_out);
        if (!report_path.empty())
            write_text_file(report_path, normalization_report_json(report));
        std::cerr << "normalized: " << report.corrections << " corrections, " << report.merges
                  << " merges, " << report.dropped_records << " records dropped\n";
        return 0;
    }

    if (app.got_subcommand(label_cmd)) {
        SignificanceConfig cfg;
        cfg.alpha = config.resolve_number(alpha_opt, alpha, "alpha", 0.1);
        if (pooling == "complement")
            cfg.pooling = SignificanceConfig::Pooling::Complement;
        else if (pooling == "full")
            cfg.pooling = SignificanceConfig::Pooling::Full;
        else
            throw UsageError("unknown pooling mode: " + pooling);
        LabeledLexicon lexicon = label_corpus(load_corpus(label_in), cfg);
        std::ostringstream out;
        write_labels_csv(lexicon, out);
        write_text_file(label_out, out.str());
        std::cerr << "labeled " << lexicon.by_stem.size() << " stems\n";
        return 0;
    }

    if (app.got_subcommand(frame_cmd)) {
        Corpus corpus = load_corpus(frame_corpus);
        Bfmn bfmn = build_bfmn(corpus, load_labels(frame_labels));
        SemanticFrame f = frame(bfmn, CueWord(frame_cue));
        write_text_file(frame_out, frame_to_string(f));
        std::cerr << "frame '" << frame_cue << "': " << f.associates.size() << " associates\n";
        return 0;
    }

    if (app.got_subcommand(metrics_cmd)) {
        const std::string effective_emolex =
            config.resolve(emolex_opt, emolex_path, nullptr, "emolex", "");
        EmotionLexicon emolex = effective_emolex.empty()
                                    ? EmotionLexicon::from_flags({})
                                    : EmotionLexicon::load(effective_emolex);
        if (effective_emolex.empty())
            std::cerr << "warning: no emotion lexicon given, every word counts as "
                         "non-emotional\n";
        std::vector<FrameMetrics> rows = metrics_for_dir(frames_dir, emolex, weighted);
        ComparisonTable table = compare({{corpus_id, rows}});
        if (metrics_format == "markdown")
            write_text_file(metrics_out, comparison_to_markdown(table));
        else if (metrics_format == "csv")
            write_text_file(metrics_out, comparison_to_csv(table));
        else
            throw UsageError("unknown metrics format: " + metrics_format);
        if (!metrics_json_out.empty())
            write_text_file(metrics_json_out, metrics_to_json(corpus_id, rows));
        if (!fractions_out.empty())
            write_text_file(fractions_out, fractions_to_csv(fraction_chart_data(rows)));
        return 0;
    }

    if (app.got_subcommand(compare_cmd)) {
        std::vector<std::pair<std::string, std::vector<FrameMetrics>>> corpora;
        for (const std::string& path : compare_inputs)
            corpora.push_back(metrics_from_json(read_text_file(path)));
        ComparisonTable table = compare(corpora);
        write_text_file(compare_out, compare_format == "markdown"
                                         ? comparison_to_markdown(table)
                                         : comparison_to_csv(table));
        return 0;
    }

    if (app.got_subcommand(circ_cmd)) {
        const std::string effective_vad = config.resolve(vad_opt, vad_path, nullptr, "vad", "");
        if (effective_vad.empty()) throw UsageError("circumplex requires --vad");
        SemanticFrame f = frame_from_string(read_text_file(circ_frame));
        auto [points, coverage] = circumplex_points(f, VadLexicon::load(effective_vad));
        std::optional<std::pair<double, double>> bandwidth;
        if (!bandwidth_spec.empty()) {
            double bx = 0, by = 0;
            if (std::sscanf(bandwidth_spec.c_str(), "%lf,%lf", &bx, &by) == 2)
                bandwidth = {bx, by};
            else if (std::sscanf(bandwidth_spec.c_str(), "%lf", &bx) == 1)
                bandwidth = {bx, bx};
            else
                throw UsageError("bad --bandwidth, expected bx,by");
        }
        const std::size_t effective_grid = static_cast<std::size_t>(
            config.resolve_number(grid_opt, static_cast<double>(grid_n), "grid", 100.0));
        DensityGrid grid = kde_density(points, effective_grid, bandwidth);
        std::cerr << "coverage: " << coverage.found << "/" << coverage.total()
                  << " associates in lexicon\n";
        if (circ_out.size() >= 4 && circ_out.substr(circ_out.size() - 4) == ".csv")
            write_text_file(circ_out, density_to_csv(grid));
        else
            write_text_file(circ_out, density_to_json(grid, points, coverage));
        return 0;
    }

    if (app.got_subcommand(render_cmd)) {
        if (render_kind == "star") {
            if (render_frame.empty()) throw UsageError("render --kind star requires --frame");
            write_text_file(render_out,
                            render_star_svg(frame_from_string(read_text_file(render_frame))));
        } else if (render_kind == "circumplex") {
            if (render_density.empty())
                throw UsageError("render --kind circumplex requires --density");
            std::vector<CircumplexPoint> points;
            DensityGrid grid = density_from_json(read_text_file(render_density), &points);
            write_text_file(render_out, render_circumplex_svg(grid, points));
        } else if (render_kind == "bars") {
            if (render_fractions.empty())
                throw UsageError("render --kind bars requires --fractions");
            write_text_file(render_out,
                            render_bars_svg(fractions_from_csv(read_text_file(render_fractions))));
        } else {
            throw UsageError("unknown render kind: " + render_kind);
        }
        return 0;
    }

    if (app.got_subcommand(export_cmd)) {
        Bfmn bfmn = build_bfmn(load_corpus(export_corpus), load_labels(export_labels));
        if (export_format == "graphml")
            write_text_file(export_out, to_graphml(bfmn));
        else if (export_format == "dot")
            write_text_file(export_out, to_dot(bfmn));
        else if (export_format == "json")
            write_text_file(export_out, to_graph_json(bfmn));
        else
            throw UsageError("unknown export format: " + export_format);
        return 0;
    }

    throw UsageError("no subcommand given");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bfmn
