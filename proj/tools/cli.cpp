#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "hypolo/datasets.hpp"
#include "hypolo/detectors.hpp"
#include "hypolo/error.hpp"
#include "hypolo/eval.hpp"
#include "hypolo/report_io.hpp"

namespace hypolo::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Flag values that fail semantic validation after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Manifest {
    std::string subcommand;
    std::vector<std::string> argv;
    json config = json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
};

fs::path manifest_path(const fs::path& output) {
    return fs::path(output.string() + ".manifest.json");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(Errc::Io, "write failure on " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_manifests(const Manifest& m, double seconds) {
    json doc;
    doc["tool"] = "hypolo";
    doc["version"] = HYPOLO_VERSION;
    doc["subcommand"] = m.subcommand;
    doc["argv"] = m.argv;
    doc["config"] = m.config;
    doc["inputs"] = m.inputs;
    doc["outputs"] = m.outputs;
    doc["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    doc["duration_seconds"] = seconds;
    const std::string text = doc.dump(2) + "\n";
    for (const auto& output : m.outputs) write_text(manifest_path(output), text);
}

std::string data_title(const std::string& path) { return fs::path(path).stem().string(); }

unsigned resolve_threads(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("HYPOLO_THREADS")) {
        unsigned value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
            throw UsageError("HYPOLO_THREADS must be a positive integer, got '" +
                             std::string(text) + "'");
        }
        return value;
    }
    return 1;
}

// "a..b" (inclusive) or a comma separated list.
std::vector<std::size_t> parse_k_values(const std::string& text) {
    const auto parse_one = [&](std::string_view s) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
            throw UsageError("bad k value '" + std::string(s) + "' in '" + text + "'");
        }
        return v;
    };
    std::vector<std::size_t> ks;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const auto lo = parse_one(std::string_view(text).substr(0, dots));
        const auto hi = parse_one(std::string_view(text).substr(dots + 2));
        if (hi < lo) throw UsageError("empty k range '" + text + "'");
        for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
        return ks;
    }
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        ks.push_back(parse_one(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return ks;
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> methods;
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        methods.push_back(parse_method(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return methods;
}

DetectorConfig make_config(Method method, std::size_t k, std::optional<double> phi,
                           const std::string& metric_flag, const std::string& index_flag,
                           unsigned threads) {
    DetectorConfig cfg;
    cfg.method = method;
    cfg.k = k;
    cfg.phi = phi;
    cfg.metric = default_metric(method);
    if (!metric_flag.empty() && parse_metric(metric_flag) != cfg.metric) {
        throw UsageError("--metric " + metric_flag + " is incompatible with --method " +
                         std::string(to_string(method)) + " (uses " +
                         std::string(cfg.metric.name()) + ")");
    }
    cfg.strategy = parse_index_strategy(index_flag);
    cfg.threads = threads;
    return normalized(cfg);
}

json config_json(const DetectorConfig& cfg) {
    json j;
    j["method"] = to_string(cfg.method);
    j["k"] = cfg.k;
    j["phi"] = cfg.phi ? json(*cfg.phi) : json(nullptr);
    j["metric"] = cfg.metric.name();
    j["index"] = to_string(cfg.strategy);
    j["threads"] = cfg.threads;
    return j;
}

void report_degenerate(const ScoreReport& report, std::ostream& err) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < report.size(); ++i) {
        if (report.degenerate[i]) ids.push_back(i);
    }
    if (ids.empty()) return;
    err << "warning: " << ids.size() << " point(s) with coincident neighbourhoods (ids";
    for (std::size_t i = 0; i < std::min<std::size_t>(ids.size(), 20); ++i) err << ' ' << ids[i];
    if (ids.size() > 20) err << " ...";
    err << ")\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local outlier detection (HLOF / HLoOP) for points of the Poincare disk",
                 "hypolo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HYPOLO_VERSION);

    int threads_flag = 0;
    const auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", threads_flag,
                        "Worker threads (default: $HYPOLO_THREADS or 1); output is identical "
                        "for any value")
            ->check(CLI::PositiveNumber);
    };

    Manifest manifest;
    manifest.argv = args;
    std::function<void()> action;

    // gen-toy
    auto* gen = app.add_subcommand("gen-toy", "Generate the two-cluster toy dataset");
    std::uint64_t seed = 0;
    int per_cluster = 40;
    double spread = 0.08;
    std::string gen_out;
    gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
    gen->add_option("--points-per-cluster", per_cluster, "Points in each cluster")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--spread", spread, "Per-coordinate standard deviation of each cluster")
        ->capture_default_str();
    gen->add_option("--out", gen_out, "Output TSV")->required();
    gen->callback([&] {
        action = [&] {
            ToySpec spec;
            spec.seed = seed;
            spec.points_per_cluster = per_cluster;
            spec.spread = spread;
            const auto data = generate_toy(spec);
            save_embedding(gen_out, data);
            manifest.subcommand = "gen-toy";
            manifest.seed = seed;
            manifest.config = {{"points_per_cluster", per_cluster},
                               {"spread", spread},
                               {"center_a", {spec.center_a.x(), spec.center_a.y()}},
                               {"center_b", {spec.center_b.x(), spec.center_b.y()}},
                               {"outliers", spec.outliers.size()}};
            manifest.outputs = {gen_out};
            out << "wrote " << data.size() << " points to " << gen_out << '\n';
        };
    });

    // detect
    auto* det = app.add_subcommand("detect", "Score every point of an embedding");
    std::string det_input, det_out, det_method = "hloop", det_metric, det_index = "brute";
    std::size_t det_k = 15;
    std::optional<double> det_phi;
    det->add_option("--input", det_input, "Embedding TSV")->required();
    det->add_option("--method", det_method, "hlof | hloop | lof | loop")
        ->capture_default_str()
        ->check(CLI::IsMember({"hlof", "hloop", "lof", "loop"}));
    det->add_option("--k", det_k, "Neighbourhood size")->capture_default_str();
    det->add_option("--phi", det_phi, "Probability threshold (hloop/loop, default 0.95)");
    det->add_option("--metric", det_metric,
                    "hyperbolic | euclidean; must agree with the method when given")
        ->check(CLI::IsMember({"hyperbolic", "euclidean"}));
    det->add_option("--index", det_index, "brute | vptree")
        ->capture_default_str()
        ->check(CLI::IsMember({"brute", "vptree"}));
    det->add_option("--out", det_out, "Output scores CSV")->required();
    add_threads(det);
    det->callback([&] {
        action = [&] {
            const auto cfg = make_config(parse_method(det_method), det_k, det_phi, det_metric,
                                         det_index, resolve_threads(threads_flag));
            const auto data = load_embedding(det_input);
            const auto report = detect(data, cfg);
            report_degenerate(report, err);
            std::ostringstream csv;
            write_scores_csv(csv, report);
            write_text(det_out, csv.str());
            manifest.subcommand = "detect";
            manifest.config = config_json(cfg);
            if (is_probabilistic(cfg.method)) {
                manifest.config["nplof"] = report.nplof;
                manifest.config["mean_lambda"] = report.mean_lambda;
            }
            manifest.inputs = {det_input};
            manifest.outputs = {det_out};
            out << "scored " << report.size() << " points with " << to_string(cfg.method)
                << " (k=" << cfg.k;
            if (cfg.phi) out << ", phi=" << *cfg.phi;
            out << ") -> " << det_out << '\n';
        };
    });

    // eval
    auto* ev = app.add_subcommand("eval", "ROC AUC of scores, or of detectors swept over k");
    std::string ev_input, ev_scores, ev_sweep, ev_methods = "hloop", ev_out, ev_svg,
                                                ev_index = "brute";
    std::optional<double> ev_phi;
    ev->add_option("--input,--labels", ev_input, "Labelled embedding TSV")->required();
    auto* scores_opt = ev->add_option("--scores", ev_scores, "Scores CSV to evaluate");
    auto* sweep_opt =
        ev->add_option("--sweep-k", ev_sweep, "k values to sweep, 'a..b' or 'a,b,c'");
    scores_opt->excludes(sweep_opt);
    ev->add_option("--method", ev_methods, "Comma separated methods to sweep")
        ->capture_default_str();
    ev->add_option("--phi", ev_phi, "Probability threshold for hloop/loop (default 0.95)");
    ev->add_option("--index", ev_index, "brute | vptree")
        ->capture_default_str()
        ->check(CLI::IsMember({"brute", "vptree"}));
    ev->add_option("--out", ev_out, "Output CSV")->required();
    ev->add_option("--svg", ev_svg, "Optional AUC-vs-k chart (sweep mode)");
    add_threads(ev);
    ev->callback([&] {
        action = [&] {
            if (ev_scores.empty() == ev_sweep.empty()) {
                throw UsageError("eval needs exactly one of --scores or --sweep-k");
            }
            const auto data = load_embedding(ev_input);
            const auto mask = data.outlier_mask();
            manifest.subcommand = "eval";
            manifest.inputs = {ev_input};
            std::ostringstream csv;
            if (!ev_scores.empty()) {
                if (!ev_svg.empty()) throw UsageError("--svg needs --sweep-k");
                std::ifstream in(ev_scores);
                if (!in) throw Error(Errc::Io, "cannot open " + ev_scores);
                const auto scores = read_scores_csv(in);
                if (scores.size() != data.size()) {
                    throw Error(Errc::MismatchedIds, std::to_string(scores.size()) +
                                                         " scores for " +
                                                         std::to_string(data.size()) + " points");
                }
                const auto roc = auc_roc(scores, mask);
                csv << "auc,n_pos,n_neg\n"
                    << format_double(roc.auc) << ',' << roc.n_pos << ',' << roc.n_neg << '\n';
                manifest.inputs.push_back(ev_scores);
                out << "AUC " << roc.auc << " (" << roc.n_pos << " outliers, " << roc.n_neg
                    << " inliers)\n";
            } else {
                const auto ks = parse_k_values(ev_sweep);
                const auto methods = parse_methods(ev_methods);
                const unsigned threads = resolve_threads(threads_flag);
                std::vector<AucSeries> series;
                json configs = json::array();
                for (Method m : methods) {
                    const auto phi = is_probabilistic(m) ? ev_phi : std::nullopt;
                    const auto cfg = make_config(m, ks.front(), phi, "", ev_index, threads);
                    series.push_back({std::string(to_string(m)), sweep_k(data, cfg, ks)});
                    configs.push_back(config_json(cfg));
                }
                csv << 'k';
                for (const auto& s : series) csv << ',' << s.name;
                csv << '\n';
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    csv << ks[i];
                    for (const auto& s : series) csv << ',' << format_double(s.entries[i].auc);
                    csv << '\n';
                }
                manifest.config = {{"sweep_k", ev_sweep}, {"detectors", configs}};
                if (!ev_svg.empty()) {
                    std::ostringstream svg;
                    write_auc_chart_svg(svg, series, "AUC ROC - " + data_title(ev_input));
                    write_text(ev_svg, svg.str());
                    manifest.outputs.push_back(ev_svg);
                }
                for (const auto& s : series) {
                    const auto [lo, hi] = std::minmax_element(
                        s.entries.begin(), s.entries.end(),
                        [](const SweepEntry& a, const SweepEntry& b) { return a.auc < b.auc; });
                    out << s.name << ": AUC in [" << lo->auc << ", " << hi->auc << "] over "
                        << ks.size() << " values of k\n";
                }
            }
            write_text(ev_out, csv.str());
            manifest.outputs.insert(manifest.outputs.begin(), ev_out);
        };
    });

    // plot
    auto* plot = app.add_subcommand("plot", "Draw points and score circles as SVG");
    std::string plot_input, plot_scores, plot_out, plot_title;
    plot->add_option("--input", plot_input, "Embedding TSV")->required();
    plot->add_option("--scores", plot_scores, "Scores CSV")->required();
    plot->add_option("--out", plot_out, "Output SVG")->required();
    plot->add_option("--title", plot_title, "Chart title");
    plot->callback([&] {
        action = [&] {
            const auto data = load_embedding(plot_input);
            std::ifstream in(plot_scores);
            if (!in) throw Error(Errc::Io, "cannot open " + plot_scores);
            const auto scores = read_scores_csv(in);
            std::ostringstream svg;
            write_disk_svg(svg, data, scores,
                           plot_title.empty() ? data_title(plot_input) : plot_title);
            write_text(plot_out, svg.str());
            manifest.subcommand = "plot";
            manifest.inputs = {plot_input, plot_scores};
            manifest.outputs = {plot_out};
            out << "wrote " << plot_out << '\n';
        };
    });

    // replay
    auto* replay = app.add_subcommand("replay", "Re-run the invocation recorded in a manifest");
    std::string replay_path;
    replay->add_option("manifest", replay_path, "Manifest JSON")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e, out, err);
        return status == 0 ? kOk : kUsage;
    }

    try {
        if (replay->parsed()) {
            const auto doc = json::parse(read_text(replay_path));
            const auto recorded = doc.at("argv").get<std::vector<std::string>>();
            if (!recorded.empty() && recorded.front() == "replay") {
                throw UsageError("refusing to replay a replay");
            }
            return run(recorded, out, err);
        }
        const auto start = std::chrono::steady_clock::now();
        action();
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        write_manifests(manifest, elapsed.count());
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == Errc::NoConvergence ? kInternal : kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: bad manifest: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace hypolo::cli
