#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lobfeat/config.hpp"
#include "lobfeat/extract.hpp"
#include "lobfeat/pipeline.hpp"
#include "lobfeat/selection.hpp"
#include "lobfeat/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::uint64_t seed = 42;
    lobfeat::Config config;
};

std::string config_hash(const GlobalOptions& g) {
    std::ostringstream ss;
    for (const auto& [k, v] : g.config.items()) ss << k << '=' << v << ';';
    ss << "seed=" << g.seed;
    std::ostringstream hex;
    hex << std::hex << std::hash<std::string>{}(ss.str());
    return hex.str();
}

lobfeat::ExtractOptions extract_options(const lobfeat::Config& c) {
    lobfeat::ExtractOptions o;
    o.dpo_standard_form = c.get_bool("extract.dpo_standard", false);
    o.intensity_long_window = static_cast<int>(c.get_int("extract.intensity_long_window", 50));
    o.quant.ac_lags = static_cast<int>(c.get_int("quant.ac_lags", 10));
    o.quant.pacf_lags = static_cast<int>(c.get_int("quant.pacf_lags", 5));
    o.quant.window = static_cast<int>(c.get_int("quant.window", 100));
    o.quant.min_window = static_cast<int>(c.get_int("quant.min_window", 30));
    o.quant.logistic_batch = static_cast<int>(c.get_int("quant.logistic_batch", 200));
    o.quant.coint_level = c.get_double("quant.coint_level", 0.05);
    return o;
}

lobfeat::ProtocolConfig protocol_config(const GlobalOptions& g) {
    const auto& c = g.config;
    lobfeat::ProtocolConfig p;
    p.gamma = c.get_double("labels.gamma", 0.002);
    p.span = static_cast<int>(c.get_int("labels.span", 9));
    p.smoother = c.get_string("labels.smoother", "ema");
    p.fit_fraction = c.get_double("selection.fit_fraction", 0.8);
    p.rerank_per_fold = c.get_bool("protocol.rerank_per_fold", false);
    p.rbfn.prototypes = static_cast<int>(c.get_int("rbfn.prototypes", 60));
    p.rbfn.sigma = c.get_double("rbfn.sigma", 0);
    p.rbfn.lambda = c.get_double("rbfn.lambda", 1e-3);
    p.rbfn.seed = g.seed;
    return p;
}

lobfeat::Dataset load_dataset(const std::string& path) {
    json manifest;
    lobfeat::FeatureMatrix m = lobfeat::read_feature_file(path, &manifest);
    lobfeat::Dataset ds;
    const std::size_t D = m.feature_count(), N = m.sample_count();
    ds.names = m.names;
    ds.X.resize(D, N);
    ds.valid = m.valid_mask();
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t t = 0; t < N; ++t)
            ds.X(r, t) = lobfeat::warm(m.rows[r][t]) ? m.rows[r][t] : 0.0;
    ds.mids = manifest.at("mids").get<lobfeat::Series>();
    ds.day_start = manifest.at("day_start").get<std::vector<std::size_t>>();
    return ds;
}

int cmd_synth(const GlobalOptions& g, int days, int blocks, const std::string& out_dir) {
    fs::create_directories(out_dir);
    lobfeat::SynthOptions opt;
    opt.blocks_per_day = blocks;
    for (int d = 0; d < days; ++d) {
        lobfeat::SynthDay day = lobfeat::synth_day(g.seed, d, opt);
        lobfeat::write_synth_csv(day, out_dir + "/messages_day" + std::to_string(d + 1) + ".csv",
                                 out_dir + "/book_day" + std::to_string(d + 1) + ".csv");
    }
    std::cout << "wrote " << days << " synthetic days to " << out_dir << "\n";
    return 0;
}

int cmd_extract(const GlobalOptions& g, const std::vector<std::string>& messages,
                const std::vector<std::string>& books, const std::string& out_path) {
    if (messages.size() != books.size() || messages.empty())
        throw std::runtime_error("need matching --messages/--book pairs");
    std::vector<std::vector<lobfeat::Block>> days;
    for (std::size_t d = 0; d < messages.size(); ++d) {
        auto events = lobfeat::parse_message_file(messages[d]);
        auto snaps = lobfeat::parse_book_file(books[d]);
        days.push_back(lobfeat::segment_blocks(events, snaps));
    }
    lobfeat::Dataset ds = lobfeat::build_dataset(days, extract_options(g.config));
    lobfeat::FeatureMatrix m;
    m.names = ds.names;
    m.rows.assign(ds.X.rows(), lobfeat::Series(ds.X.cols()));
    for (Eigen::Index r = 0; r < ds.X.rows(); ++r)
        for (Eigen::Index t = 0; t < ds.X.cols(); ++t)
            m.rows[r][t] = ds.valid[t] ? ds.X(r, t) : lobfeat::kNaN;
    json extra;
    extra["mids"] = ds.mids;
    extra["day_start"] = ds.day_start;
    extra["config_hash"] = config_hash(g);
    lobfeat::write_feature_file(out_path, m, extra);
    std::cout << "wrote " << m.feature_count() << " features x " << m.sample_count()
              << " blocks to " << out_path << "\n";
    return 0;
}

int cmd_rank(const GlobalOptions& g, const std::string& features_path, const std::string& method,
             int horizon, const std::string& out_path) {
    lobfeat::Dataset ds = load_dataset(features_path);
    lobfeat::ProtocolConfig pc = protocol_config(g);
    std::vector<int> labels = lobfeat::detail::dataset_labels(ds, horizon, pc);
    const std::size_t train_end = ds.day_end(0);
    Eigen::MatrixXd Xn =
        lobfeat::rolling_zscore(ds.X.leftCols(train_end), static_cast<Eigen::Index>(train_end));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < train_end; ++i)
        if (ds.valid[i] && labels[i] != lobfeat::kLabelFlagged) idx.push_back(i);
    Eigen::MatrixXd Xtr(ds.X.rows(), idx.size());
    std::vector<int> ytr;
    for (std::size_t c = 0; c < idx.size(); ++c) {
        Xtr.col(c) = Xn.col(static_cast<Eigen::Index>(idx[c]));
        ytr.push_back(labels[idx[c]]);
    }
    lobfeat::WrapperScorer scorer(Xtr, ytr, pc.fit_fraction);
    lobfeat::RankingList r = lobfeat::greedy_select(scorer, lobfeat::parse_criterion(method));
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << lobfeat::ranking_to_json(r, config_hash(g)).dump(2) << "\n";
    std::cout << "wrote " << method << " ranking of " << r.order.size() << " features to "
              << out_path << "\n";
    return 0;
}

int cmd_evaluate(const GlobalOptions& g, const std::string& features_path,
                 const std::string& ranking_path, const std::string& classifier, int horizon,
                 int topk, const std::string& out_path) {
    lobfeat::Dataset ds = load_dataset(features_path);
    std::ifstream rin(ranking_path);
    if (!rin) throw std::runtime_error("cannot open " + ranking_path);
    lobfeat::RankingList ranking = lobfeat::ranking_from_json(json::parse(rin));
    lobfeat::ProtocolConfig pc = protocol_config(g);
    pc.horizons = {horizon};
    pc.methods = {ranking.method};
    pc.classifiers = {classifier};
    pc.d_list = {topk};
    std::map<std::string, lobfeat::RankingList> preset{
        {lobfeat::criterion_name(ranking.method), ranking}};
    json report = lobfeat::run_protocol(ds, pc, &preset);
    report["config_hash"] = config_hash(g);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << report.dump(2) << "\n";
    std::cout << "wrote evaluation report to " << out_path << "\n";
    return 0;
}

int cmd_report(const std::string& runs_dir, const std::string& format,
               const std::string& out_path) {
    json cells = json::array();
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(runs_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::ifstream in(p);
        json run = json::parse(in);
        if (!run.contains("results")) continue;
        for (const auto& cell : run["results"]) cells.push_back(cell);
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        os = &file;
    }
    if (format == "json") {
        *os << json{{"results", cells}}.dump(2) << "\n";
    } else if (format == "csv") {
        *os << "horizon,method,classifier,top_d,f1_macro_mean,f1_macro_std,accuracy_mean,"
               "accuracy_std,folds_used\n";
        for (const auto& c : cells)
            *os << c["horizon"] << ',' << c["method"].get<std::string>() << ','
                << c["classifier"].get<std::string>() << ',' << c["top_d"] << ','
                << c["f1_macro_mean"] << ',' << c["f1_macro_std"] << ',' << c["accuracy_mean"]
                << ',' << c["accuracy_std"] << ',' << c["folds_used"] << "\n";
    } else if (format == "md") {
        *os << "| horizon | method | classifier | d | F1-macro | accuracy | folds |\n";
        *os << "|---|---|---|---|---|---|---|\n";
        char buf[64];
        for (const auto& c : cells) {
            std::snprintf(buf, sizeof(buf), "%.3f ± %.3f", c["f1_macro_mean"].get<double>(),
                          c["f1_macro_std"].get<double>());
            std::string f1 = buf;
            std::snprintf(buf, sizeof(buf), "%.3f ± %.3f", c["accuracy_mean"].get<double>(),
                          c["accuracy_std"].get<double>());
            *os << "| " << c["horizon"] << " | " << c["method"].get<std::string>() << " | "
                << c["classifier"].get<std::string>() << " | " << c["top_d"] << " | " << f1
                << " | " << buf << " | " << c["folds_used"] << " |\n";
        }
    } else {
        throw std::runtime_error("unknown report format '" + format + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limit-order-book feature extraction, ranking, and evaluation"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --config/--seed appear after the subcommand
    GlobalOptions g;
    app.add_option("--config", g.config_path, "toml-like configuration file");
    app.add_option("--seed", g.seed, "random seed");

    auto* synth = app.add_subcommand("synth", "generate synthetic message/book CSV days");
    int synth_days = 10, synth_blocks = 400;
    std::string synth_out = "synth";
    synth->add_option("--days", synth_days, "number of days");
    synth->add_option("--blocks", synth_blocks, "blocks per day");
    synth->add_option("--out", synth_out, "output directory");

    auto* extract = app.add_subcommand("extract", "extract the 273-feature matrix");
    std::vector<std::string> messages, books;
    std::string features_out = "features.bin";
    extract->add_option("--messages", messages, "message CSV, one per day")->required();
    extract->add_option("--book", books, "book CSV, one per day")->required();
    extract->add_option("--out", features_out, "output feature file");

    auto* rank = app.add_subcommand("rank", "rank features by a wrapper criterion");
    std::string rank_features, rank_method = "entropy", rank_out = "ranking.json";
    int rank_horizon = 1;
    rank->add_option("--features", rank_features, "feature file")->required();
    rank->add_option("--method", rank_method, "entropy|lms1|lms2|lda1|lda2");
    rank->add_option("--horizon", rank_horizon, "label horizon in blocks (1..3)");
    rank->add_option("--out", rank_out, "output ranking JSON");

    auto* evaluate = app.add_subcommand("evaluate", "train and score one protocol cell");
    std::string eval_features, eval_ranking, eval_classifier = "lms",
                eval_out = "metrics.json";
    int eval_horizon = 1, eval_topk = 5;
    evaluate->add_option("--features", eval_features, "feature file")->required();
    evaluate->add_option("--ranking", eval_ranking, "ranking JSON")->required();
    evaluate->add_option("--classifier", eval_classifier, "lms|lda|rbfn");
    evaluate->add_option("--horizon", eval_horizon, "label horizon in blocks (1..3)");
    evaluate->add_option("--topk", eval_topk, "number of top-ranked features");
    evaluate->add_option("--out", eval_out, "output metrics JSON");

    auto* report = app.add_subcommand("report", "aggregate evaluation runs");
    std::string report_runs, report_format = "md", report_out;
    report->add_option("--runs", report_runs, "directory of metrics JSON files")->required();
    report->add_option("--format", report_format, "json|csv|md");
    report->add_option("--out", report_out, "output path (default stdout)");

    for (auto* sub : {synth, extract, rank, evaluate, report}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!g.config_path.empty()) g.config = lobfeat::Config::parse_file(g.config_path);
        if (synth->parsed()) return cmd_synth(g, synth_days, synth_blocks, synth_out);
        if (extract->parsed()) return cmd_extract(g, messages, books, features_out);
        if (rank->parsed()) return cmd_rank(g, rank_features, rank_method, rank_horizon, rank_out);
        if (evaluate->parsed())
            return cmd_evaluate(g, eval_features, eval_ranking, eval_classifier, eval_horizon,
                                eval_topk, eval_out);
        if (report->parsed()) return cmd_report(report_runs, report_format, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
