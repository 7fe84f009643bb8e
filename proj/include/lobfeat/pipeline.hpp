#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "lobfeat/classify.hpp"
#include "lobfeat/extract.hpp"
#include "lobfeat/selection.hpp"
#include "lobfeat/series.hpp"

namespace lobfeat {

inline constexpr int kLabelFlagged = -1;

struct LabelSeries {
    std::vector<int> classes;  // MoveClass values, kLabelFlagged where undefined
    Series smoothed;
    int horizon_blocks = 1;
};

/// Causal smoother for the label mids: EMA with alpha = 2/(span+1) seeded at
/// the first value, or a trailing moving average that grows to `span`.
inline Series label_smooth(const Series& mids, int span, const std::string& kind = "ema") {
    Series out(mids.size(), kNaN);
    if (kind == "ema") {
        const double alpha = 2.0 / (span + 1);
        double state = kNaN;
        for (std::size_t t = 0; t < mids.size(); ++t) {
            state = warm(state) ? alpha * mids[t] + (1 - alpha) * state : mids[t];
            out[t] = state;
        }
    } else if (kind == "sma") {
        double sum = 0;
        for (std::size_t t = 0; t < mids.size(); ++t) {
            sum += mids[t];
            if (t >= static_cast<std::size_t>(span)) sum -= mids[t - span];
            out[t] = sum / std::min<std::size_t>(t + 1, static_cast<std::size_t>(span));
        }
    } else {
        throw std::invalid_argument("label_smooth: unknown smoother '" + kind + "'");
    }
    return out;
}

/// Three-class movement labels from the smoothed relative change over the
/// horizon; strict inequalities, so exactly +-gamma is Stationary. Blocks
/// without enough future are flagged.
inline LabelSeries extract_labels(const Series& mids, int horizon_blocks, double gamma = 0.002,
                                  int span = 9, const std::string& smoother = "ema") {
    if (!(gamma > 0)) throw std::invalid_argument("extract_labels: gamma must be > 0");
    if (span < 1) throw std::invalid_argument("extract_labels: span must be >= 1");
    LabelSeries ls;
    ls.horizon_blocks = horizon_blocks;
    ls.smoothed = label_smooth(mids, span, smoother);
    ls.classes.assign(mids.size(), kLabelFlagged);
    for (std::size_t t = 0; t + horizon_blocks < mids.size(); ++t) {
        double l1 = (ls.smoothed[t + horizon_blocks] - ls.smoothed[t]) / ls.smoothed[t];
        if (l1 > gamma) ls.classes[t] = static_cast<int>(MoveClass::Up);
        else if (l1 < -gamma) ls.classes[t] = static_cast<int>(MoveClass::Down);
        else ls.classes[t] = static_cast<int>(MoveClass::Stationary);
    }
    return ls;
}

/// Anchored rolling z-score: each training sample is normalized with the
/// running per-feature mean/std of samples up to and including itself; test
/// samples reuse the statistics frozen at the end of training.
inline Eigen::MatrixXd rolling_zscore(const Eigen::MatrixXd& X, Eigen::Index n_train,
                                      double std_floor = 1e-12) {
    const Eigen::Index D = X.rows(), N = X.cols();
    if (n_train < 1 || n_train > N) throw std::invalid_argument("rolling_zscore: bad n_train");
    Eigen::MatrixXd out(D, N);
    for (Eigen::Index r = 0; r < D; ++r) {
        double sum = 0, sumsq = 0;
        double frozen_mean = 0, frozen_std = std_floor;
        for (Eigen::Index t = 0; t < N; ++t) {
            if (t < n_train) {
                sum += X(r, t);
                sumsq += X(r, t) * X(r, t);
                double mean = sum / (t + 1);
                double var = sumsq / (t + 1) - mean * mean;
                double sd = var > 0 ? std::sqrt(var) : 0.0;
                if (sd < std_floor) sd = std_floor;
                out(r, t) = (X(r, t) - mean) / sd;
                if (t == n_train - 1) {
                    frozen_mean = mean;
                    frozen_std = sd;
                }
            } else {
                out(r, t) = (X(r, t) - frozen_mean) / frozen_std;
            }
        }
    }
    return out;
}

/// Day-segmented labeled feature set. Labels are derived from the block mids
/// per day unless an explicit per-horizon override is supplied (synthetic
/// benchmark sets plant labels directly).
struct Dataset {
    Eigen::MatrixXd X;  // D x N
    std::vector<std::string> names;
    std::vector<bool> valid;              // per sample: all features finite
    std::vector<std::size_t> day_start;   // first sample index of each day
    Series mids;                          // block closing mids, length N
    std::map<int, std::vector<int>> label_override;

    std::size_t days() const { return day_start.size(); }
    std::size_t day_begin(std::size_t d) const { return day_start[d]; }
    std::size_t day_end(std::size_t d) const {
        return d + 1 < day_start.size() ? day_start[d + 1] : static_cast<std::size_t>(X.cols());
    }
};

/// Per-day feature extraction (each day is an independent causal stream),
/// concatenated into one day-indexed dataset.
inline Dataset build_dataset(const std::vector<std::vector<Block>>& day_blocks,
                             const ExtractOptions& opt = {}) {
    Dataset ds;
    std::vector<FeatureMatrix> mats;
    std::size_t total = 0;
    for (const auto& blocks : day_blocks) {
        mats.push_back(extract_features(blocks, opt));
        ds.day_start.push_back(total);
        total += blocks.size();
    }
    ds.X.resize(kTotalFeatureCount, total);
    ds.names = mats.front().names;
    ds.valid.assign(total, true);
    ds.mids.resize(total);
    for (std::size_t d = 0; d < day_blocks.size(); ++d) {
        const std::size_t off = ds.day_start[d];
        const auto mask = mats[d].valid_mask();
        for (std::size_t t = 0; t < day_blocks[d].size(); ++t) {
            ds.valid[off + t] = mask[t];
            ds.mids[off + t] = day_blocks[d][t].bar.close;
            for (int r = 0; r < kTotalFeatureCount; ++r) {
                double v = mats[d].rows[r][t];
                ds.X(r, off + t) = warm(v) ? v : 0.0;  // flagged via valid mask
            }
        }
    }
    return ds;
}

struct LabeledFold {
    std::vector<std::size_t> train_idx, test_idx;  // usable sample positions
    Eigen::MatrixXd Xn;                            // normalized full matrix
    std::vector<int> labels;                       // full-length labels
};

struct ProtocolConfig {
    std::vector<int> horizons = {1, 2, 3};
    std::vector<Criterion> methods = {Criterion::Entropy, Criterion::Lms1, Criterion::Lms2,
                                      Criterion::Lda1, Criterion::Lda2};
    std::vector<std::string> classifiers = {"lms", "lda", "rbfn"};
    std::vector<int> d_list = {5, 50, 100, 200, 273};
    double gamma = 0.002;
    int span = 9;
    std::string smoother = "ema";
    bool rerank_per_fold = false;
    double fit_fraction = 0.8;
    RbfnConfig rbfn;
};

namespace detail {

inline std::vector<int> dataset_labels(const Dataset& ds, int horizon,
                                       const ProtocolConfig& cfg) {
    auto it = ds.label_override.find(horizon);
    if (it != ds.label_override.end()) return it->second;
    std::vector<int> labels;
    labels.reserve(ds.mids.size());
    for (std::size_t d = 0; d < ds.days(); ++d) {
        Series day_mids(ds.mids.begin() + ds.day_begin(d), ds.mids.begin() + ds.day_end(d));
        LabelSeries ls = extract_labels(day_mids, horizon, cfg.gamma, cfg.span, cfg.smoother);
        labels.insert(labels.end(), ls.classes.begin(), ls.classes.end());
    }
    return labels;
}

inline std::vector<int> fit_predict(const std::string& classifier, const Eigen::MatrixXd& Xtr,
                                    const std::vector<int>& ytr, const Eigen::MatrixXd& Xte,
                                    const ProtocolConfig& cfg) {
    if (classifier == "lms") {
        LmsModel m = lms_fit(Xtr, one_hot(ytr));
        return lms_predict(m, Xte);
    }
    if (classifier == "lda") {
        LdaModel m = lda_fit(Xtr, ytr);
        return lda_predict(m, Xte);
    }
    if (classifier == "rbfn") {
        RbfnModel m = rbfn_fit(Xtr, ytr, cfg.rbfn);
        return rbfn_predict(m, Xte);
    }
    throw std::invalid_argument("unknown classifier '" + classifier + "'");
}

inline Eigen::MatrixXd take(const Eigen::MatrixXd& X, const std::vector<int>& dims,
                            const std::vector<std::size_t>& cols) {
    Eigen::MatrixXd out(dims.size(), cols.size());
    for (std::size_t r = 0; r < dims.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(r, c) = X(dims[r], static_cast<Eigen::Index>(cols[c]));
    return out;
}

}  // namespace detail

/// The anchored walk-forward protocol: fold k trains on days 1..k and tests
/// on day k+1. Rankings are computed on fold 1's training day (optionally per
/// fold) and reused; each (horizon, method, classifier, top-d) cell reports
/// per-fold metrics plus their mean and standard deviation.
inline nlohmann::json run_protocol(const Dataset& ds, const ProtocolConfig& cfg,
                                   const std::map<std::string, RankingList>* preset_rankings =
                                       nullptr) {
    if (ds.days() < 2) throw std::invalid_argument("run_protocol: need at least 2 days");
    const std::size_t folds = ds.days() - 1;
    const int D = static_cast<int>(ds.X.rows());
    nlohmann::json report;
    report["folds"] = folds;
    report["feature_count"] = D;
    nlohmann::json results = nlohmann::json::array();
    nlohmann::json rankings_json;

    for (int horizon : cfg.horizons) {
        std::vector<int> labels = detail::dataset_labels(ds, horizon, cfg);
        auto usable = [&](std::size_t i) { return ds.valid[i] && labels[i] != kLabelFlagged; };

        // per-fold normalized matrices and index sets
        std::vector<LabeledFold> fold_data(folds);
        for (std::size_t k = 0; k < folds; ++k) {
            LabeledFold& f = fold_data[k];
            const std::size_t train_end = ds.day_end(k);   // days 0..k
            const std::size_t test_end = ds.day_end(k + 1);
            f.Xn = rolling_zscore(ds.X.leftCols(test_end), static_cast<Eigen::Index>(train_end));
            f.labels = labels;
            for (std::size_t i = 0; i < train_end; ++i)
                if (usable(i)) f.train_idx.push_back(i);
            for (std::size_t i = train_end; i < test_end; ++i)
                if (usable(i)) f.test_idx.push_back(i);
        }

        // rankings on fold 1's training samples
        std::map<std::string, RankingList> rankings;
        auto rank_on = [&](const LabeledFold& f) {
            std::vector<int> all_dims(D);
            std::iota(all_dims.begin(), all_dims.end(), 0);
            Eigen::MatrixXd Xtr = detail::take(f.Xn, all_dims, f.train_idx);
            std::vector<int> ytr;
            for (auto i : f.train_idx) ytr.push_back(f.labels[i]);
            std::map<std::string, RankingList> out;
            WrapperScorer scorer(Xtr, ytr, cfg.fit_fraction);
            for (Criterion c : cfg.methods) out[criterion_name(c)] = greedy_select(scorer, c);
            return out;
        };
        bool missing = false;
        for (Criterion c : cfg.methods) {
            const std::string name = criterion_name(c);
            if (preset_rankings && preset_rankings->count(name))
                rankings[name] = preset_rankings->at(name);
            else missing = true;
        }
        if (missing) {
            auto computed = rank_on(fold_data.front());
            for (Criterion c : cfg.methods)
                if (!rankings.count(criterion_name(c)))
                    rankings[criterion_name(c)] = computed.at(criterion_name(c));
        }
        for (const auto& [name, r] : rankings)
            rankings_json["horizon_" + std::to_string(horizon)][name] = r.order;

        for (Criterion method : cfg.methods) {
            for (const std::string& classifier : cfg.classifiers) {
                for (int d : cfg.d_list) {
                    if (d > D) continue;
                    nlohmann::json cell;
                    cell["horizon"] = horizon;
                    cell["method"] = criterion_name(method);
                    cell["classifier"] = classifier;
                    cell["top_d"] = d;
                    std::vector<double> f1s, accs;
                    nlohmann::json fold_list = nlohmann::json::array();
                    for (std::size_t k = 0; k < folds; ++k) {
                        const LabeledFold& f = fold_data[k];
                        nlohmann::json fj;
                        fj["fold"] = k + 1;
                        try {
                            const RankingList& rank =
                                cfg.rerank_per_fold && k > 0
                                    ? rank_on(f).at(criterion_name(method))
                                    : rankings.at(criterion_name(method));
                            std::vector<int> dims(rank.order.begin(), rank.order.begin() + d);
                            Eigen::MatrixXd Xtr = detail::take(f.Xn, dims, f.train_idx);
                            Eigen::MatrixXd Xte = detail::take(f.Xn, dims, f.test_idx);
                            std::vector<int> ytr, yte;
                            for (auto i : f.train_idx) ytr.push_back(f.labels[i]);
                            for (auto i : f.test_idx) yte.push_back(f.labels[i]);
                            if (ytr.empty() || yte.empty())
                                throw std::runtime_error("empty fold slice");
                            std::vector<int> pred =
                                detail::fit_predict(classifier, Xtr, ytr, Xte, cfg);
                            ClassMetrics m = score(pred, yte);
                            fj["accuracy"] = m.accuracy;
                            fj["precision_macro"] = m.precision_macro;
                            fj["recall_macro"] = m.recall_macro;
                            fj["f1_macro"] = m.f1_macro;
                            f1s.push_back(m.f1_macro);
                            accs.push_back(m.accuracy);
                        } catch (const std::exception& e) {
                            fj["failed"] = e.what();
                        }
                        fold_list.push_back(fj);
                    }
                    cell["per_fold"] = fold_list;
                    auto mean_std = [](const std::vector<double>& v) {
                        double mean = 0, sd = 0;
                        for (double x : v) mean += x;
                        if (!v.empty()) mean /= v.size();
                        for (double x : v) sd += (x - mean) * (x - mean);
                        if (!v.empty()) sd = std::sqrt(sd / v.size());
                        return std::pair<double, double>(mean, sd);
                    };
                    auto [f1m, f1s_] = mean_std(f1s);
                    auto [am, as_] = mean_std(accs);
                    cell["f1_macro_mean"] = f1m;
                    cell["f1_macro_std"] = f1s_;
                    cell["accuracy_mean"] = am;
                    cell["accuracy_std"] = as_;
                    cell["folds_used"] = f1s.size();
                    results.push_back(cell);
                }
            }
        }
    }
    report["rankings"] = rankings_json;
    report["results"] = results;
    return report;
}

}  // namespace lobfeat
