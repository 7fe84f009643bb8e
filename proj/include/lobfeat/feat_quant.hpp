#pragma once

#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "lobfeat/feat_technical.hpp"
#include "lobfeat/lob.hpp"
#include "lobfeat/logistic.hpp"
#include "lobfeat/stats.hpp"

namespace lobfeat {

inline constexpr int kQuantFeatureCount = 55;

struct QuantConfig {
    int ac_lags = 10;
    int pacf_lags = 5;
    int window = 100;      // rolling window for correlation and cointegration
    int min_window = 30;   // below this the window features stay flagged
    int logistic_batch = 200;
    double coint_level = 0.05;
};

/// Per-level volume imbalance (V_bid - V_ask) / (V_bid + V_ask).
inline double order_book_imbalance(const LobSnapshot& snap, int level) {
    const auto& lv = snap.levels[level - 1];
    double vb = static_cast<double>(lv.bid_volume);
    double va = static_cast<double>(lv.ask_volume);
    return (vb - va) / (vb + va);
}

inline double aggregate_imbalance(const LobSnapshot& snap) {
    double vb = 0, va = 0;
    for (const auto& lv : snap.levels) {
        vb += static_cast<double>(lv.bid_volume);
        va += static_cast<double>(lv.ask_volume);
    }
    return (vb - va) / (vb + va);
}

namespace detail {

/// Intercept + ask volumes 1..6 + bid volumes 1..6 of one snapshot.
inline Eigen::VectorXd logistic_input(const LobSnapshot& snap) {
    Eigen::VectorXd v(kLogisticDim);
    v(0) = 1.0;
    for (int l = 0; l < 6; ++l) {
        v(1 + l) = static_cast<double>(snap.levels[l].ask_volume);
        v(7 + l) = static_cast<double>(snap.levels[l].bid_volume);
    }
    return v;
}

}  // namespace detail

/// All 55 quantitative feature columns, manifest order: autocorrelations of
/// mids and log-returns, partial autocorrelations of both, cointegration of
/// the best ask and bid ladders, per-level and aggregate imbalance, and the
/// online logistic outputs.
inline FeatureBlock quant_features(const std::vector<Block>& blocks,
                                   const QuantConfig& cfg = {}) {
    const std::size_t N = blocks.size();
    FeatureBlock f;
    f.names.reserve(kQuantFeatureCount);
    f.columns.reserve(kQuantFeatureCount);  // no reallocation, references stay valid
    auto col = [&](const std::string& name) -> Series& {
        f.push(name, Series(N, kNaN));
        return f.columns.back();
    };
    std::vector<Series*> ac_mid, ac_ret, pacf_mid, pacf_ret;
    for (int k = 1; k <= cfg.ac_lags; ++k) ac_mid.push_back(&col("quant.ac_mid_" + std::to_string(k)));
    for (int k = 1; k <= cfg.ac_lags; ++k)
        ac_ret.push_back(&col("quant.ac_logret_" + std::to_string(k)));
    for (int k = 1; k <= cfg.pacf_lags; ++k)
        pacf_mid.push_back(&col("quant.pacf_mid_" + std::to_string(k)));
    for (int k = 1; k <= cfg.pacf_lags; ++k)
        pacf_ret.push_back(&col("quant.pacf_logret_" + std::to_string(k)));
    Series& coint_flag = col("quant.coint_flag");
    Series& coint_stat = col("quant.coint_stat");
    Series& coint_pvalue = col("quant.coint_pvalue");
    std::vector<Series*> imb;
    for (int l = 1; l <= kBookLevels; ++l)
        imb.push_back(&col("quant.imbalance_" + std::to_string(l)));
    Series& imb_agg = col("quant.imbalance_agg");
    Series& p_ask = col("quant.logit_p_ask");
    Series& p_bid = col("quant.logit_p_bid");
    Series& local_ratio = col("quant.logit_local_ratio");
    Series& extended_ratio = col("quant.logit_extended_ratio");
    std::vector<Series*> theta_levels;
    for (int l = 1; l <= 6; ++l)
        theta_levels.push_back(&col("quant.logit_theta_level_" + std::to_string(l)));
    Series& theta_intercept = col("quant.logit_theta_intercept");

    std::vector<double> mids(N), asks(N), bids(N);
    for (std::size_t t = 0; t < N; ++t) {
        const LobSnapshot& snap = blocks[t].snapshots.back();
        mids[t] = mid_price(snap);
        asks[t] = static_cast<double>(snap.levels.front().ask_price);
        bids[t] = static_cast<double>(snap.levels.front().bid_price);
    }

    LogisticModel ask_model, bid_model;
    std::deque<std::pair<Eigen::VectorXd, std::pair<double, double>>> history;  // V9, (y_ask, y_bid)

    for (std::size_t t = 0; t < N; ++t) {
        const Block& b = blocks[t];
        const LobSnapshot& snap = b.snapshots.back();

        for (int l = 1; l <= kBookLevels; ++l)
            (*imb[l - 1])[t] = order_book_imbalance(snap, l);
        imb_agg[t] = aggregate_imbalance(snap);

        // rolling correlation window over block closing mids
        std::size_t w = std::min<std::size_t>(t + 1, static_cast<std::size_t>(cfg.window));
        if (static_cast<int>(w) >= cfg.min_window) {
            std::vector<double> win(mids.begin() + (t + 1 - w), mids.begin() + (t + 1));
            for (int k = 1; k <= cfg.ac_lags; ++k)
                (*ac_mid[k - 1])[t] = autocorrelation(win, k);
            std::vector<double> pk = pacf(win, cfg.pacf_lags);
            for (int k = 1; k <= cfg.pacf_lags; ++k) (*pacf_mid[k - 1])[t] = pk[k - 1];

            std::vector<double> wa(asks.begin() + (t + 1 - w), asks.begin() + (t + 1));
            std::vector<double> wb(bids.begin() + (t + 1 - w), bids.begin() + (t + 1));
            CointResult cr = engle_granger(wa, wb, cfg.coint_level);
            coint_flag[t] = cr.cointegrated ? 1.0 : 0.0;
            coint_stat[t] = cr.stat;
            coint_pvalue[t] = cr.pvalue;
        }
        // log-return window needs one extra mid
        if (t >= static_cast<std::size_t>(cfg.min_window)) {
            std::size_t wr = std::min<std::size_t>(t, static_cast<std::size_t>(cfg.window));
            std::vector<double> ret(wr);
            for (std::size_t j = 0; j < wr; ++j) {
                std::size_t i = t - wr + 1 + j;
                ret[j] = std::log(mids[i] / mids[i - 1]);
            }
            for (int k = 1; k <= cfg.ac_lags; ++k)
                (*ac_ret[k - 1])[t] = autocorrelation(ret, k);
            std::vector<double> pk = pacf(ret, cfg.pacf_lags);
            for (int k = 1; k <= cfg.pacf_lags; ++k) (*pacf_ret[k - 1])[t] = pk[k - 1];
        }

        // online logistic: predict the 10th event from the 9th snapshot using
        // coefficients fitted on earlier blocks only, then train on this block
        Eigen::VectorXd v9 = detail::logistic_input(b.snapshots[kBlockEvents - 2]);
        if (t >= 1) {
            p_ask[t] = sigmoid(v9.dot(ask_model.theta));
            p_bid[t] = sigmoid(v9.dot(bid_model.theta));
            double intercept_sum = 0, group[6];
            intercept_sum = (ask_model.theta(0) + bid_model.theta(0)) / 2.0;
            for (int l = 0; l < 6; ++l) {
                group[l] = std::abs(ask_model.theta(1 + l)) + std::abs(ask_model.theta(7 + l)) +
                           std::abs(bid_model.theta(1 + l)) + std::abs(bid_model.theta(7 + l));
                (*theta_levels[l])[t] = group[l];
            }
            theta_intercept[t] = intercept_sum;
            double d_local = group[1] + group[2];
            local_ratio[t] = d_local > 0 ? group[0] / d_local : 0.0;
            double d_ext = group[3] + group[4] + group[5];
            extended_ratio[t] = d_ext > 0 ? (group[0] + group[1] + group[2]) / d_ext : 0.0;
        }
        const LobSnapshot& last = b.snapshots[kBlockEvents - 1];
        const LobSnapshot& prev = b.snapshots[kBlockEvents - 2];
        double y_ask = last.levels.front().ask_price != prev.levels.front().ask_price ? 1.0 : 0.0;
        double y_bid = last.levels.front().bid_price != prev.levels.front().bid_price ? 1.0 : 0.0;
        history.emplace_back(v9, std::make_pair(y_ask, y_bid));
        while (history.size() > static_cast<std::size_t>(cfg.logistic_batch)) history.pop_front();
        Eigen::MatrixXd X(history.size(), kLogisticDim);
        Eigen::VectorXd ya(history.size()), yb(history.size());
        for (std::size_t i = 0; i < history.size(); ++i) {
            X.row(i) = history[i].first.transpose();
            ya(i) = history[i].second.first;
            yb(i) = history[i].second.second;
        }
        logistic_newton_step(ask_model, X, ya);
        logistic_newton_step(bid_model, X, yb);
    }
    return f;
}

}  // namespace lobfeat
