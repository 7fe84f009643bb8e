#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lobfeat/feat_technical.hpp"
#include "lobfeat/lob.hpp"
#include "lobfeat/series.hpp"

namespace lobfeat {

inline constexpr int kLobFeatureCount = 135;

namespace detail {

/// Six event-rate buckets: kind (Submission, Cancellation, Execution) x side.
inline int intensity_bucket(const MessageEvent& ev) {
    int k = static_cast<int>(ev.kind);   // 0..2
    int s = static_cast<int>(ev.side);   // 0 = Ask, 1 = Bid
    return k * 2 + s;
}

inline const char* kIntensityNames[6] = {
    "submission_ask", "submission_bid", "cancellation_ask",
    "cancellation_bid", "execution_ask", "execution_bid"};

}  // namespace detail

/// The 135 raw-book feature columns over the block sequence, manifest order:
/// level prices and volumes of the closing snapshot, per-level spreads and
/// mids, ladder ranges and gaps, cross-level means, accumulated differences,
/// time derivatives against the previous block, per-block event intensities,
/// short-vs-long intensity comparisons, and intensity accelerations.
inline FeatureBlock lob_features(const std::vector<Block>& blocks,
                                 int intensity_long_window = 50) {
    const std::size_t N = blocks.size();
    const int L = kBookLevels;
    FeatureBlock f;
    f.names.reserve(kLobFeatureCount);
    f.columns.reserve(kLobFeatureCount);  // no reallocation, references stay valid
    auto col = [&](const std::string& name) -> Series& {
        f.push(name, Series(N, kNaN));
        return f.columns.back();
    };

    // u1: raw ladder of the block's closing snapshot
    std::vector<Series*> u1;
    for (int i = 1; i <= L; ++i) {
        u1.push_back(&col("lob.ask_price_" + std::to_string(i)));
        u1.push_back(&col("lob.ask_vol_" + std::to_string(i)));
        u1.push_back(&col("lob.bid_price_" + std::to_string(i)));
        u1.push_back(&col("lob.bid_vol_" + std::to_string(i)));
    }
    // u2: per-level spread and mid
    std::vector<Series*> u2;
    for (int i = 1; i <= L; ++i) {
        u2.push_back(&col("lob.spread_" + std::to_string(i)));
        u2.push_back(&col("lob.level_mid_" + std::to_string(i)));
    }
    // u3: ladder extents and mean per-level gaps
    Series& ask_range = col("lob.ask_range");
    Series& bid_range = col("lob.bid_range");
    std::vector<Series*> gaps;
    for (int i = 1; i < L; ++i) gaps.push_back(&col("lob.ladder_gap_mean_" + std::to_string(i)));
    // u4: cross-level means
    Series& mean_ask_price = col("lob.mean_ask_price");
    Series& mean_bid_price = col("lob.mean_bid_price");
    Series& mean_ask_vol = col("lob.mean_ask_vol");
    Series& mean_bid_vol = col("lob.mean_bid_vol");
    // u5: accumulated differences
    Series& acc_price_diff = col("lob.acc_price_diff");
    Series& acc_vol_diff = col("lob.acc_vol_diff");
    // u6: time derivatives per level
    std::vector<Series*> u6;
    for (int i = 1; i <= L; ++i) {
        u6.push_back(&col("lob.d_ask_price_" + std::to_string(i)));
        u6.push_back(&col("lob.d_ask_vol_" + std::to_string(i)));
        u6.push_back(&col("lob.d_bid_price_" + std::to_string(i)));
        u6.push_back(&col("lob.d_bid_vol_" + std::to_string(i)));
    }
    // u7..u9: intensities, comparisons, accelerations
    std::vector<Series*> u7, u8, u9;
    for (int k = 0; k < 6; ++k)
        u7.push_back(&col(std::string("lob.intensity_") + detail::kIntensityNames[k]));
    for (int k = 0; k < 6; ++k)
        u8.push_back(&col(std::string("lob.intensity_cmp_") + detail::kIntensityNames[k]));
    for (int k = 0; k < 6; ++k)
        u9.push_back(&col(std::string("lob.intensity_accel_") + detail::kIntensityNames[k]));

    // Zero time spans borrow the smallest positive span seen so far, so the
    // derivative and intensity columns stay finite on bursty tapes.
    double min_pos_span = kNaN;
    auto effective_span = [&](double span) {
        if (span > 0) {
            if (!warm(min_pos_span) || span < min_pos_span) min_pos_span = span;
            return span;
        }
        return min_pos_span;  // NaN until any positive span has been seen
    };

    std::vector<std::array<double, 6>> intensity(N);
    Series block_dt(N, kNaN);  // substituted span between adjacent closing snapshots
    for (std::size_t t = 0; t < N; ++t) {
        const Block& b = blocks[t];
        const LobSnapshot& snap = b.snapshots.back();
        double sum_ap = 0, sum_bp = 0, sum_av = 0, sum_bv = 0, acc_p = 0, acc_v = 0;
        for (int i = 0; i < L; ++i) {
            const auto& lv = snap.levels[i];
            double ap = static_cast<double>(lv.ask_price);
            double bp = static_cast<double>(lv.bid_price);
            double av = static_cast<double>(lv.ask_volume);
            double bv = static_cast<double>(lv.bid_volume);
            (*u1[4 * i + 0])[t] = ap;
            (*u1[4 * i + 1])[t] = av;
            (*u1[4 * i + 2])[t] = bp;
            (*u1[4 * i + 3])[t] = bv;
            (*u2[2 * i + 0])[t] = ap - bp;
            (*u2[2 * i + 1])[t] = (ap + bp) / 2.0;
            sum_ap += ap;
            sum_bp += bp;
            sum_av += av;
            sum_bv += bv;
            acc_p += ap - bp;
            acc_v += av - bv;
        }
        ask_range[t] = std::abs(static_cast<double>(snap.levels[L - 1].ask_price) -
                                static_cast<double>(snap.levels[0].ask_price));
        bid_range[t] = std::abs(static_cast<double>(snap.levels[0].bid_price) -
                                static_cast<double>(snap.levels[L - 1].bid_price));
        for (int i = 0; i < L - 1; ++i) {
            double da = std::abs(static_cast<double>(snap.levels[i + 1].ask_price) -
                                 static_cast<double>(snap.levels[i].ask_price));
            double db = std::abs(static_cast<double>(snap.levels[i + 1].bid_price) -
                                 static_cast<double>(snap.levels[i].bid_price));
            (*gaps[i])[t] = (da + db) / 2.0;
        }
        mean_ask_price[t] = sum_ap / L;
        mean_bid_price[t] = sum_bp / L;
        mean_ask_vol[t] = sum_av / L;
        mean_bid_vol[t] = sum_bv / L;
        acc_price_diff[t] = acc_p;
        acc_vol_diff[t] = acc_v;

        // u6: per-level derivatives between closing snapshots of adjacent blocks
        if (t >= 1) {
            const LobSnapshot& prev = blocks[t - 1].snapshots.back();
            double dt = (static_cast<double>(snap.timestamp_ms) -
                         static_cast<double>(prev.timestamp_ms)) / 1000.0;
            dt = effective_span(dt);
            block_dt[t] = dt;
            if (warm(dt)) {
                for (int i = 0; i < L; ++i) {
                    (*u6[4 * i + 0])[t] =
                        (snap.levels[i].ask_price - prev.levels[i].ask_price) / dt;
                    (*u6[4 * i + 1])[t] =
                        (snap.levels[i].ask_volume - prev.levels[i].ask_volume) / dt;
                    (*u6[4 * i + 2])[t] =
                        (snap.levels[i].bid_price - prev.levels[i].bid_price) / dt;
                    (*u6[4 * i + 3])[t] =
                        (snap.levels[i].bid_volume - prev.levels[i].bid_volume) / dt;
                }
            }
        }

        // u7: event counts per kind/side over the block's time span
        double span = (static_cast<double>(b.events.back().timestamp_ms) -
                       static_cast<double>(b.events.front().timestamp_ms)) / 1000.0;
        span = effective_span(span);
        intensity[t].fill(kNaN);
        if (warm(span)) {
            std::array<int, 6> counts{};
            for (const auto& ev : b.events) counts[detail::intensity_bucket(ev)]++;
            for (int k = 0; k < 6; ++k) {
                intensity[t][k] = counts[k] / span;
                (*u7[k])[t] = intensity[t][k];
            }
        }
    }

    for (std::size_t t = 1; t < N; ++t) {
        if (!warm(intensity[t][0])) continue;
        // u8: current intensity against its trailing average
        const std::size_t w =
            std::min<std::size_t>(t + 1, static_cast<std::size_t>(intensity_long_window));
        bool ok = true;
        std::array<double, 6> mean{};
        for (std::size_t j = 0; j < w && ok; ++j) {
            if (!warm(intensity[t - j][0])) { ok = false; break; }
            for (int k = 0; k < 6; ++k) mean[k] += intensity[t - j][k];
        }
        if (ok)
            for (int k = 0; k < 6; ++k) (*u8[k])[t] = intensity[t][k] > mean[k] / w ? 1.0 : 0.0;
        // u9: intensity change rate over the same substituted span used by u6
        if (warm(intensity[t - 1][0]) && warm(block_dt[t]))
            for (int k = 0; k < 6; ++k)
                (*u9[k])[t] = (intensity[t][k] - intensity[t - 1][k]) / block_dt[t];
    }
    return f;
}

}  // namespace lobfeat
