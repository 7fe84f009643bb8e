#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lobfeat/lob.hpp"

namespace lobfeat {

/// One synthetic trading session: a message tape plus per-event book states
/// that satisfy all parser invariants (uncrossed, monotone ladders, positive
/// volumes, non-decreasing timestamps).
struct SynthDay {
    std::vector<MessageEvent> events;
    std::vector<LobSnapshot> snapshots;
};

struct SynthOptions {
    int blocks_per_day = 400;
    std::int64_t base_mid_ticks = 1000;
    int max_tick_step = 3;        // mid-price random-walk step bound per event
    int max_half_spread = 4;
    std::int64_t day_span_ms = 8LL * 3600 * 1000;
};

/// Deterministic given (seed, day_index, options). Day k's timestamps start
/// at k * day_span_ms.
inline SynthDay synth_day(std::uint64_t seed, int day_index, const SynthOptions& opt = {}) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(day_index));
    std::uniform_int_distribution<int> step(-opt.max_tick_step, opt.max_tick_step);
    std::uniform_int_distribution<int> half_spread(1, opt.max_half_spread);
    std::uniform_int_distribution<int> gap(1, 3);
    std::uniform_int_distribution<std::int64_t> volume(1, 500);
    std::uniform_int_distribution<std::int64_t> qty(1, 200);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> side(0, 1);
    std::uniform_int_distribution<std::int64_t> dt(0, 40);
    std::uniform_int_distribution<std::int64_t> order_id(1, 1'000'000'000);

    SynthDay day;
    const int n_events = opt.blocks_per_day * kBlockEvents;
    day.events.reserve(n_events);
    day.snapshots.reserve(n_events);
    std::int64_t mid = opt.base_mid_ticks;
    std::int64_t ts = static_cast<std::int64_t>(day_index) * opt.day_span_ms;
    for (int i = 0; i < n_events; ++i) {
        mid += step(rng);
        const std::int64_t floor_mid = 10 * opt.max_half_spread + 40;
        if (mid < floor_mid) mid = floor_mid;  // keep the deepest bid positive
        int hs = half_spread(rng);
        LobSnapshot snap;
        snap.timestamp_ms = ts;
        snap.levels.resize(kBookLevels);
        std::int64_t ask = mid + hs, bid = mid - hs;
        for (int l = 0; l < kBookLevels; ++l) {
            snap.levels[l].ask_price = ask;
            snap.levels[l].bid_price = bid;
            snap.levels[l].ask_volume = volume(rng);
            snap.levels[l].bid_volume = volume(rng);
            ask += gap(rng);
            bid -= gap(rng);
        }
        MessageEvent ev;
        ev.timestamp_ms = ts;
        ev.order_id = order_id(rng);
        ev.kind = static_cast<EventKind>(kind(rng));
        ev.side = static_cast<Side>(side(rng));
        ev.price = ev.side == Side::Ask ? snap.levels[0].ask_price : snap.levels[0].bid_price;
        ev.quantity = qty(rng);
        day.events.push_back(ev);
        day.snapshots.push_back(std::move(snap));
        ts += dt(rng);
    }
    return day;
}

inline std::vector<SynthDay> synth_days(std::uint64_t seed, int days,
                                        const SynthOptions& opt = {}) {
    std::vector<SynthDay> out;
    out.reserve(days);
    for (int d = 0; d < days; ++d) out.push_back(synth_day(seed, d, opt));
    return out;
}

inline void write_synth_csv(const SynthDay& day, const std::string& messages_path,
                            const std::string& book_path) {
    std::ofstream msg(messages_path);
    if (!msg) throw std::runtime_error("cannot write " + messages_path);
    msg << "timestamp,id,price,quantity,event,side\n";
    for (const auto& ev : day.events) {
        const char* kind = ev.kind == EventKind::Submission     ? "Submission"
                           : ev.kind == EventKind::Cancellation ? "Cancellation"
                                                                : "Execution";
        msg << ev.timestamp_ms << ',' << ev.order_id << ',' << ev.price << ',' << ev.quantity
            << ',' << kind << ',' << (ev.side == Side::Ask ? "Ask" : "Bid") << '\n';
    }
    std::ofstream book(book_path);
    if (!book) throw std::runtime_error("cannot write " + book_path);
    book << "timestamp";
    for (int l = 1; l <= kBookLevels; ++l)
        book << ",ask_price_" << l << ",ask_vol_" << l << ",bid_price_" << l << ",bid_vol_" << l;
    book << '\n';
    for (const auto& snap : day.snapshots) {
        book << snap.timestamp_ms;
        for (const auto& lv : snap.levels)
            book << ',' << lv.ask_price << ',' << lv.ask_volume << ',' << lv.bid_price << ','
                 << lv.bid_volume;
        book << '\n';
    }
}

}  // namespace lobfeat
