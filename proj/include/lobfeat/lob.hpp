#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lobfeat {

inline constexpr int kBookLevels = 10;
inline constexpr int kBlockEvents = 10;

enum class EventKind { Submission, Cancellation, Execution };
enum class Side { Ask, Bid };

/// One exchange event (one message-list row). Prices are integer ticks.
struct MessageEvent {
    std::int64_t timestamp_ms = 0;
    std::int64_t order_id = 0;
    std::int64_t price = 0;
    std::int64_t quantity = 0;
    EventKind kind = EventKind::Submission;
    Side side = Side::Bid;
};

struct BookLevel {
    std::int64_t ask_price = 0;
    std::int64_t ask_volume = 0;
    std::int64_t bid_price = 0;
    std::int64_t bid_volume = 0;
};

/// Per-event book state, level 1 = best quotes.
struct LobSnapshot {
    std::int64_t timestamp_ms = 0;
    std::vector<BookLevel> levels;  // size kBookLevels
};

struct OhlcBar {
    double open = 0, high = 0, low = 0, close = 0;
    std::int64_t volume = 0;
};

/// Ten consecutive events plus their snapshots; the unit sample.
struct Block {
    std::size_t index = 0;
    std::vector<MessageEvent> events;    // exactly kBlockEvents
    std::vector<LobSnapshot> snapshots;  // exactly kBlockEvents
    OhlcBar bar;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Mid-price of the best quotes, kept in floating point (never truncated to ticks).
inline double mid_price(const LobSnapshot& snap) {
    const auto& best = snap.levels.front();
    return (static_cast<double>(best.ask_price) + static_cast<double>(best.bid_price)) / 2.0;
}

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

inline std::int64_t parse_int(const std::string& s, const char* what, std::size_t line) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " value '" + s + "'", line);
    }
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace detail

inline EventKind parse_event_kind(const std::string& s, std::size_t line) {
    if (s == "Submission") return EventKind::Submission;
    if (s == "Cancellation") return EventKind::Cancellation;
    if (s == "Execution") return EventKind::Execution;
    throw ParseError("unknown event kind '" + s + "'", line);
}

inline Side parse_side(const std::string& s, std::size_t line) {
    if (s == "Ask") return Side::Ask;
    if (s == "Bid") return Side::Bid;
    throw ParseError("unknown side '" + s + "'", line);
}

/// Parses a message CSV with header `timestamp,id,price,quantity,event,side`.
/// Rows are ingested verbatim and in file order; timestamps must be non-decreasing.
inline std::vector<MessageEvent> parse_message_stream(std::istream& in) {
    std::vector<MessageEvent> events;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) return events;  // empty file
    ++lineno;
    if (detail::trim(line) != "timestamp,id,price,quantity,event,side")
        throw ParseError("bad message CSV header", lineno);
    std::int64_t prev_ts = std::numeric_limits<std::int64_t>::min();
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto f = detail::split_csv_row(line);
        if (f.size() != 6) throw ParseError("expected 6 fields", lineno);
        MessageEvent ev;
        ev.timestamp_ms = detail::parse_int(f[0], "timestamp", lineno);
        ev.order_id = detail::parse_int(f[1], "id", lineno);
        ev.price = detail::parse_int(f[2], "price", lineno);
        ev.quantity = detail::parse_int(f[3], "quantity", lineno);
        ev.kind = parse_event_kind(detail::trim(f[4]), lineno);
        ev.side = parse_side(detail::trim(f[5]), lineno);
        if (ev.quantity <= 0) throw ParseError("quantity must be > 0", lineno);
        if (ev.price <= 0) throw ParseError("price must be > 0", lineno);
        if (ev.timestamp_ms < prev_ts) throw ParseError("timestamp regression", lineno);
        prev_ts = ev.timestamp_ms;
        events.push_back(ev);
    }
    return events;
}

inline std::vector<MessageEvent> parse_message_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_message_stream(in);
}

/// Parses an order-book CSV: header `timestamp` + ask_price_k,ask_vol_k,bid_price_k,bid_vol_k
/// for k = 1..10, one snapshot per event row.
inline std::vector<LobSnapshot> parse_book_stream(std::istream& in, int levels = kBookLevels) {
    std::vector<LobSnapshot> snaps;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) return snaps;
    ++lineno;  // header checked only for the leading column name
    if (detail::trim(line).rfind("timestamp", 0) != 0)
        throw ParseError("bad book CSV header", lineno);
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto f = detail::split_csv_row(line);
        if (f.size() != static_cast<std::size_t>(1 + 4 * levels))
            throw ParseError("expected " + std::to_string(1 + 4 * levels) + " fields", lineno);
        LobSnapshot s;
        s.timestamp_ms = detail::parse_int(f[0], "timestamp", lineno);
        s.levels.resize(levels);
        for (int k = 0; k < levels; ++k) {
            auto& lv = s.levels[k];
            lv.ask_price = detail::parse_int(f[1 + 4 * k + 0], "ask_price", lineno);
            lv.ask_volume = detail::parse_int(f[1 + 4 * k + 1], "ask_vol", lineno);
            lv.bid_price = detail::parse_int(f[1 + 4 * k + 2], "bid_price", lineno);
            lv.bid_volume = detail::parse_int(f[1 + 4 * k + 3], "bid_vol", lineno);
            if (lv.ask_volume <= 0 || lv.bid_volume <= 0)
                throw ParseError("volumes must be > 0", lineno);
        }
        if (s.levels.front().ask_price <= s.levels.front().bid_price)
            throw ParseError("crossed book", lineno);
        for (int k = 1; k < levels; ++k) {
            if (s.levels[k].ask_price <= s.levels[k - 1].ask_price)
                throw ParseError("ask ladder not increasing", lineno);
            if (s.levels[k].bid_price >= s.levels[k - 1].bid_price)
                throw ParseError("bid ladder not decreasing", lineno);
        }
        snaps.push_back(std::move(s));
    }
    return snaps;
}

inline std::vector<LobSnapshot> parse_book_file(const std::string& path, int levels = kBookLevels) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_book_stream(in, levels);
}

/// OHLC over the block's 10 mid-prices; volume is the sum of event quantities.
inline OhlcBar derive_bar(const Block& block) {
    OhlcBar bar;
    bar.open = mid_price(block.snapshots.front());
    bar.close = mid_price(block.snapshots.back());
    bar.high = bar.open;
    bar.low = bar.open;
    bar.volume = 0;
    for (std::size_t i = 0; i < block.snapshots.size(); ++i) {
        double m = mid_price(block.snapshots[i]);
        bar.high = std::max(bar.high, m);
        bar.low = std::min(bar.low, m);
        bar.volume += block.events[i].quantity;
    }
    return bar;
}

/// Consecutive non-overlapping 10-event blocks; the trailing remainder is dropped.
inline std::vector<Block> segment_blocks(const std::vector<MessageEvent>& events,
                                         const std::vector<LobSnapshot>& snapshots) {
    if (events.size() != snapshots.size())
        throw std::invalid_argument("events/snapshots length mismatch");
    std::vector<Block> blocks;
    const std::size_t n = events.size() / kBlockEvents;
    blocks.reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
        Block blk;
        blk.index = b;
        blk.events.assign(events.begin() + b * kBlockEvents,
                          events.begin() + (b + 1) * kBlockEvents);
        blk.snapshots.assign(snapshots.begin() + b * kBlockEvents,
                             snapshots.begin() + (b + 1) * kBlockEvents);
        blk.bar = derive_bar(blk);
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

}  // namespace lobfeat
