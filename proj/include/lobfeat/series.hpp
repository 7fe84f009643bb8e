#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lobfeat {

using Series = std::vector<double>;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline bool warm(double x) { return std::isfinite(x); }

/// Simple moving average; NaN during warm-up (t < n-1). NaN inputs propagate
/// so cascaded averages keep consistent warm-up accounting.
inline Series sma(const Series& x, int n) {
    if (n <= 0) throw std::invalid_argument("sma: n must be >= 1");
    Series out(x.size(), kNaN);
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (t + 1 < static_cast<std::size_t>(n)) continue;
        double s = 0;
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            double v = x[t - j];
            if (!warm(v)) { ok = false; break; }
            s += v;
        }
        if (ok) out[t] = s / n;
    }
    return out;
}

/// Exponential moving average, alpha = 2/(n+1), seeded with SMA_n at the first
/// index where a full window of warm inputs exists.
inline Series ema(const Series& x, int n) {
    if (n <= 0) throw std::invalid_argument("ema: n must be >= 1");
    const double alpha = 2.0 / (n + 1);
    Series out(x.size(), kNaN);
    double state = kNaN;
    int warm_count = 0;
    double window_sum = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        double v = x[t];
        if (!warm(v)) { warm_count = 0; window_sum = 0; state = kNaN; continue; }
        if (warm(state)) {
            state = alpha * v + (1 - alpha) * state;
            out[t] = state;
        } else {
            window_sum += v;
            if (++warm_count == n) {
                state = window_sum / n;
                out[t] = state;
            }
        }
    }
    return out;
}

/// Weighted moving average with linear weights 1..n (most recent = n).
inline Series wma(const Series& x, int n) {
    if (n <= 0) throw std::invalid_argument("wma: n must be >= 1");
    const double denom = n * (n + 1) / 2.0;
    Series out(x.size(), kNaN);
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (t + 1 < static_cast<std::size_t>(n)) continue;
        double s = 0;
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            double v = x[t - j];
            if (!warm(v)) { ok = false; break; }
            s += (n - j) * v;
        }
        if (ok) out[t] = s / denom;
    }
    return out;
}

/// Rolling max over the trailing n values (inclusive of t).
inline Series rolling_max(const Series& x, int n) {
    Series out(x.size(), kNaN);
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (t + 1 < static_cast<std::size_t>(n)) continue;
        double m = -std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            double v = x[t - j];
            if (!warm(v)) { ok = false; break; }
            m = std::max(m, v);
        }
        if (ok) out[t] = m;
    }
    return out;
}

inline Series rolling_min(const Series& x, int n) {
    Series out(x.size(), kNaN);
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (t + 1 < static_cast<std::size_t>(n)) continue;
        double m = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            double v = x[t - j];
            if (!warm(v)) { ok = false; break; }
            m = std::min(m, v);
        }
        if (ok) out[t] = m;
    }
    return out;
}

/// Population standard deviation over the trailing n values.
inline Series rolling_std(const Series& x, int n) {
    Series out(x.size(), kNaN);
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (t + 1 < static_cast<std::size_t>(n)) continue;
        double mean = 0;
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            if (!warm(x[t - j])) { ok = false; break; }
            mean += x[t - j];
        }
        if (!ok) continue;
        mean /= n;
        double ss = 0;
        for (int j = 0; j < n; ++j) ss += (x[t - j] - mean) * (x[t - j] - mean);
        out[t] = std::sqrt(ss / n);
    }
    return out;
}

/// Lagged difference x[t] - x[t-k]; NaN for t < k.
inline Series diff(const Series& x, int k = 1) {
    Series out(x.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(k); t < x.size(); ++t) {
        if (warm(x[t]) && warm(x[t - k])) out[t] = x[t] - x[t - k];
    }
    return out;
}

inline Series shift(const Series& x, int k) {
    Series out(x.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(k); t < x.size(); ++t) out[t] = x[t - k];
    return out;
}

inline Series combine(const Series& a, const Series& b, double (*op)(double, double)) {
    Series out(a.size(), kNaN);
    for (std::size_t t = 0; t < a.size(); ++t)
        if (warm(a[t]) && warm(b[t])) out[t] = op(a[t], b[t]);
    return out;
}

inline Series sub(const Series& a, const Series& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}

inline Series add(const Series& a, const Series& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}

}  // namespace lobfeat
