#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "lobfeat/lob.hpp"
#include "lobfeat/series.hpp"

namespace lobfeat {

/// Time-ordered OHLC arrays over the block sequence.
struct BarSeries {
    Series open, high, low, close, volume;

    std::size_t size() const { return close.size(); }

    Series mid() const {  // (H+L)/2, the paper's M_t
        Series m(size());
        for (std::size_t t = 0; t < size(); ++t) m[t] = (high[t] + low[t]) / 2.0;
        return m;
    }

    static BarSeries from_blocks(const std::vector<Block>& blocks) {
        BarSeries bs;
        bs.open.reserve(blocks.size());
        for (const auto& b : blocks) {
            bs.open.push_back(b.bar.open);
            bs.high.push_back(b.bar.high);
            bs.low.push_back(b.bar.low);
            bs.close.push_back(b.bar.close);
            bs.volume.push_back(static_cast<double>(b.bar.volume));
        }
        return bs;
    }
};

namespace ind {

// ---- volume / accumulation ------------------------------------------------

/// Accumulation distribution line; money-flow multiplier is 0 on flat bars.
inline Series adl(const BarSeries& b) {
    Series out(b.size(), kNaN);
    double acc = 0;
    for (std::size_t t = 0; t < b.size(); ++t) {
        double range = b.high[t] - b.low[t];
        double mfm = range > 0 ? ((b.close[t] - b.low[t]) - (b.high[t] - b.close[t])) / range : 0.0;
        acc += mfm * b.volume[t];
        out[t] = acc;
    }
    return out;
}

// ---- oscillators ----------------------------------------------------------

inline Series awesome_oscillator(const BarSeries& b) {
    Series m = b.mid();
    return sub(sma(m, 5), sma(m, 34));
}

inline Series accelerator_oscillator(const BarSeries& b) {
    Series ao = awesome_oscillator(b);
    return sub(ao, sma(ao, 5));
}

inline Series true_range(const BarSeries& b) {
    Series tr(b.size(), kNaN);
    for (std::size_t t = 1; t < b.size(); ++t) {
        tr[t] = std::max({b.high[t] - b.low[t], std::abs(b.high[t] - b.close[t - 1]),
                          std::abs(b.low[t] - b.close[t - 1])});
    }
    return tr;
}

/// Wilder average true range: seeded with the plain mean of the first n true
/// ranges, then ATR = (ATR_prev * (n-1) + TR) / n.
inline Series atr(const BarSeries& b, int n = 14) {
    Series tr = true_range(b);
    Series out(b.size(), kNaN);
    double state = kNaN;
    int count = 0;
    double s = 0;
    for (std::size_t t = 1; t < b.size(); ++t) {
        if (warm(state)) {
            state = (state * (n - 1) + tr[t]) / n;
            out[t] = state;
        } else {
            s += tr[t];
            if (++count == n) {
                state = s / n;
                out[t] = state;
            }
        }
    }
    return out;
}

struct AdxResult {
    Series adx, adxr;
};

/// Directional index family with Wilder smoothing recursions seeded by plain
/// sums over the first 14 blocks. Directional movements are the raw high/low
/// differences.
inline AdxResult adx_family(const BarSeries& b, int n = 14) {
    const std::size_t N = b.size();
    Series tr = true_range(b);
    Series dx(N, kNaN);
    double tr_n = 0, dmp_n = 0, dmm_n = 0;
    int count = 0;
    bool seeded = false;
    for (std::size_t t = 1; t < N; ++t) {
        double dmp = b.high[t] - b.high[t - 1];
        double dmm = b.low[t] - b.low[t - 1];
        if (!seeded) {
            tr_n += tr[t];
            dmp_n += dmp;
            dmm_n += dmm;
            if (++count == n) seeded = true;
        } else {
            tr_n = tr_n - tr_n / n + tr[t];
            dmp_n = dmp_n - dmp_n / n + dmp;
            dmm_n = dmm_n - dmm_n / n + dmm;
        }
        if (seeded) {
            double dip = tr_n != 0 ? 100.0 * dmp_n / tr_n : 0.0;
            double dim = tr_n != 0 ? 100.0 * dmm_n / tr_n : 0.0;
            double denom = std::abs(dip + dim);
            dx[t] = denom != 0 ? 100.0 * std::abs(dip - dim) / denom : 0.0;
        }
    }
    AdxResult r{Series(N, kNaN), Series(N, kNaN)};
    double adx_state = kNaN;
    double dx_sum = 0;
    int dx_count = 0;
    for (std::size_t t = 0; t < N; ++t) {
        if (!warm(dx[t])) continue;
        if (warm(adx_state)) {
            adx_state = (adx_state * (n - 1) + dx[t]) / n;
        } else {
            dx_sum += dx[t];
            if (++dx_count == n) adx_state = dx_sum / n;
        }
        if (warm(adx_state)) r.adx[t] = adx_state;
    }
    for (std::size_t t = 1; t < N; ++t)
        if (warm(r.adx[t]) && warm(r.adx[t - 1])) r.adxr[t] = (r.adx[t] + r.adx[t - 1]) / 2.0;
    return r;
}

struct AlligatorResult {
    Series jaw, teeth, lips;
};

inline AlligatorResult alligator(const BarSeries& b) {
    Series m = b.mid();
    return {sma(m, 13), sma(m, 8), sma(m, 5)};
}

inline Series apo(const BarSeries& b) {
    Series m = b.mid();
    return sub(ema(m, 5), ema(m, 13));
}

struct AroonResult {
    Series up, down, osc;
};

/// Blocks-since-extreme form over a 20-block window (most recent extreme wins
/// ties).
inline AroonResult aroon(const BarSeries& b, int n = 20) {
    const std::size_t N = b.size();
    AroonResult r{Series(N, kNaN), Series(N, kNaN), Series(N, kNaN)};
    for (std::size_t t = 0; t < N; ++t) {
        if (t + 1 < static_cast<std::size_t>(n)) continue;
        int since_high = 0, since_low = 0;
        for (int j = 1; j < n; ++j) {
            if (b.high[t - j] > b.high[t - since_high]) since_high = j;
            if (b.low[t - j] < b.low[t - since_low]) since_low = j;
        }
        r.up[t] = (n - since_high) / static_cast<double>(n) * 100.0;
        r.down[t] = (n - since_low) / static_cast<double>(n) * 100.0;
        r.osc[t] = r.up[t] - r.down[t];
    }
    return r;
}

struct BandsResult {
    Series middle, upper, lower;
};

inline BandsResult bollinger(const BarSeries& b, int n = 20, double k = 2.0) {
    Series mid = sma(b.close, n);
    Series sd = rolling_std(b.close, n);
    BandsResult r{mid, Series(b.size(), kNaN), Series(b.size(), kNaN)};
    for (std::size_t t = 0; t < b.size(); ++t) {
        if (warm(mid[t]) && warm(sd[t])) {
            r.upper[t] = mid[t] + k * sd[t];
            r.lower[t] = mid[t] - k * sd[t];
        }
    }
    return r;
}

struct IchimokuResult {
    Series conversion, base, span_a, span_b, lagging;
};

inline IchimokuResult ichimoku(const BarSeries& b) {
    auto channel_mid = [&](int n) {
        Series hh = rolling_max(b.high, n), ll = rolling_min(b.low, n);
        Series out(b.size(), kNaN);
        for (std::size_t t = 0; t < b.size(); ++t)
            if (warm(hh[t]) && warm(ll[t])) out[t] = (hh[t] + ll[t]) / 2.0;
        return out;
    };
    IchimokuResult r;
    r.conversion = channel_mid(9);
    r.base = channel_mid(26);
    r.span_a = Series(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(r.conversion[t]) && warm(r.base[t]))
            r.span_a[t] = (r.conversion[t] + r.base[t]) / 2.0;
    r.span_b = channel_mid(52);
    r.lagging = shift(b.close, 26);
    return r;
}

/// Chande momentum oscillator over the last n close differences; 0 on a flat
/// window.
inline Series cmo(const BarSeries& b, int n = 19) {
    Series out(b.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(n); t < b.size(); ++t) {
        double su = 0, sd = 0;
        for (int j = 0; j < n; ++j) {
            double d = b.close[t - j] - b.close[t - j - 1];
            if (d > 0) su += d;
            else sd -= d;
        }
        out[t] = (su + sd) != 0 ? 100.0 * (su - sd) / (su + sd) : 0.0;
    }
    return out;
}

inline Series chaikin_oscillator(const BarSeries& b) {
    Series a = adl(b);
    return sub(ema(a, 3), ema(a, 10));
}

struct ChandelierResult {
    Series exit_long, exit_short;
};

inline ChandelierResult chandelier_exit(const BarSeries& b, int n = 22, double k = 3.0) {
    Series hh = rolling_max(b.high, n), ll = rolling_min(b.low, n), a = atr(b, n);
    ChandelierResult r{Series(b.size(), kNaN), Series(b.size(), kNaN)};
    for (std::size_t t = 0; t < b.size(); ++t) {
        if (warm(hh[t]) && warm(a[t])) r.exit_long[t] = hh[t] - a[t] * k;
        if (warm(ll[t]) && warm(a[t])) r.exit_short[t] = ll[t] + a[t] * k;
    }
    return r;
}

/// Center of gravity over a 10-block window of mid prices; weights grow
/// linearly with age (most recent weight 1).
inline Series cog(const BarSeries& b, int n = 10) {
    Series m = b.mid();
    Series out(b.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(n - 1); t < b.size(); ++t) {
        double num = 0, den = 0;
        for (int j = 0; j < n; ++j) {
            num += (j + 1) * m[t - j];
            den += m[t - j];
        }
        out[t] = den != 0 ? -num / den : 0.0;
    }
    return out;
}

inline BandsResult donchian(const BarSeries& b, int n = 20) {
    Series up = rolling_max(b.high, n), lo = rolling_min(b.low, n);
    BandsResult r{Series(b.size(), kNaN), up, lo};
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(up[t]) && warm(lo[t])) r.middle[t] = (up[t] + lo[t]) / 2.0;
    return r;
}

inline Series dema(const BarSeries& b, int n = 20) {
    Series m = b.mid();
    Series e1 = ema(m, n);
    Series e2 = ema(e1, n);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(e1[t]) && warm(e2[t])) out[t] = 2.0 * e1[t] - e2[t];
    return out;
}

/// Detrended price oscillator, literal form: highest high over 10 blocks
/// divided by 12, minus SMA_10 of closes.
inline Series dpo_paper(const BarSeries& b) {
    Series hh = rolling_max(b.high, 10);
    Series s = sma(b.close, 10);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(hh[t]) && warm(s[t])) out[t] = hh[t] / 12.0 - s[t];
    return out;
}

/// Standard displaced form: close shifted back by 10/2+1 minus SMA_10.
inline Series dpo_standard(const BarSeries& b) {
    Series sh = shift(b.close, 6);
    return sub(sh, sma(b.close, 10));
}

struct HeikinResult {
    Series open, high, low, close;
};

inline HeikinResult heikin_ashi(const BarSeries& b) {
    const std::size_t N = b.size();
    HeikinResult r{Series(N, kNaN), Series(N, kNaN), Series(N, kNaN), Series(N, kNaN)};
    for (std::size_t t = 0; t < N; ++t) {
        r.close[t] = (b.open[t] + b.high[t] + b.low[t] + b.close[t]) / 4.0;
        if (t >= 1) {
            r.open[t] = (b.open[t - 1] + b.close[t - 1]) / 2.0;
            r.high[t] = std::max({b.high[t], b.open[t - 1], b.close[t - 1]});
            r.low[t] = std::min({b.low[t], b.open[t - 1], b.close[t - 1]});
        }
    }
    return r;
}

inline Series hull_ma(const BarSeries& b) {
    Series m = b.mid();
    Series w5 = wma(m, 5), w10 = wma(m, 10);
    Series d(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(w5[t]) && warm(w10[t])) d[t] = 2.0 * w5[t] - w10[t];
    return wma(d, 3);  // round(sqrt(10)) final smoothing
}

inline Series ibs(const BarSeries& b) {
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t) {
        double range = b.high[t] - b.low[t];
        out[t] = range > 0 ? (b.close[t] - b.low[t]) / range : 0.5;
    }
    return out;
}

inline BandsResult keltner(const BarSeries& b) {
    Series m = b.mid();
    Series mid = ema(m, 20);
    Series a = atr(b, 10);
    BandsResult r{mid, Series(b.size(), kNaN), Series(b.size(), kNaN)};
    for (std::size_t t = 0; t < b.size(); ++t) {
        if (warm(mid[t]) && warm(a[t])) {
            r.upper[t] = mid[t] + 2.0 * a[t];
            r.lower[t] = mid[t] - 2.0 * a[t];
        }
    }
    return r;
}

inline Series macd(const BarSeries& b) {
    Series m = b.mid();
    return sub(ema(m, 12), ema(m, 26));
}

inline Series ppo(const BarSeries& b) {
    Series m = b.mid();
    Series e26 = ema(m, 26);
    Series md = sub(ema(m, 12), e26);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(md[t]) && warm(e26[t])) out[t] = e26[t] != 0 ? md[t] / e26[t] * 100.0 : 0.0;
    return out;
}

inline Series momentum(const BarSeries& b) { return diff(b.close, 1); }

struct VmaResult {
    Series vma, er;
};

/// Chande variable moving average with a 3-block efficiency ratio,
/// alpha = 2/(3+1); seeded with the close at the first defined ratio.
inline VmaResult vma(const BarSeries& b) {
    const std::size_t N = b.size();
    const double alpha = 0.5;
    VmaResult r{Series(N, kNaN), Series(N, kNaN)};
    double state = kNaN;
    for (std::size_t t = 3; t < N; ++t) {
        double direction = std::abs(b.close[t] - b.close[t - 3]);
        double vol = 0;
        for (int j = 0; j < 3; ++j) vol += std::abs(b.close[t - j] - b.close[t - j - 1]);
        vol *= 3.0;
        double er = vol != 0 ? direction / vol : 0.0;
        r.er[t] = er;
        if (!warm(state)) state = b.close[t];
        else state = alpha * er * b.close[t] + (1.0 - alpha * er) * state;
        r.vma[t] = state;
    }
    return r;
}

inline Series natr(const BarSeries& b) {
    Series a = atr(b, 14);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(a[t])) out[t] = b.close[t] != 0 ? a[t] / b.close[t] * 100.0 : 0.0;
    return out;
}

inline Series roc(const BarSeries& b, int n = 12) {
    Series out(b.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(n); t < b.size(); ++t)
        out[t] = b.close[t - n] != 0 ? (b.close[t] - b.close[t - n]) / b.close[t - n] * 100.0 : 0.0;
    return out;
}

/// RSI from plain gain/loss sums over the last n close differences.
/// Flat window emits the neutral 50.
inline Series rsi(const BarSeries& b, int n = 14) {
    Series out(b.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(n); t < b.size(); ++t) {
        double gain = 0, loss = 0;
        for (int j = 0; j < n; ++j) {
            double d = b.close[t - j] - b.close[t - j - 1];
            if (d > 0) gain += d;
            else loss -= d;
        }
        if (gain == 0 && loss == 0) out[t] = 50.0;
        else if (loss == 0) out[t] = 100.0;
        else out[t] = 100.0 - 100.0 / (1.0 + gain / loss);
    }
    return out;
}

/// Parabolic stop-and-reverse. AF starts at 0.02, steps by 0.02 on a new
/// extreme, capped at 0.2; the extreme point tracks a 5-block channel; the
/// initial trend is the sign of the first momentum value.
inline Series psar(const BarSeries& b) {
    const std::size_t N = b.size();
    Series out(N, kNaN);
    if (N < 2) return out;
    const double af_step = 0.02, af_cap = 0.2;
    bool uptrend = b.close[1] >= b.close[0];
    double sar = uptrend ? std::min(b.low[0], b.low[1]) : std::max(b.high[0], b.high[1]);
    double ep = uptrend ? std::max(b.high[0], b.high[1]) : std::min(b.low[0], b.low[1]);
    double af = af_step;
    out[1] = sar;
    auto channel_ep = [&](std::size_t t, bool up) {
        int w = static_cast<int>(std::min<std::size_t>(5, t + 1));
        double e = up ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
        for (int j = 0; j < w; ++j)
            e = up ? std::max(e, b.high[t - j]) : std::min(e, b.low[t - j]);
        return e;
    };
    for (std::size_t t = 2; t < N; ++t) {
        sar = sar + af * (ep - sar);
        if (uptrend) {
            sar = std::min({sar, b.low[t - 1], b.low[t - 2]});
            if (b.low[t] < sar) {  // reversal to downtrend
                uptrend = false;
                sar = ep;
                ep = channel_ep(t, false);
                af = af_step;
            } else {
                double e = channel_ep(t, true);
                if (e > ep) {
                    ep = e;
                    af = std::min(af + af_step, af_cap);
                }
            }
        } else {
            sar = std::max({sar, b.high[t - 1], b.high[t - 2]});
            if (b.high[t] > sar) {  // reversal to uptrend
                uptrend = true;
                sar = ep;
                ep = channel_ep(t, true);
                af = af_step;
            } else {
                double e = channel_ep(t, false);
                if (e < ep) {
                    ep = e;
                    af = std::min(af + af_step, af_cap);
                }
            }
        }
        out[t] = sar;
    }
    return out;
}

struct StdDevResult {
    Series deviation, sasd;
};

inline StdDevResult std_deviation(const BarSeries& b, int n = 10) {
    Series s = sma(b.close, n);
    Series dev = sub(b.close, s);
    Series dev2(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(dev[t])) dev2[t] = dev[t] * dev[t];
    Series sasd = sma(dev2, n);
    for (auto& v : sasd)
        if (warm(v)) v = std::sqrt(v);
    return {dev, sasd};
}

inline Series stoch_rsi(const BarSeries& b, int n = 10) {
    Series r = rsi(b);
    Series hi = rolling_max(r, n), lo = rolling_min(r, n);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t) {
        if (!warm(hi[t]) || !warm(lo[t])) continue;
        double range = hi[t] - lo[t];
        out[t] = range > 0 ? (r[t] - lo[t]) / range : 0.5;
    }
    return out;
}

/// T3 from the cascade of six EMA_10 passes and the volume-factor polynomial
/// coefficients (they sum to 1, so a constant series maps to itself).
inline Series t3(const BarSeries& b, double volume_factor = 0.7) {
    const double a = volume_factor;
    const double c1 = -a * a * a;
    const double c2 = 3 * a * a + 3 * a * a * a;
    const double c3 = -6 * a * a - 3 * a - 3 * a * a * a;
    const double c4 = 1 + 3 * a + a * a * a + 3 * a * a;
    Series e = b.close;
    std::vector<Series> cascade;
    for (int k = 0; k < 6; ++k) {
        e = ema(e, 10);
        cascade.push_back(e);
    }
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(cascade[5][t]))
            out[t] = c1 * cascade[5][t] + c2 * cascade[4][t] + c3 * cascade[3][t] +
                     c4 * cascade[2][t];
    return out;
}

inline Series tema(const BarSeries& b) {
    Series e1 = ema(b.close, 10);
    Series e2 = ema(e1, 10);
    Series e3 = ema(e2, 10);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(e3[t])) out[t] = 3.0 * e1[t] - 3.0 * e2[t] + e3[t];
    return out;
}

inline Series trima(const BarSeries& b) { return sma(sma(sma(b.close, 10), 10), 10); }

inline Series trix(const BarSeries& b) {
    Series e3 = ema(ema(ema(b.close, 10), 10), 10);
    Series out(b.size(), kNaN);
    for (std::size_t t = 1; t < b.size(); ++t)
        if (warm(e3[t]) && warm(e3[t - 1]))
            out[t] = e3[t - 1] != 0 ? (e3[t] - e3[t - 1]) / e3[t - 1] * 100.0 : 0.0;
    return out;
}

inline Series tsi(const BarSeries& b) {
    Series pc = diff(b.close, 1);
    Series apc(pc.size(), kNaN);
    for (std::size_t t = 0; t < pc.size(); ++t)
        if (warm(pc[t])) apc[t] = std::abs(pc[t]);
    Series num = ema(ema(pc, 25), 13);
    Series den = ema(ema(apc, 25), 13);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t)
        if (warm(num[t]) && warm(den[t])) out[t] = den[t] != 0 ? 100.0 * num[t] / den[t] : 0.0;
    return out;
}

/// Ultimate oscillator; buying-pressure / true-range ratios fall back to the
/// neutral 0.5 when a window's true range sums to zero.
inline Series ultimate_oscillator(const BarSeries& b) {
    const std::size_t N = b.size();
    Series bp(N, kNaN), tr(N, kNaN);
    for (std::size_t t = 1; t < N; ++t) {
        double lo = std::min(b.low[t], b.close[t - 1]);
        double hi = std::max(b.high[t], b.close[t - 1]);
        bp[t] = b.close[t] - lo;
        tr[t] = hi - lo;
    }
    auto avg = [&](std::size_t t, int n) {
        double sb = 0, st = 0;
        for (int j = 0; j < n; ++j) {
            sb += bp[t - j];
            st += tr[t - j];
        }
        return st != 0 ? sb / st : 0.5;
    };
    Series out(N, kNaN);
    for (std::size_t t = 28; t < N; ++t)
        out[t] = 100.0 * (4.0 * avg(t, 7) + 2.0 * avg(t, 14) + avg(t, 28)) / 7.0;
    return out;
}

inline Series wcl(const BarSeries& b) {
    Series out(b.size());
    for (std::size_t t = 0; t < b.size(); ++t)
        out[t] = (b.high[t] + b.low[t] + 2.0 * b.close[t]) / 4.0;
    return out;
}

inline Series williams_r(const BarSeries& b, int n = 14) {
    Series hh = rolling_max(b.high, n), ll = rolling_min(b.low, n);
    Series out(b.size(), kNaN);
    for (std::size_t t = 0; t < b.size(); ++t) {
        if (!warm(hh[t]) || !warm(ll[t])) continue;
        double range = hh[t] - ll[t];
        out[t] = range > 0 ? -100.0 * (hh[t] - b.close[t]) / range : -50.0;
    }
    return out;
}

/// With N = 1 the lag term vanishes and ZLEMA reduces to EMA_10 of closes.
inline Series zlema(const BarSeries& b) { return ema(b.close, 10); }

struct FractalResult {
    Series buy, sell;  // 0/1 bits, pattern center two blocks back
};

/// Five-block fractal on one price series: a strict center extreme flanked by
/// two lower (buy) or higher (sell) values on each side.
inline FractalResult fractals(const Series& s) {
    const std::size_t N = s.size();
    FractalResult r{Series(N, kNaN), Series(N, kNaN)};
    for (std::size_t t = 4; t < N; ++t) {
        double c = s[t - 2];
        bool is_max = c > s[t - 4] && c > s[t - 3] && c > s[t - 1] && c > s[t];
        bool is_min = c < s[t - 4] && c < s[t - 3] && c < s[t - 1] && c < s[t];
        r.buy[t] = is_max ? 1.0 : 0.0;
        r.sell[t] = is_min ? 1.0 : 0.0;
    }
    return r;
}

struct LrlResult {
    Series slope, intercept, corr, corr_sq;
};

/// Least-squares line of the last n closes against block offsets 1..n.
/// Zero-variance windows emit flagged zeros for the correlation terms.
inline LrlResult linear_regression_line(const BarSeries& b, int n = 10) {
    const std::size_t N = b.size();
    LrlResult r{Series(N, kNaN), Series(N, kNaN), Series(N, kNaN), Series(N, kNaN)};
    const double xbar = (n + 1) / 2.0;
    double sxx = 0;
    for (int i = 1; i <= n; ++i) sxx += (i - xbar) * (i - xbar);
    for (std::size_t t = static_cast<std::size_t>(n - 1); t < N; ++t) {
        double ybar = 0;
        for (int i = 0; i < n; ++i) ybar += b.close[t - n + 1 + i];
        ybar /= n;
        double sxy = 0, syy = 0;
        for (int i = 0; i < n; ++i) {
            double dy = b.close[t - n + 1 + i] - ybar;
            sxy += (i + 1 - xbar) * dy;
            syy += dy * dy;
        }
        double slope = sxy / sxx;
        r.slope[t] = slope;
        r.intercept[t] = ybar - slope * xbar;
        if (syy > 0) {
            double corr = sxy / std::sqrt(sxx * syy);
            r.corr[t] = corr;
            r.corr_sq[t] = corr * corr;
        } else {
            r.corr[t] = 0.0;
            r.corr_sq[t] = 0.0;
        }
    }
    return r;
}

/// Fixed low-pass IIR in transfer-function form: b = [1/4 x 4], a = [1].
inline Series rational_filter(const BarSeries& b) {
    Series out(b.size(), kNaN);
    for (std::size_t t = 3; t < b.size(); ++t)
        out[t] = (b.close[t] + b.close[t - 1] + b.close[t - 2] + b.close[t - 3]) / 4.0;
    return out;
}

/// Forward-backward application of the 4-tap mean over one window. The two
/// passes combine into convolution with the symmetric kernel
/// [1,2,3,4,3,2,1]/16 (zero-padded at the edges), which makes the output
/// exactly equal to its own time-reversal on reversed input.
inline std::vector<double> zero_phase_window(const std::vector<double>& x) {
    static const double kernel[7] = {1 / 16.0, 2 / 16.0, 3 / 16.0, 4 / 16.0,
                                     3 / 16.0, 2 / 16.0, 1 / 16.0};
    const int n = static_cast<int>(x.size());
    std::vector<double> y(x.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = -3; k <= 3; ++k) {
            int j = i + k;
            if (j >= 0 && j < n) y[i] += kernel[k + 3] * x[j];
        }
    return y;
}

/// Zero-phase filtered value at the newest sample of a trailing 10-block
/// window of closes.
inline Series zero_phase(const BarSeries& b, int window = 10) {
    Series out(b.size(), kNaN);
    std::vector<double> buf(window);
    for (std::size_t t = static_cast<std::size_t>(window - 1); t < b.size(); ++t) {
        for (int i = 0; i < window; ++i) buf[i] = b.close[t - window + 1 + i];
        out[t] = zero_phase_window(buf).back();
    }
    return out;
}

/// Savitzky-Golay endpoint smoother: fit a degree-d polynomial to the last
/// `window` closes (unit weights, abscissae -(window-1)..0) and evaluate it at
/// the newest sample. The fit weights are a fixed linear functional of the
/// window, computed once from the normal equations.
inline Series savgol(const BarSeries& b, int window = 9, int degree = 3) {
    const int w = window, d = degree;
    if (w <= d) throw std::invalid_argument("savgol: window must exceed degree");
    Eigen::MatrixXd X(w, d + 1);
    for (int i = 0; i < w; ++i) {
        double x = static_cast<double>(i - (w - 1));
        double p = 1.0;
        for (int j = 0; j <= d; ++j) {
            X(i, j) = p;
            p *= x;
        }
    }
    // p(0) is the constant coefficient, so the weights are the first row of
    // (X^T X)^-1 X^T.
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(d + 1);
    e0(0) = 1.0;
    Eigen::VectorXd weights = X * (X.transpose() * X).ldlt().solve(e0);
    Series out(b.size(), kNaN);
    for (std::size_t t = static_cast<std::size_t>(w - 1); t < b.size(); ++t) {
        double s = 0;
        for (int i = 0; i < w; ++i) s += weights(i) * b.close[t - w + 1 + i];
        out[t] = s;
    }
    return out;
}

struct DetrendResult {
    Series offset, intercept, slope;
};

inline DetrendResult offset_detrend(const BarSeries& b, int n = 10) {
    Series s = sma(b.close, n);
    LrlResult lrl = linear_regression_line(b, n);
    DetrendResult r{sub(b.close, s), lrl.intercept, lrl.slope};
    return r;
}

/// Beta of close-price index returns against the SMA_10 index returns.
inline Series beta(const BarSeries& b, int n = 10) {
    const std::size_t N = b.size();
    Series avg = sma(b.close, n);
    Series idx_cl(N, kNaN), idx_av(N, kNaN);
    for (std::size_t t = 1; t < N; ++t) {
        if (b.close[t - 1] != 0) idx_cl[t] = b.close[t] / b.close[t - 1];
        if (warm(avg[t]) && warm(avg[t - 1]) && avg[t - 1] != 0) idx_av[t] = avg[t] / avg[t - 1];
    }
    Series dev_cl = sub(idx_cl, sma(idx_cl, n));
    Series dev_av = sub(idx_av, sma(idx_av, n));
    Series out(N, kNaN);
    for (std::size_t t = 0; t < N; ++t) {
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            if (t < static_cast<std::size_t>(j) || !warm(dev_cl[t - j]) || !warm(dev_av[t - j])) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        double m1 = 0, m2 = 0;
        for (int j = 0; j < n; ++j) {
            m1 += dev_cl[t - j];
            m2 += dev_av[t - j];
        }
        m1 /= n;
        m2 /= n;
        double cov = 0, var = 0;
        for (int j = 0; j < n; ++j) {
            cov += (dev_cl[t - j] - m1) * (dev_av[t - j] - m2);
            var += (dev_av[t - j] - m2) * (dev_av[t - j] - m2);
        }
        out[t] = var > 0 ? cov / var : 0.0;
    }
    return out;
}

}  // namespace ind
}  // namespace lobfeat
