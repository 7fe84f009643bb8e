// Brute-force reference values for every technical feature column, built from
// the independent oracle implementations. Shared by the unit tests and the
// acceptance binary so both compare against the same frozen expectations.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace oracle_suite {

struct OracleCheck {
    std::string name;
    oracle::Vec ref;
    double tol;
};

inline oracle::Vec vsub(const oracle::Vec& a, const oracle::Vec& b) {
    oracle::Vec out(a.size(), oracle::nd());
    for (std::size_t t = 0; t < a.size(); ++t)
        if (oracle::ok(a[t]) && oracle::ok(b[t])) out[t] = a[t] - b[t];
    return out;
}

/// One entry per technical feature column, in no particular order.
inline std::vector<OracleCheck> technical_suite(const oracle::Vec& O, const oracle::Vec& H,
                                                const oracle::Vec& L, const oracle::Vec& C,
                                                const oracle::Vec& V) {
    const std::size_t N = C.size();
    std::vector<OracleCheck> out;
    auto add = [&](const std::string& name, oracle::Vec ref, double tol = 1e-9) {
        out.push_back({name, std::move(ref), tol});
    };

    oracle::Vec M = oracle::mid(H, L);

    oracle::Vec adl_ref = oracle::adl(H, L, C, V);
    add("tech.adl", adl_ref);

    oracle::Vec ao = vsub(oracle::sma(M, 5), oracle::sma(M, 34));
    add("tech.awesome_osc", ao);
    add("tech.accelerator_osc", vsub(ao, oracle::sma(ao, 5)));

    oracle::Vec adx_ref, adxr_ref;
    oracle::adx(H, L, C, adx_ref, adxr_ref);
    add("tech.adx", adx_ref, 1e-6);
    add("tech.adxr", adxr_ref, 1e-6);

    add("tech.alligator_jaw", oracle::sma(M, 13));
    add("tech.alligator_teeth", oracle::sma(M, 8));
    add("tech.alligator_lips", oracle::sma(M, 5));

    add("tech.apo", vsub(oracle::ema(M, 5), oracle::ema(M, 13)), 1e-6);

    oracle::Vec aru = oracle::aroon_up(H, 20), ard = oracle::aroon_down(L, 20);
    add("tech.aroon_up", aru);
    add("tech.aroon_down", ard);
    add("tech.aroon_osc", vsub(aru, ard));

    oracle::Vec atr14 = oracle::atr(H, L, C, 14);
    add("tech.atr", atr14, 1e-6);

    oracle::Vec bbm = oracle::sma(C, 20), bbs = oracle::roll_std(C, 20);
    oracle::Vec bbu(N, oracle::nd()), bbl(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(bbm[t])) {
            bbu[t] = bbm[t] + 2 * bbs[t];
            bbl[t] = bbm[t] - 2 * bbs[t];
        }
    add("tech.bb_middle", bbm);
    add("tech.bb_upper", bbu);
    add("tech.bb_lower", bbl);

    auto channel = [&](int n) {
        oracle::Vec ch(N, oracle::nd());
        for (std::size_t t = 0; t < N; ++t) {
            double hh = oracle::win_max(H, t, n), ll = oracle::win_min(L, t, n);
            if (oracle::ok(hh)) ch[t] = (hh + ll) / 2;
        }
        return ch;
    };
    oracle::Vec conv = channel(9), base = channel(26);
    oracle::Vec span_a(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(conv[t]) && oracle::ok(base[t])) span_a[t] = (conv[t] + base[t]) / 2;
    add("tech.ichimoku_conversion", conv);
    add("tech.ichimoku_base", base);
    add("tech.ichimoku_span_a", span_a);
    add("tech.ichimoku_span_b", channel(52));
    oracle::Vec lagging(N, oracle::nd());
    for (std::size_t t = 26; t < N; ++t) lagging[t] = C[t - 26];
    add("tech.ichimoku_lagging", lagging);

    add("tech.cmo", oracle::cmo(C, 19));
    add("tech.chaikin_osc", vsub(oracle::ema(adl_ref, 3), oracle::ema(adl_ref, 10)), 1e-6);

    oracle::Vec atr22 = oracle::atr(H, L, C, 22);
    oracle::Vec cel(N, oracle::nd()), ces(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t) {
        double hh = oracle::win_max(H, t, 22), ll = oracle::win_min(L, t, 22);
        if (oracle::ok(hh) && oracle::ok(atr22[t])) cel[t] = hh - 3 * atr22[t];
        if (oracle::ok(ll) && oracle::ok(atr22[t])) ces[t] = ll + 3 * atr22[t];
    }
    add("tech.chandelier_long", cel, 1e-6);
    add("tech.chandelier_short", ces, 1e-6);

    add("tech.cog", oracle::cog(M, 10));

    oracle::Vec dcu(N, oracle::nd()), dcl(N, oracle::nd()), dcm(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t) {
        dcu[t] = oracle::win_max(H, t, 20);
        dcl[t] = oracle::win_min(L, t, 20);
        if (oracle::ok(dcu[t])) dcm[t] = (dcu[t] + dcl[t]) / 2;
    }
    add("tech.donchian_upper", dcu);
    add("tech.donchian_lower", dcl);
    add("tech.donchian_middle", dcm);
    add("tech.highest_high", dcu);
    add("tech.lowest_low", dcl);

    oracle::Vec e1 = oracle::ema(M, 20), e2 = oracle::ema(e1, 20);
    oracle::Vec dema(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(e2[t])) dema[t] = 2 * e1[t] - e2[t];
    add("tech.dema", dema, 1e-6);

    oracle::Vec dpo(N, oracle::nd());
    {
        oracle::Vec s10_ = oracle::sma(C, 10);
        for (std::size_t t = 0; t < N; ++t) {
            double hh = oracle::win_max(H, t, 10);
            if (oracle::ok(hh) && oracle::ok(s10_[t])) dpo[t] = hh / 12.0 - s10_[t];
        }
    }
    add("tech.dpo", dpo);

    oracle::Vec hac(N, oracle::nd()), hao(N, oracle::nd()), hah(N, oracle::nd()),
        hal(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t) {
        hac[t] = (O[t] + H[t] + L[t] + C[t]) / 4;
        if (t >= 1) {
            hao[t] = (O[t - 1] + C[t - 1]) / 2;
            hah[t] = std::max({H[t], O[t - 1], C[t - 1]});
            hal[t] = std::min({L[t], O[t - 1], C[t - 1]});
        }
    }
    add("tech.heikin_close", hac);
    add("tech.heikin_open", hao);
    add("tech.heikin_high", hah);
    add("tech.heikin_low", hal);

    oracle::Vec w5 = oracle::wma(M, 5), w10 = oracle::wma(M, 10);
    oracle::Vec hull_in(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(w10[t])) hull_in[t] = 2 * w5[t] - w10[t];
    add("tech.hull_ma", oracle::wma(hull_in, 3));

    oracle::Vec ibs(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        ibs[t] = H[t] > L[t] ? (C[t] - L[t]) / (H[t] - L[t]) : 0.5;
    add("tech.ibs", ibs);

    oracle::Vec kem = oracle::ema(M, 20), atr10 = oracle::atr(H, L, C, 10);
    oracle::Vec keu(N, oracle::nd()), kel(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(kem[t]) && oracle::ok(atr10[t])) {
            keu[t] = kem[t] + 2 * atr10[t];
            kel[t] = kem[t] - 2 * atr10[t];
        }
    add("tech.keltner_middle", kem, 1e-6);
    add("tech.keltner_upper", keu, 1e-6);
    add("tech.keltner_lower", kel, 1e-6);

    oracle::Vec e12 = oracle::ema(M, 12), e26 = oracle::ema(M, 26);
    oracle::Vec macd = vsub(e12, e26);
    add("tech.macd", macd, 1e-6);
    oracle::Vec ppo(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(macd[t])) ppo[t] = e26[t] != 0 ? macd[t] / e26[t] * 100 : 0.0;
    add("tech.ppo", ppo, 1e-6);

    add("tech.median_price", M);

    oracle::Vec mom(N, oracle::nd());
    for (std::size_t t = 1; t < N; ++t) mom[t] = C[t] - C[t - 1];
    add("tech.momentum", mom);

    oracle::Vec er_ref;
    add("tech.vma", oracle::vma(C, &er_ref), 1e-6);
    add("tech.vma_er", er_ref);

    oracle::Vec natr(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(atr14[t])) natr[t] = atr14[t] / C[t] * 100;
    add("tech.natr", natr, 1e-6);

    oracle::Vec roc(N, oracle::nd());
    for (std::size_t t = 12; t < N; ++t) roc[t] = (C[t] - C[t - 12]) / C[t - 12] * 100;
    add("tech.roc", roc);

    oracle::Vec rsi14 = oracle::rsi(C, 14);
    add("tech.rsi", rsi14);

    add("tech.psar", oracle::psar(H, L, C), 1e-6);

    oracle::Vec s10 = oracle::sma(C, 10);
    oracle::Vec dev = vsub(C, s10);
    add("tech.std_deviation", dev);
    oracle::Vec dev2(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(dev[t])) dev2[t] = dev[t] * dev[t];
    oracle::Vec sasd = oracle::sma(dev2, 10);
    for (auto& v : sasd)
        if (oracle::ok(v)) v = std::sqrt(v);
    add("tech.std_sasd", sasd);

    oracle::Vec srsi(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t) {
        double hi = oracle::win_max(rsi14, t, 10), lo = oracle::win_min(rsi14, t, 10);
        if (!oracle::ok(hi)) continue;
        srsi[t] = hi > lo ? (rsi14[t] - lo) / (hi - lo) : 0.5;
    }
    add("tech.stoch_rsi", srsi);

    add("tech.t3", oracle::t3(C, 0.7), 1e-6);

    oracle::Vec te1 = oracle::ema(C, 10), te2 = oracle::ema(te1, 10), te3 = oracle::ema(te2, 10);
    oracle::Vec tema(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(te3[t])) tema[t] = 3 * te1[t] - 3 * te2[t] + te3[t];
    add("tech.tema", tema, 1e-6);

    add("tech.trima", oracle::sma(oracle::sma(s10, 10), 10));

    oracle::Vec trix(N, oracle::nd());
    for (std::size_t t = 1; t < N; ++t)
        if (oracle::ok(te3[t]) && oracle::ok(te3[t - 1]))
            trix[t] = te3[t - 1] != 0 ? (te3[t] - te3[t - 1]) / te3[t - 1] * 100 : 0.0;
    add("tech.trix", trix, 1e-6);

    oracle::Vec pc = mom, apc(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(pc[t])) apc[t] = std::fabs(pc[t]);
    oracle::Vec tsi_num = oracle::ema(oracle::ema(pc, 25), 13);
    oracle::Vec tsi_den = oracle::ema(oracle::ema(apc, 25), 13);
    oracle::Vec tsi(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t)
        if (oracle::ok(tsi_num[t]) && oracle::ok(tsi_den[t]))
            tsi[t] = tsi_den[t] != 0 ? 100 * tsi_num[t] / tsi_den[t] : 0.0;
    add("tech.tsi", tsi, 1e-6);

    add("tech.ultimate_osc", oracle::uo(H, L, C));

    oracle::Vec wcl(N);
    for (std::size_t t = 0; t < N; ++t) wcl[t] = (H[t] + L[t] + 2 * C[t]) / 4;
    add("tech.wcl", wcl);

    oracle::Vec wr(N, oracle::nd());
    for (std::size_t t = 0; t < N; ++t) {
        double hh = oracle::win_max(H, t, 14), ll = oracle::win_min(L, t, 14);
        if (!oracle::ok(hh)) continue;
        wr[t] = hh > ll ? -100 * (hh - C[t]) / (hh - ll) : -50.0;
    }
    add("tech.williams_r", wr);

    add("tech.zlema", te1, 1e-6);

    struct FracSpec {
        const char* buy;
        const char* sell;
        const oracle::Vec* src;
    };
    for (const auto& fs : {FracSpec{"tech.fractal_buy_open", "tech.fractal_sell_open", &O},
                           FracSpec{"tech.fractal_buy_high", "tech.fractal_sell_high", &H},
                           FracSpec{"tech.fractal_buy_low", "tech.fractal_sell_low", &L},
                           FracSpec{"tech.fractal_buy_close", "tech.fractal_sell_close", &C}}) {
        const oracle::Vec& s = *fs.src;
        oracle::Vec buy(N, oracle::nd()), sell(N, oracle::nd());
        for (std::size_t t = 4; t < N; ++t) {
            double c = s[t - 2];
            buy[t] = (c > s[t - 4] && c > s[t - 3] && c > s[t - 1] && c > s[t]) ? 1.0 : 0.0;
            sell[t] = (c < s[t - 4] && c < s[t - 3] && c < s[t - 1] && c < s[t]) ? 1.0 : 0.0;
        }
        add(fs.buy, buy);
        add(fs.sell, sell);
    }

    oracle::Vec slope(N, oracle::nd()), intercept(N, oracle::nd()), corr(N, oracle::nd()),
        corr2(N, oracle::nd());
    for (std::size_t t = 9; t < N; ++t) {
        oracle::Line ln = oracle::fit_line(C, t, 10);
        slope[t] = ln.slope;
        intercept[t] = ln.intercept;
        corr[t] = ln.r;
        corr2[t] = ln.r * ln.r;
    }
    add("tech.lrl_slope", slope);
    add("tech.lrl_intercept", intercept);
    add("tech.lrl_corr", corr);
    add("tech.lrl_corr_sq", corr2);

    oracle::Vec rat(N, oracle::nd());
    for (std::size_t t = 3; t < N; ++t)
        rat[t] = (C[t] + C[t - 1] + C[t - 2] + C[t - 3]) / 4;
    add("tech.rational_filter", rat, 1e-6);

    add("tech.savgol", oracle::savgol(C, 9, 3), 1e-8);
    add("tech.zero_phase", oracle::zero_phase(C, 10), 1e-6);

    add("tech.offset", dev);
    add("tech.detrend_intercept", intercept);
    add("tech.detrend_slope", slope);

    add("tech.beta", oracle::beta(C, 10));

    return out;
}

}  // namespace oracle_suite
