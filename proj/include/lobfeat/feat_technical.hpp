#pragma once

#include <string>
#include <vector>

#include "lobfeat/indicators.hpp"

namespace lobfeat {

/// A named block of per-block feature columns (time runs down each Series).
struct FeatureBlock {
    std::vector<std::string> names;
    std::vector<Series> columns;

    void push(std::string name, Series col) {
        names.push_back(std::move(name));
        columns.push_back(std::move(col));
    }
};

inline constexpr int kTechnicalFeatureCount = 83;

/// All 83 technical feature columns, in manifest order.
inline FeatureBlock technical_features(const BarSeries& b, bool dpo_standard_form = false) {
    FeatureBlock f;
    f.push("tech.adl", ind::adl(b));
    f.push("tech.awesome_osc", ind::awesome_oscillator(b));
    f.push("tech.accelerator_osc", ind::accelerator_oscillator(b));
    auto adx = ind::adx_family(b);
    f.push("tech.adx", adx.adx);
    f.push("tech.adxr", adx.adxr);
    auto alli = ind::alligator(b);
    f.push("tech.alligator_jaw", alli.jaw);
    f.push("tech.alligator_teeth", alli.teeth);
    f.push("tech.alligator_lips", alli.lips);
    f.push("tech.apo", ind::apo(b));
    auto ar = ind::aroon(b);
    f.push("tech.aroon_up", ar.up);
    f.push("tech.aroon_down", ar.down);
    f.push("tech.aroon_osc", ar.osc);
    f.push("tech.atr", ind::atr(b));
    auto bb = ind::bollinger(b);
    f.push("tech.bb_middle", bb.middle);
    f.push("tech.bb_upper", bb.upper);
    f.push("tech.bb_lower", bb.lower);
    auto ichi = ind::ichimoku(b);
    f.push("tech.ichimoku_conversion", ichi.conversion);
    f.push("tech.ichimoku_base", ichi.base);
    f.push("tech.ichimoku_span_a", ichi.span_a);
    f.push("tech.ichimoku_span_b", ichi.span_b);
    f.push("tech.ichimoku_lagging", ichi.lagging);
    f.push("tech.cmo", ind::cmo(b));
    f.push("tech.chaikin_osc", ind::chaikin_oscillator(b));
    auto ch = ind::chandelier_exit(b);
    f.push("tech.chandelier_long", ch.exit_long);
    f.push("tech.chandelier_short", ch.exit_short);
    f.push("tech.cog", ind::cog(b));
    auto don = ind::donchian(b);
    f.push("tech.donchian_upper", don.upper);
    f.push("tech.donchian_lower", don.lower);
    f.push("tech.donchian_middle", don.middle);
    f.push("tech.dema", ind::dema(b));
    f.push("tech.dpo", dpo_standard_form ? ind::dpo_standard(b) : ind::dpo_paper(b));
    auto ha = ind::heikin_ashi(b);
    f.push("tech.heikin_close", ha.close);
    f.push("tech.heikin_open", ha.open);
    f.push("tech.heikin_high", ha.high);
    f.push("tech.heikin_low", ha.low);
    f.push("tech.highest_high", rolling_max(b.high, 20));
    f.push("tech.lowest_low", rolling_min(b.low, 20));
    f.push("tech.hull_ma", ind::hull_ma(b));
    f.push("tech.ibs", ind::ibs(b));
    auto kel = ind::keltner(b);
    f.push("tech.keltner_middle", kel.middle);
    f.push("tech.keltner_upper", kel.upper);
    f.push("tech.keltner_lower", kel.lower);
    f.push("tech.macd", ind::macd(b));
    f.push("tech.median_price", b.mid());
    f.push("tech.momentum", ind::momentum(b));
    auto vm = ind::vma(b);
    f.push("tech.vma", vm.vma);
    f.push("tech.vma_er", vm.er);
    f.push("tech.natr", ind::natr(b));
    f.push("tech.ppo", ind::ppo(b));
    f.push("tech.roc", ind::roc(b));
    f.push("tech.rsi", ind::rsi(b));
    f.push("tech.psar", ind::psar(b));
    auto sd = ind::std_deviation(b);
    f.push("tech.std_deviation", sd.deviation);
    f.push("tech.std_sasd", sd.sasd);
    f.push("tech.stoch_rsi", ind::stoch_rsi(b));
    f.push("tech.t3", ind::t3(b));
    f.push("tech.tema", ind::tema(b));
    f.push("tech.trima", ind::trima(b));
    f.push("tech.trix", ind::trix(b));
    f.push("tech.tsi", ind::tsi(b));
    f.push("tech.ultimate_osc", ind::ultimate_oscillator(b));
    f.push("tech.wcl", ind::wcl(b));
    f.push("tech.williams_r", ind::williams_r(b));
    f.push("tech.zlema", ind::zlema(b));
    auto fo = ind::fractals(b.open);
    auto fh = ind::fractals(b.high);
    auto fl = ind::fractals(b.low);
    auto fc = ind::fractals(b.close);
    f.push("tech.fractal_buy_open", fo.buy);
    f.push("tech.fractal_sell_open", fo.sell);
    f.push("tech.fractal_buy_high", fh.buy);
    f.push("tech.fractal_sell_high", fh.sell);
    f.push("tech.fractal_buy_low", fl.buy);
    f.push("tech.fractal_sell_low", fl.sell);
    f.push("tech.fractal_buy_close", fc.buy);
    f.push("tech.fractal_sell_close", fc.sell);
    auto lrl = ind::linear_regression_line(b);
    f.push("tech.lrl_slope", lrl.slope);
    f.push("tech.lrl_intercept", lrl.intercept);
    f.push("tech.lrl_corr", lrl.corr);
    f.push("tech.lrl_corr_sq", lrl.corr_sq);
    f.push("tech.rational_filter", ind::rational_filter(b));
    f.push("tech.savgol", ind::savgol(b));
    f.push("tech.zero_phase", ind::zero_phase(b));
    auto det = ind::offset_detrend(b);
    f.push("tech.offset", det.offset);
    f.push("tech.detrend_intercept", det.intercept);
    f.push("tech.detrend_slope", det.slope);
    f.push("tech.beta", ind::beta(b));
    return f;
}

}  // namespace lobfeat
