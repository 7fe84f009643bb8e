#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lobfeat/series.hpp"

namespace lobfeat {

/// Sample autocorrelation at lag k: the lagged cross moment averaged over its
/// n-k terms, divided by the full-sample variance, clamped to [-1, 1].
/// Zero-variance windows return 0.
inline double autocorrelation(const std::vector<double>& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 0 || k >= n) throw std::invalid_argument("autocorrelation: bad lag");
    if (k == 0) return 1.0;
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    double num = 0, den = 0;
    for (int t = 0; t < n; ++t) den += (x[t] - mean) * (x[t] - mean);
    den /= n;
    for (int t = k; t < n; ++t) num += (x[t] - mean) * (x[t - k] - mean);
    num /= (n - k);
    if (den <= 0) return 0.0;
    return std::clamp(num / den, -1.0, 1.0);
}

/// Partial autocorrelations phi_kk for k = 1..max_lag via the Durbin-Levinson
/// recursion on the sample autocorrelations.
inline std::vector<double> pacf(const std::vector<double>& x, int max_lag) {
    std::vector<double> rho(max_lag + 1);
    for (int k = 0; k <= max_lag; ++k) rho[k] = autocorrelation(x, k);
    std::vector<double> out(max_lag);
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    for (int k = 1; k <= max_lag; ++k) {
        double num = rho[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        double den = 1.0;
        for (int j = 1; j < k; ++j) den -= prev[j] * rho[j];
        double pkk = den != 0 ? num / den : 0.0;
        phi[k] = pkk;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - pkk * prev[k - j];
        prev = phi;
        out[k - 1] = pkk;
    }
    return out;
}

struct OlsLine {
    double intercept = 0, slope = 0;
};

/// Least squares y = c + slope * x.
inline OlsLine ols_line(const std::vector<double>& y, const std::vector<double>& x) {
    const int n = static_cast<int>(y.size());
    if (x.size() != y.size() || n < 2) throw std::invalid_argument("ols_line: bad inputs");
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    OlsLine r;
    r.slope = sxx > 0 ? sxy / sxx : 0.0;
    r.intercept = my - r.slope * mx;
    return r;
}

/// Augmented Dickey-Fuller t-statistic with one lagged difference and no
/// deterministic terms: regress de_t on e_{t-1} and de_{t-1}.
inline double adf_stat_nc(const std::vector<double>& e) {
    const int n = static_cast<int>(e.size());
    if (n < 8) throw std::invalid_argument("adf_stat_nc: series too short");
    const int m = n - 2;  // usable rows, t = 2..n-1
    Eigen::MatrixXd X(m, 2);
    Eigen::VectorXd y(m);
    for (int t = 2; t < n; ++t) {
        X(t - 2, 0) = e[t - 1];
        X(t - 2, 1) = e[t - 1] - e[t - 2];
        y(t - 2) = e[t] - e[t - 1];
    }
    Eigen::Matrix2d xtx = X.transpose() * X;
    Eigen::Matrix2d xtx_inv = xtx.inverse();
    Eigen::Vector2d beta = xtx_inv * (X.transpose() * y);
    Eigen::VectorXd resid = y - X * beta;
    double s2 = resid.squaredNorm() / (m - 2);
    double se = std::sqrt(s2 * xtx_inv(0, 0));
    return se > 0 ? beta(0) / se : 0.0;
}

/// Null quantiles of the residual ADF statistic for two independent random
/// walks (T = 1000, 20000 simulations); used for the p-value interpolation.
inline const std::array<std::pair<double, double>, 12>& eg_null_quantiles() {
    static const std::array<std::pair<double, double>, 12> table = {{
        {0.001, -4.518}, {0.010, -3.918}, {0.025, -3.587}, {0.050, -3.333},
        {0.100, -3.046}, {0.200, -2.710}, {0.300, -2.462}, {0.500, -2.070},
        {0.700, -1.668}, {0.900, -1.016}, {0.990, 0.134}, {0.999, 0.932},
    }};
    return table;
}

/// Left-tail p-value of the residual ADF statistic by linear interpolation in
/// the simulated quantile table, clamped at the table ends.
inline double eg_pvalue(double stat) {
    const auto& tab = eg_null_quantiles();
    if (stat <= tab.front().second) return tab.front().first;
    if (stat >= tab.back().second) return tab.back().first;
    for (std::size_t i = 1; i < tab.size(); ++i) {
        if (stat <= tab[i].second) {
            double w = (stat - tab[i - 1].second) / (tab[i].second - tab[i - 1].second);
            return tab[i - 1].first + w * (tab[i].first - tab[i - 1].first);
        }
    }
    return tab.back().first;
}

inline double eg_critical_value(double level) {
    const auto& tab = eg_null_quantiles();
    if (level <= tab.front().first) return tab.front().second;
    if (level >= tab.back().first) return tab.back().second;
    for (std::size_t i = 1; i < tab.size(); ++i) {
        if (level <= tab[i].first) {
            double w = (level - tab[i - 1].first) / (tab[i].first - tab[i - 1].first);
            return tab[i - 1].second + w * (tab[i].second - tab[i - 1].second);
        }
    }
    return tab.back().second;
}

struct CointResult {
    bool cointegrated = false;
    double stat = 0;
    double pvalue = 1;
};

/// Engle-Granger two-step test: OLS of a on b with a constant, then the ADF
/// statistic of the residuals against the simulated null.
inline CointResult engle_granger(const std::vector<double>& a, const std::vector<double>& b,
                                 double level = 0.05) {
    OlsLine fit = ols_line(a, b);
    std::vector<double> resid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) resid[i] = a[i] - fit.intercept - fit.slope * b[i];
    CointResult r;
    r.stat = adf_stat_nc(resid);
    r.pvalue = eg_pvalue(r.stat);
    r.cointegrated = r.stat < eg_critical_value(level);
    return r;
}

}  // namespace lobfeat
