#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "lobfeat/classify.hpp"

namespace lobfeat {

enum class Criterion { Entropy, Lms1, Lms2, Lda1, Lda2 };

inline const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Entropy: return "entropy";
        case Criterion::Lms1: return "lms1";
        case Criterion::Lms2: return "lms2";
        case Criterion::Lda1: return "lda1";
        case Criterion::Lda2: return "lda2";
    }
    return "?";
}

inline Criterion parse_criterion(const std::string& s) {
    if (s == "entropy") return Criterion::Entropy;
    if (s == "lms1") return Criterion::Lms1;
    if (s == "lms2") return Criterion::Lms2;
    if (s == "lda1") return Criterion::Lda1;
    if (s == "lda2") return Criterion::Lda2;
    throw std::invalid_argument("unknown sorting method '" + s + "'");
}

/// Higher criterion values win for entropy and the classification rates;
/// lower values win for the error-style criteria.
inline bool criterion_maximizes(Criterion c) {
    return c == Criterion::Entropy || c == Criterion::Lms1 || c == Criterion::Lda1;
}

struct RankingList {
    Criterion method = Criterion::Entropy;
    std::vector<int> order;               // feature indices, best first
    std::vector<double> criterion_trace;  // criterion value at each greedy step
};

/// Histogram entropy of one feature over 100 equal-width bins spanning its
/// observed range, natural log. A constant feature has a single occupied bin
/// and entropy 0.
inline double feature_entropy(const Eigen::VectorXd& row, int bins = 100) {
    const Eigen::Index n = row.size();
    if (n == 0) return 0.0;
    double lo = row.minCoeff(), hi = row.maxCoeff();
    if (!(hi > lo)) return 0.0;
    std::vector<double> count(bins, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        int b = static_cast<int>((row(i) - lo) / (hi - lo) * bins);
        if (b >= bins) b = bins - 1;
        count[b] += 1.0;
    }
    double h = 0;
    for (double c : count)
        if (c > 0) {
            double p = c / static_cast<double>(n);
            h -= p * std::log(p);
        }
    return h;
}

/// Stacked-matrix entropy criterion: the sum of per-row entropies.
inline double entropy_criterion(const Eigen::MatrixXd& stacked, int bins = 100) {
    double h = 0;
    for (Eigen::Index r = 0; r < stacked.rows(); ++r)
        h += feature_entropy(stacked.row(r).transpose(), bins);
    return h;
}

/// Scores feature subsets for the greedy wrapper. The training slice is split
/// temporally: criteria fit on the first fit_fraction of samples and score on
/// the remainder; entropy uses the whole slice.
class WrapperScorer {
public:
    WrapperScorer(Eigen::MatrixXd X, std::vector<int> labels, double fit_fraction = 0.8)
        : X_(std::move(X)), labels_(std::move(labels)) {
        const Eigen::Index n = X_.cols();
        if (static_cast<std::size_t>(n) != labels_.size())
            throw std::invalid_argument("WrapperScorer: labels/samples mismatch");
        if (n < 5) throw std::invalid_argument("WrapperScorer: too few samples");
        n_fit_ = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(n * fit_fraction));
        if (n_fit_ >= n) n_fit_ = n - 1;
    }

    Eigen::Index feature_count() const { return X_.rows(); }

    double evaluate(const std::vector<int>& dims, Criterion c) const {
        Eigen::MatrixXd sub(dims.size(), X_.cols());
        for (std::size_t i = 0; i < dims.size(); ++i) sub.row(i) = X_.row(dims[i]);
        if (c == Criterion::Entropy) return entropy_criterion(sub);
        const Eigen::Index n = X_.cols();
        Eigen::MatrixXd fit = sub.leftCols(n_fit_);
        Eigen::MatrixXd hold = sub.rightCols(n - n_fit_);
        std::vector<int> y_fit(labels_.begin(), labels_.begin() + n_fit_);
        std::vector<int> y_hold(labels_.begin() + n_fit_, labels_.end());
        switch (c) {
            case Criterion::Lms1:
            case Criterion::Lms2: {
                LmsModel m = lms_fit(fit, one_hot(y_fit));
                if (c == Criterion::Lms1) {
                    std::vector<int> pred = lms_predict(m, hold);
                    return score(pred, y_hold).accuracy;
                }
                Eigen::MatrixXd predicted = hold.transpose() * m.W;  // n x C
                Eigen::MatrixXd target = one_hot(y_hold).transpose();
                return (predicted - target).norm();
            }
            case Criterion::Lda1: {
                LdaModel m = lda_fit(fit, y_fit);
                std::vector<int> pred = lda_predict(m, hold);
                return score(pred, y_hold).accuracy;
            }
            case Criterion::Lda2: {
                LdaModel m = lda_fit(fit, y_fit);
                ScatterMatrices s = scatter_matrices(hold, y_hold);
                if (s.present.size() < 2)
                    throw std::runtime_error("lda2: single class in scoring slice");
                double within = (m.W.transpose() * s.within * m.W).trace();
                double between = (m.W.transpose() * s.between * m.W).trace();
                if (!(between > 0)) throw std::runtime_error("lda2: zero between-class scatter");
                return within / between;
            }
            default: break;
        }
        throw std::logic_error("unhandled criterion");
    }

private:
    Eigen::MatrixXd X_;
    std::vector<int> labels_;
    Eigen::Index n_fit_ = 0;
};

/// Greedy forward ranking: at each step every remaining feature is appended
/// to the selected block and the subset criterion decides the winner; ties go
/// to the lowest feature index. A candidate whose evaluation throws scores
/// worst. The entropy criterion is separable across rows, so its ranking is
/// computed as an independent per-feature sort.
inline RankingList greedy_select(const WrapperScorer& scorer, Criterion c) {
    const int D = static_cast<int>(scorer.feature_count());
    RankingList out;
    out.method = c;
    if (c == Criterion::Entropy) {
        std::vector<std::pair<double, int>> scored(D);
        for (int i = 0; i < D; ++i) scored[i] = {scorer.evaluate({i}, c), i};
        std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        double running = 0;
        for (const auto& [h, idx] : scored) {
            running += h;  // stacked criterion is the sum of selected entropies
            out.order.push_back(idx);
            out.criterion_trace.push_back(running);
        }
        return out;
    }
    const bool maximize = criterion_maximizes(c);
    const double worst =
        maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    std::vector<int> remaining(D);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<int> selected;
    while (!remaining.empty()) {
        int best_pos = -1;
        double best_val = worst;
        for (std::size_t p = 0; p < remaining.size(); ++p) {
            std::vector<int> candidate = selected;
            candidate.push_back(remaining[p]);
            double v;
            try {
                v = scorer.evaluate(candidate, c);
            } catch (const std::exception& e) {
                std::cerr << "warning: criterion failed for feature " << remaining[p] << ": "
                          << e.what() << "\n";
                v = worst;
            }
            bool better = best_pos < 0 || (maximize ? v > best_val : v < best_val);
            if (better) {
                best_pos = static_cast<int>(p);
                best_val = v;
            }
        }
        selected.push_back(remaining[best_pos]);
        remaining.erase(remaining.begin() + best_pos);
        out.order.push_back(selected.back());
        out.criterion_trace.push_back(best_val);
    }
    return out;
}

inline nlohmann::json ranking_to_json(const RankingList& r, const std::string& config_hash) {
    return nlohmann::json{{"method", criterion_name(r.method)},
                          {"order", r.order},
                          {"criterion_trace", r.criterion_trace},
                          {"config_hash", config_hash}};
}

inline RankingList ranking_from_json(const nlohmann::json& j) {
    RankingList r;
    r.method = parse_criterion(j.at("method").get<std::string>());
    r.order = j.at("order").get<std::vector<int>>();
    r.criterion_trace = j.at("criterion_trace").get<std::vector<double>>();
    return r;
}

}  // namespace lobfeat
