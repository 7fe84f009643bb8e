#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace lobfeat {

inline constexpr int kNumClasses = 3;

enum class MoveClass { Up = 0, Down = 1, Stationary = 2 };

inline const char* move_class_name(int c) {
    static const char* names[3] = {"up", "down", "stationary"};
    return names[c];
}

/// One-hot targets, one column per sample.
inline Eigen::MatrixXd one_hot(const std::vector<int>& labels, int classes = kNumClasses) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(classes, labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) T(labels[i], i) = 1.0;
    return T;
}

inline int argmax_lowest(const Eigen::VectorXd& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (v(i) > v(best)) best = i;
    return best;
}

// ---- least squares --------------------------------------------------------

struct LmsModel {
    Eigen::MatrixXd W;  // d x C
};

/// Minimum-norm least-squares solution of X^T W = T^T via a rank-revealing
/// decomposition (the Moore-Penrose solution).
inline LmsModel lms_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& T) {
    LmsModel m;
    m.W = X.transpose().completeOrthogonalDecomposition().solve(T.transpose());
    return m;
}

inline std::vector<int> lms_predict(const LmsModel& m, const Eigen::MatrixXd& X) {
    Eigen::MatrixXd scores = X.transpose() * m.W;  // n x C
    std::vector<int> out(scores.rows());
    for (Eigen::Index i = 0; i < scores.rows(); ++i)
        out[i] = argmax_lowest(scores.row(i).transpose());
    return out;
}

// ---- linear discriminant analysis -----------------------------------------

struct LdaModel {
    Eigen::MatrixXd W;                // d x (C-1) projection
    Eigen::MatrixXd projected_means;  // (C-1) x #present classes
    std::vector<int> present;         // class ids for projected_means columns
};

struct ScatterMatrices {
    Eigen::MatrixXd within, between;
    std::vector<int> present;
};

inline ScatterMatrices scatter_matrices(const Eigen::MatrixXd& X, const std::vector<int>& labels,
                                        int classes = kNumClasses) {
    const Eigen::Index d = X.rows(), n = X.cols();
    Eigen::VectorXd mean = X.rowwise().mean();
    ScatterMatrices s;
    s.within = Eigen::MatrixXd::Zero(d, d);
    s.between = Eigen::MatrixXd::Zero(d, d);
    for (int c = 0; c < classes; ++c) {
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
        int count = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (labels[i] == c) {
                mu += X.col(i);
                count++;
            }
        if (count == 0) continue;
        mu /= count;
        s.present.push_back(c);
        for (Eigen::Index i = 0; i < n; ++i)
            if (labels[i] == c) {
                Eigen::VectorXd dvec = X.col(i) - mu;
                s.within += dvec * dvec.transpose();
            }
        Eigen::VectorXd dm = mu - mean;
        s.between += count * (dm * dm.transpose());
    }
    return s;
}

/// Fisher discriminant: top C-1 generalized eigenvectors of
/// (S_W + ridge I)^-1 S_B; classification is by nearest projected class mean.
inline LdaModel lda_fit(const Eigen::MatrixXd& X, const std::vector<int>& labels,
                        double ridge = 1e-6, int classes = kNumClasses) {
    ScatterMatrices s = scatter_matrices(X, labels, classes);
    if (s.present.size() < 2) throw std::runtime_error("lda_fit: fewer than two classes present");
    const Eigen::Index d = X.rows();
    Eigen::MatrixXd sw = s.within + ridge * Eigen::MatrixXd::Identity(d, d);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.between, sw);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("lda_fit: eigensolver failed");
    const int proj_dim = std::min<int>(classes - 1, static_cast<int>(d));
    LdaModel m;
    m.W = solver.eigenvectors().rightCols(proj_dim);  // eigenvalues ascending
    m.W = m.W.rowwise().reverse().eval();
    m.present = s.present;
    m.projected_means = Eigen::MatrixXd(proj_dim, s.present.size());
    for (std::size_t k = 0; k < s.present.size(); ++k) {
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
        int count = 0;
        for (Eigen::Index i = 0; i < X.cols(); ++i)
            if (labels[i] == s.present[k]) {
                mu += X.col(i);
                count++;
            }
        m.projected_means.col(k) = m.W.transpose() * (mu / count);
    }
    return m;
}

inline std::vector<int> lda_predict(const LdaModel& m, const Eigen::MatrixXd& X) {
    Eigen::MatrixXd proj = m.W.transpose() * X;  // (C-1) x n
    std::vector<int> out(X.cols());
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        int best = 0;
        double best_d = (proj.col(i) - m.projected_means.col(0)).squaredNorm();
        for (std::size_t k = 1; k < m.present.size(); ++k) {
            double dist = (proj.col(i) - m.projected_means.col(k)).squaredNorm();
            if (dist < best_d) {
                best_d = dist;
                best = static_cast<int>(k);
            }
        }
        out[i] = m.present[best];
    }
    return out;
}

inline double fisher_ratio(const Eigen::VectorXd& w, const ScatterMatrices& s,
                           double ridge = 1e-6) {
    double within = w.dot(s.within * w) + ridge * w.squaredNorm();
    double between = w.dot(s.between * w);
    return within > 0 ? between / within : 0.0;
}

// ---- radial basis function network ----------------------------------------

struct RbfnModel {
    Eigen::MatrixXd prototypes;  // d x K
    double sigma = 1.0;
    double lambda = 1e-3;
    Eigen::MatrixXd W;  // K x C
};

struct RbfnConfig {
    int prototypes = 60;
    double sigma = 0;  // <= 0 selects the median pairwise prototype distance
    double lambda = 1e-3;
    std::uint64_t seed = 42;
    int kmeans_iterations = 100;
};

/// k-means++ with a fixed seed; an emptied cluster is re-seeded from the
/// point farthest from its center.
inline Eigen::MatrixXd kmeans(const Eigen::MatrixXd& X, int K, std::uint64_t seed,
                              int max_iter = 100) {
    const Eigen::Index d = X.rows(), n = X.cols();
    if (K > n) throw std::invalid_argument("kmeans: more centers than points");
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd centers(d, K);
    // k-means++ seeding
    std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
    centers.col(0) = X.col(first(rng));
    Eigen::VectorXd dist2 = (X.colwise() - centers.col(0)).colwise().squaredNorm().transpose();
    for (int k = 1; k < K; ++k) {
        double total = dist2.sum();
        Eigen::Index pick = 0;
        if (total > 0) {
            std::uniform_real_distribution<double> u(0, total);
            double r = u(rng), acc = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += dist2(i);
                if (acc >= r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = first(rng);
        }
        centers.col(k) = X.col(pick);
        dist2 = dist2.cwiseMin((X.colwise() - centers.col(k)).colwise().squaredNorm().transpose());
    }
    std::vector<int> assign(n, 0);
    for (int it = 0; it < max_iter; ++it) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double bd = (X.col(i) - centers.col(0)).squaredNorm();
            for (int k = 1; k < K; ++k) {
                double dd = (X.col(i) - centers.col(k)).squaredNorm();
                if (dd < bd) {
                    bd = dd;
                    best = k;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        for (int k = 0; k < K; ++k) {
            Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
            int count = 0;
            for (Eigen::Index i = 0; i < n; ++i)
                if (assign[i] == k) {
                    mu += X.col(i);
                    count++;
                }
            if (count > 0) {
                centers.col(k) = mu / count;
            } else {
                // farthest point from its own center takes over this slot
                Eigen::Index far = 0;
                double fd = -1;
                for (Eigen::Index i = 0; i < n; ++i) {
                    double dd = (X.col(i) - centers.col(assign[i])).squaredNorm();
                    if (dd > fd) {
                        fd = dd;
                        far = i;
                    }
                }
                centers.col(k) = X.col(far);
                assign[far] = k;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return centers;
}

inline Eigen::MatrixXd rbfn_hidden(const RbfnModel& m, const Eigen::MatrixXd& X) {
    const Eigen::Index K = m.prototypes.cols(), n = X.cols();
    Eigen::MatrixXd H(K, n);
    const double denom = 2.0 * m.sigma * m.sigma;
    for (Eigen::Index k = 0; k < K; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            H(k, i) = std::exp(-(X.col(i) - m.prototypes.col(k)).squaredNorm() / denom);
    return H;
}

inline RbfnModel rbfn_fit(const Eigen::MatrixXd& X, const std::vector<int>& labels,
                          const RbfnConfig& cfg = {}) {
    RbfnModel m;
    const int K = std::min<int>(cfg.prototypes, static_cast<int>(X.cols()));
    m.prototypes = kmeans(X, K, cfg.seed, cfg.kmeans_iterations);
    if (cfg.sigma > 0) {
        m.sigma = cfg.sigma;
    } else {
        std::vector<double> dists;
        for (int a = 0; a < K; ++a)
            for (int b = a + 1; b < K; ++b)
                dists.push_back((m.prototypes.col(a) - m.prototypes.col(b)).norm());
        if (dists.empty()) {
            m.sigma = 1.0;
        } else {
            std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
            m.sigma = dists[dists.size() / 2];
            if (m.sigma <= 0) m.sigma = 1.0;
        }
    }
    m.lambda = cfg.lambda;
    Eigen::MatrixXd H = rbfn_hidden(m, X);
    Eigen::MatrixXd T = one_hot(labels);
    Eigen::MatrixXd A = H * H.transpose() + m.lambda * Eigen::MatrixXd::Identity(K, K);
    m.W = A.ldlt().solve(H * T.transpose());
    return m;
}

inline std::vector<int> rbfn_predict(const RbfnModel& m, const Eigen::MatrixXd& X) {
    Eigen::MatrixXd O = m.W.transpose() * rbfn_hidden(m, X);  // C x n
    std::vector<int> out(X.cols());
    for (Eigen::Index i = 0; i < X.cols(); ++i) out[i] = argmax_lowest(O.col(i));
    return out;
}

// ---- scoring --------------------------------------------------------------

struct ClassMetrics {
    double accuracy = 0, precision_macro = 0, recall_macro = 0, f1_macro = 0;
    std::vector<double> f1_per_class;
};

/// Macro metrics over the fixed three classes; a class with no predictions
/// and no instances contributes zero to each macro average.
inline ClassMetrics score(const std::vector<int>& pred, const std::vector<int>& truth,
                          int classes = kNumClasses) {
    if (pred.size() != truth.size()) throw std::invalid_argument("score: length mismatch");
    ClassMetrics m;
    const double n = static_cast<double>(truth.size());
    int correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (pred[i] == truth[i]) correct++;
    m.accuracy = n > 0 ? correct / n : 0.0;
    for (int c = 0; c < classes; ++c) {
        int tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (pred[i] == c && truth[i] == c) tp++;
            else if (pred[i] == c) fp++;
            else if (truth[i] == c) fn++;
        }
        double prec = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        double rec = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
        m.precision_macro += prec / classes;
        m.recall_macro += rec / classes;
        m.f1_macro += f1 / classes;
        m.f1_per_class.push_back(f1);
    }
    return m;
}

}  // namespace lobfeat
