#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace lobfeat {

inline constexpr int kLogisticDim = 13;  // intercept + ask/bid volumes of six levels

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// One side-model of the online volume regression.
struct LogisticModel {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(kLogisticDim);
    int iteration_count = 0;
    double last_cost = 0;
};

/// Mean cross-entropy over the batch; rows of X carry the leading intercept 1.
inline double logistic_cost(const Eigen::VectorXd& theta, const Eigen::MatrixXd& X,
                            const Eigen::VectorXd& y) {
    const double eps = 1e-12;
    double J = 0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        double h = sigmoid(X.row(i).dot(theta));
        J += -y(i) * std::log(std::max(h, eps)) - (1 - y(i)) * std::log(std::max(1 - h, eps));
    }
    return J / static_cast<double>(X.rows());
}

inline Eigen::VectorXd logistic_gradient(const Eigen::VectorXd& theta, const Eigen::MatrixXd& X,
                                         const Eigen::VectorXd& y) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(theta.size());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        double h = sigmoid(X.row(i).dot(theta));
        g += (h - y(i)) * X.row(i).transpose();
    }
    return g / static_cast<double>(X.rows());
}

/// One safeguarded Newton update: ridge-regularized Hessian, then the step is
/// halved (up to max_halvings times) while the batch cost increases, so the
/// accepted step never raises the cost.
inline void logistic_newton_step(LogisticModel& model, const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y, double ridge = 1e-6,
                                 int max_halvings = 20) {
    if (X.rows() != y.size() || X.cols() != model.theta.size())
        throw std::invalid_argument("logistic_newton_step: shape mismatch");
    const Eigen::Index d = model.theta.size();
    Eigen::VectorXd g = logistic_gradient(model.theta, X, y);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        double h = sigmoid(X.row(i).dot(model.theta));
        H += h * (1 - h) * (X.row(i).transpose() * X.row(i));
    }
    H /= static_cast<double>(X.rows());
    H += ridge * Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd dir = H.ldlt().solve(g);
    double J0 = logistic_cost(model.theta, X, y);
    double step = 1.0;
    Eigen::VectorXd candidate = model.theta - dir;
    double J = logistic_cost(candidate, X, y);
    for (int k = 0; k < max_halvings && J > J0; ++k) {
        step /= 2.0;
        candidate = model.theta - step * dir;
        J = logistic_cost(candidate, X, y);
    }
    if (J <= J0) {
        model.theta = candidate;
        model.last_cost = J;
    } else {
        model.last_cost = J0;  // no acceptable step, keep theta
    }
    model.iteration_count++;
}

}  // namespace lobfeat
