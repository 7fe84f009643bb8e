#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lobfeat/classify.hpp"

using namespace lobfeat;
using Catch::Approx;

namespace {

void gaussian_classes(Eigen::MatrixXd& X, std::vector<int>& labels, int d, int n,
                      double sep, std::uint64_t seed, int classes = 3) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    X.resize(d, n);
    labels.resize(n);
    for (int i = 0; i < n; ++i) {
        int c = i % classes;
        labels[i] = c;
        for (int r = 0; r < d; ++r) X(r, i) = g(rng);
        X(0, i) += sep * c;
    }
}

}  // namespace

TEST_CASE("argmax picks the highest output, ties to the lowest class") {
    Eigen::VectorXd v(3);
    v << 0.2, 0.7, 0.1;
    CHECK(argmax_lowest(v) == 1);
    v << 0.5, 0.5, 0.5;
    CHECK(argmax_lowest(v) == 0);
    v << 0.1, 0.4, 0.4;
    CHECK(argmax_lowest(v) == 1);
}

TEST_CASE("a sample at a prototype lights its hidden unit to exactly 1") {
    RbfnModel m;
    m.prototypes = Eigen::MatrixXd::Random(4, 3);
    m.sigma = 0.7;
    Eigen::MatrixXd H = rbfn_hidden(m, m.prototypes);
    for (int k = 0; k < 3; ++k) CHECK(H(k, k) == Approx(1.0));
}

TEST_CASE("RBFN ridge solve residual is tiny") {
    Eigen::MatrixXd X;
    std::vector<int> labels;
    gaussian_classes(X, labels, 6, 300, 3.0, 1);
    RbfnConfig cfg;
    cfg.prototypes = 20;
    RbfnModel m = rbfn_fit(X, labels, cfg);
    Eigen::MatrixXd H = rbfn_hidden(m, X);
    Eigen::MatrixXd T = one_hot(labels);
    const int K = static_cast<int>(m.prototypes.cols());
    Eigen::MatrixXd lhs =
        (H * H.transpose() + m.lambda * Eigen::MatrixXd::Identity(K, K)) * m.W - H * T.transpose();
    CHECK(lhs.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("huge ridge drives the output weights to zero") {
    Eigen::MatrixXd X;
    std::vector<int> labels;
    gaussian_classes(X, labels, 4, 120, 2.0, 2);
    RbfnConfig cfg;
    cfg.prototypes = 10;
    cfg.lambda = 1e12;
    RbfnModel m = rbfn_fit(X, labels, cfg);
    CHECK(m.W.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("RBFN separates two well-spread clusters") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0, 1);
    const int d = 2, n = 2000;
    Eigen::MatrixXd X(d, n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        int c = i % 2;
        labels[i] = c;
        X(0, i) = g(rng) + (c == 0 ? -6.0 : 6.0);
        X(1, i) = g(rng);
    }
    RbfnConfig cfg;
    cfg.prototypes = 2;
    RbfnModel m = rbfn_fit(X, labels, cfg);
    std::vector<int> pred = rbfn_predict(m, X);
    CHECK(score(pred, labels).accuracy > 0.99);
}

TEST_CASE("RBFN training is deterministic for a fixed seed") {
    Eigen::MatrixXd X;
    std::vector<int> labels;
    gaussian_classes(X, labels, 5, 400, 2.5, 4);
    RbfnConfig cfg;
    cfg.prototypes = 15;
    RbfnModel a = rbfn_fit(X, labels, cfg);
    RbfnModel b = rbfn_fit(X, labels, cfg);
    CHECK((a.prototypes - b.prototypes).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.W - b.W).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.sigma == b.sigma);
}

TEST_CASE("score reproduces the hand confusion-matrix example") {
    // truth [U,U,D,S], pred [U,D,D,S] with U=0, D=1, S=2
    std::vector<int> truth = {0, 0, 1, 2};
    std::vector<int> pred = {0, 1, 1, 2};
    ClassMetrics m = score(pred, truth);
    CHECK(m.accuracy == Approx(0.75));
    CHECK(m.f1_per_class[0] == Approx(2.0 / 3.0).margin(1e-9));
    CHECK(m.f1_per_class[1] == Approx(2.0 / 3.0).margin(1e-9));
    CHECK(m.f1_per_class[2] == Approx(1.0));
    CHECK(m.f1_macro == Approx((2.0 / 3.0 + 2.0 / 3.0 + 1.0) / 3.0).margin(1e-9));
    CHECK(m.f1_macro == Approx(0.778).margin(5e-4));
}

TEST_CASE("perfect predictions score 1.0 everywhere") {
    std::vector<int> truth = {0, 1, 2, 0, 1, 2};
    ClassMetrics m = score(truth, truth);
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision_macro == Approx(1.0));
    CHECK(m.recall_macro == Approx(1.0));
    CHECK(m.f1_macro == Approx(1.0));
}

TEST_CASE("one-class predictions on balanced truth score 1/3 accuracy") {
    std::vector<int> truth = {0, 1, 2, 0, 1, 2, 0, 1, 2};
    std::vector<int> pred(9, 0);
    ClassMetrics m = score(pred, truth);
    CHECK(m.accuracy == Approx(1.0 / 3.0));
    CHECK(m.f1_per_class[1] == 0.0);  // absent predictions contribute zero
    CHECK(m.f1_per_class[2] == 0.0);
}

TEST_CASE("LMS and LDA predictions are equivariant under class relabeling") {
    Eigen::MatrixXd X;
    std::vector<int> labels;
    gaussian_classes(X, labels, 4, 600, 4.0, 5);
    // permutation 0->2, 1->0, 2->1
    const int perm[3] = {2, 0, 1};
    std::vector<int> relabeled(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) relabeled[i] = perm[labels[i]];

    LmsModel lm0 = lms_fit(X, one_hot(labels));
    LmsModel lm1 = lms_fit(X, one_hot(relabeled));
    std::vector<int> p0 = lms_predict(lm0, X), p1 = lms_predict(lm1, X);
    for (std::size_t i = 0; i < p0.size(); ++i) CHECK(p1[i] == perm[p0[i]]);

    LdaModel ld0 = lda_fit(X, labels);
    LdaModel ld1 = lda_fit(X, relabeled);
    std::vector<int> q0 = lda_predict(ld0, X), q1 = lda_predict(ld1, X);
    for (std::size_t i = 0; i < q0.size(); ++i) CHECK(q1[i] == perm[q0[i]]);
}

TEST_CASE("duplicating a feature row leaves LMS training argmax unchanged") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 5, n = 150;
        Eigen::MatrixXd X(d, n);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            labels[i] = i % 3;
            for (int r = 0; r < d; ++r) X(r, i) = g(rng);
            X(0, i) += labels[i];
        }
        Eigen::MatrixXd Xdup(d + 1, n);
        Xdup.topRows(d) = X;
        Xdup.row(d) = X.row(0);
        std::vector<int> p0 = lms_predict(lms_fit(X, one_hot(labels)), X);
        std::vector<int> p1 = lms_predict(lms_fit(Xdup, one_hot(labels)), Xdup);
        CHECK(p0 == p1);
    }
}

TEST_CASE("lda_fit rejects a single-class slice") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(3, 20);
    std::vector<int> labels(20, 1);
    CHECK_THROWS_AS(lda_fit(X, labels), std::runtime_error);
}

TEST_CASE("LMS and LDA separate well-spread Gaussian classes") {
    // simplex-vertex centers: class c sits at 8*e_c, which an intercept-free
    // linear argmax can separate (collinear centers cannot be)
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0, 1);
    const int n = 1200;
    Eigen::MatrixXd X(3, n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = i % 3;
        for (int r = 0; r < 3; ++r) X(r, i) = g(rng) + (r == labels[i] ? 8.0 : 0.0);
    }
    std::vector<int> pl = lms_predict(lms_fit(X, one_hot(labels)), X);
    CHECK(score(pl, labels).accuracy > 0.95);
    std::vector<int> pd = lda_predict(lda_fit(X, labels), X);
    CHECK(score(pd, labels).accuracy > 0.95);
}
