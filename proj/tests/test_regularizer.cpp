#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "relax2d/regularizer.hpp"

using namespace relax2d;

TEST_CASE("laplacian annihilates constants") {
    Eigen::MatrixXd f = Eigen::MatrixXd::Constant(5, 7, 3.7);
    CHECK(laplacian_apply(f).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian stencil on an interior spike") {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(5, 5);
    f(2, 2) = 1.0;
    Eigen::MatrixXd lf = laplacian_apply(f);
    CHECK(lf(2, 2) == -4.0);
    CHECK(lf(1, 2) == 1.0);
    CHECK(lf(3, 2) == 1.0);
    CHECK(lf(2, 1) == 1.0);
    CHECK(lf(2, 3) == 1.0);
    CHECK(lf(0, 0) == 0.0);
}

TEST_CASE("laplacian matches the dense matrix oracle") {
    std::mt19937_64 rng(5);
    Eigen::MatrixXd f = oracles::random_matrix(rng, 5, 5);
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(f.data(), f.size());
    Eigen::VectorXd expected = oracles::dense_laplacian(5, 5) * v;
    Eigen::MatrixXd lf = laplacian_apply(f);
    CHECK((Eigen::Map<Eigen::VectorXd>(lf.data(), lf.size()) - expected).cwiseAbs().maxCoeff() <
          1e-13);
}

TEST_CASE("laplacian matrix norm stays below 8") {
    for (auto [n1, n2] : {std::pair<int, int>{3, 3}, {4, 7}, {8, 5}}) {
        Eigen::MatrixXd L = oracles::dense_laplacian(n1, n2);
        CHECK((L - L.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(oracles::power_iteration_sigma(L) <= 8.0 + 1e-12);
    }
}

TEST_CASE("laplacian rejects maps smaller than 3x3") {
    CHECK_THROWS_AS(laplacian_apply(Eigen::MatrixXd::Zero(2, 5)), ConfigError);
}

TEST_CASE("gradient magnitude of constants and ramps") {
    CHECK(gradient_magnitude(Eigen::MatrixXd::Constant(4, 6, 2.0)).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd ramp(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) ramp(i, j) = i;
    Eigen::MatrixXd g = gradient_magnitude(ramp);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) CHECK(g(i, j) == doctest::Approx(1.0));
    // replicated boundary: last row has zero forward difference
    for (int j = 0; j < 5; ++j) CHECK(g(4, j) == 0.0);
}

TEST_CASE("gradient magnitude matches a componentwise finite-difference oracle") {
    std::mt19937_64 rng(9);
    Eigen::MatrixXd f = oracles::random_matrix(rng, 4, 4);
    Eigen::MatrixXd g = gradient_magnitude(f);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double dx = (i + 1 < 4 ? f(i + 1, j) : f(i, j)) - f(i, j);
            const double dy = (j + 1 < 4 ? f(i, j + 1) : f(i, j)) - f(i, j);
            CHECK(g(i, j) == doctest::Approx(std::sqrt(dx * dx + dy * dy)).epsilon(1e-12));
        }
    }
}

TEST_CASE("flat-map parameter update closed form") {
    const Eigen::Index n1 = 6, n2 = 5, n = n1 * n2;
    const double c = -1.4;
    Eigen::VectorXd f = Eigen::VectorXd::Constant(n, c);
    const double rsq = 0.37;
    UpenCoefficients beta{2e-3, 5e-2, 0.8};
    RegularizationState state = update_parameters(f, rsq, beta, n1, n2);

    const double expected_lambda = rsq / ((n + 1) * beta.beta0);
    const double expected_alpha = rsq / ((n + 1) * n * std::abs(c));
    CHECK(state.alpha == doctest::Approx(expected_alpha).epsilon(1e-12));
    for (Eigen::Index i = 0; i < n; ++i)
        CHECK(state.lambda[i] == doctest::Approx(expected_lambda).epsilon(1e-12));
}

TEST_CASE("zero residual yields zero parameters") {
    Eigen::VectorXd f = Eigen::VectorXd::Constant(9, 1.0);
    RegularizationState state = update_parameters(f, 0.0, {}, 3, 3);
    CHECK(state.alpha == 0.0);
    CHECK(state.lambda.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("3x3 spike: every pixel sees the same neighborhood maxima") {
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(3, 3);
    F(1, 1) = 2.0;
    Eigen::VectorXd f = Eigen::Map<Eigen::VectorXd>(F.data(), 9);
    const double rsq = 1.0;
    UpenCoefficients beta{1e-4, 1e-2, 1.0};
    RegularizationState state = update_parameters(f, rsq, beta, 3, 3);

    // hand evaluation: the spike dominates both maps everywhere on a 3x3 grid
    const Eigen::MatrixXd g = gradient_magnitude(F);
    const Eigen::MatrixXd l = laplacian_apply(F);
    const double gmax = g.array().square().maxCoeff();
    const double lmax = l.array().square().maxCoeff();
    const double expected = rsq / (10.0 * (beta.beta0 + beta.betap * gmax + beta.betac * lmax));
    for (Eigen::Index i = 0; i < 9; ++i)
        CHECK(state.lambda[i] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zero iterate is degenerate") {
    CHECK_THROWS_AS(update_parameters(Eigen::VectorXd::Zero(9), 1.0, {}, 3, 3),
                    DegenerateIterateError);
}

TEST_CASE("parameters scale quadratically with the residual") {
    std::mt19937_64 rng(13);
    Eigen::VectorXd f = oracles::random_vector(rng, 20);
    RegularizationState a = update_parameters(f, 0.5, {}, 4, 5);
    RegularizationState b = update_parameters(f, 2.0, {}, 4, 5);
    CHECK(b.alpha == doctest::Approx(4.0 * a.alpha).epsilon(1e-14));
    for (Eigen::Index i = 0; i < 20; ++i)
        CHECK(b.lambda[i] == doctest::Approx(4.0 * a.lambda[i]).epsilon(1e-14));
}

TEST_CASE("lambda decreases where local activity increases") {
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(7, 7);
    F(1, 1) = 1.0;  // small spike
    Eigen::VectorXd f = Eigen::Map<Eigen::VectorXd>(F.data(), 49);
    RegularizationState state = update_parameters(f, 1.0, {}, 7, 7);
    // far corner sees no activity, the spike neighborhood does
    CHECK(state.lambda[6 * 7 + 6] > state.lambda[1 * 7 + 1]);
    CHECK((state.lambda.array() > 0.0).all());
}
