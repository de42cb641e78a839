#include <doctest.h>

#include <cmath>

#include "relax2d/kernels.hpp"

using namespace relax2d;

TEST_CASE("log grid geometric progression") {
    const RelaxationGrid g = make_log_grid(1.0, 100.0, 3);
    CHECK(g.values.size() == 3);
    CHECK(g.values[0] == doctest::Approx(1.0));
    CHECK(g.values[1] == doctest::Approx(10.0));
    CHECK(g.values[2] == doctest::Approx(100.0));

    const RelaxationGrid two = make_log_grid(0.7, 42.0, 2);
    CHECK(two.values[0] == 0.7);
    CHECK(two.values[1] == 42.0);
}

TEST_CASE("log grid closed-form spot check") {
    const RelaxationGrid g = make_log_grid(0.5, 3000.0, 128);
    // entry k is 0.5 * 6000^(k/127)
    const double expected = 0.5 * std::pow(6000.0, 64.0 / 127.0);
    CHECK(g.values[64] == doctest::Approx(expected).epsilon(1e-12));
    for (Eigen::Index k = 0; k + 1 < g.n; ++k) {
        const double ratio = g.values[k + 1] / g.values[k];
        CHECK(ratio == doctest::Approx(g.values[1] / g.values[0]).epsilon(1e-12));
    }
}

TEST_CASE("log grid rejects bad input") {
    CHECK_THROWS_AS(make_log_grid(0.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(make_log_grid(2.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(make_log_grid(1.0, 2.0, 1), ConfigError);
}

namespace {

AcquisitionTimes simple_times() {
    AcquisitionTimes t;
    t.t1 = Eigen::VectorXd::LinSpaced(6, 1.0, 60.0);
    t.t2 = Eigen::VectorXd::LinSpaced(8, 0.5, 40.0);
    return t;
}

}  // namespace

TEST_CASE("kernel analytic forms") {
    const RelaxationGrid g1 = make_log_grid(1.0, 1000.0, 5);
    const RelaxationGrid g2 = make_log_grid(0.5, 100.0, 4);

    AcquisitionTimes t = simple_times();
    // hit the inversion-recovery null point t = T ln 2 exactly
    t.t1[2] = g1.values[1] * std::log(2.0);
    std::sort(t.t1.data(), t.t1.data() + t.t1.size());

    SeparableKernel ir = build_kernel_pair(KernelKind::IrCpmg, t, g1, g2);
    bool found_null = false;
    for (Eigen::Index i = 0; i < t.t1.size(); ++i)
        if (t.t1[i] == g1.values[1] * std::log(2.0))
            found_null = std::abs(ir.K1(i, 1)) < 1e-14;
    CHECK(found_null);
    CHECK((ir.K1.array() >= -1.0).all());
    CHECK((ir.K1.array() <= 1.0).all());

    SeparableKernel sr = build_kernel_pair(KernelKind::SrCpmg, t, g1, g2);
    CHECK(sr.K1(0, 0) == doctest::Approx(1.0 - std::exp(-t.t1[0] / g1.values[0])));
    CHECK((sr.K1.array() >= 0.0).all());
    // exp(-t/T) underflows to zero for t >> T, so the bound is attained
    CHECK((sr.K1.array() <= 1.0).all());

    SeparableKernel cpmg = build_kernel_pair(KernelKind::CpmgCpmg, t, g1, g2);
    CHECK(cpmg.K1(3, 2) == doctest::Approx(std::exp(-t.t1[3] / g1.values[2])));

    SeparableKernel diff = build_kernel_pair(KernelKind::DCpmg, t, g1, g2);
    CHECK(diff.K2(2, 1) == doctest::Approx(std::exp(-t.t2[2] * g2.values[1])));
    CHECK((diff.K2.array() >= 0.0).all());
    CHECK((diff.K2.array() <= 1.0).all());
}

TEST_CASE("IR kernel on the benchmark grid is bounded and monotone") {
    AcquisitionTimes t;
    t.t1 = make_log_grid(0.1, 10000.0, 128).values;
    t.t2 = Eigen::VectorXd::LinSpaced(16, 0.2, 3.2);
    const RelaxationGrid g1 = make_log_grid(1.0, 10000.0, 80);
    const RelaxationGrid g2 = make_log_grid(0.1, 1000.0, 16);

    SeparableKernel k = build_kernel_pair(KernelKind::IrCpmg, t, g1, g2);
    CHECK(k.K1.rows() == 128);
    CHECK(k.K1.cols() == 80);
    CHECK((k.K1.array() >= -1.0).all());
    CHECK((k.K1.array() <= 1.0).all());
    // monotone non-decreasing in t for fixed T (ties where exp underflows)
    for (Eigen::Index j = 0; j < k.K1.cols(); ++j)
        for (Eigen::Index i = 1; i < k.K1.rows(); ++i) CHECK(k.K1(i, j) >= k.K1(i - 1, j));
}

TEST_CASE("second-axis kernel columns are monotone non-increasing") {
    const RelaxationGrid g1 = make_log_grid(1.0, 1000.0, 5);
    const RelaxationGrid g2 = make_log_grid(0.5, 100.0, 6);
    const AcquisitionTimes t = simple_times();
    for (KernelKind kind :
         {KernelKind::IrCpmg, KernelKind::SrCpmg, KernelKind::CpmgCpmg, KernelKind::DCpmg}) {
        SeparableKernel k = build_kernel_pair(kind, t, g1, g2);
        for (Eigen::Index j = 0; j < k.K2.cols(); ++j)
            for (Eigen::Index i = 1; i < k.K2.rows(); ++i) CHECK(k.K2(i, j) <= k.K2(i - 1, j));
        CHECK((k.K2.array() >= 0.0).all());
        CHECK((k.K2.array() <= 1.0).all());
    }
}

TEST_CASE("IR columns cross zero at most once, SR/CPMG never change sign") {
    const RelaxationGrid g1 = make_log_grid(0.5, 500.0, 12);
    const RelaxationGrid g2 = make_log_grid(0.5, 100.0, 4);
    AcquisitionTimes t;
    t.t1 = make_log_grid(0.01, 5000.0, 40).values;
    t.t2 = simple_times().t2;

    SeparableKernel ir = build_kernel_pair(KernelKind::IrCpmg, t, g1, g2);
    for (Eigen::Index j = 0; j < ir.K1.cols(); ++j) {
        int crossings = 0;
        for (Eigen::Index i = 1; i < ir.K1.rows(); ++i)
            if ((ir.K1(i, j) >= 0.0) != (ir.K1(i - 1, j) >= 0.0)) ++crossings;
        CHECK(crossings == 1);
    }
    SeparableKernel sr = build_kernel_pair(KernelKind::SrCpmg, t, g1, g2);
    CHECK((sr.K1.array() >= 0.0).all());
}

TEST_CASE("kernel construction is deterministic") {
    const RelaxationGrid g1 = make_log_grid(1.0, 1000.0, 7);
    const RelaxationGrid g2 = make_log_grid(0.5, 100.0, 6);
    const AcquisitionTimes t = simple_times();
    SeparableKernel a = build_kernel_pair(KernelKind::IrCpmg, t, g1, g2);
    SeparableKernel b = build_kernel_pair(KernelKind::IrCpmg, t, g1, g2);
    CHECK((a.K1.array() == b.K1.array()).all());
    CHECK((a.K2.array() == b.K2.array()).all());
}

TEST_CASE("time axes are validated") {
    AcquisitionTimes t = simple_times();
    t.t1[3] = t.t1[2];  // not strictly increasing
    CHECK_THROWS_AS(validate(t), DataError);
    t = simple_times();
    t.t2[0] = -1.0;
    CHECK_THROWS_AS(validate(t), DataError);
}

TEST_CASE("kernel kind names round-trip") {
    for (KernelKind kind :
         {KernelKind::IrCpmg, KernelKind::SrCpmg, KernelKind::CpmgCpmg, KernelKind::DCpmg})
        CHECK(parse_kernel_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_kernel_kind("bogus"), ConfigError);
}
