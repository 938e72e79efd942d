#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spsim/dynamics.hpp"
#include "spsim/errors.hpp"

using namespace spsim;

namespace {

DensityMatrix projector(const BasisState& s) {
    Mat9 rho = Mat9::Zero();
    const int i = space().index(s);
    REQUIRE(i >= 0);
    rho(i, i) = 1.0;
    return rho;
}

DensityMatrix random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat9 a;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) a(i, j) = Complex(n(rng), n(rng));
    Mat9 rho = a * a.adjoint();
    return rho / rho.trace().real();
}

ModelParams paper_params() {
    ModelParams p;  // g=0.1, Gamma=0.001, kappa=1, gamma=1, Omega=0.1, eta=1
    return p;
}

}  // namespace

TEST_CASE("stationary states of the pump-off master equation") {
    ModelParams p = paper_params();
    CHECK(lindblad_rhs(projector({false, 0, 0}), p, false).norm() == 0.0);
    // a bare external photon is terminal: no operator acts on it
    CHECK(lindblad_rhs(projector({false, 0, 1}), p, false).norm() ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("two-level decay rate") {
    ModelParams p;
    p.g = 0.0;
    p.Gamma = 0.001;
    p.kappa = 0.0;
    p.gamma = 0.0;
    p.Omega = 0.0;
    p.eta = 0.0;
    Mat9 rhs = lindblad_rhs(projector({true, 0, 0}), p, false);
    // d<P_X>/dt = -Gamma
    CHECK(expect_proj_x(rhs) == doctest::Approx(-0.001).epsilon(1e-12));
}

TEST_CASE("rhs is traceless for random states and parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams p;
        p.g = u(rng);
        p.Gamma = u(rng);
        p.kappa = u(rng);
        p.gamma = u(rng);
        p.Omega = u(rng);
        p.eta = u(rng);
        Mat9 rhs = lindblad_rhs(random_density(rng), p, trial % 2 == 0);
        CHECK(std::abs(rhs.trace()) <= 1e-12);
    }
}

TEST_CASE("closed-system Rabi oscillation matches cos^2(g t)") {
    ModelParams p;
    p.g = 0.1;
    p.Gamma = p.gamma = p.Omega = 0.0;
    p.kappa = 0.0;
    p.eta = 0.0;
    const double dt = 0.01;
    Stepper st(p, dt);
    RealState r = to_real(projector({true, 0, 0}));
    double max_err = 0.0;
    for (int k = 1; k <= 5000; ++k) {
        st.step_inplace(r, false, 0.0);
        const double t = k * dt;
        const double expect = std::cos(p.g * t) * std::cos(p.g * t);
        max_err = std::max(max_err, std::abs(expect_proj_x(to_matrix(r)) - expect));
    }
    CHECK(max_err <= 1e-6);
}

TEST_CASE("closed-system evolution conserves total quanta") {
    ModelParams p;
    p.g = 0.3;
    p.Gamma = p.gamma = p.Omega = p.kappa = 0.0;
    p.eta = 0.0;
    Stepper st(p, 0.01);
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_density(rng);
    const auto nq = quanta_diagonal(space());
    const double n0 = (nq.array() * rho.diagonal().real().array()).sum();
    RealState r = to_real(rho);
    for (int k = 0; k < 1000; ++k) st.step_inplace(r, false, 0.0);
    const double n1 = (nq.array() * to_matrix(r).diagonal().real().array()).sum();
    CHECK(std::abs(n1 - n0) <= 1e-8);
}

TEST_CASE("deterministic step preserves trace and positivity") {
    ModelParams p = paper_params();
    Stepper st(p, 0.01);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        DensityMatrix rho = random_density(rng);
        DensityMatrix next = st.step_deterministic(rho, true);
        CHECK(std::abs(next.trace().real() - 1.0) <= 1e-10);
        CHECK((next - next.adjoint()).norm() <= 1e-14);
        CHECK(min_eigenvalue(next) >= -1e-7);
        CHECK(expect_proj_x(next) >= -1e-7);
        CHECK(expect_proj_x(next) <= 1.0 + 1e-7);
    }
}

TEST_CASE("precomputed step map agrees with literal four-stage rk4") {
    ModelParams p = paper_params();
    Stepper st(p, 0.01);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        DensityMatrix rho = random_density(rng);
        for (bool pump : {false, true}) {
            DensityMatrix a = st.step_deterministic(rho, pump);
            DensityMatrix b = st.rk4_reference_step(rho, pump);
            CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("tail map equals repeated pump-off steps") {
    ModelParams p = paper_params();
    Stepper st(p, 0.01);
    std::mt19937_64 rng(13);
    DensityMatrix rho = random_density(rng);
    RealState r = to_real(rho);
    const long n = 1137;
    RealState direct = st.tail_map(n) * r;
    for (long k = 0; k < n; ++k) st.step_inplace(r, false, 0.0);
    CHECK((direct / direct.head<kDim>().sum() - r).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("oversized dt is rejected as unstable") {
    ModelParams p = paper_params();
    Stepper st(p, 50.0);
    RealState r = to_real(projector({true, 0, 0}));
    CHECK_THROWS_AS(
        {
            for (int k = 0; k < 100; ++k) st.step_inplace(r, true, 0.0);
        }(),
        StepUnstable);
}

TEST_CASE("pumping to t=19.5 and letting the system relax gives p1 near 0.73") {
    ModelParams p = paper_params();
    const double dt = 0.01;
    Stepper st(p, dt);
    RealState r = to_real(ground_state_density());
    for (int k = 0; k < 1950; ++k) st.step_inplace(r, true, 0.0);
    RealState rf = st.tail_map(50000) * r;  // 500 time units, pump off
    DensityMatrix rho = to_matrix(rf);
    rho /= rho.trace().real();
    Eigen::Vector3d probs = photon_probabilities(rho);
    CHECK(probs(1) == doctest::Approx(0.73).epsilon(0.03));
    CHECK(non_final_population(rho) <= 1e-4);
}

TEST_CASE("stochastic step with eta*gamma = 0 reduces to the deterministic step") {
    ModelParams p = paper_params();
    p.eta = 0.0;
    Stepper st(p, 0.01);
    std::mt19937_64 rng(17);
    DensityMatrix rho = random_density(rng);
    StepOutput out = st.step_stochastic(rho, true, 0.731);
    DensityMatrix det = st.step_deterministic(rho, true);
    CHECK((out.rho_next - det).norm() == 0.0);
    CHECK_FALSE(out.y.has_value());
}

TEST_CASE("P_X eigenstates are untouched by the measurement noise") {
    ModelParams p = paper_params();
    Stepper st(p, 0.01);
    for (const BasisState& s : {BasisState{true, 0, 0}, BasisState{false, 0, 0}}) {
        DensityMatrix rho = projector(s);
        StepOutput noisy = st.step_stochastic(rho, false, 0.5);
        DensityMatrix det = st.step_deterministic(rho, false);
        CHECK((noisy.rho_next - det).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("record sample statistics") {
    ModelParams p = paper_params();  // beta = 1
    CHECK(sample_record(1.0, p, 0.01, 0.0) == doctest::Approx(0.01).epsilon(1e-15));

    const double dt = 0.01;
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n(0.0, std::sqrt(dt));
    const int draws = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double y = sample_record(0.0, p, dt, n(rng));
        sum += y;
        sum2 += y * y;
    }
    const double mean = sum / draws;
    const double var = sum2 / draws - mean * mean;
    CHECK(std::abs(mean) <= 4.0 * p.beta() * std::sqrt(dt / draws));
    CHECK(var == doctest::Approx(p.beta() * p.beta() * dt).epsilon(0.05));

    ModelParams off = p;
    off.eta = 0.0;
    CHECK_THROWS_AS(sample_record(0.5, off, dt, 0.1), DegenerateNoise);
}

TEST_CASE("stochastic trajectories keep the state physical") {
    ModelParams p = paper_params();
    const double dt = 0.005;
    Stepper st(p, dt);
    std::mt19937_64 rng(29);
    std::normal_distribution<double> n(0.0, std::sqrt(dt));
    RealState r = to_real(ground_state_density());
    double min_eig = 1.0, min_x = 1.0, max_x = 0.0;
    for (int k = 0; k < 4000; ++k) {
        const double x = st.step_inplace(r, true, n(rng));
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        if (k % 50 == 0) min_eig = std::min(min_eig, min_eigenvalue(to_matrix(r)));
        CHECK(std::abs(r.head<kDim>().sum() - 1.0) <= 1e-12);
    }
    // Euler-Maruyama leaves O(eta*gamma*dt) transients below zero; anything
    // worse indicates a genuinely unstable step size.
    CHECK(min_eig >= -2e-3);
    CHECK(min_x >= -2e-3);
    CHECK(max_x <= 1.0 + 2e-3);
}

TEST_CASE("trajectory average approaches the deterministic solution") {
    ModelParams p = paper_params();
    const double dt = 0.005;
    const double t_end = 10.0;
    const int n_traj = 2000;
    Stepper st(p, dt);
    const int steps = static_cast<int>(t_end / dt);

    RealState det = to_real(ground_state_density());
    for (int k = 0; k < steps; ++k) st.step_inplace(det, true, 0.0);

    RealState acc = RealState::Zero();
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n(0.0, std::sqrt(dt));
    for (int tr = 0; tr < n_traj; ++tr) {
        RealState r = to_real(ground_state_density());
        for (int k = 0; k < steps; ++k) st.step_inplace(r, true, n(rng));
        acc += r;
    }
    acc /= n_traj;
    CHECK(trace_distance(to_matrix(acc), to_matrix(det)) <= 0.02);
}
