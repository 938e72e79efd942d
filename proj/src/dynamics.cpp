#include "spsim/dynamics.hpp"

#include <cmath>

#include "spsim/errors.hpp"

namespace spsim {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr int kRealDim = kDim * kDim;

// Fixed layout of the real coordinates: diagonal first, then the
// upper-triangle real parts, then the upper-triangle imaginary parts.
struct CoordTable {
    int row[kRealDim];
    int col[kRealDim];
    CoordTable() {
        int k = 0;
        for (int i = 0; i < kDim; ++i, ++k) { row[k] = i; col[k] = i; }
        for (int i = 0; i < kDim; ++i)
            for (int j = i + 1; j < kDim; ++j, ++k) { row[k] = i; col[k] = j; }
        for (int i = 0; i < kDim; ++i)
            for (int j = i + 1; j < kDim; ++j, ++k) { row[k] = i; col[k] = j; }
    }
};

const CoordTable& coords() {
    static const CoordTable t;
    return t;
}

constexpr int kReOffset = kDim;
constexpr int kImOffset = kDim + (kDim * (kDim - 1)) / 2;

struct Operators {
    Mat9 h_unit;  // Jaynes-Cummings term at g = 1
    Mat9 sm, sp, px, abd;
    Mat9 sm_n, sp_n, px_n, abd_n;  // A^dag A for each channel
    Eigen::Matrix<double, kDim, 1> px_diag;
    Operators() {
        const StateSpace& sp_ = space();
        h_unit = hamiltonian(1.0, sp_);
        sm = make_operator(OperatorKind::SigmaMinus, sp_);
        sp = make_operator(OperatorKind::SigmaPlus, sp_);
        px = make_operator(OperatorKind::ProjX, sp_);
        abd = make_operator(OperatorKind::ABDag, sp_);
        sm_n = sm.adjoint() * sm;
        sp_n = sp.adjoint() * sp;
        px_n = px.adjoint() * px;
        abd_n = abd.adjoint() * abd;
        px_diag = px.diagonal().real();
    }
};

const Operators& ops() {
    static const Operators o;
    return o;
}

void add_dissipator(Mat9& rhs, double rate, const Mat9& a, const Mat9& ada,
                    const Mat9& rho) {
    if (rate == 0.0) return;
    rhs.noalias() += rate * (a * rho * a.adjoint());
    rhs.noalias() -= (0.5 * rate) * (ada * rho + rho * ada);
}

}  // namespace

double ModelParams::beta() const {
    if (eta * gamma <= 0.0)
        throw DegenerateNoise("beta undefined: eta*gamma = 0");
    return 1.0 / std::sqrt(eta * gamma);
}

void ModelParams::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0)) throw ConfigError(std::string("model.") + name + " must be >= 0");
    };
    nonneg(g, "g");
    nonneg(Gamma, "Gamma");
    nonneg(kappa, "kappa");
    nonneg(gamma, "gamma");
    nonneg(Omega, "Omega");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ConfigError("model.eta must lie in [0,1]");
}

RealState to_real(const Mat9& rho) {
    const CoordTable& t = coords();
    RealState r;
    for (int k = 0; k < kDim; ++k) r(k) = rho(t.row[k], t.col[k]).real();
    for (int k = kReOffset; k < kImOffset; ++k)
        r(k) = kSqrt2 * rho(t.row[k], t.col[k]).real();
    for (int k = kImOffset; k < kRealDim; ++k)
        r(k) = kSqrt2 * rho(t.row[k], t.col[k]).imag();
    return r;
}

Mat9 to_matrix(const RealState& r) {
    const CoordTable& t = coords();
    Mat9 m = Mat9::Zero();
    for (int k = 0; k < kDim; ++k) m(k, k) = r(k);
    for (int k = kReOffset; k < kImOffset; ++k) {
        const double v = r(k) / kSqrt2;
        m(t.row[k], t.col[k]) += v;
        m(t.col[k], t.row[k]) += v;
    }
    for (int k = kImOffset; k < kRealDim; ++k) {
        const double v = r(k) / kSqrt2;
        m(t.row[k], t.col[k]) += Complex(0.0, v);
        m(t.col[k], t.row[k]) += Complex(0.0, -v);
    }
    return m;
}

DensityMatrix ground_state_density() {
    Mat9 rho = Mat9::Zero();
    rho(0, 0) = 1.0;
    return rho;
}

double expect_proj_x(const DensityMatrix& rho) {
    return (ops().px_diag.array() * rho.diagonal().real().array()).sum();
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat9> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    Mat9 d = a - b;
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat9> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::Vector3d photon_probabilities(const DensityMatrix& rho) {
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    const StateSpace& sp = space();
    for (int i = 0; i < kDim; ++i) p(sp.state(i).n_ext) += rho(i, i).real();
    return p;
}

double non_final_population(const DensityMatrix& rho) {
    const StateSpace& sp = space();
    double acc = 0.0;
    for (int i = 0; i < kDim; ++i) {
        const BasisState& s = sp.state(i);
        if (s.excited || s.n_cav > 0) acc += rho(i, i).real();
    }
    return acc;
}

Mat9 lindblad_rhs(const DensityMatrix& rho, const ModelParams& params, bool pump_on) {
    const Operators& o = ops();
    const Complex mi(0.0, -1.0);
    Mat9 h = params.g * o.h_unit;
    Mat9 rhs = mi * (h * rho - rho * h);
    add_dissipator(rhs, params.Gamma, o.sm, o.sm_n, rho);
    add_dissipator(rhs, params.kappa, o.abd, o.abd_n, rho);
    add_dissipator(rhs, params.gamma, o.px, o.px_n, rho);
    if (pump_on) add_dissipator(rhs, params.Omega, o.sp, o.sp_n, rho);
    return rhs;
}

double sample_record(double expect_PX, const ModelParams& params, double dt, double dW) {
    if (!params.has_record())
        throw DegenerateNoise("record requested with eta*gamma = 0");
    return expect_PX * dt + params.beta() * dW;
}

namespace {

// Generator in real coordinates, one column per real basis element.
RealMap real_generator(const ModelParams& params, bool pump_on) {
    RealMap L;
    for (int k = 0; k < kRealDim; ++k) {
        RealState e = RealState::Zero();
        e(k) = 1.0;
        L.col(k) = to_real(lindblad_rhs(to_matrix(e), params, pump_on));
    }
    return L;
}

// RK4 one-step map of a linear generator: I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24.
RealMap rk4_map(const RealMap& L, double h) {
    RealMap phi = RealMap::Identity();
    for (int k = 4; k >= 1; --k)
        phi = RealMap::Identity() + (h / k) * (L * phi).eval();
    return phi;
}

constexpr double kTraceDriftTol = 1e-6;
constexpr double kPurityBlowup = 1.05;

}  // namespace

Stepper::Stepper(const ModelParams& params, double dt) : params_(params), dt_(dt) {
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    params_.validate();
    sqrt_eps_gamma_ = std::sqrt(params.eta * params.gamma);
    L_on_ = real_generator(params, true);
    L_off_ = real_generator(params, false);
    Phi_on_ = rk4_map(L_on_, dt);
    Phi_off_ = rk4_map(L_off_, dt);
    const CoordTable& t = coords();
    const auto& pxd = ops().px_diag;
    for (int k = 0; k < kRealDim; ++k)
        pfac_(k) = pxd(t.row[k]) + pxd(t.col[k]);
}

double Stepper::step_inplace(RealState& r, bool pump_on, double dW) const {
    const double x = ops().px_diag.dot(r.head<kDim>());
    RealState next;
    next.noalias() = (pump_on ? Phi_on_ : Phi_off_) * r;
    if (sqrt_eps_gamma_ > 0.0 && dW != 0.0)
        next += (sqrt_eps_gamma_ * dW) * (pfac_.array() * r.array() - 2.0 * x * r.array()).matrix();
    const double tr = next.head<kDim>().sum();
    if (!(std::abs(tr - 1.0) <= kTraceDriftTol))
        throw StepUnstable("trace drifted by " + std::to_string(tr - 1.0) +
                           " in one step; reduce dt");
    r = next / tr;
    if (!(r.squaredNorm() <= kPurityBlowup))
        throw StepUnstable("state norm blew up; reduce dt");
    return x;
}

DensityMatrix Stepper::step_deterministic(const DensityMatrix& rho, bool pump_on) const {
    RealState r = to_real(rho);
    step_inplace(r, pump_on, 0.0);
    return to_matrix(r);
}

StepOutput Stepper::step_stochastic(const DensityMatrix& rho, bool pump_on, double dW) const {
    StepOutput out;
    RealState r = to_real(rho);
    out.expect_PX = step_inplace(r, pump_on, dW);
    out.rho_next = to_matrix(r);
    if (params_.has_record())
        out.y = out.expect_PX * dt_ + params_.beta() * dW;
    return out;
}

RealState Stepper::apply_phi(const RealState& r, bool pump_on) const {
    return (pump_on ? Phi_on_ : Phi_off_) * r;
}

RealMap Stepper::tail_map(long n_steps) const {
    RealMap result = RealMap::Identity();
    RealMap base = Phi_off_;
    long n = n_steps;
    while (n > 0) {
        if (n & 1) result = (base * result).eval();
        base = (base * base).eval();
        n >>= 1;
    }
    return result;
}

DensityMatrix Stepper::rk4_reference_step(const DensityMatrix& rho, bool pump_on) const {
    const double h = dt_;
    Mat9 k1 = lindblad_rhs(rho, params_, pump_on);
    Mat9 k2 = lindblad_rhs(rho + (h / 2) * k1, params_, pump_on);
    Mat9 k3 = lindblad_rhs(rho + (h / 2) * k2, params_, pump_on);
    Mat9 k4 = lindblad_rhs(rho + h * k3, params_, pump_on);
    Mat9 next = rho + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    next = 0.5 * (next + next.adjoint()).eval();
    return next / next.trace().real();
}

}  // namespace spsim
