#pragma once

#include <optional>

#include "spsim/hilbert.hpp"

namespace spsim {

/// Physical rates in units of the cavity decay rate kappa.
struct ModelParams {
    double g = 0.1;        // dot-cavity coupling
    double Gamma = 0.001;  // spontaneous emission
    double kappa = 1.0;    // cavity leakage (1 by construction of the units)
    double gamma = 1.0;    // dephasing / monitoring strength
    double Omega = 0.1;    // incoherent pump rate
    double eta = 1.0;      // monitoring efficiency

    /// Record noise scale beta = (eta*gamma)^(-1/2); requires eta*gamma > 0.
    double beta() const;
    bool has_record() const { return eta * gamma > 0.0; }
    void validate() const;  // throws ConfigError on out-of-range values
};

using DensityMatrix = Mat9;

/// 81-dimensional real coordinates of a Hermitian 9x9 matrix:
/// 9 diagonal entries, then sqrt(2)*Re rho_ij and sqrt(2)*Im rho_ij for i<j.
/// The map is orthonormal, so the Euclidean norm equals the Frobenius norm.
using RealState = Eigen::Matrix<double, kDim * kDim, 1>;
using RealMap = Eigen::Matrix<double, kDim * kDim, kDim * kDim>;

RealState to_real(const Mat9& rho);
Mat9 to_matrix(const RealState& r);

DensityMatrix ground_state_density();
double expect_proj_x(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);
/// Trace distance (1/2)||a - b||_1 between Hermitian unit-trace matrices.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// (p0, p1, p2plus) = external-mode photon number populations.
Eigen::Vector3d photon_probabilities(const DensityMatrix& rho);

/// Right-hand side of the master equation at the given pump state:
/// -i[H,rho] + Gamma H[sigma-] + kappa H[a b^dag] + gamma H[P_X] + Omega H[sigma+],
/// with H[A]rho = A rho A^dag - (A^dag A rho + rho A^dag A)/2.
Mat9 lindblad_rhs(const DensityMatrix& rho, const ModelParams& params, bool pump_on);

struct StepOutput {
    DensityMatrix rho_next;
    double expect_PX = 0.0;        // <P_X> before the step
    std::optional<double> y;       // record sample <P_X>*dt + beta*dW, if monitored
};

/// Time-integrated record sample y = <P_X>*dt + beta*dW.
double sample_record(double expect_PX, const ModelParams& params, double dt, double dW);

/// Fixed-step integrator for one parameter set. The deterministic part of the
/// master equation is linear and time-invariant, so its classical RK4 update is
/// a fixed linear map; we precompute that map once and apply it per step. The
/// stochastic part is a plain Euler-Maruyama increment driven by the same dW
/// that enters the record.
class Stepper {
public:
    Stepper(const ModelParams& params, double dt);

    const ModelParams& params() const { return params_; }
    double dt() const { return dt_; }

    DensityMatrix step_deterministic(const DensityMatrix& rho, bool pump_on) const;
    StepOutput step_stochastic(const DensityMatrix& rho, bool pump_on, double dW) const;

    /// In-place fast path used by the trajectory loops. Returns <P_X> before
    /// the step. dW is ignored when eta*gamma = 0.
    double step_inplace(RealState& r, bool pump_on, double dW) const;

    /// Composition of n pump-off deterministic steps as a single linear map.
    RealMap tail_map(long n_steps) const;

    /// Literal four-stage RK4 evaluation of lindblad_rhs, kept as the
    /// independent route for checking the precomputed one-step map.
    DensityMatrix rk4_reference_step(const DensityMatrix& rho, bool pump_on) const;

    const RealMap& generator(bool pump_on) const { return pump_on ? L_on_ : L_off_; }

private:
    RealState apply_phi(const RealState& r, bool pump_on) const;

    ModelParams params_;
    double dt_;
    double sqrt_eps_gamma_;  // sqrt(eta*gamma)
    RealMap L_on_, L_off_;    // generators in real coordinates
    RealMap Phi_on_, Phi_off_;  // RK4 one-step maps
    RealState pfac_;          // (P_X)_i + (P_X)_j per real coordinate
};

/// Residual population outside the final states |G,0,n>.
double non_final_population(const DensityMatrix& rho);

}  // namespace spsim
