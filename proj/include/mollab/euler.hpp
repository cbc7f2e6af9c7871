// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_EULER_HPP
#define MOLLAB_EULER_HPP

#include <tuple>
#include <vector>

#include "mollab/field.hpp"
#include "mollab/mollify.hpp"
#include "mollab/scaling.hpp"

namespace mollab {

/// Pseudo-spectral stepper configuration. The 2/3 dealiasing rule is on
/// by default; nu is an optional stabilization viscosity for exploratory
/// rough-data runs (conservation checks use nu = 0).
struct SolverConfig {
    int N = 128;
    double dt = 1e-3;
    double t_final = 1.0;
    bool dealias = true;
    double nu = 0.0;
    double gamma = 1.4;           ///< isentropic exponent (compressible)
    double pressure_tol = 1e-10;  ///< elliptic residual tolerance
    int max_pressure_iters = 500;
    double cfl_factor = 0.5;

    void validate() const;
};

/// Pressure of the variable-density projection: solves
/// div((1/rho) grad P) = div(-(u.grad)u) by fixed-point iteration
/// preconditioned with the constant-coefficient inverse Laplacian.
Field pressure_field(const Field& rho, const Field& u, const SolverConfig& cfg,
                     const Field* warm_start = nullptr);

/// One RK4 step of inhomogeneous incompressible Euler on the 2D torus.
/// Returns (rho, u, P) where P is the pressure of the *input* state. The
/// output velocity is re-projected; the density max principle is checked,
/// not clamped.
std::tuple<Field, Field, Field> step_incompressible(const Field& rho,
                                                    const Field& u,
                                                    const SolverConfig& cfg);

/// One RK4 step of isentropic compressible Euler in conservative form.
/// Trips a smoothness-lost error when max|grad u| dt >= 0.1.
std::pair<Field, Field> step_compressible(const Field& rho, const Field& u,
                                          const SolverConfig& cfg);

/// Sampled run output. P frames are present for incompressible runs only.
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> rho, u, P;
    double t_final = 0.0;
    double gamma = 0.0;
    double nu = 0.0;
    bool compressible = false;
    bool truncated = false;  ///< compressible run stopped by the monitor

    TimeSeriesField rho_series() const;
    TimeSeriesField u_series() const;
    TimeSeriesField pressure_series() const;
};

Trajectory run_incompressible(const Field& rho0, const Field& u0,
                              const SolverConfig& cfg, int sample_every = 10);
Trajectory run_compressible(const Field& rho0, const Field& u0,
                            const SolverConfig& cfg, int sample_every = 10);

/// Mollified defect terms along a trajectory at one kernel scale, plus
/// the energy series. `cancellation_max_rel` tracks the discrete
/// (A3) + (B2) identity, which must hold to 1e-8 relative.
struct EnergyBudget {
    double epsilon = 0.0;
    double nu = 0.0;
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> defect_A2, defect_B1, defect_C;  // incompressible
    std::vector<double> defect_G2;                       // compressible
    double cancellation_max_rel = 0.0;
};

EnergyBudget budget_terms(const Trajectory& traj, const MollifierKernel& kernel);
EnergyBudget compressible_budget(const Trajectory& traj, double gamma,
                                 const MollifierKernel& kernel);

/// Budgets across a kernel ladder with log-log fits of the time-mean
/// defects.
struct BudgetScaling {
    std::vector<EnergyBudget> budgets;
    ScalingFit fit_A2, fit_B1, fit_C, fit_G2;
};

BudgetScaling budget_scaling(const Trajectory& traj,
                             const std::vector<double>& epsilons,
                             MollifierKernel::Profile profile =
                                 MollifierKernel::Profile::Bump);

}  // namespace mollab

#endif
