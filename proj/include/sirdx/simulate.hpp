#pragma once

#include <array>
#include <string>

#include "sirdx/types.hpp"

namespace sirdx {

// Compartment dynamics:
//   dS/dt = -alpha*S*I - kappa0*S
//   dI/dt =  alpha*S*I - (beta + mu)*I - kappa0*I - kappa*I
//   dR/dt =  beta*I
//   dD/dt =  mu*I
//   dX/dt =  kappa0*S + (kappa + kappa0)*I
// The X equation absorbs every containment flux, so the five rates always
// sum to zero and total population is conserved.

/// Right-hand side (dS, dI, dR, dD, dX) in persons/day.
std::array<double, 5> derivative(const EpidemicState& state, const Params& params);

/// One forward Euler step of size dt (days). A compartment driven below zero
/// is clamped to 0 and the deficit taken proportionally from the other
/// compartments that moved this step, so the population total survives the
/// overshoot; clamp_count (when given) is incremented per clamped component.
EpidemicState step_euler(const EpidemicState& state, const Params& params,
                         double dt, std::uint64_t* clamp_count = nullptr);

/// Classical 4th-order Runge-Kutta step; verification counterpart of
/// step_euler with the same clamping rule.
EpidemicState step_rk4(const EpidemicState& state, const Params& params,
                       double dt, std::uint64_t* clamp_count = nullptr);

/// Integrates with forward Euler from init until t >= t_max or I drops below
/// cfg.stop_threshold. Throws NonFiniteError if a component leaves the
/// representable range (dt too large for the given rates), InvalidArgument on
/// invalid init or config.
Trajectory integrate(const Params& params, const EpidemicState& init,
                     const IntegratorConfig& cfg);

/// Same contract as integrate but with 4th-order local accuracy. Used by
/// tests and verification reports, not the data pipeline.
Trajectory integrate_oracle(const Params& params, const EpidemicState& init,
                            const IntegratorConfig& cfg);

/// Continuous-model peak infection count for the no-containment reduction
/// (kappa = kappa0 = 0):  peak = n - rho + rho*ln(rho/s0),  rho = (beta+mu)/alpha.
/// Throws NotApplicableError when containment is active, alpha == 0, or
/// s0 <= rho (subcritical: infections only decay and the peak stays at i0).
double analytic_peak(const Params& params, double s0, double i0, double n);

/// d_final = D of the last state, i_max = max I over all states.
/// Throws InvalidArgument on an empty trajectory.
SimulationOutcome outcome(const Trajectory& traj);

/// Convenience: integrate from the canonical initial condition and reduce.
SimulationOutcome simulate_outcome(const Params& params, const IntegratorConfig& cfg);

/// CSV with header `t,S,I,R,D,X`, one row per stored state, full double
/// precision.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

} // namespace sirdx
