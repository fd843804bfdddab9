#include "sirdx/simulate.hpp"

#include <cmath>
#include <sstream>

#include "sirdx/csv.hpp"
#include "sirdx/errors.hpp"

namespace sirdx {

namespace {

bool all_finite(const EpidemicState& s) {
    return std::isfinite(s.s) && std::isfinite(s.i) && std::isfinite(s.r) &&
           std::isfinite(s.d) && std::isfinite(s.x);
}

std::array<double, 5> compartments(const EpidemicState& s) {
    return {s.s, s.i, s.r, s.d, s.x};
}

EpidemicState with_compartments(const std::array<double, 5>& c, double t) {
    return {c[0], c[1], c[2], c[3], c[4], t};
}

// Clamps negative compartments to zero and takes the deficit proportionally
// from the other compartments that moved this step, keeping the total intact.
// deltas are the raw per-compartment changes of the step.
void clamp_negatives(std::array<double, 5>& next, const std::array<double, 5>& deltas,
                     std::uint64_t* clamp_count) {
    for (int round = 0; round < 5; ++round) {
        int neg = -1;
        for (int c = 0; c < 5; ++c) {
            if (next[c] < 0.0) {
                neg = c;
                break;
            }
        }
        if (neg < 0) return;

        double deficit = -next[neg];
        next[neg] = 0.0;
        if (clamp_count) ++*clamp_count;

        double weight_sum = 0.0;
        for (int j = 0; j < 5; ++j)
            if (j != neg) weight_sum += std::abs(deltas[j]);
        if (weight_sum <= 0.0) return; // nothing else moved; accept the loss

        for (int j = 0; j < 5; ++j)
            if (j != neg) next[j] -= deficit * std::abs(deltas[j]) / weight_sum;
    }
    // More than five rounds cannot happen: each round zeroes one compartment.
}

EpidemicState apply_step(const EpidemicState& state, const std::array<double, 5>& rate,
                         double dt, std::uint64_t* clamp_count) {
    std::array<double, 5> prev = compartments(state);
    std::array<double, 5> next{};
    std::array<double, 5> deltas{};
    for (int c = 0; c < 5; ++c) {
        deltas[c] = dt * rate[c];
        next[c] = prev[c] + deltas[c];
    }
    clamp_negatives(next, deltas, clamp_count);
    return with_compartments(next, state.t + dt);
}

std::size_t step_budget(const EpidemicState& init, const IntegratorConfig& cfg) {
    double steps = (cfg.t_max - init.t) / cfg.dt;
    if (!(steps < 2e8))
        throw InvalidArgument("t_max/dt implies more than 2e8 steps");
    return static_cast<std::size_t>(steps) + 2;
}

template <typename StepFn>
Trajectory run_integration(const Params& params, const EpidemicState& init,
                           const IntegratorConfig& cfg, StepFn step) {
    validate(params);
    validate(init);
    validate(cfg);

    Trajectory traj;
    traj.states.reserve(std::min<std::size_t>(step_budget(init, cfg), 1u << 22));
    EpidemicState s = init;
    traj.states.push_back(s);
    while (s.t < cfg.t_max && s.i >= cfg.stop_threshold) {
        s = step(s, params, cfg.dt, &traj.clamp_events);
        if (!all_finite(s)) {
            throw NonFiniteError("state became non-finite at t=" +
                                 std::to_string(s.t) + " (dt too large?)");
        }
        traj.states.push_back(s);
    }
    return traj;
}

} // namespace

void validate(const Params& p) {
    for (double v : p.as_array()) {
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidArgument("rate coefficients must be finite and >= 0");
    }
}

void validate(const EpidemicState& s) {
    if (!all_finite(s) || !std::isfinite(s.t))
        throw InvalidArgument("state components must be finite");
    if (s.s < 0.0 || s.i < 0.0 || s.r < 0.0 || s.d < 0.0 || s.x < 0.0)
        throw InvalidArgument("compartment counts must be >= 0");
}

void validate(const IntegratorConfig& c) {
    if (!(c.dt > 0.0)) throw InvalidArgument("dt must be > 0");
    if (!(c.t_max >= c.dt)) throw InvalidArgument("t_max must be >= dt");
    if (!(c.stop_threshold >= 0.0))
        throw InvalidArgument("stop_threshold must be >= 0");
}

void validate(const ParamRanges& r) {
    for (int c = 0; c < 5; ++c) {
        if (!std::isfinite(r.lo[c]) || !std::isfinite(r.hi[c]))
            throw InvalidArgument("range bounds must be finite");
        if (r.lo[c] < 0.0)
            throw InvalidArgument("range bounds must be >= 0");
        if (r.lo[c] > r.hi[c])
            throw InvalidArgument(std::string("range lo > hi for ") + kParamNames[c]);
    }
}

void validate(const LabelRule& r) {
    if (!(r.death_threshold > 0.0) || !(r.infection_threshold > 0.0))
        throw InvalidArgument("label thresholds must be > 0");
}

std::array<double, 5> derivative(const EpidemicState& state, const Params& params) {
    const double infection = params.alpha * state.s * state.i;
    const double ds = -infection - params.kappa0 * state.s;
    const double di = infection - (params.beta + params.mu) * state.i -
                      params.kappa0 * state.i - params.kappa * state.i;
    const double dr = params.beta * state.i;
    const double dd = params.mu * state.i;
    const double dx = params.kappa0 * state.s + (params.kappa + params.kappa0) * state.i;
    return {ds, di, dr, dd, dx};
}

EpidemicState step_euler(const EpidemicState& state, const Params& params,
                         double dt, std::uint64_t* clamp_count) {
    return apply_step(state, derivative(state, params), dt, clamp_count);
}

EpidemicState step_rk4(const EpidemicState& state, const Params& params,
                       double dt, std::uint64_t* clamp_count) {
    auto shift = [&](const std::array<double, 5>& k, double h) {
        std::array<double, 5> c = compartments(state);
        for (int j = 0; j < 5; ++j) c[j] += h * k[j];
        return with_compartments(c, state.t + h);
    };
    const auto k1 = derivative(state, params);
    const auto k2 = derivative(shift(k1, dt / 2.0), params);
    const auto k3 = derivative(shift(k2, dt / 2.0), params);
    const auto k4 = derivative(shift(k3, dt), params);
    std::array<double, 5> rate{};
    for (int j = 0; j < 5; ++j)
        rate[j] = (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) / 6.0;
    return apply_step(state, rate, dt, clamp_count);
}

Trajectory integrate(const Params& params, const EpidemicState& init,
                     const IntegratorConfig& cfg) {
    return run_integration(params, init, cfg, step_euler);
}

Trajectory integrate_oracle(const Params& params, const EpidemicState& init,
                            const IntegratorConfig& cfg) {
    return run_integration(params, init, cfg, step_rk4);
}

double analytic_peak(const Params& params, double s0, [[maybe_unused]] double i0,
                     double n) {
    if (params.kappa != 0.0 || params.kappa0 != 0.0)
        throw NotApplicableError("closed-form peak requires kappa = kappa0 = 0");
    if (!(params.alpha > 0.0))
        throw NotApplicableError("closed-form peak requires alpha > 0");
    const double rho = (params.beta + params.mu) / params.alpha;
    if (s0 <= rho)
        throw NotApplicableError("subcritical (s0 <= rho): infections never grow");
    return n - rho + rho * std::log(rho / s0);
}

SimulationOutcome outcome(const Trajectory& traj) {
    if (traj.states.empty()) throw InvalidArgument("empty trajectory");
    SimulationOutcome out;
    out.d_final = traj.states.back().d;
    out.i_max = 0.0;
    for (const auto& s : traj.states) out.i_max = std::max(out.i_max, s.i);
    return out;
}

SimulationOutcome simulate_outcome(const Params& params, const IntegratorConfig& cfg) {
    return outcome(integrate(params, initial_state(), cfg));
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,S,I,R,D,X\n";
    for (const auto& s : traj.states) {
        out << format_double(s.t) << ',' << format_double(s.s) << ','
            << format_double(s.i) << ',' << format_double(s.r) << ','
            << format_double(s.d) << ',' << format_double(s.x) << '\n';
    }
    return out.str();
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    write_text_file(path, trajectory_csv(traj));
}

} // namespace sirdx
