#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace sirdx {

/// The five rate coefficients driving one outbreak simulation.
struct Params {
    double alpha = 0.0;  // infection rate, 1/(person*day)
    double beta = 0.0;   // recovery rate, 1/day
    double mu = 0.0;     // mortality rate, 1/day
    double kappa = 0.0;  // quarantine containment acting on I, 1/day
    double kappa0 = 0.0; // population-wide containment acting on S and I, 1/day

    std::array<double, 5> as_array() const { return {alpha, beta, mu, kappa, kappa0}; }
    static Params from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
};

constexpr std::array<const char*, 5> kParamNames = {"alpha", "beta", "mu",
                                                    "kappa", "kappa0"};

/// Compartment populations at one instant. Values are real-valued person
/// counts; the continuous model does not quantize individuals.
struct EpidemicState {
    double s = 0.0; // susceptible
    double i = 0.0; // currently infected
    double r = 0.0; // recovered
    double d = 0.0; // deceased
    double x = 0.0; // removed from transmission by containment
    double t = 0.0; // days

    double total() const { return s + i + r + d + x; }
};

struct IntegratorConfig {
    double dt = 0.01;             // days
    double t_max = 2000.0;        // days
    double stop_threshold = 1e-3; // halt once I drops below this many persons
};

/// States at t0, t0+dt, t0+2dt, ... including the terminal state.
struct Trajectory {
    std::vector<EpidemicState> states;
    // times a compartment was clamped back to zero after an overshooting step
    std::uint64_t clamp_events = 0;
};

/// The two scalar targets extracted from one run.
struct SimulationOutcome {
    double d_final = 0.0; // deaths at end of run, persons
    double i_max = 0.0;   // peak simultaneous infections, persons
};

/// Closed sampling interval per coefficient.
struct ParamRanges {
    std::array<double, 5> lo{};
    std::array<double, 5> hi{};

    /// Canonical ranges: alpha [1e-6, 3e-5], beta [0.01, 0.1],
    /// mu [0.001, 0.005], kappa [0, 0.02], kappa0 [0, 0.005].
    static ParamRanges canonical() {
        return {{1e-6, 0.01, 0.001, 0.0, 0.0}, {3e-5, 0.1, 0.005, 0.02, 0.005}};
    }

    /// Wider alternative preset: alpha [1e-6, 1e-4], beta [0.01, 0.1],
    /// mu [0.001, 0.004], kappa [0, 0.01], kappa0 [0, 0.01].
    static ParamRanges wide() {
        return {{1e-6, 0.01, 0.001, 0.0, 0.0}, {1e-4, 0.1, 0.004, 0.01, 0.01}};
    }

    bool contains(const Params& p) const {
        auto a = p.as_array();
        for (int c = 0; c < 5; ++c)
            if (a[c] < lo[c] || a[c] > hi[c]) return false;
        return true;
    }
};

/// Outcome-to-label thresholds for the two classification tasks.
struct LabelRule {
    double death_threshold = 200.0;      // high mortality iff d_final > this
    double infection_threshold = 1000.0; // under control iff i_max < this
};

// Canonical initial condition and population size.
constexpr double kPopulation = 10000.0;
inline EpidemicState initial_state() { return {9997.0, 3.0, 0.0, 0.0, 0.0, 0.0}; }

void validate(const Params& p);          // finite, >= 0
void validate(const EpidemicState& s);   // finite, compartments >= 0
void validate(const IntegratorConfig& c);
void validate(const ParamRanges& r);
void validate(const LabelRule& r);

} // namespace sirdx
