#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sirdx/mlp.hpp"
#include "sirdx/types.hpp"

namespace sirdx {

enum class SobolTarget { simulator, surrogate };

struct SobolPlan {
    std::size_t n_base = 1024;
    ParamRanges ranges = ParamRanges::canonical();
    std::uint64_t seed = 0;
    SobolTarget target = SobolTarget::simulator;
    IntegratorConfig integrator; // simulator target only
};

/// Radial sample design: A and B are independent uniform draws over the
/// ranges; ab[i] equals A with column i replaced from B.
struct SaltelliMatrices {
    std::vector<std::vector<double>> a;
    std::vector<std::vector<double>> b;
    std::vector<std::vector<std::vector<double>>> ab; // [input][row][col]
};

/// First/total-order indices for one scalar output.
struct SobolEstimate {
    std::vector<double> s1;
    std::vector<double> st;
    double variance = 0.0; // of the pooled A and B evaluations
};

/// Indices per input (5) and output (2: d_final then i_max).
struct SobolIndices {
    std::array<std::array<double, 5>, 2> s1{};
    std::array<std::array<double, 5>, 2> st{};
    std::array<double, 2> variance{};
};

constexpr std::array<const char*, 2> kOutputNames = {"d_final", "i_max"};

/// Generic Saltelli design over arbitrary dimension; deterministic in seed.
SaltelliMatrices saltelli_matrices(std::size_t n, const std::vector<double>& lo,
                                   const std::vector<double>& hi, std::uint64_t seed);

SaltelliMatrices saltelli_matrices(const SobolPlan& plan);

/// Estimators over pre-computed evaluations f(A), f(B), f(AB_i):
///   S1_i = mean(f_B * (f_AB_i - f_A)) / Var
///   ST_i = mean((f_A - f_AB_i)^2) / (2 * Var)
/// Var is the population variance of the pooled A and B evaluations.
/// Throws ZeroVarianceError when Var < 1e-12 (constant model).
SobolEstimate estimate_indices(const std::vector<double>& f_a,
                               const std::vector<double>& f_b,
                               const std::vector<std::vector<double>>& f_ab);

/// Builds the design, evaluates the (2+5)*n model runs (in parallel; results
/// independent of thread count), and estimates indices for both outputs.
/// target == surrogate requires a trained model.
SobolIndices sobol_run(const SobolPlan& plan, const MlpModel* surrogate = nullptr);

/// CSV with header `input,output,s1,st`, 10 rows (5 inputs x 2 outputs).
std::string sobol_csv(const SobolIndices& indices);

} // namespace sirdx
