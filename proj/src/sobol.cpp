#include "sirdx/sobol.hpp"

#include <cmath>
#include <sstream>

#include "sirdx/csv.hpp"
#include "sirdx/errors.hpp"
#include "sirdx/parallel.hpp"
#include "sirdx/rng.hpp"
#include "sirdx/simulate.hpp"

namespace sirdx {

namespace {

std::vector<std::vector<double>> uniform_matrix(std::size_t n,
                                                const std::vector<double>& lo,
                                                const std::vector<double>& hi,
                                                std::uint64_t seed) {
    std::vector<std::vector<double>> m(n);
    for (std::size_t r = 0; r < n; ++r) {
        Rng rng(derive_seed(seed, r));
        m[r].resize(lo.size());
        for (std::size_t c = 0; c < lo.size(); ++c)
            m[r][c] = rng.uniform(lo[c], hi[c]);
    }
    return m;
}

} // namespace

SaltelliMatrices saltelli_matrices(std::size_t n, const std::vector<double>& lo,
                                   const std::vector<double>& hi,
                                   std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("base sample count must be >= 2");
    if (lo.size() != hi.size() || lo.empty())
        throw InvalidArgument("mismatched range bounds");
    for (std::size_t c = 0; c < lo.size(); ++c)
        if (lo[c] > hi[c]) throw InvalidArgument("range lo > hi");

    SaltelliMatrices m;
    m.a = uniform_matrix(n, lo, hi, derive_seed(seed, seed_stream::sobol_a));
    m.b = uniform_matrix(n, lo, hi, derive_seed(seed, seed_stream::sobol_b));
    m.ab.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        m.ab[i] = m.a;
        for (std::size_t r = 0; r < n; ++r) m.ab[i][r][i] = m.b[r][i];
    }
    return m;
}

SaltelliMatrices saltelli_matrices(const SobolPlan& plan) {
    validate(plan.ranges);
    return saltelli_matrices(
        plan.n_base, std::vector<double>(plan.ranges.lo.begin(), plan.ranges.lo.end()),
        std::vector<double>(plan.ranges.hi.begin(), plan.ranges.hi.end()), plan.seed);
}

SobolEstimate estimate_indices(const std::vector<double>& f_a,
                               const std::vector<double>& f_b,
                               const std::vector<std::vector<double>>& f_ab) {
    const std::size_t n = f_a.size();
    if (n < 2) throw InvalidArgument("need at least 2 evaluations");
    if (f_b.size() != n) throw InvalidArgument("f_a/f_b length mismatch");
    for (const auto& col : f_ab)
        if (col.size() != n) throw InvalidArgument("f_ab length mismatch");

    // Population variance of the pooled A and B evaluations.
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += f_a[r] + f_b[r];
    mean /= static_cast<double>(2 * n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        var += (f_a[r] - mean) * (f_a[r] - mean);
        var += (f_b[r] - mean) * (f_b[r] - mean);
    }
    var /= static_cast<double>(2 * n);
    if (var < 1e-12)
        throw ZeroVarianceError("model output is constant over the sampled ranges");

    SobolEstimate est;
    est.variance = var;
    for (const auto& f_abi : f_ab) {
        double s1_acc = 0.0;
        double st_acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            s1_acc += f_b[r] * (f_abi[r] - f_a[r]);
            const double d = f_a[r] - f_abi[r];
            st_acc += d * d;
        }
        est.s1.push_back(s1_acc / static_cast<double>(n) / var);
        est.st.push_back(st_acc / (2.0 * static_cast<double>(n)) / var);
    }
    return est;
}

SobolIndices sobol_run(const SobolPlan& plan, const MlpModel* surrogate) {
    if (plan.target == SobolTarget::surrogate && surrogate == nullptr)
        throw InvalidArgument("surrogate target requires a trained model");
    validate(plan.integrator);

    const SaltelliMatrices design = saltelli_matrices(plan);
    const std::size_t n = plan.n_base;
    const std::size_t d = 5;

    // Stack all rows so one parallel evaluation covers A, B, and every AB_i.
    std::vector<const std::vector<double>*> rows;
    rows.reserve((2 + d) * n);
    for (const auto& r : design.a) rows.push_back(&r);
    for (const auto& r : design.b) rows.push_back(&r);
    for (const auto& block : design.ab)
        for (const auto& r : block) rows.push_back(&r);

    std::vector<std::array<double, 2>> evals(rows.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        std::array<double, 5> coeffs{};
        for (std::size_t c = 0; c < d; ++c) coeffs[c] = (*rows[k])[c];
        const Params params = Params::from_array(coeffs);
        SimulationOutcome out;
        if (plan.target == SobolTarget::simulator)
            out = simulate_outcome(params, plan.integrator);
        else
            out = predict(*surrogate, params);
        evals[k] = {out.d_final, out.i_max};
    });

    SobolIndices indices;
    for (int output = 0; output < 2; ++output) {
        std::vector<double> f_a(n), f_b(n);
        std::vector<std::vector<double>> f_ab(d, std::vector<double>(n));
        for (std::size_t r = 0; r < n; ++r) {
            f_a[r] = evals[r][output];
            f_b[r] = evals[n + r][output];
            for (std::size_t i = 0; i < d; ++i)
                f_ab[i][r] = evals[(2 + i) * n + r][output];
        }
        const SobolEstimate est = estimate_indices(f_a, f_b, f_ab);
        indices.variance[output] = est.variance;
        for (std::size_t i = 0; i < d; ++i) {
            indices.s1[output][i] = est.s1[i];
            indices.st[output][i] = est.st[i];
        }
    }
    return indices;
}

std::string sobol_csv(const SobolIndices& indices) {
    std::ostringstream out;
    out << "input,output,s1,st\n";
    for (int output = 0; output < 2; ++output) {
        for (int i = 0; i < 5; ++i) {
            out << kParamNames[i] << ',' << kOutputNames[output] << ','
                << format_double(indices.s1[output][i]) << ','
                << format_double(indices.st[output][i]) << '\n';
        }
    }
    return out.str();
}

} // namespace sirdx
