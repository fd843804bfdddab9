#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sirdx/types.hpp"

namespace sirdx {

struct DataRow {
    Params params;
    SimulationOutcome outcome;
    int label_mortality = 0; // 1 iff d_final > death_threshold
    int label_control = 0;   // 0 iff i_max < infection_threshold
};

/// Sampled coefficient vectors with simulated outcomes and labels, plus the
/// provenance needed to regenerate the file bit for bit.
struct Dataset {
    std::vector<DataRow> rows;
    std::uint64_t seed = 0;
    ParamRanges ranges;
    IntegratorConfig integrator;
    LabelRule labels;

    std::size_t size() const { return rows.size(); }
};

/// Per-column min/max fitted on training rows only.
struct ScalerBounds {
    std::vector<double> col_min;
    std::vector<double> col_max;

    std::size_t columns() const { return col_min.size(); }
};

/// n independent coefficient draws, each uniform on its interval. Row k is
/// seeded by derive_seed(seed, k), so any subset regenerates independently.
std::vector<Params> sample_params(std::size_t n, const ParamRanges& ranges,
                                  std::uint64_t seed);

/// Samples n coefficient vectors, simulates each from the canonical initial
/// condition (rows run in parallel; results match the sequential order), and
/// labels the outcomes. NonFiniteError from a simulation is rethrown with the
/// offending row index.
Dataset generate(std::size_t n, const ParamRanges& ranges,
                 const IntegratorConfig& cfg, std::uint64_t seed,
                 const LabelRule& rule = {});

std::pair<int, int> labelize(const SimulationOutcome& outcome, const LabelRule& rule);

/// Recomputes both label columns from the stored outcomes.
void relabel(Dataset& dataset, const LabelRule& rule);

// Min-max scaling to [0, 1]. Columns with zero range map to 0.5 and invert
// back to the constant. Fitting needs at least 2 rows (EmptyFit otherwise).
ScalerBounds minmax_fit(const std::vector<std::vector<double>>& rows);
std::vector<double> minmax_apply(const ScalerBounds& bounds,
                                 const std::vector<double>& row);
std::vector<double> minmax_invert(const ScalerBounds& bounds,
                                  const std::vector<double>& scaled);

/// Shuffled disjoint split; the training side gets round(n * fraction) rows.
/// Throws InvalidArgument if either side would be empty.
std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset,
                                             double fraction, std::uint64_t seed);

/// k disjoint validation folds partitioning 0..n-1, sizes differing by at
/// most one. Throws InvalidArgument unless 2 <= k <= n.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

// CSV persistence. Fixed header
// `alpha,beta,mu,kappa,kappa0,d_final,i_max,label_mortality,label_control`,
// doubles at 17 significant digits, labels as 0/1.
std::string dataset_csv(const Dataset& dataset);
void write_csv(const Dataset& dataset, const std::string& path);
Dataset read_csv(const std::string& path);

// Column views used by the model pipelines.
std::vector<std::vector<double>> input_rows(const Dataset& dataset);  // 5 cols
std::vector<std::vector<double>> target_rows(const Dataset& dataset); // 2 cols
std::vector<std::vector<double>> full_rows(const Dataset& dataset);   // 7 cols

} // namespace sirdx
