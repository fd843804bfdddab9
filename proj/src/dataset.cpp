#include "sirdx/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sirdx/csv.hpp"
#include "sirdx/errors.hpp"
#include "sirdx/parallel.hpp"
#include "sirdx/rng.hpp"
#include "sirdx/simulate.hpp"

namespace sirdx {

namespace {

constexpr const char* kDatasetHeader =
    "alpha,beta,mu,kappa,kappa0,d_final,i_max,label_mortality,label_control";

int parse_label_field(const std::string& field, std::size_t line_no) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    throw ParseError("line " + std::to_string(line_no) +
                     ": label must be 0 or 1, got '" + field + "'");
}

} // namespace

std::vector<Params> sample_params(std::size_t n, const ParamRanges& ranges,
                                  std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("sample count must be > 0");
    validate(ranges);
    std::vector<Params> draws(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rng rng(derive_seed(seed, k));
        std::array<double, 5> a{};
        for (int c = 0; c < 5; ++c) a[c] = rng.uniform(ranges.lo[c], ranges.hi[c]);
        draws[k] = Params::from_array(a);
    }
    return draws;
}

Dataset generate(std::size_t n, const ParamRanges& ranges,
                 const IntegratorConfig& cfg, std::uint64_t seed,
                 const LabelRule& rule) {
    validate(cfg);
    validate(rule);
    Dataset dataset;
    dataset.seed = seed;
    dataset.ranges = ranges;
    dataset.integrator = cfg;
    dataset.labels = rule;

    const auto draws = sample_params(n, ranges, derive_seed(seed, seed_stream::dataset));
    dataset.rows.resize(n);
    parallel_for(n, [&](std::size_t k) {
        DataRow& row = dataset.rows[k];
        row.params = draws[k];
        try {
            row.outcome = simulate_outcome(draws[k], cfg);
        } catch (const NonFiniteError& e) {
            throw NonFiniteError("row " + std::to_string(k) + ": " + e.what());
        }
        auto [mortality, control] = labelize(row.outcome, rule);
        row.label_mortality = mortality;
        row.label_control = control;
    });
    return dataset;
}

std::pair<int, int> labelize(const SimulationOutcome& outcome, const LabelRule& rule) {
    const int mortality = outcome.d_final > rule.death_threshold ? 1 : 0;
    const int control = outcome.i_max < rule.infection_threshold ? 0 : 1;
    return {mortality, control};
}

void relabel(Dataset& dataset, const LabelRule& rule) {
    validate(rule);
    dataset.labels = rule;
    for (auto& row : dataset.rows) {
        auto [mortality, control] = labelize(row.outcome, rule);
        row.label_mortality = mortality;
        row.label_control = control;
    }
}

ScalerBounds minmax_fit(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) throw InvalidArgument("scaler fit needs at least 2 rows");
    const std::size_t cols = rows.front().size();
    ScalerBounds bounds;
    bounds.col_min.assign(cols, std::numeric_limits<double>::infinity());
    bounds.col_max.assign(cols, -std::numeric_limits<double>::infinity());
    for (const auto& row : rows) {
        if (row.size() != cols) throw InvalidArgument("ragged rows in scaler fit");
        for (std::size_t c = 0; c < cols; ++c) {
            bounds.col_min[c] = std::min(bounds.col_min[c], row[c]);
            bounds.col_max[c] = std::max(bounds.col_max[c], row[c]);
        }
    }
    return bounds;
}

std::vector<double> minmax_apply(const ScalerBounds& bounds,
                                 const std::vector<double>& row) {
    if (row.size() != bounds.columns())
        throw InvalidArgument("row width does not match scaler");
    std::vector<double> scaled(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
        const double range = bounds.col_max[c] - bounds.col_min[c];
        scaled[c] = range > 0.0 ? (row[c] - bounds.col_min[c]) / range : 0.5;
    }
    return scaled;
}

std::vector<double> minmax_invert(const ScalerBounds& bounds,
                                  const std::vector<double>& scaled) {
    if (scaled.size() != bounds.columns())
        throw InvalidArgument("row width does not match scaler");
    std::vector<double> row(scaled.size());
    for (std::size_t c = 0; c < scaled.size(); ++c) {
        const double range = bounds.col_max[c] - bounds.col_min[c];
        row[c] = range > 0.0 ? bounds.col_min[c] + scaled[c] * range : bounds.col_min[c];
    }
    return row;
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset,
                                             double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw InvalidArgument("train fraction must be in (0, 1)");
    const std::size_t n = dataset.rows.size();
    const auto train_n = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * fraction));
    if (train_n == 0 || train_n >= n)
        throw InvalidArgument("split would leave an empty side");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, seed_stream::split));
    rng.shuffle(order);

    Dataset train = dataset;
    Dataset test = dataset;
    train.rows.clear();
    test.rows.clear();
    train.rows.reserve(train_n);
    test.rows.reserve(n - train_n);
    for (std::size_t k = 0; k < n; ++k) {
        (k < train_n ? train.rows : test.rows).push_back(dataset.rows[order[k]]);
    }
    return {std::move(train), std::move(test)};
}

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
    if (k < 2) throw InvalidArgument("k must be >= 2");
    if (n < k) throw InvalidArgument("k exceeds the number of rows");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, seed_stream::kfold));
    rng.shuffle(order);

    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t size = n / k + (f < n % k ? 1 : 0);
        folds[f].assign(order.begin() + pos, order.begin() + pos + size);
        pos += size;
    }
    return folds;
}

std::string dataset_csv(const Dataset& dataset) {
    std::ostringstream out;
    out << kDatasetHeader << '\n';
    for (const auto& row : dataset.rows) {
        for (double v : row.params.as_array()) out << format_double(v) << ',';
        out << format_double(row.outcome.d_final) << ','
            << format_double(row.outcome.i_max) << ',' << row.label_mortality
            << ',' << row.label_control << '\n';
    }
    return out.str();
}

void write_csv(const Dataset& dataset, const std::string& path) {
    write_text_file(path, dataset_csv(dataset));
}

Dataset read_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw ParseError(path + ": empty file");

    const auto header = split_csv_line(line);
    const auto expected = split_csv_line(kDatasetHeader);
    for (const auto& name : expected) {
        if (std::find(header.begin(), header.end(), name) == header.end())
            throw ParseError(path + ": missing column '" + name + "'");
    }
    if (header != expected)
        throw ParseError(path + ": columns must be ordered '" +
                         std::string(kDatasetHeader) + "'");

    Dataset dataset;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != expected.size())
            throw ParseError(path + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected.size()) + " fields, got " +
                             std::to_string(fields.size()));
        DataRow row;
        std::array<double, 5> coeffs{};
        for (int c = 0; c < 5; ++c) coeffs[c] = parse_double_field(fields[c], line_no);
        row.params = Params::from_array(coeffs);
        row.outcome.d_final = parse_double_field(fields[5], line_no);
        row.outcome.i_max = parse_double_field(fields[6], line_no);
        row.label_mortality = parse_label_field(fields[7], line_no);
        row.label_control = parse_label_field(fields[8], line_no);
        dataset.rows.push_back(row);
    }
    if (dataset.rows.empty()) throw ParseError(path + ": no data rows");

    // Provenance is not stored in the CSV; reconstruct ranges from the data
    // so the range invariant holds for downstream consumers.
    for (int c = 0; c < 5; ++c) {
        dataset.ranges.lo[c] = std::numeric_limits<double>::infinity();
        dataset.ranges.hi[c] = -std::numeric_limits<double>::infinity();
    }
    for (const auto& row : dataset.rows) {
        const auto a = row.params.as_array();
        for (int c = 0; c < 5; ++c) {
            dataset.ranges.lo[c] = std::min(dataset.ranges.lo[c], a[c]);
            dataset.ranges.hi[c] = std::max(dataset.ranges.hi[c], a[c]);
        }
    }
    return dataset;
}

std::vector<std::vector<double>> input_rows(const Dataset& dataset) {
    std::vector<std::vector<double>> rows;
    rows.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows) {
        const auto a = row.params.as_array();
        rows.emplace_back(a.begin(), a.end());
    }
    return rows;
}

std::vector<std::vector<double>> target_rows(const Dataset& dataset) {
    std::vector<std::vector<double>> rows;
    rows.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows)
        rows.push_back({row.outcome.d_final, row.outcome.i_max});
    return rows;
}

std::vector<std::vector<double>> full_rows(const Dataset& dataset) {
    std::vector<std::vector<double>> rows;
    rows.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows) {
        const auto a = row.params.as_array();
        std::vector<double> r(a.begin(), a.end());
        r.push_back(row.outcome.d_final);
        r.push_back(row.outcome.i_max);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace sirdx
