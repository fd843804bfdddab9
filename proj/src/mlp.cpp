#include "sirdx/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sirdx/csv.hpp"
#include "sirdx/errors.hpp"
#include "sirdx/parallel.hpp"
#include "sirdx/rng.hpp"

namespace sirdx {

namespace {

constexpr int kInputs = 5;
constexpr int kOutputs = 2;

double activate(Activation a, double z, double leaky_slope) {
    switch (a) {
    case Activation::sigmoid:
        return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                        : std::exp(z) / (1.0 + std::exp(z));
    case Activation::tanh:
        return std::tanh(z);
    case Activation::relu:
        return z > 0.0 ? z : 0.0;
    case Activation::leaky_relu:
        return z > 0.0 ? z : leaky_slope * z;
    }
    return z;
}

// Derivative expressed through the already-computed activation value where
// possible (sigmoid, tanh); through z for the piecewise-linear ones.
double activate_grad(Activation a, double z, double value, double leaky_slope) {
    switch (a) {
    case Activation::sigmoid:
        return value * (1.0 - value);
    case Activation::tanh:
        return 1.0 - value * value;
    case Activation::relu:
        return z > 0.0 ? 1.0 : 0.0;
    case Activation::leaky_relu:
        return z > 0.0 ? 1.0 : leaky_slope;
    }
    return 1.0;
}

// Per-layer pre-activations and activations for one sample; reused across
// samples to keep the training loop allocation-free.
struct Workspace {
    std::vector<std::vector<double>> z;   // [layer][out]
    std::vector<std::vector<double>> act; // [layer+1][width]; act[0] = input
    std::vector<std::vector<double>> delta;

    explicit Workspace(const std::vector<int>& sizes) {
        act.emplace_back(sizes.front());
        for (std::size_t l = 1; l < sizes.size(); ++l) {
            z.emplace_back(sizes[l]);
            act.emplace_back(sizes[l]);
            delta.emplace_back(sizes[l]);
        }
    }
};

// Forward pass for one sample; fills ws.z and ws.act.
void forward_sample(const MlpModel& model, const double* input, Workspace& ws) {
    const std::size_t layers = model.weights.size();
    std::copy(input, input + model.layer_sizes.front(), ws.act[0].begin());
    for (std::size_t l = 0; l < layers; ++l) {
        const int n_in = model.layer_sizes[l];
        const int n_out = model.layer_sizes[l + 1];
        const double* w = model.weights[l].data();
        const double* a_in = ws.act[l].data();
        double* z = ws.z[l].data();
        std::copy(model.biases[l].begin(), model.biases[l].end(), ws.z[l].begin());
        for (int i = 0; i < n_in; ++i) {
            const double ai = a_in[i];
            const double* wrow = w + static_cast<std::size_t>(i) * n_out;
            for (int o = 0; o < n_out; ++o) z[o] += ai * wrow[o];
        }
        const bool is_output = (l + 1 == layers);
        for (int o = 0; o < n_out; ++o) {
            ws.act[l + 1][o] =
                is_output ? z[o]
                          : activate(model.config.activation, z[o],
                                     model.config.leaky_slope);
        }
    }
}

// Backward pass for one sample; accumulates into grads. loss_scale is the
// factor d(batch loss)/d(sample squared error component), i.e.
// 1/(batch_size * n_outputs) applied to 2*(pred - target).
void backward_sample(const MlpModel& model, Workspace& ws, const double* target,
                     double loss_scale, Gradients& grads) {
    const std::size_t layers = model.weights.size();
    const int n_out = model.layer_sizes.back();
    for (int o = 0; o < n_out; ++o) {
        ws.delta[layers - 1][o] =
            2.0 * (ws.act[layers][o] - target[o]) * loss_scale;
    }
    for (std::size_t l = layers; l-- > 0;) {
        const int in = model.layer_sizes[l];
        const int out = model.layer_sizes[l + 1];
        const double* d = ws.delta[l].data();
        const double* a_in = ws.act[l].data();
        double* gw = grads.weights[l].data();
        double* gb = grads.biases[l].data();
        for (int o = 0; o < out; ++o) gb[o] += d[o];
        for (int i = 0; i < in; ++i) {
            const double ai = a_in[i];
            double* grow = gw + static_cast<std::size_t>(i) * out;
            for (int o = 0; o < out; ++o) grow[o] += ai * d[o];
        }
        if (l == 0) break;
        const double* w = model.weights[l].data();
        for (int i = 0; i < in; ++i) {
            const double* wrow = w + static_cast<std::size_t>(i) * out;
            double sum = 0.0;
            for (int o = 0; o < out; ++o) sum += wrow[o] * d[o];
            ws.delta[l - 1][i] = sum * activate_grad(model.config.activation,
                                                     ws.z[l - 1][i], a_in[i],
                                                     model.config.leaky_slope);
        }
    }
}

void adam_step_array(std::vector<double>& params, const std::vector<double>& grad,
                     std::vector<double>& m, std::vector<double>& v,
                     const TrainConfig& cfg, double bias1, double bias2) {
    for (std::size_t j = 0; j < params.size(); ++j) {
        m[j] = cfg.adam_beta1 * m[j] + (1.0 - cfg.adam_beta1) * grad[j];
        v[j] = cfg.adam_beta2 * v[j] + (1.0 - cfg.adam_beta2) * grad[j] * grad[j];
        const double m_hat = m[j] / bias1;
        const double v_hat = v[j] / bias2;
        params[j] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_epsilon);
    }
}

struct ScaledData {
    std::vector<std::array<double, 5>> inputs;
    std::vector<std::array<double, 2>> targets;
};

ScaledData scale_rows(const std::vector<DataRow>& rows, const ScalerBounds& scaler) {
    ScaledData data;
    data.inputs.resize(rows.size());
    data.targets.resize(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
        const auto a = rows[s].params.as_array();
        for (int c = 0; c < kInputs; ++c) {
            const double range = scaler.col_max[c] - scaler.col_min[c];
            data.inputs[s][c] =
                range > 0.0 ? (a[c] - scaler.col_min[c]) / range : 0.5;
        }
        const std::array<double, 2> y = {rows[s].outcome.d_final,
                                         rows[s].outcome.i_max};
        for (int c = 0; c < kOutputs; ++c) {
            const double range = scaler.col_max[kInputs + c] - scaler.col_min[kInputs + c];
            data.targets[s][c] =
                range > 0.0 ? (y[c] - scaler.col_min[kInputs + c]) / range : 0.5;
        }
    }
    return data;
}

double mse_over(const MlpModel& model, Workspace& ws, const ScaledData& data,
                const std::vector<std::size_t>& indices) {
    double sum = 0.0;
    for (std::size_t idx : indices) {
        forward_sample(model, data.inputs[idx].data(), ws);
        for (int o = 0; o < kOutputs; ++o) {
            const double e = ws.act.back()[o] - data.targets[idx][o];
            sum += e * e;
        }
    }
    return sum / (static_cast<double>(indices.size()) * kOutputs);
}

} // namespace

const char* activation_name(Activation a) {
    switch (a) {
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
    case Activation::leaky_relu: return "leaky_relu";
    }
    return "?";
}

Activation activation_from_name(const std::string& name) {
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "tanh") return Activation::tanh;
    if (name == "relu") return Activation::relu;
    if (name == "leaky_relu") return Activation::leaky_relu;
    throw InvalidArgument("unknown activation: " + name);
}

std::size_t MlpModel::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        n += weights[l].size() + biases[l].size();
    return n;
}

MlpModel init_weights(const MlpConfig& config, std::uint64_t seed) {
    if (config.hidden_layers < 1) throw InvalidArgument("need at least 1 hidden layer");
    if (config.hidden_width < 1) throw InvalidArgument("hidden width must be >= 1");

    MlpModel model;
    model.config = config;
    model.layer_sizes.push_back(kInputs);
    for (int l = 0; l < config.hidden_layers; ++l)
        model.layer_sizes.push_back(config.hidden_width);
    model.layer_sizes.push_back(kOutputs);

    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
        const int fan_in = model.layer_sizes[l];
        const int fan_out = model.layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        std::vector<double> w(static_cast<std::size_t>(fan_in) * fan_out);
        for (double& x : w) x = rng.uniform(-limit, limit);
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(fan_out, 0.0);
    }
    return model;
}

std::array<double, 2> forward(const MlpModel& model, const std::array<double, 5>& input) {
    for (double v : input)
        if (!std::isfinite(v)) throw InvalidArgument("non-finite network input");
    Workspace ws(model.layer_sizes);
    forward_sample(model, input.data(), ws);
    std::array<double, 2> out = {ws.act.back()[0], ws.act.back()[1]};
    if (!std::isfinite(out[0]) || !std::isfinite(out[1]))
        throw NonFiniteError("network produced a non-finite output");
    return out;
}

double loss_mse(const std::vector<std::array<double, 2>>& predictions,
                const std::vector<std::array<double, 2>>& targets) {
    if (predictions.size() != targets.size())
        throw InvalidArgument("prediction/target count mismatch");
    if (predictions.empty()) throw InvalidArgument("empty batch");
    double sum = 0.0;
    for (std::size_t s = 0; s < predictions.size(); ++s) {
        for (int o = 0; o < kOutputs; ++o) {
            const double e = predictions[s][o] - targets[s][o];
            sum += e * e;
        }
    }
    return sum / (static_cast<double>(predictions.size()) * kOutputs);
}

Gradients zero_gradients(const MlpModel& model) {
    Gradients g;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        g.weights.emplace_back(model.weights[l].size(), 0.0);
        g.biases.emplace_back(model.biases[l].size(), 0.0);
    }
    return g;
}

Gradients backward(const MlpModel& model,
                   const std::vector<std::array<double, 5>>& inputs,
                   const std::vector<std::array<double, 2>>& targets) {
    if (inputs.size() != targets.size())
        throw InvalidArgument("input/target count mismatch");
    if (inputs.empty()) throw InvalidArgument("empty batch");
    Gradients grads = zero_gradients(model);
    Workspace ws(model.layer_sizes);
    const double loss_scale = 1.0 / (static_cast<double>(inputs.size()) * kOutputs);
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        forward_sample(model, inputs[s].data(), ws);
        backward_sample(model, ws, targets[s].data(), loss_scale, grads);
    }
    return grads;
}

void adam_update(MlpModel& model, const Gradients& grads, AdamState& state,
                 const TrainConfig& config) {
    if (state.m.weights.empty()) {
        state.m = zero_gradients(model);
        state.v = zero_gradients(model);
    }
    ++state.step;
    const double bias1 = 1.0 - std::pow(config.adam_beta1, static_cast<double>(state.step));
    const double bias2 = 1.0 - std::pow(config.adam_beta2, static_cast<double>(state.step));
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        adam_step_array(model.weights[l], grads.weights[l], state.m.weights[l],
                        state.v.weights[l], config, bias1, bias2);
        adam_step_array(model.biases[l], grads.biases[l], state.m.biases[l],
                        state.v.biases[l], config, bias1, bias2);
    }
}

TrainResult train(const std::vector<DataRow>& rows, const TrainConfig& config,
                  const MlpConfig& mlp_config, const std::vector<DataRow>* test_rows) {
    if (rows.size() < 20) throw InvalidArgument("training needs at least 20 rows");
    if (!(config.learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");
    if (config.patience < 1) throw InvalidArgument("patience must be >= 1");
    if (config.batch_size < 1) throw InvalidArgument("batch size must be >= 1");

    std::vector<std::vector<double>> feature_rows;
    feature_rows.reserve(rows.size());
    for (const auto& row : rows) {
        const auto a = row.params.as_array();
        std::vector<double> r(a.begin(), a.end());
        r.push_back(row.outcome.d_final);
        r.push_back(row.outcome.i_max);
        feature_rows.push_back(std::move(r));
    }
    const ScalerBounds scaler = minmax_fit(feature_rows);
    const ScaledData data = scale_rows(rows, scaler);

    // Hold out the validation slice from the shuffled training rows.
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng split_rng(derive_seed(config.seed, seed_stream::split));
    split_rng.shuffle(order);
    const auto val_n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(
               static_cast<double>(rows.size()) * config.validation_fraction)));
    if (val_n >= rows.size()) throw InvalidArgument("validation fraction too large");
    std::vector<std::size_t> train_idx(order.begin(), order.end() - val_n);
    std::vector<std::size_t> val_idx(order.end() - val_n, order.end());

    MlpModel model = init_weights(mlp_config, derive_seed(config.seed, seed_stream::mlp_init));
    model.scaler = scaler;

    ScaledData test_data;
    std::vector<std::size_t> test_idx;
    if (test_rows && !test_rows->empty()) {
        test_data = scale_rows(*test_rows, scaler);
        test_idx.resize(test_rows->size());
        std::iota(test_idx.begin(), test_idx.end(), std::size_t{0});
    }

    AdamState adam;
    Workspace ws(model.layer_sizes);
    Gradients grads = zero_gradients(model);
    Rng shuffle_rng(derive_seed(config.seed, seed_stream::train));

    TrainHistory history;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best_weights = model.weights;
    std::vector<std::vector<double>> best_biases = model.biases;
    int wait = 0;

    const double batch_out = static_cast<double>(kOutputs);
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        shuffle_rng.shuffle(train_idx);

        double epoch_sq_sum = 0.0;
        for (std::size_t start = 0; start < train_idx.size();
             start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t end = std::min(
                train_idx.size(), start + static_cast<std::size_t>(config.batch_size));
            const std::size_t m = end - start;
            for (auto& g : grads.weights) std::fill(g.begin(), g.end(), 0.0);
            for (auto& g : grads.biases) std::fill(g.begin(), g.end(), 0.0);
            const double loss_scale = 1.0 / (static_cast<double>(m) * batch_out);
            for (std::size_t s = start; s < end; ++s) {
                const std::size_t idx = train_idx[s];
                forward_sample(model, data.inputs[idx].data(), ws);
                for (int o = 0; o < kOutputs; ++o) {
                    const double e = ws.act.back()[o] - data.targets[idx][o];
                    epoch_sq_sum += e * e;
                }
                backward_sample(model, ws, data.targets[idx].data(), loss_scale, grads);
            }
            adam_update(model, grads, adam, config);
        }
        const double train_loss =
            epoch_sq_sum / (static_cast<double>(train_idx.size()) * batch_out);
        const double val_loss = mse_over(model, ws, data, val_idx);
        history.train_loss.push_back(train_loss);
        history.val_loss.push_back(val_loss);
        if (!test_idx.empty())
            history.test_loss.push_back(mse_over(model, ws, test_data, test_idx));

        if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
            throw NonFiniteError("training diverged at epoch " + std::to_string(epoch));

        if (val_loss < best_val) {
            best_val = val_loss;
            best_weights = model.weights;
            best_biases = model.biases;
            history.best_epoch = epoch;
            wait = 0;
        } else if (++wait >= config.patience) {
            history.stopped_early = true;
            break;
        }
    }

    model.weights = std::move(best_weights);
    model.biases = std::move(best_biases);
    return {std::move(model), std::move(history)};
}

SimulationOutcome predict(const MlpModel& model, const Params& params) {
    if (model.scaler.columns() != kInputs + kOutputs)
        throw InvalidArgument("model has no fitted scaler");
    const auto a = params.as_array();
    std::array<double, 5> scaled{};
    for (int c = 0; c < kInputs; ++c) {
        const double range = model.scaler.col_max[c] - model.scaler.col_min[c];
        scaled[c] = range > 0.0 ? (a[c] - model.scaler.col_min[c]) / range : 0.5;
    }
    const auto out = forward(model, scaled);
    SimulationOutcome result;
    std::array<double, 2> inverted{};
    for (int c = 0; c < kOutputs; ++c) {
        const double lo = model.scaler.col_min[kInputs + c];
        const double hi = model.scaler.col_max[kInputs + c];
        inverted[c] = hi > lo ? lo + out[c] * (hi - lo) : lo;
    }
    result.d_final = inverted[0];
    result.i_max = inverted[1];
    return result;
}

double r2_score(const std::vector<std::array<double, 2>>& predictions,
                const std::vector<std::array<double, 2>>& targets) {
    if (predictions.size() != targets.size())
        throw InvalidArgument("prediction/target count mismatch");
    if (predictions.size() < 2) throw InvalidArgument("r2 needs at least 2 samples");
    const double n = static_cast<double>(targets.size());
    double r2_sum = 0.0;
    for (int o = 0; o < kOutputs; ++o) {
        double mean = 0.0;
        for (const auto& t : targets) mean += t[o];
        mean /= n;
        double ss_res = 0.0;
        double ss_tot = 0.0;
        for (std::size_t s = 0; s < targets.size(); ++s) {
            const double e = predictions[s][o] - targets[s][o];
            const double d = targets[s][o] - mean;
            ss_res += e * e;
            ss_tot += d * d;
        }
        if (ss_tot <= 0.0)
            throw ZeroVarianceError("target component " + std::to_string(o) +
                                    " has zero variance");
        r2_sum += 1.0 - ss_res / ss_tot;
    }
    return r2_sum / kOutputs;
}

std::vector<CvReport> cross_validate(const Dataset& dataset, std::size_t k,
                                     const std::vector<SweepPoint>& sweep,
                                     const TrainConfig& base_config,
                                     std::uint64_t seed) {
    if (sweep.empty()) throw InvalidArgument("empty hyperparameter sweep");
    const auto folds = kfold_indices(dataset.rows.size(), k, seed);

    std::vector<CvReport> reports(sweep.size());
    for (std::size_t si = 0; si < sweep.size(); ++si) {
        reports[si].swept_value = sweep[si].label;
        reports[si].fold_r2.assign(k, 0.0);
    }

    const std::uint64_t cv_seed = derive_seed(seed, seed_stream::cv);
    parallel_for(sweep.size() * k, [&](std::size_t task) {
        const std::size_t si = task / k;
        const std::size_t fold = task % k;

        std::vector<char> in_fold(dataset.rows.size(), 0);
        for (std::size_t idx : folds[fold]) in_fold[idx] = 1;
        std::vector<DataRow> train_rows;
        std::vector<DataRow> test_rows;
        train_rows.reserve(dataset.rows.size() - folds[fold].size());
        test_rows.reserve(folds[fold].size());
        for (std::size_t i = 0; i < dataset.rows.size(); ++i)
            (in_fold[i] ? test_rows : train_rows).push_back(dataset.rows[i]);

        TrainConfig config = base_config;
        config.seed = derive_seed(cv_seed, task);
        TrainResult result;
        try {
            result = train(train_rows, config, sweep[si].config);
        } catch (const Error& e) {
            throw Error("sweep '" + sweep[si].label + "' fold " +
                        std::to_string(fold) + ": " + e.what());
        }

        std::vector<std::array<double, 2>> predictions(test_rows.size());
        std::vector<std::array<double, 2>> actuals(test_rows.size());
        for (std::size_t i = 0; i < test_rows.size(); ++i) {
            const auto p = predict(result.model, test_rows[i].params);
            predictions[i] = {p.d_final, p.i_max};
            actuals[i] = {test_rows[i].outcome.d_final, test_rows[i].outcome.i_max};
        }
        reports[si].fold_r2[fold] = r2_score(predictions, actuals);
    });

    for (auto& report : reports) {
        const double n = static_cast<double>(report.fold_r2.size());
        double mean = 0.0;
        for (double r : report.fold_r2) mean += r;
        mean /= n;
        double var = 0.0;
        for (double r : report.fold_r2) var += (r - mean) * (r - mean);
        report.mean_r2 = mean;
        report.std_r2 = std::sqrt(var / n);
    }
    return reports;
}

std::string history_csv(const TrainHistory& history) {
    std::ostringstream out;
    out << "epoch,train_loss,val_loss,test_loss\n";
    for (std::size_t e = 0; e < history.train_loss.size(); ++e) {
        out << e << ',' << format_double(history.train_loss[e]) << ','
            << format_double(history.val_loss[e]) << ',';
        if (e < history.test_loss.size())
            out << format_double(history.test_loss[e]);
        else
            out << "nan";
        out << '\n';
    }
    return out.str();
}

} // namespace sirdx
