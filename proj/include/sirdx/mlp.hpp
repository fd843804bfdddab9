#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sirdx/dataset.hpp"
#include "sirdx/types.hpp"

namespace sirdx {

enum class Activation { sigmoid, tanh, relu, leaky_relu };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name); // InvalidArgument on unknown

struct MlpConfig {
    int hidden_layers = 2;
    int hidden_width = 32;
    Activation activation = Activation::relu;
    double leaky_slope = 0.01;
};

/// Fully connected network mapping 5 scaled inputs to 2 scaled outputs with a
/// linear output layer. Weights are row-major (fan_in x fan_out) per layer.
struct MlpModel {
    MlpConfig config;
    std::vector<int> layer_sizes;             // 5, w, ..., w, 2
    std::vector<std::vector<double>> weights; // [layer][in * out]
    std::vector<std::vector<double>> biases;  // [layer][out]
    ScalerBounds scaler;                      // 7 columns: inputs then outputs

    std::size_t parameter_count() const;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    int batch_size = 32;
    int max_epochs = 1000;
    int patience = 50;               // epochs without validation improvement
    double validation_fraction = 0.1; // carved from the training rows
    std::uint64_t seed = 0;
};

struct TrainHistory {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    std::vector<double> test_loss; // empty when no test set was supplied
    int best_epoch = 0;
    bool stopped_early = false;
};

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

struct AdamState {
    Gradients m;
    Gradients v;
    std::int64_t step = 0;
};

struct TrainResult {
    MlpModel model;
    TrainHistory history;
};

/// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases.
/// The scaler is left empty; train() fills it.
MlpModel init_weights(const MlpConfig& config, std::uint64_t seed);

/// Scaled 5-vector in, scaled 2-vector out.
std::array<double, 2> forward(const MlpModel& model, const std::array<double, 5>& input);

/// Mean over all samples and both output components of squared error.
double loss_mse(const std::vector<std::array<double, 2>>& predictions,
                const std::vector<std::array<double, 2>>& targets);

/// Exact gradients of loss_mse over the batch with respect to every
/// parameter, same shapes as the model's weights/biases.
Gradients backward(const MlpModel& model,
                   const std::vector<std::array<double, 5>>& inputs,
                   const std::vector<std::array<double, 2>>& targets);

Gradients zero_gradients(const MlpModel& model);

/// Bias-corrected Adam step applied in place; state.step advances by one.
void adam_update(MlpModel& model, const Gradients& grads, AdamState& state,
                 const TrainConfig& config);

/// Mini-batch Adam with per-epoch shuffling and early stopping on a held-out
/// validation slice of the training rows. Returns the parameters of the best
/// validation epoch (earliest epoch on ties). test_rows, when given, are only
/// logged per epoch, never used for stopping.
TrainResult train(const std::vector<DataRow>& rows, const TrainConfig& config,
                  const MlpConfig& mlp_config,
                  const std::vector<DataRow>* test_rows = nullptr);

/// Scales the raw coefficients, runs the network, and inverts the output
/// scaling back to persons.
SimulationOutcome predict(const MlpModel& model, const Params& params);

/// 1 - SS_res/SS_tot per output component, averaged over the two outputs.
/// Throws ZeroVarianceError if a target component has zero variance.
double r2_score(const std::vector<std::array<double, 2>>& predictions,
                const std::vector<std::array<double, 2>>& targets);

struct SweepPoint {
    std::string label; // e.g. "2" or "relu"
    MlpConfig config;
};

struct CvReport {
    std::string swept_value;
    std::vector<double> fold_r2;
    double mean_r2 = 0.0;
    double std_r2 = 0.0; // population standard deviation over folds
};

/// k-fold cross-validation per swept configuration. Folds share the same
/// partition across sweep points; fold trainings run in parallel with
/// per-fold derived seeds, so results match sequential execution.
std::vector<CvReport> cross_validate(const Dataset& dataset, std::size_t k,
                                     const std::vector<SweepPoint>& sweep,
                                     const TrainConfig& base_config,
                                     std::uint64_t seed);

/// CSV with header `epoch,train_loss,val_loss,test_loss` (nan when absent).
std::string history_csv(const TrainHistory& history);

} // namespace sirdx
