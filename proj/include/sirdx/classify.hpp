#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sirdx/types.hpp"

namespace sirdx {

struct LogisticConfig {
    double learning_rate = 0.5;
    int max_iters = 5000;
    double tolerance = 1e-6; // stop once the gradient norm drops below this
};

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    int iterations = 0;
    double final_gradient_norm = 0.0;
};

enum class KernelKind { linear, polynomial, rbf };

const char* kernel_name(KernelKind k);
KernelKind kernel_from_name(const std::string& name);

struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    int degree = 3;     // polynomial only
    double gamma = 1.0; // polynomial and rbf
    double coef0 = 0.0; // polynomial only
};

struct SvmConfig {
    double c = 1.0;
    double tolerance = 1e-3;
    int max_passes = 200; // cap on full sweeps before giving up
    std::uint64_t seed = 0;
};

/// Soft-margin SVM in dual form. dual_coefs holds alpha_i * y_i with
/// y in {-1,+1}; the public label interface is {0,1} throughout.
struct SvmModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefs;
    double bias = 0.0;
    KernelSpec kernel;
    double c = 1.0;
    bool converged = true;
};

struct ConfusionMatrix {
    std::size_t tn = 0, fp = 0, fn = 0, tp = 0;

    std::size_t total() const { return tn + fp + fn + tp; }
};

/// Full-batch gradient descent on mean cross-entropy from zero-initialized
/// parameters. Deterministic for fixed data. Throws NonFiniteError on
/// divergence.
LogisticModel logistic_train(const std::vector<std::vector<double>>& inputs,
                             const std::vector<int>& labels,
                             const LogisticConfig& config = {});

/// Sigmoid of the affine score; label 1 iff probability >= 0.5.
struct LogisticPrediction {
    double probability = 0.0;
    int label = 0;
};
LogisticPrediction logistic_predict(const LogisticModel& model,
                                    const std::vector<double>& input);

/// linear: u.v;  polynomial: (gamma*u.v + coef0)^degree;  rbf: exp(-gamma*|u-v|^2).
double kernel_eval(const KernelSpec& spec, const std::vector<double>& u,
                   const std::vector<double>& v);

/// 1/(n_features * mean per-feature variance) of the training inputs; falls
/// back to 1 for constant data.
double gamma_scale(const std::vector<std::vector<double>>& inputs);

/// Sequential minimal optimization of the soft-margin dual. Converges when a
/// full sweep leaves every multiplier unchanged; if max_passes sweeps never
/// reach that state the best iterate is returned with converged = false.
/// Throws SingleClassError unless both classes are present.
SvmModel svm_train(const std::vector<std::vector<double>>& inputs,
                   const std::vector<int>& labels, const KernelSpec& spec,
                   const SvmConfig& config = {});

double svm_decision(const SvmModel& model, const std::vector<double>& input);

/// Sign of the decision value mapped to {0,1}; an exact 0 maps to 1.
int svm_predict(const SvmModel& model, const std::vector<double>& input);

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);
ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& labels);

} // namespace sirdx
