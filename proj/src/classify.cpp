#include "sirdx/classify.hpp"

#include <algorithm>
#include <cmath>

#include "sirdx/errors.hpp"
#include "sirdx/rng.hpp"

namespace sirdx {

namespace {

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double dot(const std::vector<double>& u, const std::vector<double>& v) {
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) sum += u[j] * v[j];
    return sum;
}

void check_labels(const std::vector<int>& labels) {
    for (int y : labels)
        if (y != 0 && y != 1) throw InvalidArgument("labels must be 0 or 1");
}

// Kernel matrix cache for SMO; falls back to direct evaluation above the
// size cap (2048^2 entries = 32 MB).
class KernelCache {
public:
    KernelCache(const std::vector<std::vector<double>>& inputs, const KernelSpec& spec)
        : inputs_(inputs), spec_(spec), n_(inputs.size()) {
        if (n_ <= 2048) {
            table_.resize(n_ * n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i; j < n_; ++j) {
                    const double k = kernel_eval(spec_, inputs_[i], inputs_[j]);
                    table_[i * n_ + j] = k;
                    table_[j * n_ + i] = k;
                }
        }
    }

    double operator()(std::size_t i, std::size_t j) const {
        if (!table_.empty()) return table_[i * n_ + j];
        return kernel_eval(spec_, inputs_[i], inputs_[j]);
    }

private:
    const std::vector<std::vector<double>>& inputs_;
    KernelSpec spec_;
    std::size_t n_;
    std::vector<double> table_;
};

} // namespace

const char* kernel_name(KernelKind k) {
    switch (k) {
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "poly";
    case KernelKind::rbf: return "rbf";
    }
    return "?";
}

KernelKind kernel_from_name(const std::string& name) {
    if (name == "linear") return KernelKind::linear;
    if (name == "poly" || name == "polynomial") return KernelKind::polynomial;
    if (name == "rbf") return KernelKind::rbf;
    throw InvalidArgument("unknown kernel: " + name);
}

LogisticModel logistic_train(const std::vector<std::vector<double>>& inputs,
                             const std::vector<int>& labels,
                             const LogisticConfig& config) {
    if (inputs.size() != labels.size())
        throw InvalidArgument("input/label count mismatch");
    if (inputs.size() < 2) throw InvalidArgument("need at least 2 samples");
    check_labels(labels);

    const std::size_t n = inputs.size();
    const std::size_t dim = inputs.front().size();
    LogisticModel model;
    model.weights.assign(dim, 0.0);

    std::vector<double> grad_w(dim);
    for (int iter = 0; iter < config.max_iters; ++iter) {
        std::fill(grad_w.begin(), grad_w.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const double p =
                stable_sigmoid(dot(model.weights, inputs[s]) + model.bias);
            const double err = p - static_cast<double>(labels[s]);
            for (std::size_t j = 0; j < dim; ++j) grad_w[j] += err * inputs[s][j];
            grad_b += err;
        }
        double norm_sq = grad_b * grad_b;
        for (std::size_t j = 0; j < dim; ++j) norm_sq += grad_w[j] * grad_w[j];
        const double scale = 1.0 / static_cast<double>(n);
        model.final_gradient_norm = std::sqrt(norm_sq) * scale;
        model.iterations = iter;
        if (model.final_gradient_norm < config.tolerance) break;

        for (std::size_t j = 0; j < dim; ++j)
            model.weights[j] -= config.learning_rate * grad_w[j] * scale;
        model.bias -= config.learning_rate * grad_b * scale;
        model.iterations = iter + 1;

        if (!std::isfinite(model.bias))
            throw NonFiniteError("logistic regression diverged");
    }
    for (double w : model.weights)
        if (!std::isfinite(w)) throw NonFiniteError("logistic regression diverged");
    return model;
}

LogisticPrediction logistic_predict(const LogisticModel& model,
                                    const std::vector<double>& input) {
    if (input.size() != model.weights.size())
        throw InvalidArgument("input width does not match model");
    const double p = stable_sigmoid(dot(model.weights, input) + model.bias);
    return {p, p >= 0.5 ? 1 : 0};
}

double kernel_eval(const KernelSpec& spec, const std::vector<double>& u,
                   const std::vector<double>& v) {
    if (u.size() != v.size()) throw InvalidArgument("kernel argument size mismatch");
    switch (spec.kind) {
    case KernelKind::linear:
        return dot(u, v);
    case KernelKind::polynomial:
        return std::pow(spec.gamma * dot(u, v) + spec.coef0, spec.degree);
    case KernelKind::rbf: {
        double dist_sq = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double d = u[j] - v[j];
            dist_sq += d * d;
        }
        return std::exp(-spec.gamma * dist_sq);
    }
    }
    return 0.0;
}

double gamma_scale(const std::vector<std::vector<double>>& inputs) {
    if (inputs.empty()) return 1.0;
    const std::size_t dim = inputs.front().size();
    const double n = static_cast<double>(inputs.size());
    double var_sum = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        double mean = 0.0;
        for (const auto& row : inputs) mean += row[j];
        mean /= n;
        double var = 0.0;
        for (const auto& row : inputs) var += (row[j] - mean) * (row[j] - mean);
        var_sum += var / n;
    }
    const double mean_var = var_sum / static_cast<double>(dim);
    if (mean_var <= 0.0) return 1.0;
    return 1.0 / (static_cast<double>(dim) * mean_var);
}

SvmModel svm_train(const std::vector<std::vector<double>>& inputs,
                   const std::vector<int>& labels, const KernelSpec& spec,
                   const SvmConfig& config) {
    if (inputs.size() != labels.size())
        throw InvalidArgument("input/label count mismatch");
    if (inputs.size() < 2) throw InvalidArgument("need at least 2 samples");
    if (!(config.c > 0.0)) throw InvalidArgument("C must be > 0");
    check_labels(labels);

    const std::size_t n = inputs.size();
    std::vector<double> y(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = labels[i] == 1 ? 1.0 : -1.0;
        (labels[i] == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg)
        throw SingleClassError("training labels contain a single class");

    const KernelCache kernel(inputs, spec);
    std::vector<double> alpha(n, 0.0);
    double b = 0.0;

    auto decision = [&](std::size_t i) {
        double sum = b;
        for (std::size_t j = 0; j < n; ++j)
            if (alpha[j] > 0.0) sum += alpha[j] * y[j] * kernel(j, i);
        return sum;
    };

    Rng rng(derive_seed(config.seed, seed_stream::svm));
    const double c = config.c;
    const double tol = config.tolerance;

    bool converged = false;
    int clean_sweeps = 0;
    for (int pass = 0; pass < config.max_passes; ++pass) {
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e_i = decision(i) - y[i];
            const bool violates = (y[i] * e_i < -tol && alpha[i] < c) ||
                                  (y[i] * e_i > tol && alpha[i] > 0.0);
            if (!violates) continue;

            // Second index chosen uniformly among the others (seeded).
            const std::size_t j =
                (i + 1 + rng.bounded(n - 1)) % n;
            const double e_j = decision(j) - y[j];

            const double alpha_i_old = alpha[i];
            const double alpha_j_old = alpha[j];
            double lo, hi;
            if (y[i] != y[j]) {
                lo = std::max(0.0, alpha_j_old - alpha_i_old);
                hi = std::min(c, c + alpha_j_old - alpha_i_old);
            } else {
                lo = std::max(0.0, alpha_i_old + alpha_j_old - c);
                hi = std::min(c, alpha_i_old + alpha_j_old);
            }
            if (lo >= hi) continue;

            const double eta = 2.0 * kernel(i, j) - kernel(i, i) - kernel(j, j);
            if (eta >= 0.0) continue;

            double alpha_j = alpha_j_old - y[j] * (e_i - e_j) / eta;
            alpha_j = std::clamp(alpha_j, lo, hi);
            if (std::abs(alpha_j - alpha_j_old) < 1e-5) continue;

            const double alpha_i =
                alpha_i_old + y[i] * y[j] * (alpha_j_old - alpha_j);
            alpha[i] = alpha_i;
            alpha[j] = alpha_j;

            const double b1 = b - e_i - y[i] * (alpha_i - alpha_i_old) * kernel(i, i) -
                              y[j] * (alpha_j - alpha_j_old) * kernel(i, j);
            const double b2 = b - e_j - y[i] * (alpha_i - alpha_i_old) * kernel(i, j) -
                              y[j] * (alpha_j - alpha_j_old) * kernel(j, j);
            if (alpha_i > 0.0 && alpha_i < c)
                b = b1;
            else if (alpha_j > 0.0 && alpha_j < c)
                b = b2;
            else
                b = (b1 + b2) / 2.0;
            ++changed;
        }
        if (changed == 0) {
            if (++clean_sweeps >= 2) {
                converged = true;
                break;
            }
        } else {
            clean_sweeps = 0;
        }
    }

    SvmModel model;
    model.kernel = spec;
    model.c = c;
    model.bias = b;
    model.converged = converged;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 0.0) {
            model.support_vectors.push_back(inputs[i]);
            model.dual_coefs.push_back(alpha[i] * y[i]);
        }
    }
    if (model.support_vectors.empty())
        throw Error("SMO produced no support vectors");
    return model;
}

double svm_decision(const SvmModel& model, const std::vector<double>& input) {
    double sum = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
        sum += model.dual_coefs[i] * kernel_eval(model.kernel, model.support_vectors[i], input);
    return sum;
}

int svm_predict(const SvmModel& model, const std::vector<double>& input) {
    return svm_decision(model, input) < 0.0 ? 0 : 1;
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
    const auto m = confusion(predictions, labels);
    return static_cast<double>(m.tn + m.tp) / static_cast<double>(m.total());
}

ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& labels) {
    if (predictions.size() != labels.size())
        throw InvalidArgument("prediction/label count mismatch");
    if (predictions.empty()) throw InvalidArgument("empty evaluation set");
    check_labels(labels);
    check_labels(predictions);
    ConfusionMatrix m;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (labels[i] == 0)
            (predictions[i] == 0 ? m.tn : m.fp) += 1;
        else
            (predictions[i] == 1 ? m.tp : m.fn) += 1;
    }
    return m;
}

} // namespace sirdx
