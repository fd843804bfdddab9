#include "sirdx/serialize.hpp"

#include <json.hpp>

#include "sirdx/csv.hpp"
#include "sirdx/errors.hpp"

namespace sirdx {

using nlohmann::json;

namespace {

json scaler_to_json(const ScalerBounds& scaler) {
    return json{{"min", scaler.col_min}, {"max", scaler.col_max}};
}

ScalerBounds scaler_from_json(const json& j) {
    ScalerBounds scaler;
    scaler.col_min = j.at("min").get<std::vector<double>>();
    scaler.col_max = j.at("max").get<std::vector<double>>();
    if (scaler.col_min.size() != scaler.col_max.size())
        throw ParseError("scaler min/max length mismatch");
    return scaler;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON document");
    return j;
}

} // namespace

std::string mlp_to_json(const MlpModel& model) {
    json j;
    j["format"] = "sirdx-mlp-v1";
    j["config"] = {{"hidden_layers", model.config.hidden_layers},
                   {"hidden_width", model.config.hidden_width},
                   {"activation", activation_name(model.config.activation)},
                   {"leaky_slope", model.config.leaky_slope}};
    j["layer_sizes"] = model.layer_sizes;
    j["weights"] = model.weights; // row-major fan_in x fan_out per layer
    j["biases"] = model.biases;
    j["scaler"] = scaler_to_json(model.scaler);
    return j.dump(2) + "\n";
}

MlpModel mlp_from_json(const std::string& text) {
    try {
        const json j = parse(text);
        if (j.at("format").get<std::string>() != "sirdx-mlp-v1")
            throw ParseError("unexpected model format tag");
        MlpModel model;
        const json& cfg = j.at("config");
        model.config.hidden_layers = cfg.at("hidden_layers").get<int>();
        model.config.hidden_width = cfg.at("hidden_width").get<int>();
        model.config.activation =
            activation_from_name(cfg.at("activation").get<std::string>());
        model.config.leaky_slope = cfg.at("leaky_slope").get<double>();
        model.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
        model.weights = j.at("weights").get<std::vector<std::vector<double>>>();
        model.biases = j.at("biases").get<std::vector<std::vector<double>>>();
        model.scaler = scaler_from_json(j.at("scaler"));

        if (model.layer_sizes.size() < 2 ||
            model.weights.size() != model.layer_sizes.size() - 1 ||
            model.biases.size() != model.weights.size())
            throw ParseError("inconsistent layer structure");
        for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
            const auto in = static_cast<std::size_t>(model.layer_sizes[l]);
            const auto out = static_cast<std::size_t>(model.layer_sizes[l + 1]);
            if (model.weights[l].size() != in * out || model.biases[l].size() != out)
                throw ParseError("layer " + std::to_string(l) + " has wrong shape");
        }
        return model;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model document: ") + e.what());
    }
}

void save_mlp(const MlpModel& model, const std::string& path) {
    write_text_file(path, mlp_to_json(model));
}

MlpModel load_mlp(const std::string& path) {
    return mlp_from_json(read_text_file(path));
}

std::string svm_to_json(const SvmModel& model) {
    json j;
    j["format"] = "sirdx-svm-v1";
    j["kernel"] = {{"kind", kernel_name(model.kernel.kind)},
                   {"degree", model.kernel.degree},
                   {"gamma", model.kernel.gamma},
                   {"coef0", model.kernel.coef0}};
    j["c"] = model.c;
    j["bias"] = model.bias;
    j["converged"] = model.converged;
    j["support_vectors"] = model.support_vectors;
    j["dual_coefs"] = model.dual_coefs;
    return j.dump(2) + "\n";
}

SvmModel svm_from_json(const std::string& text) {
    try {
        const json j = parse(text);
        if (j.at("format").get<std::string>() != "sirdx-svm-v1")
            throw ParseError("unexpected model format tag");
        SvmModel model;
        const json& k = j.at("kernel");
        model.kernel.kind = kernel_from_name(k.at("kind").get<std::string>());
        model.kernel.degree = k.at("degree").get<int>();
        model.kernel.gamma = k.at("gamma").get<double>();
        model.kernel.coef0 = k.at("coef0").get<double>();
        model.c = j.at("c").get<double>();
        model.bias = j.at("bias").get<double>();
        model.converged = j.at("converged").get<bool>();
        model.support_vectors =
            j.at("support_vectors").get<std::vector<std::vector<double>>>();
        model.dual_coefs = j.at("dual_coefs").get<std::vector<double>>();
        if (model.support_vectors.size() != model.dual_coefs.size())
            throw ParseError("support vector / coefficient count mismatch");
        return model;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model document: ") + e.what());
    }
}

std::string logistic_to_json(const LogisticModel& model) {
    json j;
    j["format"] = "sirdx-logistic-v1";
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    j["iterations"] = model.iterations;
    j["final_gradient_norm"] = model.final_gradient_norm;
    return j.dump(2) + "\n";
}

LogisticModel logistic_from_json(const std::string& text) {
    try {
        const json j = parse(text);
        if (j.at("format").get<std::string>() != "sirdx-logistic-v1")
            throw ParseError("unexpected model format tag");
        LogisticModel model;
        model.weights = j.at("weights").get<std::vector<double>>();
        model.bias = j.at("bias").get<double>();
        model.iterations = j.at("iterations").get<int>();
        model.final_gradient_norm = j.at("final_gradient_norm").get<double>();
        return model;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model document: ") + e.what());
    }
}

} // namespace sirdx
