#pragma once

#include <string>

#include "sirdx/classify.hpp"
#include "sirdx/mlp.hpp"

namespace sirdx {

// JSON model persistence. Doubles are written in shortest round-trip form,
// so a saved model reproduces its predictions exactly.

std::string mlp_to_json(const MlpModel& model);
MlpModel mlp_from_json(const std::string& text); // ParseError on bad documents

void save_mlp(const MlpModel& model, const std::string& path);
MlpModel load_mlp(const std::string& path);

std::string svm_to_json(const SvmModel& model);
SvmModel svm_from_json(const std::string& text);

std::string logistic_to_json(const LogisticModel& model);
LogisticModel logistic_from_json(const std::string& text);

} // namespace sirdx
