#pragma once

#include <string>
#include <vector>

#include "sirdx/classify.hpp"

namespace sirdx::svg {

// Minimal deterministic SVG output: fixed 800x600 viewport, linear axes,
// labeled ticks. These are verification artifacts, not publication graphics.

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

std::string line_chart(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       bool log_y = false);

std::string histogram(const std::vector<double>& values, int bins,
                      const std::string& title, const std::string& x_label);

/// values[series][group]; negative bars are drawn clamped at zero.
std::string grouped_bars(const std::vector<std::string>& group_labels,
                         const std::vector<std::string>& series_names,
                         const std::vector<std::vector<double>>& values,
                         const std::string& title, const std::string& y_label);

std::string scatter(const std::vector<Series>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    bool identity_line = false);

std::string confusion_chart(const ConfusionMatrix& matrix, const std::string& title);

} // namespace sirdx::svg
