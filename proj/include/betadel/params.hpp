#pragma once

#include <stdexcept>
#include <string>

namespace betadel {

// Parameter quadruple of the model. The tessellation lives in R^{d-1}; beta
// controls the height density, nu the cell weighting, gamma the intensity.
struct ModelParams {
    int d = 3;
    double beta = 0.0;
    double nu = 0.0;
    double gamma = 1.0;
};

// Returns params unchanged if valid; otherwise throws with a message listing
// every violated constraint.
inline ModelParams validate(const ModelParams& p) {
    std::string problems;
    auto add = [&problems](const std::string& msg) {
        if (!problems.empty()) problems += "; ";
        problems += msg;
    };
    if (p.d < 2) add("d must be >= 2, got " + std::to_string(p.d));
    if (!(p.beta > -1.0)) add("beta must exceed -1, got " + std::to_string(p.beta));
    if (!(p.nu >= -1.0)) add("nu must be >= -1, got " + std::to_string(p.nu));
    if (!(p.gamma > 0.0)) add("gamma must be positive, got " + std::to_string(p.gamma));
    if (!problems.empty()) throw std::invalid_argument("invalid parameters: " + problems);
    return p;
}

} // namespace betadel
