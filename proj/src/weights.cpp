// weights.cpp

#include "centropy/weights.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include "centropy/errors.hpp"
#include "centropy/numeric.hpp"

namespace centropy {

// ============================================================================
// Diversity indices
// ============================================================================

DiversityIndex diversity_index(const EntropyProfile& profile) {
    DiversityIndex index;
    index.kind = profile.kind;

    // One pass in cell order for the headline value: the result does not
    // depend on where the short/long split falls.
    compensated_sum value;
    compensated_sum short_side;
    compensated_sum long_side;
    for (const auto& [cell, component] : profile.components) {
        value.add(component);
        if (cell.duration < cell.window) {
            short_side.add(component);
        } else {
            long_side.add(component);
        }
    }
    index.value = value.value();
    index.short_side = short_side.value();
    index.long_side = long_side.value();
    return index;
}

// ============================================================================
// Weight schemes
// ============================================================================

std::string to_string(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::kl: return "kl";
        case WeightScheme::shannon: return "shannon";
        case WeightScheme::uniform: return "uniform";
        case WeightScheme::sharpe: return "sharpe";
    }
    throw std::invalid_argument("to_string: unknown weight scheme");
}

WeightScheme weight_scheme_from_string(const std::string& name) {
    if (name == "kl") return WeightScheme::kl;
    if (name == "shannon") return WeightScheme::shannon;
    if (name == "uniform") return WeightScheme::uniform;
    if (name == "sharpe") return WeightScheme::sharpe;
    throw std::invalid_argument("unknown weight scheme: " + name);
}

namespace {

void validate_assets(const std::vector<std::string>& assets,
                     std::size_t minimum) {
    if (assets.size() < minimum) {
        throw std::invalid_argument(
            "weights: need at least " + std::to_string(minimum) +
            " assets, got " + std::to_string(assets.size()));
    }
    std::set<std::string> seen;
    for (const std::string& asset : assets) {
        if (!seen.insert(asset).second) {
            throw std::invalid_argument("weights: duplicate asset id: " + asset);
        }
    }
}

void check_index_count(const std::vector<std::string>& assets,
                       const std::vector<double>& indices) {
    if (assets.size() != indices.size()) {
        throw std::invalid_argument(
            "weights: asset and index counts differ");
    }
}

} // namespace

WeightVector kl_weights(const std::vector<std::string>& assets,
                        const std::vector<double>& indices,
                        const WeightOptions& opts) {
    validate_assets(assets, 2);
    check_index_count(assets, indices);

    std::vector<double> reciprocals(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        double value = indices[i];
        if (value < 0.0) {
            throw std::invalid_argument(
                "kl_weights: negative index for asset " + assets[i]);
        }
        if (opts.epsilon_floor > 0.0 && value < opts.epsilon_floor) {
            value = opts.epsilon_floor;
        }
        if (value <= 0.0) {
            throw numeric_error(
                "kl_weights: degenerate zero index for asset " + assets[i] +
                " (enable an epsilon floor to proceed)");
        }
        reciprocals[i] = 1.0 / value;
    }
    const double denom = compensated_total(reciprocals);

    WeightVector weights;
    weights.scheme = WeightScheme::kl;
    weights.assets = assets;
    weights.values.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        weights.values[i] = reciprocals[i] / denom;
    }
    return weights;
}

WeightVector shannon_weights(const std::vector<std::string>& assets,
                             const std::vector<double>& indices) {
    validate_assets(assets, 2);
    check_index_count(assets, indices);

    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0.0) {
            throw std::invalid_argument(
                "shannon_weights: negative index for asset " + assets[i]);
        }
    }
    const double denom = compensated_total(indices);
    if (denom <= 0.0) {
        throw numeric_error(
            "shannon_weights: all indices are zero");
    }

    WeightVector weights;
    weights.scheme = WeightScheme::shannon;
    weights.assets = assets;
    weights.values.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        weights.values[i] = indices[i] / denom;
    }
    return weights;
}

WeightVector uniform_weights(const std::vector<std::string>& assets) {
    validate_assets(assets, 1);
    WeightVector weights;
    weights.scheme = WeightScheme::uniform;
    weights.assets = assets;
    weights.values.assign(assets.size(),
                          1.0 / static_cast<double>(assets.size()));
    return weights;
}

} // namespace centropy
