// entropy.cpp

#include "centropy/entropy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "centropy/errors.hpp"
#include "centropy/numeric.hpp"

namespace centropy {

namespace {

void validate_mass_fraction(double value, const char* name) {
    if (!(value >= 0.0) || !(value <= 1.0)) {
        throw std::invalid_argument(
            std::string("kl_component: ") + name + " must lie in [0, 1]");
    }
}

void validate_distribution(const DurationDistribution& dist, const char* role) {
    if (dist.masses.empty()) {
        throw std::invalid_argument(
            std::string("entropy: ") + role + " distribution is empty");
    }
    compensated_sum total;
    for (const auto& [cell, mass] : dist.masses) {
        if (!(mass >= 0.0)) {
            throw std::invalid_argument(
                std::string("entropy: ") + role +
                " distribution has a negative mass");
        }
        total.add(mass);
    }
    if (std::abs(total.value() - 1.0) > 1e-6) {
        throw std::invalid_argument(
            std::string("entropy: ") + role +
            " distribution masses do not sum to 1");
    }
}

} // namespace

// ============================================================================
// Relative entropy on duration distributions
// ============================================================================

double kl_component(double p, double q) {
    validate_mass_fraction(p, "p");
    validate_mass_fraction(q, "q");
    if (p == 0.0) {
        return 0.0;
    }
    if (q == 0.0) {
        throw support_error(
            "kl_component: reference mass is zero where input mass is " +
            std::to_string(p), p);
    }
    return p * std::log(p / q);
}

EntropyProfile kl_cluster_entropy(const DurationDistribution& p,
                                  const DurationDistribution& q,
                                  const KlOptions& opts) {
    validate_distribution(p, "input");
    validate_distribution(q, "reference");

    // Support alignment: mass of p on cells the reference never visited is
    // removed (and reported); the remainder is renormalized.  The
    // reference is used as-is; its mass on the shared support already
    // sums to at most one, which keeps the aggregate nonnegative.
    compensated_sum dropped;
    for (const auto& [cell, mass] : p.masses) {
        auto it = q.masses.find(cell);
        if (it == q.masses.end() || it->second <= 0.0) {
            dropped.add(mass);
        }
    }
    const double dropped_mass = dropped.value();
    if (dropped_mass > opts.max_dropped_mass) {
        std::ostringstream message;
        message << "kl_cluster_entropy: " << dropped_mass
                << " of the input mass lies outside the reference support"
                   " (limit " << opts.max_dropped_mass << ")";
        throw support_error(message.str(), dropped_mass);
    }

    const double keep = 1.0 - dropped_mass;
    if (keep <= 0.0) {
        throw support_error(
            "kl_cluster_entropy: no input mass on the reference support",
            dropped_mass);
    }

    EntropyProfile profile;
    profile.kind = EntropyKind::kl;
    profile.dropped_mass = dropped_mass;
    compensated_sum aggregate;
    for (const auto& [cell, mass] : p.masses) {
        auto it = q.masses.find(cell);
        if (it == q.masses.end() || it->second <= 0.0 || mass <= 0.0) {
            continue;
        }
        const double renormalized = mass / keep;
        const double component =
            renormalized * std::log(renormalized / it->second);
        profile.components.emplace(cell, component);
        aggregate.add(component);
    }
    profile.aggregate = aggregate.value();
    return profile;
}

double shannon_component(double p) {
    if (!(p >= 0.0) || p > 1.0) {
        throw std::invalid_argument(
            "shannon_component: probability must lie in [0, 1]");
    }
    return (p > 0.0) ? -p * std::log(p) : 0.0;
}

EntropyProfile shannon_cluster_entropy(const DurationDistribution& dist) {
    validate_distribution(dist, "input");
    EntropyProfile profile;
    profile.kind = EntropyKind::shannon;
    compensated_sum aggregate;
    for (const auto& [cell, mass] : dist.masses) {
        const double component = shannon_component(mass);
        profile.components.emplace(cell, component);
        aggregate.add(component);
    }
    profile.aggregate = aggregate.value();
    return profile;
}

// ============================================================================
// Closed forms for power-law duration distributions
// ============================================================================

namespace {

void validate_alpha(double alpha, const char* name) {
    if (!(alpha > 1.0)) {
        throw std::invalid_argument(
            std::string("closed form: ") + name + " must exceed 1");
    }
}

} // namespace

double kl_closed_form_alpha(double alpha1, double alpha2) {
    validate_alpha(alpha1, "alpha1");
    validate_alpha(alpha2, "alpha2");
    return std::log((alpha1 - 1.0) / (alpha2 - 1.0)) -
           (alpha1 - alpha2) / (alpha1 - 1.0);
}

double kl_closed_form_hurst(double h1, double h2) {
    if (!(h1 > 0.0) || !(h1 < 1.0) || !(h2 > 0.0) || !(h2 < 1.0)) {
        throw std::invalid_argument(
            "kl_closed_form_hurst: exponents must lie strictly inside (0, 1)");
    }
    // Delegate through alpha = 2 - H so the two closed forms are the same
    // arithmetic bit for bit (equal inputs give exactly 0: the ratio is
    // exactly 1 and the difference exactly 0).
    return kl_closed_form_alpha(2.0 - h1, 2.0 - h2);
}

// ============================================================================
// Quadrature oracle
// ============================================================================

namespace {

struct OracleParams {
    double alpha1;
    double alpha2;
};

// Integrand of the relative entropy between normalized densities
// p_i(tau) = (alpha_i - 1) tau^-alpha_i on [1, inf), after substituting
// u = ln tau:  g(u) = p1(u) * (ln p1(u) - ln p2(u)) with
// ln p_i(u) = ln(alpha_i - 1) - (alpha_i - 1) u.  Evaluating through the
// logarithms keeps the tail finite-precision clean; no symbolic
// cancellation of the ratio is performed.
double oracle_integrand(double u, void* raw) {
    const OracleParams* params = static_cast<const OracleParams*>(raw);
    const double lp = std::log(params->alpha1 - 1.0) - (params->alpha1 - 1.0) * u;
    const double lq = std::log(params->alpha2 - 1.0) - (params->alpha2 - 1.0) * u;
    return std::exp(lp) * (lp - lq);
}

struct QuadratureWorkspace {
    gsl_integration_workspace* ws = nullptr;

    QuadratureWorkspace() {
        // The library handles GSL statuses itself.
        static const int handler_disabled = [] {
            gsl_set_error_handler_off();
            return 0;
        }();
        (void)handler_disabled;
        ws = gsl_integration_workspace_alloc(2000);
        if (ws == nullptr) {
            throw numeric_error("kl_integral_oracle: workspace allocation failed");
        }
    }

    ~QuadratureWorkspace() { gsl_integration_workspace_free(ws); }

    QuadratureWorkspace(const QuadratureWorkspace&) = delete;
    QuadratureWorkspace& operator=(const QuadratureWorkspace&) = delete;
};

} // namespace

double kl_integral_oracle(double alpha1, double alpha2, double tau_max) {
    validate_alpha(alpha1, "alpha1");
    validate_alpha(alpha2, "alpha2");
    if (!(tau_max > 1.0)) {
        throw std::invalid_argument("kl_integral_oracle: tau_max must exceed 1");
    }

    OracleParams params{alpha1, alpha2};
    gsl_function integrand;
    integrand.function = &oracle_integrand;
    integrand.params = &params;

    QuadratureWorkspace workspace;

    // Bulk of the domain: tau in [1, tau_max], i.e. u in [0, ln tau_max].
    double bulk = 0.0;
    double bulk_error = 0.0;
    int status = gsl_integration_qags(&integrand, 0.0, std::log(tau_max),
                                      1e-12, 1e-11, 2000, workspace.ws,
                                      &bulk, &bulk_error);
    if (status != 0) {
        throw numeric_error(
            std::string("kl_integral_oracle: bulk quadrature failed: ") +
            gsl_strerror(status));
    }

    // Tail: tau in (tau_max, inf), integrated numerically on the half line.
    double tail = 0.0;
    double tail_error = 0.0;
    status = gsl_integration_qagiu(&integrand, std::log(tau_max), 1e-12, 1e-11,
                                   2000, workspace.ws, &tail, &tail_error);
    if (status != 0) {
        throw numeric_error(
            std::string("kl_integral_oracle: tail quadrature failed: ") +
            gsl_strerror(status));
    }

    return bulk + tail;
}

} // namespace centropy
