// fbm.cpp
//
// Sample-path generation uses circulant embedding of the increment
// autocovariance: the covariance of fractional Gaussian noise is embedded
// in a circulant matrix whose eigenvalues come out of one FFT; a complex
// Gaussian vector shaped by the eigenvalue square roots and transformed
// back yields exact-covariance increments in O(m log m).  When the
// embedding is not nonnegative definite (it is for every H in (0,1) in
// exact arithmetic, but roundoff can intrude for H near 1 and very short
// lengths) the generator falls back to the O(N^2) Durbin-Levinson
// conditional sampler.

#include "centropy/fbm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

#include "centropy/errors.hpp"
#include "centropy/numeric.hpp"

namespace centropy {

namespace detail {

double gaussian_stream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 53-bit mantissa draws: u1 in (0, 1] so the log is finite, u2 in [0, 1).
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace detail

namespace {

// Autocovariance of unit-variance fractional Gaussian noise at lag k.
double fgn_autocovariance(std::size_t k, double hurst) {
    const double h2 = 2.0 * hurst;
    const double kd = static_cast<double>(k);
    const double up = std::pow(kd + 1.0, h2);
    const double mid = (k == 0) ? 0.0 : 2.0 * std::pow(kd, h2);
    const double down = (k == 0) ? 1.0 : std::pow(kd - 1.0, h2);
    return 0.5 * (up - mid + down);
}

void validate_spec(const FbmSpec& spec) {
    if (!(spec.hurst > 0.0) || !(spec.hurst < 1.0)) {
        throw std::invalid_argument(
            "generate_fbm: hurst must lie strictly inside (0, 1)");
    }
    if (spec.length < 16) {
        throw std::invalid_argument(
            "generate_fbm: length must be at least 16, got " +
            std::to_string(spec.length));
    }
    if (spec.ensemble < 1) {
        throw std::invalid_argument("generate_fbm: ensemble must be >= 1");
    }
}

// In-place complex DFT (unnormalized, forward sign convention).
void dft_forward(std::vector<std::complex<double>>& data) {
    const int m = static_cast<int>(data.size());
    fftw_complex* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan =
        fftw_plan_dft_1d(m, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    if (plan == nullptr) {
        throw numeric_error("generate_fbm: FFT planning failed");
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

// Draws one fractional-Gaussian-noise vector of length `length` through the
// circulant embedding with precomputed eigenvalues, consuming draws from
// `gauss` in a fixed documented order.
std::vector<double> circulant_sample(const std::vector<double>& eigen,
                                     std::size_t length,
                                     detail::gaussian_stream& gauss) {
    const std::size_t m = eigen.size();
    const std::size_t half = m / 2;
    std::vector<std::complex<double>> spectrum(m);

    spectrum[0] = std::sqrt(eigen[0]) * gauss.next();
    spectrum[half] = std::sqrt(eigen[half]) * gauss.next();
    for (std::size_t j = 1; j < half; ++j) {
        const double a = gauss.next();
        const double b = gauss.next();
        const double scale = std::sqrt(0.5 * eigen[j]);
        spectrum[j] = std::complex<double>(scale * a, scale * b);
        spectrum[m - j] = std::conj(spectrum[j]);
    }

    dft_forward(spectrum);

    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> noise(length);
    for (std::size_t k = 0; k < length; ++k) {
        noise[k] = spectrum[k].real() * norm;
    }
    return noise;
}

// Eigenvalues of the circulant embedding for a given spec; empty result
// means the embedding is numerically indefinite and the caller must fall
// back to the conditional sampler.
std::vector<double> circulant_eigenvalues(std::size_t length, double hurst) {
    std::size_t m = 1;
    while (m < 2 * length) {
        m <<= 1;
    }
    std::vector<std::complex<double>> row(m);
    for (std::size_t j = 0; j <= m / 2; ++j) {
        row[j] = fgn_autocovariance(j, hurst);
    }
    for (std::size_t j = m / 2 + 1; j < m; ++j) {
        row[j] = row[m - j];
    }
    dft_forward(row);

    std::vector<double> eigen(m);
    double max_eigen = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        eigen[j] = row[j].real();
        max_eigen = std::max(max_eigen, eigen[j]);
    }
    const double tolerance = -1e-8 * max_eigen;
    for (double& value : eigen) {
        if (value < tolerance) {
            return {};
        }
        if (value < 0.0) {
            value = 0.0;
        }
    }
    return eigen;
}

// O(N^2) Durbin-Levinson conditional sampler, exact for any admissible
// autocovariance; reserved for embeddings that fail numerically.
std::vector<double> hosking_sample(std::size_t length, double hurst,
                                   detail::gaussian_stream& gauss) {
    std::vector<double> gamma(length);
    for (std::size_t k = 0; k < length; ++k) {
        gamma[k] = fgn_autocovariance(k, hurst);
    }
    std::vector<double> phi;
    std::vector<double> previous;
    std::vector<double> noise(length);

    double variance = gamma[0];
    noise[0] = std::sqrt(variance) * gauss.next();
    for (std::size_t t = 1; t < length; ++t) {
        double reflection = gamma[t];
        for (std::size_t j = 0; j + 1 < t; ++j) {
            reflection -= previous[j] * gamma[t - 1 - j];
        }
        reflection /= variance;

        phi.assign(t, 0.0);
        phi[t - 1] = reflection;
        for (std::size_t j = 0; j + 1 < t; ++j) {
            phi[j] = previous[j] - reflection * previous[t - 2 - j];
        }
        variance *= (1.0 - reflection * reflection);
        if (variance <= 0.0) {
            throw numeric_error(
                "generate_fbm: conditional variance collapsed in fallback "
                "sampler");
        }

        double conditional_mean = 0.0;
        for (std::size_t j = 0; j < t; ++j) {
            conditional_mean += phi[j] * noise[t - 1 - j];
        }
        noise[t] = conditional_mean + std::sqrt(variance) * gauss.next();
        previous = phi;
    }
    return noise;
}

std::vector<double> sample_noise(std::size_t length, double hurst,
                                 std::uint64_t seed,
                                 const std::vector<double>& eigen) {
    detail::gaussian_stream gauss(seed);
    if (std::abs(hurst - 0.5) < 1e-12) {
        // Ordinary Brownian increments: straight i.i.d. draws.
        std::vector<double> noise(length);
        for (double& value : noise) {
            value = gauss.next();
        }
        return noise;
    }
    if (!eigen.empty()) {
        return circulant_sample(eigen, length, gauss);
    }
    return hosking_sample(length, hurst, gauss);
}

RegularSeries accumulate_path(const std::vector<double>& noise) {
    RegularSeries path;
    path.step = 1;
    path.origin = 0;
    path.values.resize(noise.size());
    double running = 0.0;
    for (std::size_t k = 0; k < noise.size(); ++k) {
        running += noise[k];
        path.values[k] = running;
    }
    return path;
}

std::vector<double> eigenvalues_for(const FbmSpec& spec) {
    if (std::abs(spec.hurst - 0.5) < 1e-12) {
        return {};
    }
    return circulant_eigenvalues(spec.length, spec.hurst);
}

} // namespace

RegularSeries generate_fbm(const FbmSpec& spec) {
    validate_spec(spec);
    const std::vector<double> eigen = eigenvalues_for(spec);
    return accumulate_path(
        sample_noise(spec.length, spec.hurst, spec.seed, eigen));
}

std::vector<RegularSeries> generate_fbm_ensemble(const FbmSpec& spec) {
    validate_spec(spec);
    const std::vector<double> eigen = eigenvalues_for(spec);
    std::vector<RegularSeries> paths;
    paths.reserve(spec.ensemble);
    for (std::size_t i = 0; i < spec.ensemble; ++i) {
        paths.push_back(accumulate_path(
            sample_noise(spec.length, spec.hurst, spec.seed + i, eigen)));
    }
    return paths;
}

double estimate_hurst(const std::vector<double>& values, std::size_t max_lag) {
    if (max_lag < 2) {
        throw std::invalid_argument("estimate_hurst: max_lag must be >= 2");
    }
    if (values.size() < 4 * max_lag) {
        throw std::invalid_argument(
            "estimate_hurst: series length must be at least 4 * max_lag");
    }
    std::vector<double> log_lag;
    std::vector<double> log_msd;
    log_lag.reserve(max_lag);
    log_msd.reserve(max_lag);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        const std::size_t terms = values.size() - lag;
        double acc = 0.0;
        for (std::size_t t = 0; t < terms; ++t) {
            const double d = values[t + lag] - values[t];
            acc += d * d;
        }
        const double msd = acc / static_cast<double>(terms);
        if (msd <= 0.0) {
            throw numeric_error(
                "estimate_hurst: degenerate increments at lag " +
                std::to_string(lag));
        }
        log_lag.push_back(std::log(static_cast<double>(lag)));
        log_msd.push_back(std::log(msd));
    }
    return 0.5 * ols_slope(log_lag, log_msd);
}

DurationDistribution model_duration_distribution(const FbmSpec& spec,
                                                 const WindowSet& windows,
                                                 Normalization normalization) {
    validate_spec(spec);
    if (windows.empty()) {
        throw std::invalid_argument(
            "model_duration_distribution: empty window set");
    }
    const std::vector<double> eigen = eigenvalues_for(spec);
    std::vector<ClusterPartition> partitions;
    for (std::size_t i = 0; i < spec.ensemble; ++i) {
        const RegularSeries path = accumulate_path(
            sample_noise(spec.length, spec.hurst, spec.seed + i, eigen));
        for (std::size_t window : windows) {
            partitions.push_back(segment_clusters(path.values, window));
        }
    }
    return duration_distribution(partitions, normalization);
}

} // namespace centropy
