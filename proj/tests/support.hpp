// support.hpp
// Shared helpers for the unit-test binaries: a scratch-directory guard,
// rank statistics, and small independent reference implementations used to
// cross-check the library ("two-route" checks).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

// ============================================================================
// Scratch directories
// ============================================================================

// Creates a unique directory under the system temp root and removes it
// (recursively) when the guard dies.
class TempDir {
public:
    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::filesystem::path candidate =
                base / ("centropy_test_" + std::to_string(counter_++));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("TempDir: could not create scratch directory");
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("write_file failed: " + path);
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("read_file failed: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ============================================================================
// Rank statistics
// ============================================================================

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw std::invalid_argument("spearman: need two equal series");
    }
    auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n, 0.0);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) {
                ++j;
            }
            const double avg =
                0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
            for (std::size_t k = i; k <= j; ++k) {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw std::invalid_argument("spearman: constant input");
    }
    return sxy / std::sqrt(sxx * syy);
}

// ============================================================================
// Independent reference: cluster segmentation
// ============================================================================

// Stateless re-derivation of the crossing positions: the overlap opens
// with a crossing at its first sample; afterwards sample i is a crossing
// iff it is the first zero after a nonzero, or a nonzero whose predecessor
// is a nonzero of the opposite sign.  Durations are the gaps between
// consecutive crossings; the trailing stretch is dropped.
inline std::vector<std::size_t> reference_durations(
    const std::vector<double>& values, std::size_t n) {
    const std::size_t N = values.size();
    if (n < 2 || n + 1 > N || N - n + 1 < 3) {
        throw std::invalid_argument("reference_durations: bad window");
    }
    std::vector<int> signs;
    for (std::size_t t = n - 1; t < N; ++t) {
        double avg = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            avg += values[t - k];
        }
        avg /= static_cast<double>(n);
        const double eps = values[t] - avg;
        signs.push_back(eps > 0.0 ? 1 : (eps < 0.0 ? -1 : 0));
    }
    std::vector<std::size_t> crossings{0};
    for (std::size_t i = 1; i < signs.size(); ++i) {
        const int cur = signs[i];
        const int prev = signs[i - 1];
        const bool zero_opens = (cur == 0 && prev != 0);
        const bool sign_flip = (cur != 0 && prev != 0 && cur != prev);
        if (zero_opens || sign_flip) {
            crossings.push_back(i);
        }
    }
    std::vector<std::size_t> durations;
    for (std::size_t i = 1; i < crossings.size(); ++i) {
        durations.push_back(crossings[i] - crossings[i - 1]);
    }
    return durations;
}

// ============================================================================
// Independent reference: rolling moments and Sharpe grid search
// ============================================================================

// Plain two-pass rolling sample standard deviation.
inline std::vector<double> reference_rolling_std(const std::vector<double>& v,
                                                 std::size_t window) {
    std::vector<double> out;
    if (window < 2 || v.size() < window) {
        return out;
    }
    for (std::size_t start = 0; start + window <= v.size(); ++start) {
        double m = 0.0;
        for (std::size_t k = 0; k < window; ++k) {
            m += v[start + k];
        }
        m /= static_cast<double>(window);
        double acc = 0.0;
        for (std::size_t k = 0; k < window; ++k) {
            const double d = v[start + k] - m;
            acc += d * d;
        }
        out.push_back(std::sqrt(acc / static_cast<double>(window - 1)));
    }
    return out;
}

// Sharpe ratio of fixed weights over a return panel (plain arithmetic).
inline double reference_sharpe(const std::vector<std::vector<double>>& returns,
                               const std::vector<double>& w) {
    const std::size_t T = returns.front().size();
    std::vector<double> port(T, 0.0);
    for (std::size_t i = 0; i < returns.size(); ++i) {
        for (std::size_t t = 0; t < T; ++t) {
            port[t] += w[i] * returns[i][t];
        }
    }
    double m = 0.0;
    for (const double r : port) {
        m += r;
    }
    m /= static_cast<double>(T);
    double acc = 0.0;
    for (const double r : port) {
        acc += (r - m) * (r - m);
    }
    const double sd = std::sqrt(acc / static_cast<double>(T - 1));
    return m / sd;
}

// Exhaustive simplex grid search (three assets, fixed step).  Returns the
// best Sharpe value found.
inline double grid_best_sharpe3(const std::vector<std::vector<double>>& returns,
                                double step) {
    const int s = static_cast<int>(std::lround(1.0 / step));
    double best = -1e300;
    for (int a = 0; a <= s; ++a) {
        for (int b = 0; a + b <= s; ++b) {
            const int c = s - a - b;
            const std::vector<double> w{static_cast<double>(a) / s,
                                        static_cast<double>(b) / s,
                                        static_cast<double>(c) / s};
            double var_guard = 0.0;
            // skip degenerate (zero-variance) corners
            const double sh = [&] {
                const std::size_t T = returns.front().size();
                std::vector<double> port(T, 0.0);
                for (std::size_t i = 0; i < returns.size(); ++i) {
                    for (std::size_t t = 0; t < T; ++t) {
                        port[t] += w[i] * returns[i][t];
                    }
                }
                double m = 0.0;
                for (const double r : port) {
                    m += r;
                }
                m /= static_cast<double>(T);
                double acc = 0.0;
                for (const double r : port) {
                    acc += (r - m) * (r - m);
                }
                var_guard = acc;
                if (acc <= 0.0) {
                    return -1e300;
                }
                return m / std::sqrt(acc / static_cast<double>(T - 1));
            }();
            if (var_guard > 0.0 && sh > best) {
                best = sh;
            }
        }
    }
    return best;
}

} // namespace testsupport
