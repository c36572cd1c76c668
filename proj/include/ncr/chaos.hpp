#pragma once

// Chaotic feature extraction. Each normalized input value is treated as a
// stimulus for one neuron: a skew tent map orbit starts at the initial
// activity q and runs until it first lands strictly inside the eps_stim
// neighborhood of the stimulus (or hits the iteration cap). The arithmetic
// mean of the orbit values visited so far (the trace) is the extracted
// feature, and augmentation appends one such mean per input column.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <ncr/linalg.hpp>

namespace ncr {

struct ChaosParams {
    double skew = 0.499;            // tent map break point b
    double initial_activity = 0.5;  // orbit start q
    double eps_stim = 0.01;         // stopping neighborhood half-width
    std::size_t max_iters = 10000;  // trace length cap

    void validate() const {
        if (!(skew > 0.0 && skew < 1.0)) {
            throw std::invalid_argument("ChaosParams: skew must be in (0,1)");
        }
        if (!(initial_activity > 0.0 && initial_activity < 1.0)) {
            throw std::invalid_argument(
                "ChaosParams: initial_activity must be in (0,1)");
        }
        if (!(eps_stim > 0.0)) {
            throw std::invalid_argument("ChaosParams: eps_stim must be > 0");
        }
        if (max_iters < 1) {
            throw std::invalid_argument("ChaosParams: max_iters must be >= 1");
        }
    }
};

enum class TraceEnd { NeighborhoodHit, IterCap };

struct Trace {
    Vector values;  // orbit values, starting with q
    TraceEnd terminated_by = TraceEnd::IterCap;
};

// T(x) = x/b for x < b, (1-x)/(1-b) otherwise. Both branches map [0,1]
// into [0,1]; the peak b maps to exactly 1.
inline double skew_tent_step(double x, double b) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("skew_tent_step: x outside [0,1]");
    }
    if (!(b > 0.0 && b < 1.0)) {
        throw std::invalid_argument("skew_tent_step: b outside (0,1)");
    }
    return x < b ? x / b : (1.0 - x) / (1.0 - b);
}

inline Trace generate_trace(double stimulus, const ChaosParams& p) {
    p.validate();
    if (!(stimulus >= 0.0 && stimulus <= 1.0)) {
        throw std::invalid_argument("generate_trace: stimulus outside [0,1]");
    }
    Trace t;
    t.values.reserve(16);
    double x = p.initial_activity;
    t.values.push_back(x);
    if (std::abs(x - stimulus) < p.eps_stim) {
        t.terminated_by = TraceEnd::NeighborhoodHit;
        return t;
    }
    while (t.values.size() < p.max_iters) {
        x = skew_tent_step(x, p.skew);
        t.values.push_back(x);
        if (std::abs(x - stimulus) < p.eps_stim) {
            t.terminated_by = TraceEnd::NeighborhoodHit;
            return t;
        }
    }
    t.terminated_by = TraceEnd::IterCap;
    return t;
}

inline double tracemean(const Trace& t) {
    if (t.values.empty()) throw std::invalid_argument("tracemean: empty trace");
    double sum = 0.0;
    for (double v : t.values) sum += v;
    return sum / static_cast<double>(t.values.size());
}

// Feature augmentation: output is m x 2n, left block the input columns
// copied bit-for-bit, right block the per-cell trace means.
//
// The orbit from q does not depend on the stimulus, only the stopping index
// does. augment() therefore walks the orbit once, keeps running prefix sums
// (added in the same order generate_trace would), and per cell just finds
// the first in-neighborhood index. Results are bit-identical to calling
// generate_trace + tracemean per cell.
inline Matrix augment(const Matrix& z, const ChaosParams& p) {
    p.validate();
    if (z.empty()) throw std::invalid_argument("augment: empty matrix");
    for (double v : z.data()) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("augment: entry outside [0,1]");
        }
    }

    Vector orbit;
    Vector prefix;  // prefix[k] = sum of orbit[0..k-1]
    orbit.reserve(p.max_iters);
    prefix.reserve(p.max_iters + 1);
    prefix.push_back(0.0);
    {
        double x = p.initial_activity;
        orbit.push_back(x);
        prefix.push_back(prefix.back() + x);
        while (orbit.size() < p.max_iters) {
            x = skew_tent_step(x, p.skew);
            orbit.push_back(x);
            prefix.push_back(prefix.back() + x);
        }
    }

    const std::size_t m = z.rows();
    const std::size_t n = z.cols();
    Matrix out(m, 2 * n);
    for (std::size_t i = 0; i < m; ++i) {
        const double* zin = z.row_ptr(i);
        double* zout = out.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) {
            zout[j] = zin[j];
            const double s = zin[j];
            std::size_t len = p.max_iters;
            for (std::size_t k = 0; k < orbit.size(); ++k) {
                if (std::abs(orbit[k] - s) < p.eps_stim) {
                    len = k + 1;
                    break;
                }
            }
            zout[n + j] = prefix[len] / static_cast<double>(len);
        }
    }
    return out;
}

}  // namespace ncr
