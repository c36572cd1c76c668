#pragma once

// Brute-force reference solver for the SVR dual, shared by the unit tests
// and the acceptance harness. Minimizes 0.5 lam'Q lam + p'lam over the box
// [0, C]^(2l) intersected with sum(s * lam) = 0 using accelerated projected
// gradient (FISTA with gradient restarts) followed by a short monotone
// projected-gradient polish. The projection onto the box/hyperplane
// intersection is exact: the shift multiplier is found by bisection on a
// monotone scalar equation. Shares no code with the SMO solver it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ncr_test {

// Dense l*l kernel matrix (row-major) from any matrix-like value with
// rows()/cols()/operator()(i, j). Linear kernel: K(i, j) = x_i . x_j.
template <typename MatrixLike>
std::vector<double> linear_kernel_matrix(const MatrixLike& x) {
    const std::size_t l = x.rows();
    std::vector<double> kmat(l * l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < x.cols(); ++k) s += x(i, k) * x(j, k);
            kmat[i * l + j] = s;
        }
    }
    return kmat;
}

// Minimal dual objective value. kmat is the l*l kernel matrix; the 2l dual
// variables follow the usual stacking (first l positive side, last l
// negative side).
inline double svr_dual_qp_reference(const std::vector<double>& kmat,
                                    const std::vector<double>& y,
                                    double c_box, double tube,
                                    std::size_t iters) {
    const std::size_t l = y.size();
    const std::size_t n2 = 2 * l;
    const auto sign_of = [l](std::size_t a) { return a < l ? 1.0 : -1.0; };
    const auto q_at = [&](std::size_t a, std::size_t b) {
        return sign_of(a) * sign_of(b) * kmat[(a % l) * l + (b % l)];
    };
    std::vector<double> p(n2);
    for (std::size_t a = 0; a < n2; ++a) {
        p[a] = tube - sign_of(a) * y[a % l];
    }

    // crude spectral-norm bound for the step size
    double row_sum_max = 0.0;
    for (std::size_t a = 0; a < n2; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < n2; ++b) s += std::abs(q_at(a, b));
        row_sum_max = std::max(row_sum_max, s);
    }
    const double step = 1.0 / (row_sum_max + 1.0);

    const auto project = [&](std::vector<double>& v) {
        double lo = 0.0, hi = 0.0;
        for (double z : v) {
            lo = std::min(lo, -std::abs(z) - c_box - 1.0);
            hi = std::max(hi, std::abs(z) + c_box + 1.0);
        }
        for (int it = 0; it < 200; ++it) {
            const double t = 0.5 * (lo + hi);
            double g = 0.0;
            for (std::size_t a = 0; a < n2; ++a) {
                const double s = sign_of(a);
                g += s * std::clamp(v[a] - t * s, 0.0, c_box);
            }
            if (g > 0.0) {
                lo = t;
            } else {
                hi = t;
            }
        }
        const double t = 0.5 * (lo + hi);
        for (std::size_t a = 0; a < n2; ++a) {
            v[a] = std::clamp(v[a] - t * sign_of(a), 0.0, c_box);
        }
    };

    const auto fill_grad = [&](const std::vector<double>& v,
                               std::vector<double>& g) {
        for (std::size_t a = 0; a < n2; ++a) {
            double s = p[a];
            for (std::size_t b = 0; b < n2; ++b) s += q_at(a, b) * v[b];
            g[a] = s;
        }
    };

    std::vector<double> lam(n2, 0.0);
    std::vector<double> prev(n2, 0.0);
    std::vector<double> zpt(n2, 0.0);
    std::vector<double> grad(n2);
    double t_acc = 1.0;
    for (std::size_t it = 0; it < iters; ++it) {
        fill_grad(zpt, grad);
        prev = lam;
        for (std::size_t a = 0; a < n2; ++a) lam[a] = zpt[a] - step * grad[a];
        project(lam);
        double corr = 0.0;
        for (std::size_t a = 0; a < n2; ++a) {
            corr += grad[a] * (lam[a] - prev[a]);
        }
        if (corr > 0.0) {
            // momentum points uphill, restart
            t_acc = 1.0;
            zpt = lam;
        } else {
            const double t_next =
                0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
            const double mom = (t_acc - 1.0) / t_next;
            for (std::size_t a = 0; a < n2; ++a) {
                zpt[a] = lam[a] + mom * (lam[a] - prev[a]);
            }
            t_acc = t_next;
        }
    }

    // acceleration is not monotone; finish with plain descent steps
    for (std::size_t it = 0; it < 500; ++it) {
        fill_grad(lam, grad);
        for (std::size_t a = 0; a < n2; ++a) lam[a] -= step * grad[a];
        project(lam);
    }

    double obj = 0.0;
    for (std::size_t a = 0; a < n2; ++a) {
        double qa = 0.0;
        for (std::size_t b = 0; b < n2; ++b) qa += q_at(a, b) * lam[b];
        obj += 0.5 * lam[a] * qa + p[a] * lam[a];
    }
    return obj;
}

}  // namespace ncr_test
