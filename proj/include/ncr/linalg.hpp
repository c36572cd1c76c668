#pragma once

// Minimal dense linear algebra: row-major Matrix, Cholesky solve for SPD
// systems, one-sided Jacobi SVD, Moore-Penrose pseudo-inverse, and least
// squares (normal equations fast path, pseudo-inverse fallback when the
// normal equations are not positive definite).
//
// Everything here is sized for desk-scale regression problems (a few
// thousand rows, a few dozen columns); no blocking or sparsity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncr {

using Vector = std::vector<double>;

inline bool all_finite(std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(),
                       [](double v) { return std::isfinite(v); });
}

class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (!std::isfinite(fill)) {
            throw std::invalid_argument("Matrix: non-finite fill value");
        }
    }

    static Matrix from_rows(const std::vector<Vector>& rows) {
        if (rows.empty()) return Matrix{};
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) {
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            }
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        if (!all_finite(m.data_)) {
            throw std::invalid_argument("Matrix::from_rows: non-finite entry");
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept {
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    double* row_ptr(std::size_t r) noexcept { return data_.data() + r * cols_; }
    const double* row_ptr(std::size_t r) const noexcept {
        return data_.data() + r * cols_;
    }

    Vector& data() noexcept { return data_; }
    const Vector& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimensions disagree");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.row_ptr(k);
            double* crow = c.row_ptr(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

inline Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row_ptr(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Thrown by cholesky_solve when a pivot is not strictly positive; callers
// treat it as "matrix not SPD, take the pseudo-inverse path instead".
struct not_spd_error : std::runtime_error {
    not_spd_error() : std::runtime_error("cholesky: matrix is not SPD") {}
};

inline Vector cholesky_solve(const Matrix& a, const Vector& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) {
        throw std::invalid_argument("cholesky_solve: dimension mismatch");
    }
    if (n == 0) throw std::invalid_argument("cholesky_solve: empty system");

    // Lower-triangular factor, built in place.
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) throw not_spd_error{};
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / l(j, j);
        }
    }

    // Forward then back substitution: L z = b, L^T x = z.
    Vector z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * z[k];
        z[i] = v / l(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = z[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * x[k];
        x[ii] = v / l(ii, ii);
    }
    return x;
}

// Thin SVD, a = u * diag(sigma) * v^T with sigma sorted descending.
struct Svd {
    Matrix u;      // rows(a) x min(rows, cols)... u has cols = a.cols (thin)
    Vector sigma;  // length = cols of u
    Matrix v;      // cols(a) x cols(a)
};

namespace detail {

// One-sided Jacobi on the columns of a (requires rows >= cols). Rotations
// drive all column pairs to orthogonality; singular values are the final
// column norms.
inline Svd svd_tall(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix u = a;
    Matrix v = Matrix::identity(n);

    constexpr double kOrthTol = 1e-14;
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    app += up * up;
                    aqq += uq * uq;
                    apq += up * uq;
                }
                if (std::abs(apq) <= kOrthTol * std::sqrt(app * aqq)) {
                    continue;
                }
                converged = false;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) +
                                  std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) {
        throw std::runtime_error("svd: Jacobi sweeps did not converge");
    }

    Vector sigma(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm2 += u(i, j) * u(i, j);
        sigma[j] = std::sqrt(norm2);
        if (sigma[j] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) u(i, j) /= sigma[j];
        }
    }

    // Sort singular values descending, carrying u/v columns along.
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a_,
                                                     std::size_t b_) {
        return sigma[a_] > sigma[b_];
    });
    Matrix us(m, n), vs(n, n);
    Vector ss(n);
    for (std::size_t j = 0; j < n; ++j) {
        ss[j] = sigma[order[j]];
        for (std::size_t i = 0; i < m; ++i) us(i, j) = u(i, order[j]);
        for (std::size_t i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
    }
    return Svd{std::move(us), std::move(ss), std::move(vs)};
}

}  // namespace detail

inline Svd svd(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("svd: empty matrix");
    if (a.rows() >= a.cols()) return detail::svd_tall(a);
    // Wide matrix: a^T = u s v^T, so a = v s u^T.
    Svd t = detail::svd_tall(transpose(a));
    return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

inline Matrix pseudo_inverse(const Matrix& a, double tol = 1e-12) {
    if (a.empty()) throw std::invalid_argument("pseudo_inverse: empty matrix");
    const Svd s = svd(a);
    const std::size_t k = s.sigma.size();
    const double smax = k == 0 ? 0.0 : *std::max_element(s.sigma.begin(),
                                                         s.sigma.end());
    const double cutoff = tol * smax;

    // a+ = v * diag(1/sigma) * u^T, dropping singular values at or below
    // the cutoff (rank decision).
    Matrix pinv(a.cols(), a.rows());
    for (std::size_t j = 0; j < k; ++j) {
        if (!(s.sigma[j] > cutoff) || s.sigma[j] == 0.0) continue;
        const double inv = 1.0 / s.sigma[j];
        for (std::size_t r = 0; r < a.cols(); ++r) {
            const double vrj = s.v(r, j) * inv;
            if (vrj == 0.0) continue;
            for (std::size_t c = 0; c < a.rows(); ++c) {
                pinv(r, c) += vrj * s.u(c, j);
            }
        }
    }
    return pinv;
}

inline Vector solve_least_squares(const Matrix& x, const Vector& y) {
    if (x.empty() || y.empty()) {
        throw std::invalid_argument("solve_least_squares: empty input");
    }
    if (x.rows() != y.size()) {
        throw std::invalid_argument("solve_least_squares: dimension mismatch");
    }
    // Fast path: normal equations with Cholesky. Falls back to the
    // pseudo-inverse (minimum-norm solution) when X^T X is not SPD,
    // i.e. X is rank deficient.
    const Matrix xt = transpose(x);
    try {
        const Matrix g = matmul(xt, x);
        const Vector c = matvec(xt, y);
        return cholesky_solve(g, c);
    } catch (const not_spd_error&) {
        return matvec(pseudo_inverse(x), y);
    }
}

}  // namespace ncr
