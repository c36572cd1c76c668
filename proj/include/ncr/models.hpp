#pragma once

// The four regressors behind one fit/predict interface.
//
//   OLS    - least squares with implicit ones column
//   Ridge  - centered closed form (Xc'Xc + alpha I) beta = Xc'yc
//   Lasso  - cyclic coordinate descent with soft thresholding; objective is
//            (1/2m)||y - b0 - X beta||^2 + alpha * sum |beta_j|
//   SVR    - eps-insensitive dual solved by SMO-style pairwise updates over
//            the 2l box variables (alpha_i, alpha_i*), linear or RBF kernel
//
// Intercepts are never penalized and are fitted via centering. Targets are
// used in original units throughout.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <ncr/chaos.hpp>
#include <ncr/data.hpp>
#include <ncr/linalg.hpp>

namespace ncr {

enum class ModelKind { Ols, Ridge, Lasso, Svr };
enum class Kernel { Linear, Rbf };

inline std::string model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Ols: return "ols";
        case ModelKind::Ridge: return "ridge";
        case ModelKind::Lasso: return "lasso";
        case ModelKind::Svr: return "svr";
    }
    return "?";
}

inline ModelKind model_kind_from_name(const std::string& name) {
    if (name == "ols") return ModelKind::Ols;
    if (name == "ridge") return ModelKind::Ridge;
    if (name == "lasso") return ModelKind::Lasso;
    if (name == "svr") return ModelKind::Svr;
    throw std::invalid_argument("unknown model kind: " + name);
}

inline std::string kernel_name(Kernel k) {
    return k == Kernel::Rbf ? "rbf" : "linear";
}

inline Kernel kernel_from_name(const std::string& name) {
    if (name == "linear") return Kernel::Linear;
    if (name == "rbf") return Kernel::Rbf;
    throw std::invalid_argument("unknown kernel: " + name);
}

struct ModelSpec {
    ModelKind kind = ModelKind::Ols;
    double alpha = 1.0;  // ridge/lasso penalty weight
    double c = 1.0;      // svr box constraint
    double tube = 0.1;   // svr eps-insensitive half-width (not tuned)
    Kernel kernel = Kernel::Linear;
    double gamma = 0.0;  // rbf width; <= 0 means auto (1 / (n_feat * var X))
    std::size_t lasso_max_iters = 10000;
    double lasso_tol = 1e-4;
    double svr_tol = 1e-3;
    std::size_t svr_max_passes = 200;
};

struct FittedModel {
    ModelSpec spec;

    // Linear family (OLS / Ridge / Lasso).
    Vector coefficients;
    double intercept = 0.0;

    // SVR: rows with nonzero dual coefficient and the matching duals
    // (alpha_i - alpha_i*), plus the resolved kernel width.
    Matrix support_x;
    Vector dual_coefs;
    double gamma_used = 0.0;
    double svr_dual_objective = 0.0;

    bool converged = true;
    std::size_t iterations = 0;  // lasso sweeps or svr pair updates

    // Captured preprocessing for the end-to-end pipeline; absent when the
    // model was fitted on already-prepared features.
    std::optional<NormStats> norm_stats;
    std::optional<ChaosParams> chaos;  // present only for augmented fits
    std::size_t n_features_in = 0;     // feature count the fit saw
};

inline double soft_threshold(double z, double t) {
    if (t < 0.0) throw std::invalid_argument("soft_threshold: negative t");
    const double mag = std::abs(z) - t;
    if (mag <= 0.0) return 0.0;
    return z > 0.0 ? mag : -mag;
}

inline double rbf_kernel(std::span<const double> u, std::span<const double> v,
                         double gamma) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("rbf_kernel: length mismatch");
    }
    if (!(gamma > 0.0)) throw std::invalid_argument("rbf_kernel: gamma <= 0");
    double d2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

namespace detail {

struct Centered {
    Matrix xc;
    Vector yc;
    Vector x_mean;
    double y_mean = 0.0;
};

inline Centered center(const Matrix& x, const Vector& y) {
    Centered c;
    c.x_mean.assign(x.cols(), 0.0);
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, j);
        c.x_mean[j] = s / static_cast<double>(x.rows());
    }
    double sy = 0.0;
    for (double v : y) sy += v;
    c.y_mean = sy / static_cast<double>(y.size());

    c.xc = Matrix(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            c.xc(i, j) = x(i, j) - c.x_mean[j];
        }
    }
    c.yc.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) c.yc[i] = y[i] - c.y_mean;
    return c;
}

inline void check_xy(const Matrix& x, const Vector& y) {
    if (x.empty() || y.empty()) {
        throw std::invalid_argument("fit: empty input");
    }
    if (x.rows() != y.size()) {
        throw std::invalid_argument("fit: X rows != y length");
    }
}

inline double resolve_gamma(const Matrix& x, double gamma) {
    if (gamma > 0.0) return gamma;
    // Auto width: 1 / (n_features * variance of all training entries).
    double mean = 0.0;
    for (double v : x.data()) mean += v;
    mean /= static_cast<double>(x.data().size());
    double var = 0.0;
    for (double v : x.data()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.data().size());
    if (var <= 0.0) return 1.0;
    return 1.0 / (static_cast<double>(x.cols()) * var);
}

}  // namespace detail

inline FittedModel fit_ols(const Matrix& x, const Vector& y) {
    detail::check_xy(x, y);
    Matrix xa(x.rows(), x.cols() + 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        xa(i, 0) = 1.0;
        for (std::size_t j = 0; j < x.cols(); ++j) xa(i, j + 1) = x(i, j);
    }
    const Vector beta = solve_least_squares(xa, y);
    FittedModel m;
    m.spec.kind = ModelKind::Ols;
    m.intercept = beta[0];
    m.coefficients.assign(beta.begin() + 1, beta.end());
    m.n_features_in = x.cols();
    return m;
}

inline FittedModel fit_ridge(const Matrix& x, const Vector& y, double alpha) {
    detail::check_xy(x, y);
    if (alpha < 0.0) throw std::invalid_argument("fit_ridge: alpha < 0");
    const detail::Centered c = detail::center(x, y);
    const std::size_t n = x.cols();

    const Matrix xct = transpose(c.xc);
    Matrix g = matmul(xct, c.xc);
    for (std::size_t j = 0; j < n; ++j) g(j, j) += alpha;
    const Vector rhs = matvec(xct, c.yc);

    Vector beta;
    try {
        beta = cholesky_solve(g, rhs);
    } catch (const not_spd_error&) {
        // alpha == 0 with rank-deficient X: minimum-norm least squares.
        beta = matvec(pseudo_inverse(c.xc), c.yc);
    }

    FittedModel m;
    m.spec.kind = ModelKind::Ridge;
    m.spec.alpha = alpha;
    m.coefficients = beta;
    m.intercept = c.y_mean - dot(c.x_mean, beta);
    m.n_features_in = n;
    return m;
}

inline FittedModel fit_lasso(const Matrix& x, const Vector& y, double alpha,
                             std::size_t max_iters = 10000,
                             double tol = 1e-4) {
    detail::check_xy(x, y);
    if (alpha < 0.0) throw std::invalid_argument("fit_lasso: alpha < 0");
    const detail::Centered c = detail::center(x, y);
    const std::size_t m_rows = x.rows();
    const std::size_t n = x.cols();
    const double inv_m = 1.0 / static_cast<double>(m_rows);

    // z_j = (1/m) ||xc_j||^2; constant columns stay at coefficient 0.
    Vector z(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m_rows; ++i) s += c.xc(i, j) * c.xc(i, j);
        z[j] = s * inv_m;
    }

    Vector beta(n, 0.0);
    Vector resid = c.yc;  // yc - Xc beta, maintained incrementally
    bool converged = false;
    std::size_t sweeps = 0;
    while (sweeps < max_iters) {
        ++sweeps;
        double max_delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (z[j] == 0.0) continue;
            double rho = 0.0;
            for (std::size_t i = 0; i < m_rows; ++i) {
                rho += c.xc(i, j) * resid[i];
            }
            rho = rho * inv_m + z[j] * beta[j];
            const double bj = soft_threshold(rho, alpha) / z[j];
            const double delta = bj - beta[j];
            if (delta != 0.0) {
                for (std::size_t i = 0; i < m_rows; ++i) {
                    resid[i] -= delta * c.xc(i, j);
                }
                beta[j] = bj;
            }
            max_delta = std::max(max_delta, std::abs(delta));
        }
        if (max_delta < tol) {
            converged = true;
            break;
        }
    }

    FittedModel m;
    m.spec.kind = ModelKind::Lasso;
    m.spec.alpha = alpha;
    m.spec.lasso_max_iters = max_iters;
    m.spec.lasso_tol = tol;
    m.coefficients = beta;
    m.intercept = c.y_mean - dot(c.x_mean, beta);
    m.converged = converged;
    m.iterations = sweeps;
    m.n_features_in = n;
    return m;
}

namespace detail {

inline double kernel_eval(Kernel kernel, double gamma,
                          std::span<const double> u,
                          std::span<const double> v) {
    if (kernel == Kernel::Linear) return dot(u, v);
    return rbf_kernel(u, v, gamma);
}

}  // namespace detail

// SMO over the 2l-variable dual
//   min  1/2 lambda' Q lambda + p' lambda
//   s.t. sum_a s_a lambda_a = 0,  0 <= lambda_a <= C
// with s_a = +1 for a < l (alpha side), -1 otherwise (alpha* side),
// p_a = tube - s_a y_{a mod l}, and Q(a,b) = s_a s_b K(a mod l, b mod l).
// Working pairs are picked by maximal violation with a second-order gain
// rule for the partner; the predictor is f(x) = sum_i beta_i K(x_i, x) + b
// with beta_i = lambda_i - lambda_{i+l}.
inline FittedModel fit_svr(const Matrix& x, const Vector& y,
                           const ModelSpec& spec) {
    detail::check_xy(x, y);
    if (!(spec.c > 0.0)) throw std::invalid_argument("fit_svr: C <= 0");
    if (spec.tube < 0.0) throw std::invalid_argument("fit_svr: tube < 0");

    const std::size_t l = x.rows();
    const double cbox = spec.c;
    const double gamma = detail::resolve_gamma(x, spec.gamma);

    // Dense kernel matrix; problem sizes here stay comfortably in memory.
    std::vector<double> k(l * l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = i; j < l; ++j) {
            const double v =
                detail::kernel_eval(spec.kernel, gamma, x.row(i), x.row(j));
            k[i * l + j] = v;
            k[j * l + i] = v;
        }
    }

    const std::size_t nv = 2 * l;
    std::vector<double> lambda(nv, 0.0);
    std::vector<double> grad(nv);  // Q lambda + p, starts at p
    for (std::size_t i = 0; i < l; ++i) {
        grad[i] = spec.tube - y[i];
        grad[i + l] = spec.tube + y[i];
    }
    const auto qdiag = [&](std::size_t a) { return k[(a % l) * (l + 1)]; };
    const auto sign_of = [l](std::size_t a) { return a < l ? 1.0 : -1.0; };

    constexpr double kTau = 1e-12;
    const std::size_t max_iter =
        std::max<std::size_t>(spec.svr_max_passes * nv, 1000);
    bool converged = false;
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        // i: most violating variable in the "up" set.
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t isel = nv;
        for (std::size_t a = 0; a < nv; ++a) {
            const double s = sign_of(a);
            const bool in_up = s > 0.0 ? lambda[a] < cbox : lambda[a] > 0.0;
            if (!in_up) continue;
            const double v = -s * grad[a];
            if (v > gmax) {
                gmax = v;
                isel = a;
            }
        }
        if (isel == nv) {
            converged = true;
            break;
        }
        const double si = sign_of(isel);
        const std::size_t bi = isel % l;
        const double* ki = &k[bi * l];

        // j: in the "low" set, chosen by second-order gain against i.
        double gmin = std::numeric_limits<double>::infinity();
        double best_gain = -std::numeric_limits<double>::infinity();
        std::size_t jsel = nv;
        for (std::size_t a = 0; a < nv; ++a) {
            const double s = sign_of(a);
            const bool in_low = s > 0.0 ? lambda[a] > 0.0 : lambda[a] < cbox;
            if (!in_low) continue;
            const double v = -s * grad[a];
            gmin = std::min(gmin, v);
            const double diff = gmax - v;  // violation against i
            if (diff <= 0.0) continue;
            // Curvature along the feasible two-variable direction. The signs
            // cancel for both pair parities, leaving K_ii + K_jj - 2 K_ij.
            double quad = qdiag(isel) + qdiag(a) - 2.0 * ki[a % l];
            if (quad <= 0.0) quad = kTau;
            const double gain = diff * diff / quad;
            if (gain > best_gain) {
                best_gain = gain;
                jsel = a;
            }
        }
        if (jsel == nv || gmax - gmin <= spec.svr_tol) {
            converged = true;
            break;
        }

        const double sj = sign_of(jsel);
        const std::size_t bj = jsel % l;
        const double* kj = &k[bj * l];
        const double old_i = lambda[isel];
        const double old_j = lambda[jsel];

        // Two-variable subproblem on the equality-constraint line, then
        // clip back into the box.
        double quad = qdiag(isel) + qdiag(jsel) - 2.0 * ki[bj];
        if (quad <= 0.0) quad = kTau;
        if (si != sj) {
            const double delta = (-grad[isel] - grad[jsel]) / quad;
            const double diff = lambda[isel] - lambda[jsel];
            lambda[isel] += delta;
            lambda[jsel] += delta;
            if (diff > 0.0) {
                if (lambda[jsel] < 0.0) {
                    lambda[jsel] = 0.0;
                    lambda[isel] = diff;
                }
                if (lambda[isel] > cbox) {
                    lambda[isel] = cbox;
                    lambda[jsel] = cbox - diff;
                }
            } else {
                if (lambda[isel] < 0.0) {
                    lambda[isel] = 0.0;
                    lambda[jsel] = -diff;
                }
                if (lambda[jsel] > cbox) {
                    lambda[jsel] = cbox;
                    lambda[isel] = cbox + diff;
                }
            }
        } else {
            const double delta = (grad[isel] - grad[jsel]) / quad;
            const double sum = lambda[isel] + lambda[jsel];
            lambda[isel] -= delta;
            lambda[jsel] += delta;
            if (sum > cbox) {
                if (lambda[isel] > cbox) {
                    lambda[isel] = cbox;
                    lambda[jsel] = sum - cbox;
                }
                if (lambda[jsel] > cbox) {
                    lambda[jsel] = cbox;
                    lambda[isel] = sum - cbox;
                }
            } else {
                if (lambda[jsel] < 0.0) {
                    lambda[jsel] = 0.0;
                    lambda[isel] = sum;
                }
                if (lambda[isel] < 0.0) {
                    lambda[isel] = 0.0;
                    lambda[jsel] = sum;
                }
            }
        }

        const double du = si * (lambda[isel] - old_i);
        const double dv = sj * (lambda[jsel] - old_j);
        if (du == 0.0 && dv == 0.0) continue;
        for (std::size_t r = 0; r < l; ++r) {
            const double d = du * ki[r] + dv * kj[r];
            grad[r] += d;
            grad[r + l] -= d;
        }
    }

    // Intercept from free variables when any exist, else the midpoint of
    // the violation bracket.
    double bsum = 0.0;
    std::size_t bcount = 0;
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < nv; ++a) {
        const double s = sign_of(a);
        const double v = -s * grad[a];
        if (lambda[a] > 0.0 && lambda[a] < cbox) {
            bsum += v;
            ++bcount;
        }
        const bool in_up = s > 0.0 ? lambda[a] < cbox : lambda[a] > 0.0;
        const bool in_low = s > 0.0 ? lambda[a] > 0.0 : lambda[a] < cbox;
        if (in_up) up = std::max(up, v);
        if (in_low) low = std::min(low, v);
    }
    double b = 0.0;
    if (bcount > 0) {
        b = bsum / static_cast<double>(bcount);
    } else if (std::isfinite(up) && std::isfinite(low)) {
        b = 0.5 * (up + low);
    }

    double objective = 0.0;
    for (std::size_t a = 0; a < nv; ++a) {
        const double p = a < l ? spec.tube - y[a] : spec.tube + y[a - l];
        objective += lambda[a] * (grad[a] + p);
    }
    objective *= 0.5;

    FittedModel m;
    m.spec = spec;
    m.spec.kind = ModelKind::Svr;
    m.gamma_used = gamma;
    m.intercept = b;
    m.converged = converged;
    m.iterations = iter;
    m.svr_dual_objective = objective;
    m.n_features_in = x.cols();

    std::vector<std::size_t> sv;
    for (std::size_t i = 0; i < l; ++i) {
        if (lambda[i] - lambda[i + l] != 0.0) sv.push_back(i);
    }
    m.support_x = Matrix(sv.size(), x.cols());
    m.dual_coefs.resize(sv.size());
    for (std::size_t r = 0; r < sv.size(); ++r) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            m.support_x(r, j) = x(sv[r], j);
        }
        m.dual_coefs[r] = lambda[sv[r]] - lambda[sv[r] + l];
    }
    return m;
}

inline FittedModel fit_model(const Matrix& x, const Vector& y,
                             const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::Ols: {
            FittedModel m = fit_ols(x, y);
            m.spec = spec;
            return m;
        }
        case ModelKind::Ridge: {
            FittedModel m = fit_ridge(x, y, spec.alpha);
            ModelSpec s = spec;
            m.spec = s;
            return m;
        }
        case ModelKind::Lasso: {
            FittedModel m = fit_lasso(x, y, spec.alpha, spec.lasso_max_iters,
                                      spec.lasso_tol);
            const bool conv = m.converged;
            const std::size_t it = m.iterations;
            m.spec = spec;
            m.converged = conv;
            m.iterations = it;
            return m;
        }
        case ModelKind::Svr:
            return fit_svr(x, y, spec);
    }
    throw std::logic_error("fit_model: unreachable");
}

inline Vector predict(const FittedModel& m, const Matrix& x) {
    if (x.cols() != m.n_features_in) {
        throw std::invalid_argument("predict: feature count mismatch");
    }
    Vector out(x.rows(), 0.0);
    if (m.spec.kind == ModelKind::Svr) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            double acc = m.intercept;
            for (std::size_t r = 0; r < m.support_x.rows(); ++r) {
                acc += m.dual_coefs[r] *
                       detail::kernel_eval(m.spec.kernel, m.gamma_used,
                                           m.support_x.row(r), x.row(i));
            }
            out[i] = acc;
        }
    } else {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            out[i] = m.intercept + dot(x.row(i), m.coefficients);
        }
    }
    return out;
}

// End-to-end pipeline: min-max normalization fitted on the training split,
// optional chaotic augmentation, then the chosen model. The fitted stats and
// chaos parameters ride along inside FittedModel so prediction can replay
// exactly the same preprocessing. The non-augmented path never touches the
// chaos module.
inline FittedModel fit_pipeline(const Dataset& train, const ModelSpec& spec,
                                bool augmented, const ChaosParams& chaos = {}) {
    const NormStats stats = fit_normalizer(train.x);
    const Matrix z = apply_normalizer(train.x, stats);
    FittedModel m = augmented ? fit_model(augment(z, chaos), train.y, spec)
                              : fit_model(z, train.y, spec);
    m.norm_stats = stats;
    if (augmented) m.chaos = chaos;
    return m;
}

inline Vector pipeline_predict(const FittedModel& m, const Matrix& x_raw) {
    if (!m.norm_stats) {
        throw std::logic_error("pipeline_predict: model has no norm stats");
    }
    const Matrix z = apply_normalizer(x_raw, *m.norm_stats);
    if (m.chaos) return predict(m, augment(z, *m.chaos));
    return predict(m, z);
}

// ---- serialization ----

inline nlohmann::json to_json(const FittedModel& m) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = model_kind_name(m.spec.kind);
    nlohmann::json hp;
    switch (m.spec.kind) {
        case ModelKind::Ridge:
        case ModelKind::Lasso:
            hp["alpha"] = m.spec.alpha;
            break;
        case ModelKind::Svr:
            hp["C"] = m.spec.c;
            hp["tube"] = m.spec.tube;
            hp["kernel"] = m.spec.kernel == Kernel::Rbf ? "rbf" : "linear";
            hp["gamma"] = m.gamma_used;
            break;
        case ModelKind::Ols:
            break;
    }
    j["hyperparams"] = hp;
    if (m.spec.kind == ModelKind::Svr) {
        nlohmann::json sv = nlohmann::json::array();
        for (std::size_t r = 0; r < m.support_x.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c2 = 0; c2 < m.support_x.cols(); ++c2) {
                row.push_back(m.support_x(r, c2));
            }
            sv.push_back(std::move(row));
        }
        j["support_vectors"] = std::move(sv);
        j["dual_coefs"] = m.dual_coefs;
        j["intercept"] = m.intercept;
    } else {
        j["coefficients"] = m.coefficients;
        j["intercept"] = m.intercept;
    }
    j["converged"] = m.converged;
    j["n_features_in"] = m.n_features_in;
    if (m.norm_stats) {
        j["norm_stats"] = {{"min", m.norm_stats->col_min},
                           {"max", m.norm_stats->col_max}};
    }
    if (m.chaos) {
        j["chaos"] = {{"skew", m.chaos->skew},
                      {"q", m.chaos->initial_activity},
                      {"eps_stim", m.chaos->eps_stim},
                      {"max_iters", m.chaos->max_iters}};
    }
    return j;
}

inline FittedModel model_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != 1) {
        throw std::runtime_error("model_from_json: unsupported schema version");
    }
    FittedModel m;
    m.spec.kind = model_kind_from_name(j.at("kind").get<std::string>());
    const auto& hp = j.at("hyperparams");
    if (hp.contains("alpha")) m.spec.alpha = hp["alpha"].get<double>();
    if (hp.contains("C")) m.spec.c = hp["C"].get<double>();
    if (hp.contains("tube")) m.spec.tube = hp["tube"].get<double>();
    if (hp.contains("kernel")) {
        m.spec.kernel = hp["kernel"].get<std::string>() == "rbf" ? Kernel::Rbf
                                                                 : Kernel::Linear;
    }
    if (hp.contains("gamma")) m.gamma_used = hp["gamma"].get<double>();
    m.intercept = j.at("intercept").get<double>();
    m.converged = j.at("converged").get<bool>();
    m.n_features_in = j.at("n_features_in").get<std::size_t>();
    if (m.spec.kind == ModelKind::Svr) {
        const auto& sv = j.at("support_vectors");
        const auto& dc = j.at("dual_coefs");
        std::vector<Vector> rows;
        for (const auto& r : sv) rows.push_back(r.get<Vector>());
        m.support_x = rows.empty() ? Matrix(0, m.n_features_in)
                                   : Matrix::from_rows(rows);
        m.dual_coefs = dc.get<Vector>();
    } else {
        m.coefficients = j.at("coefficients").get<Vector>();
    }
    if (j.contains("norm_stats")) {
        NormStats s;
        s.col_min = j["norm_stats"]["min"].get<Vector>();
        s.col_max = j["norm_stats"]["max"].get<Vector>();
        m.norm_stats = std::move(s);
    }
    if (j.contains("chaos")) {
        ChaosParams p;
        p.skew = j["chaos"]["skew"].get<double>();
        p.initial_activity = j["chaos"]["q"].get<double>();
        p.eps_stim = j["chaos"]["eps_stim"].get<double>();
        p.max_iters = j["chaos"]["max_iters"].get<std::size_t>();
        m.chaos = p;
    }
    return m;
}

}  // namespace ncr
