#pragma once

// Dataset plumbing: CSV ingestion, min-max normalization fitted on training
// data only, deterministic train/test splitting with k-fold assignment, and
// the seeded synthetic generator y = m*x + c + noise.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <ncr/linalg.hpp>
#include <ncr/rng.hpp>

namespace ncr {

struct Dataset {
    Matrix x;
    Vector y;
    std::vector<std::string> feature_names;
    std::string id;

    std::size_t size() const noexcept { return y.size(); }
};

struct NormStats {
    Vector col_min;
    Vector col_max;
};

struct SynthSpec {
    std::size_t n = 1000;
    double slope = 2.0;
    double intercept = 0.0;
    double noise_variance = 5.0;  // variance, not standard deviation
    std::uint64_t seed = 42;
    double x_min = -10.0;
    double x_max = 10.0;
};

struct SplitPlan {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::vector<int> fold_of_train;  // parallel to train_indices
    int folds = 5;
    std::uint64_t seed = 42;
};

struct CsvReport {
    std::size_t rows_total = 0;
    std::size_t rows_dropped = 0;
    std::vector<std::string> excluded_columns;
};

inline NormStats fit_normalizer(const Matrix& x) {
    if (x.empty()) throw std::invalid_argument("fit_normalizer: empty matrix");
    NormStats s;
    s.col_min.assign(x.cols(), 0.0);
    s.col_max.assign(x.cols(), 0.0);
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double lo = x(0, j), hi = x(0, j);
        for (std::size_t i = 1; i < x.rows(); ++i) {
            lo = std::min(lo, x(i, j));
            hi = std::max(hi, x(i, j));
        }
        s.col_min[j] = lo;
        s.col_max[j] = hi;
    }
    return s;
}

// z = (x - min) / (max - min), clipped into [0,1]. Out-of-range test values
// clip rather than leave the chaotic map's domain; constant training columns
// map to zero.
inline Matrix apply_normalizer(const Matrix& x, const NormStats& s) {
    if (x.cols() != s.col_min.size()) {
        throw std::invalid_argument("apply_normalizer: column count mismatch");
    }
    Matrix z(x.rows(), x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        const double lo = s.col_min[j];
        const double range = s.col_max[j] - lo;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            double v = range > 0.0 ? (x(i, j) - lo) / range : 0.0;
            v = std::clamp(v, 0.0, 1.0);
            z(i, j) = v;
        }
    }
    return z;
}

inline SplitPlan make_split(std::size_t m, double test_fraction,
                            std::uint64_t seed, int k) {
    if (k < 2) throw std::invalid_argument("make_split: need k >= 2");
    if (m < static_cast<std::size_t>(k)) {
        throw std::invalid_argument("make_split: fewer samples than folds");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("make_split: test_fraction outside (0,1)");
    }

    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    const auto test_count = static_cast<std::size_t>(
        std::llround(static_cast<double>(m) * test_fraction));

    SplitPlan plan;
    plan.folds = k;
    plan.seed = seed;
    plan.test_indices.assign(order.begin(),
                             order.begin() + static_cast<std::ptrdiff_t>(test_count));
    plan.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(test_count),
                              order.end());
    plan.fold_of_train.resize(plan.train_indices.size());
    for (std::size_t i = 0; i < plan.train_indices.size(); ++i) {
        plan.fold_of_train[i] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return plan;
}

inline Dataset subset(const Dataset& d, std::span<const std::size_t> indices) {
    Dataset out;
    out.x = Matrix(indices.size(), d.x.cols());
    out.y.resize(indices.size());
    out.feature_names = d.feature_names;
    out.id = d.id;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::size_t r = indices[i];
        for (std::size_t j = 0; j < d.x.cols(); ++j) out.x(i, j) = d.x(r, j);
        out.y[i] = d.y[r];
    }
    return out;
}

inline std::string synth_id(const SynthSpec& spec) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "synth_n%zu_m%g_v%g", spec.n, spec.slope,
                  spec.noise_variance);
    return buf;
}

// x values first, then noise, so the stream layout is stable if either
// distribution changes its internal draw count.
inline Dataset generate_synthetic(const SynthSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("generate_synthetic: n < 2");
    if (!(spec.noise_variance > 0.0)) {
        throw std::invalid_argument("generate_synthetic: variance must be > 0");
    }
    Rng rng(spec.seed);
    Dataset d;
    d.x = Matrix(spec.n, 1);
    d.y.resize(spec.n);
    d.feature_names = {"x"};
    d.id = synth_id(spec);
    for (std::size_t i = 0; i < spec.n; ++i) {
        d.x(i, 0) = rng.uniform(spec.x_min, spec.x_max);
    }
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double eps = rng.normal(0.0, spec.noise_variance);
        d.y[i] = spec.slope * d.x(i, 0) + spec.intercept + eps;
    }
    return d;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    return s.substr(b, e - b);
}

// Comma splitter with basic double-quote support ("" escapes a quote).
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

inline bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        return false;
    }
    out = v;
    return true;
}

inline std::string path_stem(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

}  // namespace detail

// Header row required. Non-target columns that never parse as numbers are
// excluded from the feature set (typical free-text label columns); rows with
// unparseable or missing cells in the remaining columns are dropped, with
// the counts surfaced through CsvReport.
inline Dataset load_csv(const std::string& path, const std::string& target,
                        CsvReport* report = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("load_csv: empty file " + path);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = detail::split_csv_line(line);

    std::size_t target_col = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == target) target_col = j;
    }
    if (target_col == header.size()) {
        throw std::runtime_error("load_csv: target column '" + target +
                                 "' not found in " + path);
    }

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        rows.push_back(detail::split_csv_line(line));
    }

    CsvReport rep;
    rep.rows_total = rows.size();

    // Classify non-target columns: a column is numeric if at least one row
    // parses; columns that never parse are excluded wholesale.
    std::vector<std::size_t> feature_cols;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j == target_col) continue;
        bool any_numeric = false;
        for (const auto& r : rows) {
            double v;
            if (j < r.size() && detail::parse_double(r[j], v)) {
                any_numeric = true;
                break;
            }
        }
        if (any_numeric) {
            feature_cols.push_back(j);
        } else {
            rep.excluded_columns.push_back(header[j]);
        }
    }
    if (feature_cols.empty()) {
        throw std::runtime_error("load_csv: no numeric feature columns in " +
                                 path);
    }

    std::vector<Vector> kept_rows;
    Vector targets;
    for (const auto& r : rows) {
        bool ok = r.size() == header.size();
        Vector feats(feature_cols.size());
        double yv = 0.0;
        if (ok) ok = detail::parse_double(r[target_col], yv);
        for (std::size_t f = 0; ok && f < feature_cols.size(); ++f) {
            ok = detail::parse_double(r[feature_cols[f]], feats[f]);
        }
        if (!ok) {
            ++rep.rows_dropped;
            continue;
        }
        kept_rows.push_back(std::move(feats));
        targets.push_back(yv);
    }
    if (kept_rows.empty()) {
        throw std::runtime_error("load_csv: zero usable rows in " + path);
    }

    Dataset d;
    d.x = Matrix::from_rows(kept_rows);
    d.y = std::move(targets);
    for (std::size_t f : feature_cols) d.feature_names.push_back(header[f]);
    d.id = detail::path_stem(path);
    if (report != nullptr) *report = rep;
    return d;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const Dataset& d, const std::string& path,
                      const std::string& target_name = "y") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (const auto& name : d.feature_names) out << name << ',';
    out << target_name << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.x.cols(); ++j) {
            out << format_double(d.x(i, j)) << ',';
        }
        out << format_double(d.y[i]) << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace ncr
