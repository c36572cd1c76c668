#pragma once

// Metrics (R2 / MSE / MAE), the full-data MMSE reference fit, boost
// bookkeeping between augmented and traditional runs, and report assembly
// with JSON + CSV emission. Reports must be byte-identical across reruns
// with the same seed, so all serialization below is order-stable.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <ncr/data.hpp>
#include <ncr/linalg.hpp>

namespace ncr {

struct Metrics {
    double r2 = 0.0;
    double mse = 0.0;
    double mae = 0.0;
    std::size_t n = 0;
};

inline Metrics compute_metrics(const Vector& y_true, const Vector& y_pred) {
    if (y_true.empty() || y_true.size() != y_pred.size()) {
        throw std::invalid_argument("compute_metrics: bad lengths");
    }
    const double n = static_cast<double>(y_true.size());
    double mean = 0.0;
    for (double v : y_true) mean += v;
    mean /= n;

    double ss_res = 0.0, ss_tot = 0.0, abs_sum = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double r = y_true[i] - y_pred[i];
        ss_res += r * r;
        abs_sum += std::abs(r);
        const double d = y_true[i] - mean;
        ss_tot += d * d;
    }

    Metrics m;
    m.n = y_true.size();
    m.mse = ss_res / n;
    m.mae = abs_sum / n;
    // Zero-variance targets: define R2 = 0 rather than dividing by zero.
    m.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    return m;
}

// In-sample linear optimum: mean squared residual of the least-squares fit
// (with intercept) over the FULL dataset, solved via the pseudo-inverse.
inline double mmse(const Dataset& d) {
    if (d.size() == 0) throw std::invalid_argument("mmse: empty dataset");
    Matrix xa(d.x.rows(), d.x.cols() + 1);
    for (std::size_t i = 0; i < d.x.rows(); ++i) {
        xa(i, 0) = 1.0;
        for (std::size_t j = 0; j < d.x.cols(); ++j) xa(i, j + 1) = d.x(i, j);
    }
    const Vector beta = matvec(pseudo_inverse(xa), d.y);
    const Vector pred = matvec(xa, beta);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.y.size(); ++i) {
        const double r = d.y[i] - pred[i];
        acc += r * r;
    }
    return acc / static_cast<double>(d.y.size());
}

// Relative R2 improvement of the augmented model over its traditional
// counterpart.
inline double boost(double r2_aug, double r2_trad) {
    if (r2_trad == 0.0) {
        throw std::invalid_argument("boost: r2_trad is zero (undefined)");
    }
    return (r2_aug - r2_trad) / r2_trad;
}

struct BoostPair {
    std::string dataset_id;
    double r2_aug = 0.0;
    double r2_trad = 0.0;
};

struct BoostEntry {
    std::string dataset_id;
    double r2_aug = 0.0;
    double r2_trad = 0.0;
    std::optional<double> value;  // empty when r2_trad <= 0 (excluded)
};

struct BoostSummary {
    std::vector<BoostEntry> entries;
    std::size_t improved_count = 0;
    std::optional<double> average_boost_over_improved;
};

// Improvement means boost strictly > 0; the average runs over improved
// datasets only. Pairs with r2_trad <= 0 carry no defined boost and are
// excluded from both the count and the average.
inline BoostSummary summarize_boosts(const std::vector<BoostPair>& pairs) {
    if (pairs.empty()) {
        throw std::invalid_argument("summarize_boosts: no pairs");
    }
    BoostSummary s;
    double sum_improved = 0.0;
    for (const auto& p : pairs) {
        BoostEntry e;
        e.dataset_id = p.dataset_id;
        e.r2_aug = p.r2_aug;
        e.r2_trad = p.r2_trad;
        if (p.r2_trad > 0.0) {
            const double b = boost(p.r2_aug, p.r2_trad);
            e.value = b;
            if (b > 0.0) {
                ++s.improved_count;
                sum_improved += b;
            }
        }
        s.entries.push_back(std::move(e));
    }
    if (s.improved_count > 0) {
        s.average_boost_over_improved =
            sum_improved / static_cast<double>(s.improved_count);
    }
    return s;
}

struct RunRecord {
    std::string dataset_id;
    std::string model;
    bool augmented = false;
    std::optional<double> q;
    std::optional<double> eps_stim;
    std::optional<double> alpha;
    std::optional<double> c;
    std::optional<std::string> kernel;
    double cv_score = 0.0;
    std::string objective;
    Metrics train_metrics;
    Metrics test_metrics;
    std::optional<double> mmse_value;
    bool converged = true;
    std::string error;  // nonempty when the run failed
};

struct ExperimentReport {
    int schema_version = 1;
    std::map<std::string, std::string> meta;  // sorted, stable
    std::vector<RunRecord> runs;
    std::map<std::string, BoostSummary> boost_by_model;
};

namespace detail {

inline nlohmann::json metrics_json(const Metrics& m) {
    return {{"r2", m.r2}, {"mse", m.mse}, {"mae", m.mae}, {"n", m.n}};
}

inline nlohmann::json boost_summary_json(const BoostSummary& s) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : s.entries) {
        nlohmann::json je{{"dataset_id", e.dataset_id},
                          {"r2_aug", e.r2_aug},
                          {"r2_trad", e.r2_trad}};
        if (e.value) {
            je["boost"] = *e.value;
        } else {
            je["boost"] = nullptr;
        }
        entries.push_back(std::move(je));
    }
    nlohmann::json j{{"entries", std::move(entries)},
                     {"improved_count", s.improved_count}};
    if (s.average_boost_over_improved) {
        j["average_boost_over_improved"] = *s.average_boost_over_improved;
    } else {
        j["average_boost_over_improved"] = nullptr;
    }
    return j;
}

}  // namespace detail

// Boost rows appear whenever a report holds both the augmented and the
// baseline run of the same (dataset, model) pair, keyed by test R2.
inline ExperimentReport build_report(
    std::vector<RunRecord> runs,
    std::map<std::string, std::string> meta = {}) {
    if (runs.empty()) throw std::invalid_argument("build_report: no runs");
    ExperimentReport rep;
    rep.meta = std::move(meta);
    rep.runs = std::move(runs);

    std::map<std::string, std::vector<BoostPair>> pairs_by_model;
    for (const auto& run : rep.runs) {
        if (!run.augmented || !run.error.empty()) continue;
        for (const auto& other : rep.runs) {
            if (other.augmented || !other.error.empty()) continue;
            if (other.dataset_id == run.dataset_id &&
                other.model == run.model) {
                pairs_by_model[run.model].push_back(
                    BoostPair{run.dataset_id, run.test_metrics.r2,
                              other.test_metrics.r2});
                break;
            }
        }
    }
    for (const auto& [model, pairs] : pairs_by_model) {
        rep.boost_by_model[model] = summarize_boosts(pairs);
    }
    return rep;
}

inline nlohmann::json report_to_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["schema_version"] = rep.schema_version;
    j["meta"] = rep.meta;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : rep.runs) {
        nlohmann::json hp;
        if (r.q) hp["q"] = *r.q;
        if (r.eps_stim) hp["eps_stim"] = *r.eps_stim;
        if (r.alpha) hp["alpha"] = *r.alpha;
        if (r.c) hp["C"] = *r.c;
        if (r.kernel) hp["kernel"] = *r.kernel;
        nlohmann::json jr{{"dataset_id", r.dataset_id},
                          {"model", r.model},
                          {"augmented", r.augmented},
                          {"hyperparams", std::move(hp)},
                          {"train_metrics", detail::metrics_json(r.train_metrics)},
                          {"test_metrics", detail::metrics_json(r.test_metrics)},
                          {"cv_score", r.cv_score},
                          {"objective", r.objective},
                          {"converged", r.converged}};
        if (r.mmse_value) jr["mmse"] = *r.mmse_value;
        if (!r.error.empty()) jr["error"] = r.error;
        runs.push_back(std::move(jr));
    }
    j["runs"] = std::move(runs);
    nlohmann::json bs = nlohmann::json::object();
    for (const auto& [model, summary] : rep.boost_by_model) {
        bs[model] = detail::boost_summary_json(summary);
    }
    j["boost_summary"] = std::move(bs);
    return j;
}

inline std::string report_csv(const ExperimentReport& rep) {
    std::string out =
        "dataset_id,model,augmented,q,eps_stim,alpha,C,kernel,cv_score,"
        "train_r2,train_mse,train_mae,test_r2,test_mse,test_mae,mmse\n";
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string{};
    };
    for (const auto& r : rep.runs) {
        out += r.dataset_id;
        out += ',' + r.model;
        out += r.augmented ? ",true" : ",false";
        out += ',' + opt(r.q);
        out += ',' + opt(r.eps_stim);
        out += ',' + opt(r.alpha);
        out += ',' + opt(r.c);
        out += ',' + (r.kernel ? *r.kernel : std::string{});
        out += ',' + format_double(r.cv_score);
        out += ',' + format_double(r.train_metrics.r2);
        out += ',' + format_double(r.train_metrics.mse);
        out += ',' + format_double(r.train_metrics.mae);
        out += ',' + format_double(r.test_metrics.r2);
        out += ',' + format_double(r.test_metrics.mse);
        out += ',' + format_double(r.test_metrics.mae);
        out += ',' + opt(r.mmse_value);
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << body;
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot move report into place: " + path);
    }
}

// Canonical JSON plus a flat CSV mirror next to it.
inline void write_report(const ExperimentReport& rep,
                         const std::string& json_path,
                         const std::string& csv_path) {
    write_text_file(json_path, report_to_json(rep).dump(2) + "\n");
    write_text_file(csv_path, report_csv(rep));
}

}  // namespace ncr
