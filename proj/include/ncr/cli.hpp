#pragma once

// Command implementations behind the ncr binary. Each cmd_* returns a
// process exit code: 0 when the requested artifacts were fully written,
// 2 when an input dataset or input report is unusable, 1 otherwise.
// Progress goes to stderr; the last line on stdout is a one-line summary.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <ncr/chaos.hpp>
#include <ncr/data.hpp>
#include <ncr/eval.hpp>
#include <ncr/models.hpp>
#include <ncr/tuning.hpp>

namespace ncr {

// Unusable input (missing file, absent target column, no usable rows).
struct dataset_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // Dataset: a CSV path, or a synthetic draw when the path is empty.
    std::string dataset_csv;
    std::string target = "y";
    SynthSpec synth;

    ModelKind model = ModelKind::Ols;
    bool augmented = false;
    std::optional<Objective> objective;  // default depends on the source
    std::optional<Kernel> kernel;        // likewise
    bool coarse = false;
    bool lasso_small_grid = false;

    std::uint64_t seed = 42;
    double test_fraction = 0.2;
    int folds = 5;
    unsigned workers = 1;

    std::string out_json = "report.json";
    std::string cells_csv;  // optional per-cell audit dump
};

inline bool is_synthetic(const RunConfig& cfg) {
    return cfg.dataset_csv.empty();
}

// Synthetic sweeps tune against the noise floor; real tables against R2.
inline Objective resolve_objective(const RunConfig& cfg) {
    if (cfg.objective) return *cfg.objective;
    return is_synthetic(cfg) ? Objective::MinimizeMse : Objective::MaximizeR2;
}

inline Kernel resolve_kernel(const RunConfig& cfg) {
    if (cfg.kernel) return *cfg.kernel;
    return is_synthetic(cfg) ? Kernel::Linear : Kernel::Rbf;
}

inline void log_line(const std::string& msg) {
    std::cerr << "[ncr] " << msg << "\n";
}

inline Dataset load_dataset(const RunConfig& cfg,
                            CsvReport* csv_report = nullptr) {
    if (is_synthetic(cfg)) {
        SynthSpec s = cfg.synth;
        s.seed = cfg.seed;
        return generate_synthetic(s);
    }
    try {
        return load_csv(cfg.dataset_csv, cfg.target, csv_report);
    } catch (const std::exception& e) {
        throw dataset_error(e.what());
    }
}

// Derives the CSV mirror and similar siblings from the JSON output path.
inline std::string sibling_path(const std::string& json_path,
                                const std::string& suffix) {
    std::string stem = json_path;
    const std::string ext = ".json";
    if (stem.size() > ext.size() &&
        stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0) {
        stem.resize(stem.size() - ext.size());
    }
    return stem + suffix;
}

// Grid search on the train split, then a final fit at the winning cell and
// metrics on both splits. This is the whole benchmark path; the CLI and the
// test suite share it.
inline RunRecord run_one(const Dataset& data, const RunConfig& cfg,
                         GridSearchResult* cells_out = nullptr) {
    const Objective objective = resolve_objective(cfg);
    const SplitPlan plan =
        make_split(data.size(), cfg.test_fraction, cfg.seed, cfg.folds);
    const Dataset train = subset(data, plan.train_indices);
    const Dataset test = subset(data, plan.test_indices);

    ModelSpec base;
    base.kind = cfg.model;
    base.kernel = resolve_kernel(cfg);

    const GridSpec grid = make_grid(cfg.model, objective, cfg.augmented,
                                    cfg.coarse, cfg.lasso_small_grid);
    GridSearchResult search =
        grid_search(train, grid, plan, base, cfg.workers);
    if (cells_out != nullptr) *cells_out = search;

    const ModelSpec final_spec = detail::apply_cell(base, search.best);
    const ChaosParams chaos = cfg.augmented ? detail::cell_chaos(search.best)
                                            : ChaosParams{};
    const FittedModel fitted =
        fit_pipeline(train, final_spec, cfg.augmented, chaos);

    RunRecord rec;
    rec.dataset_id = data.id;
    rec.model = model_kind_name(cfg.model);
    rec.augmented = cfg.augmented;
    if (cfg.augmented) {
        rec.q = search.best.q;
        rec.eps_stim = search.best.eps_stim;
    }
    rec.alpha = search.best.alpha;
    rec.c = search.best.c;
    if (cfg.model == ModelKind::Svr) {
        rec.kernel = kernel_name(final_spec.kernel);
    }
    rec.cv_score = search.best_cv_score;
    rec.objective = objective_name(objective);
    rec.train_metrics =
        compute_metrics(train.y, pipeline_predict(fitted, train.x));
    rec.test_metrics =
        compute_metrics(test.y, pipeline_predict(fitted, test.x));
    if (is_synthetic(cfg)) rec.mmse_value = mmse(data);
    rec.converged = fitted.converged;
    return rec;
}

inline std::map<std::string, std::string> base_meta(const RunConfig& cfg,
                                                    const std::string& cmd) {
    std::map<std::string, std::string> meta;
    meta["command"] = cmd;
    meta["seed"] = std::to_string(cfg.seed);
    meta["objective"] = objective_name(resolve_objective(cfg));
    meta["grid"] = cfg.coarse ? "coarse" : "full";
    meta["folds"] = std::to_string(cfg.folds);
    meta["test_fraction"] = format_double(cfg.test_fraction);
    meta["tool"] = "ncr";
    return meta;
}

inline int cmd_generate(const SynthSpec& spec, const std::string& out_path) {
    try {
        const Dataset d = generate_synthetic(spec);
        write_csv(d, out_path);
        log_line("generated " + d.id + " seed=" + std::to_string(spec.seed));
        std::cout << "generate: " << d.id << " (" << d.size() << " rows) -> "
                  << out_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int cmd_benchmark(const RunConfig& cfg) {
    try {
        CsvReport csv_report;
        const Dataset data = load_dataset(cfg, &csv_report);
        if (!is_synthetic(cfg)) {
            log_line("loaded " + data.id + ": " +
                     std::to_string(data.size()) + " rows, " +
                     std::to_string(data.x.cols()) + " features (" +
                     std::to_string(csv_report.rows_dropped) +
                     " rows dropped, " +
                     std::to_string(csv_report.excluded_columns.size()) +
                     " columns excluded)");
            for (const auto& col : csv_report.excluded_columns) {
                log_line("excluded non-numeric column: " + col);
            }
        }
        log_line("searching " + std::string(cfg.coarse ? "coarse" : "full") +
                 " grid for " + model_kind_name(cfg.model) +
                 (cfg.augmented ? " (augmented)" : ""));

        GridSearchResult cells;
        const RunRecord rec =
            run_one(data, cfg, cfg.cells_csv.empty() ? nullptr : &cells);
        if (!cfg.cells_csv.empty()) {
            write_text_file(cfg.cells_csv, grid_cells_csv(cells));
            log_line("wrote per-cell scores to " + cfg.cells_csv);
        }

        auto meta = base_meta(cfg, "benchmark");
        meta["dataset"] = rec.dataset_id;
        if (!is_synthetic(cfg)) {
            meta["source"] = cfg.dataset_csv;
            meta["target"] = cfg.target;
        }
        const ExperimentReport rep = build_report({rec}, meta);
        write_report(rep, cfg.out_json, sibling_path(cfg.out_json, ".csv"));

        char line[256];
        std::snprintf(line, sizeof line,
                      "benchmark: %s %s%s test_r2=%.4f test_mse=%.4g -> %s",
                      rec.dataset_id.c_str(), rec.model.c_str(),
                      rec.augmented ? "+chaos" : "", rec.test_metrics.r2,
                      rec.test_metrics.mse, cfg.out_json.c_str());
        std::cout << line << "\n";
        return 0;
    } catch (const dataset_error& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

struct MatrixConfig {
    std::uint64_t seed = 42;
    bool coarse = false;  // full stride by default, like benchmark
    unsigned workers = 1;
    double test_fraction = 0.2;
    int folds = 5;
    std::string out_json = "matrix_report.json";
};

// The synthetic study: every (n, slope, variance) dataset crossed with every
// model, plain and augmented. Failed runs keep a row with the error message
// so one diverging fit cannot sink the sweep.
inline int cmd_matrix(const MatrixConfig& mcfg) {
    try {
        const std::vector<std::size_t> sizes = {10, 50, 100, 1000};
        const std::vector<double> slopes = {2.0, -2.0};
        const std::vector<double> variances = {5.0, 1.0, 0.1};
        const std::vector<ModelKind> models = {
            ModelKind::Ols, ModelKind::Ridge, ModelKind::Lasso,
            ModelKind::Svr};

        std::vector<RunRecord> runs;
        std::string figures =
            "model,augmented,n,slope,variance,test_mse,mmse\n";
        for (std::size_t n : sizes) {
            for (double slope : slopes) {
                for (double variance : variances) {
                    RunConfig cfg;
                    cfg.synth.n = n;
                    cfg.synth.slope = slope;
                    cfg.synth.noise_variance = variance;
                    cfg.seed = mcfg.seed;
                    cfg.coarse = mcfg.coarse;
                    cfg.workers = mcfg.workers;
                    cfg.test_fraction = mcfg.test_fraction;
                    cfg.folds = mcfg.folds;
                    const Dataset data = load_dataset(cfg);
                    const double floor = mmse(data);
                    for (ModelKind model : models) {
                        for (bool augmented : {false, true}) {
                            cfg.model = model;
                            cfg.augmented = augmented;
                            RunRecord rec;
                            try {
                                rec = run_one(data, cfg);
                            } catch (const std::exception& e) {
                                rec = RunRecord{};
                                rec.dataset_id = data.id;
                                rec.model = model_kind_name(model);
                                rec.augmented = augmented;
                                rec.objective =
                                    objective_name(resolve_objective(cfg));
                                rec.mmse_value = floor;
                                rec.error = e.what();
                                log_line("run failed (" + rec.dataset_id +
                                         ", " + rec.model + "): " + e.what());
                            }
                            if (rec.error.empty()) {
                                figures += rec.model;
                                figures += augmented ? ",true" : ",false";
                                figures += ',' + std::to_string(n);
                                figures += ',' + format_double(slope);
                                figures += ',' + format_double(variance);
                                figures +=
                                    ',' + format_double(rec.test_metrics.mse);
                                figures += ',' + format_double(floor);
                                figures += '\n';
                            }
                            runs.push_back(std::move(rec));
                            log_line("finished " + runs.back().dataset_id +
                                     " " + runs.back().model +
                                     (augmented ? "+chaos" : "") + " (" +
                                     std::to_string(runs.size()) + "/192)");
                        }
                    }
                }
            }
        }

        RunConfig meta_cfg;
        meta_cfg.seed = mcfg.seed;
        meta_cfg.coarse = mcfg.coarse;
        meta_cfg.folds = mcfg.folds;
        meta_cfg.test_fraction = mcfg.test_fraction;
        auto meta = base_meta(meta_cfg, "matrix");
        const ExperimentReport rep = build_report(runs, meta);
        write_report(rep, mcfg.out_json, sibling_path(mcfg.out_json, ".csv"));
        write_text_file(sibling_path(mcfg.out_json, "_figures.csv"), figures);

        std::cout << "matrix: " << runs.size() << " runs -> " << mcfg.out_json
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace detail {

inline Metrics metrics_from_json(const nlohmann::json& j) {
    Metrics m;
    m.r2 = j.at("r2").get<double>();
    m.mse = j.at("mse").get<double>();
    m.mae = j.at("mae").get<double>();
    m.n = j.at("n").get<std::size_t>();
    return m;
}

inline RunRecord run_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.dataset_id = j.at("dataset_id").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.augmented = j.at("augmented").get<bool>();
    const auto& hp = j.at("hyperparams");
    if (hp.contains("q")) r.q = hp["q"].get<double>();
    if (hp.contains("eps_stim")) r.eps_stim = hp["eps_stim"].get<double>();
    if (hp.contains("alpha")) r.alpha = hp["alpha"].get<double>();
    if (hp.contains("C")) r.c = hp["C"].get<double>();
    if (hp.contains("kernel")) r.kernel = hp["kernel"].get<std::string>();
    r.cv_score = j.at("cv_score").get<double>();
    r.objective = j.at("objective").get<std::string>();
    r.train_metrics = metrics_from_json(j.at("train_metrics"));
    r.test_metrics = metrics_from_json(j.at("test_metrics"));
    if (j.contains("mmse")) r.mmse_value = j["mmse"].get<double>();
    r.converged = j.at("converged").get<bool>();
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    return r;
}

}  // namespace detail

// Merges earlier benchmark/matrix reports and recomputes the boost table
// over the union, so paired runs from separate invocations line up.
inline int cmd_report(const std::vector<std::string>& inputs,
                      const std::string& out_json) {
    try {
        if (inputs.empty()) {
            std::cerr << "error: no input reports given\n";
            return 2;
        }
        std::vector<RunRecord> runs;
        for (const auto& path : inputs) {
            std::ifstream f(path, std::ios::binary);
            if (!f) throw dataset_error("cannot open report: " + path);
            nlohmann::json j;
            try {
                f >> j;
                if (j.at("schema_version").get<int>() != 1) {
                    throw std::runtime_error("unsupported schema_version");
                }
                for (const auto& jr : j.at("runs")) {
                    runs.push_back(detail::run_from_json(jr));
                }
            } catch (const dataset_error&) {
                throw;
            } catch (const std::exception& e) {
                throw dataset_error("bad report " + path + ": " + e.what());
            }
            log_line("read " + path);
        }
        if (runs.empty()) throw dataset_error("input reports hold no runs");

        std::map<std::string, std::string> meta;
        meta["command"] = "report";
        meta["tool"] = "ncr";
        std::string joined;
        for (const auto& p : inputs) {
            if (!joined.empty()) joined += ";";
            joined += p;
        }
        meta["sources"] = joined;
        const ExperimentReport rep = build_report(runs, meta);
        write_report(rep, out_json, sibling_path(out_json, ".csv"));
        std::cout << "report: " << runs.size() << " runs from "
                  << inputs.size() << " files -> " << out_json << "\n";
        return 0;
    } catch (const dataset_error& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ncr
