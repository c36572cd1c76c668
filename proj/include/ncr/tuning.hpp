#pragma once

// Exhaustive grid search over (q, eps_stim) x model hyperparameters with
// 5-fold cross validation. Normalization and augmentation are fitted inside
// each fold on the fold-train portion only, so no statistics leak from the
// validation rows. Cells are independent; evaluation may be spread across
// workers, and the reduction is a serial pass in cell order so parallel and
// serial runs pick the identical optimum.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <ncr/chaos.hpp>
#include <ncr/data.hpp>
#include <ncr/eval.hpp>
#include <ncr/models.hpp>

namespace ncr {

enum class Objective { MaximizeR2, MinimizeMse };

inline std::string objective_name(Objective o) {
    return o == Objective::MaximizeR2 ? "r2" : "mse";
}

struct GridSpec {
    ModelKind model = ModelKind::Ols;
    std::vector<double> q_grid;      // chaos initial activity values
    std::vector<double> eps_grid;    // chaos stopping neighborhoods
    std::vector<double> alpha_grid;  // ridge/lasso
    std::vector<double> c_grid;      // svr
    Objective objective = Objective::MaximizeR2;
    int folds = 5;
    bool augmented = true;
    bool coarse = false;
};

// Full grids: q 0.01..0.99 step 0.01 (99 values), eps 0.01..0.45 step 0.01
// (45 values). The coarse stride (q step 0.07, eps step 0.05) exists for CI
// budgets and is labeled as such in report metadata. Values are built from
// integer indices so full and coarse grids share identical doubles.
inline GridSpec make_grid(ModelKind model, Objective objective, bool augmented,
                          bool coarse = false, bool lasso_small_grid = false) {
    GridSpec g;
    g.model = model;
    g.objective = objective;
    g.augmented = augmented;
    g.coarse = coarse;
    const int q_step = coarse ? 7 : 1;
    const int eps_step = coarse ? 5 : 1;
    for (int i = 1; i <= 99; i += q_step) {
        g.q_grid.push_back(static_cast<double>(i) / 100.0);
    }
    for (int i = 1; i <= 45; i += eps_step) {
        g.eps_grid.push_back(static_cast<double>(i) / 100.0);
    }
    switch (model) {
        case ModelKind::Ridge:
            g.alpha_grid = {0.1, 1.0, 10.0};
            break;
        case ModelKind::Lasso:
            g.alpha_grid = lasso_small_grid
                               ? std::vector<double>{0.0001, 0.001, 0.01}
                               : std::vector<double>{0.1, 1.0, 10.0};
            break;
        case ModelKind::Svr:
            g.c_grid = {1.0, 10.0, 50.0, 100.0};
            break;
        case ModelKind::Ols:
            break;
    }
    return g;
}

struct GridCell {
    double q = 0.0;         // meaningful only for augmented cells
    double eps_stim = 0.0;  // likewise
    std::optional<double> alpha;
    std::optional<double> c;
};

struct CellScore {
    GridCell cell;
    std::vector<double> fold_scores;
    double mean_score = 0.0;
};

struct GridSearchResult {
    GridCell best;
    double best_cv_score = 0.0;
    std::vector<CellScore> cells;  // lexicographic cell order
    Objective objective = Objective::MaximizeR2;
    bool augmented = false;
};

namespace detail {

struct FoldData {
    Dataset fit;  // fold-train
    Dataset val;
};

// `train` rows must follow plan.train_indices order; fold ids in the plan
// are positional against those rows.
inline std::vector<FoldData> build_folds(const Dataset& train,
                                         const SplitPlan& plan) {
    if (train.size() != plan.fold_of_train.size()) {
        throw std::invalid_argument(
            "cross_validate: train set does not match split plan");
    }
    std::vector<FoldData> folds;
    folds.reserve(static_cast<std::size_t>(plan.folds));
    for (int f = 0; f < plan.folds; ++f) {
        std::vector<std::size_t> fit_rows, val_rows;
        for (std::size_t i = 0; i < plan.fold_of_train.size(); ++i) {
            (plan.fold_of_train[i] == f ? val_rows : fit_rows).push_back(i);
        }
        if (fit_rows.empty() || val_rows.empty()) {
            throw std::runtime_error("cross_validate: degenerate fold");
        }
        folds.push_back(FoldData{subset(train, fit_rows), subset(train, val_rows)});
    }
    return folds;
}

inline double score_fold(const FoldData& fold, const ModelSpec& spec,
                         bool augmented, const ChaosParams& chaos,
                         Objective objective) {
    const FittedModel m = fit_pipeline(fold.fit, spec, augmented, chaos);
    const Vector pred = pipeline_predict(m, fold.val.x);
    const Metrics metrics = compute_metrics(fold.val.y, pred);
    return objective == Objective::MaximizeR2 ? metrics.r2 : metrics.mse;
}

inline double score_cell(const std::vector<FoldData>& folds,
                         const ModelSpec& spec, bool augmented,
                         const ChaosParams& chaos, Objective objective,
                         std::vector<double>* fold_scores) {
    double sum = 0.0;
    if (fold_scores != nullptr) fold_scores->clear();
    for (const auto& fold : folds) {
        const double s = score_fold(fold, spec, augmented, chaos, objective);
        if (fold_scores != nullptr) fold_scores->push_back(s);
        sum += s;
    }
    return sum / static_cast<double>(folds.size());
}

inline ModelSpec apply_cell(const ModelSpec& base, const GridCell& cell) {
    ModelSpec spec = base;
    if (cell.alpha) spec.alpha = *cell.alpha;
    if (cell.c) spec.c = *cell.c;
    return spec;
}

inline ChaosParams cell_chaos(const GridCell& cell) {
    ChaosParams p;
    p.initial_activity = cell.q;
    p.eps_stim = cell.eps_stim;
    return p;
}

}  // namespace detail

// Mean validation score of one grid cell across the plan's folds.
inline double cross_validate(const Dataset& train, const ModelSpec& spec,
                             bool augmented, const ChaosParams& chaos,
                             const SplitPlan& plan, Objective objective,
                             std::vector<double>* fold_scores = nullptr) {
    const auto folds = detail::build_folds(train, plan);
    return detail::score_cell(folds, spec, augmented, chaos, objective,
                              fold_scores);
}

// Evaluates every cell, lexicographic order (q, then eps_stim, then the
// model hyperparameter). Ties keep the earliest cell. With augmented=false
// the chaos axes collapse to a single pass-through cell.
inline GridSearchResult grid_search(const Dataset& train, const GridSpec& grid,
                                    const SplitPlan& plan,
                                    const ModelSpec& base_spec,
                                    unsigned workers = 1) {
    if (grid.folds != plan.folds) {
        throw std::invalid_argument("grid_search: fold count mismatch");
    }

    std::vector<GridCell> cells;
    {
        std::vector<std::optional<double>> alphas, cs;
        if (grid.model == ModelKind::Ridge || grid.model == ModelKind::Lasso) {
            if (grid.alpha_grid.empty()) {
                throw std::invalid_argument("grid_search: empty alpha grid");
            }
            for (double a : grid.alpha_grid) alphas.emplace_back(a);
            cs.emplace_back(std::nullopt);
        } else if (grid.model == ModelKind::Svr) {
            if (grid.c_grid.empty()) {
                throw std::invalid_argument("grid_search: empty C grid");
            }
            alphas.emplace_back(std::nullopt);
            for (double c : grid.c_grid) cs.emplace_back(c);
        } else {
            alphas.emplace_back(std::nullopt);
            cs.emplace_back(std::nullopt);
        }

        std::vector<std::pair<double, double>> chaos_cells;
        if (grid.augmented) {
            if (grid.q_grid.empty() || grid.eps_grid.empty()) {
                throw std::invalid_argument("grid_search: empty chaos grid");
            }
            for (double q : grid.q_grid) {
                for (double e : grid.eps_grid) chaos_cells.emplace_back(q, e);
            }
        } else {
            chaos_cells.emplace_back(0.0, 0.0);  // single no-op cell
        }

        for (const auto& [q, e] : chaos_cells) {
            for (const auto& a : alphas) {
                for (const auto& c : cs) {
                    GridCell cell;
                    cell.q = q;
                    cell.eps_stim = e;
                    cell.alpha = a;
                    cell.c = c;
                    cells.push_back(cell);
                }
            }
        }
    }

    const auto folds = detail::build_folds(train, plan);
    std::vector<CellScore> scored(cells.size());
    const auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            CellScore cs_i;
            cs_i.cell = cells[i];
            const ModelSpec spec = detail::apply_cell(base_spec, cells[i]);
            const ChaosParams chaos =
                grid.augmented ? detail::cell_chaos(cells[i]) : ChaosParams{};
            cs_i.mean_score =
                detail::score_cell(folds, spec, grid.augmented, chaos,
                                   grid.objective, &cs_i.fold_scores);
            scored[i] = std::move(cs_i);
        }
    };

    const unsigned nworkers =
        std::max(1u, std::min<unsigned>(workers,
                                        static_cast<unsigned>(cells.size())));
    if (nworkers == 1) {
        eval_range(0, cells.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk =
            (cells.size() + nworkers - 1) / static_cast<std::size_t>(nworkers);
        for (unsigned t = 0; t < nworkers; ++t) {
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            const std::size_t hi = std::min(cells.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(eval_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    GridSearchResult result;
    result.objective = grid.objective;
    result.augmented = grid.augmented;
    result.cells = std::move(scored);

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        const double s = result.cells[i].mean_score;
        const double b = result.cells[best].mean_score;
        const bool better = grid.objective == Objective::MaximizeR2 ? s > b
                                                                    : s < b;
        if (better) best = i;
    }
    result.best = result.cells[best].cell;
    result.best_cv_score = result.cells[best].mean_score;
    return result;
}

// Audit dump: one row per cell with fold scores and the mean.
inline std::string grid_cells_csv(const GridSearchResult& r) {
    std::string out = "q,eps_stim,alpha,C";
    const std::size_t nfolds =
        r.cells.empty() ? 0 : r.cells.front().fold_scores.size();
    for (std::size_t f = 0; f < nfolds; ++f) {
        out += ",fold" + std::to_string(f);
    }
    out += ",mean\n";
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string{};
    };
    for (const auto& c : r.cells) {
        if (r.augmented) {
            out += format_double(c.cell.q) + ',' +
                   format_double(c.cell.eps_stim);
        } else {
            out += ",";
        }
        out += ',' + opt(c.cell.alpha);
        out += ',' + opt(c.cell.c);
        for (double s : c.fold_scores) out += ',' + format_double(s);
        out += ',' + format_double(c.mean_score);
        out += '\n';
    }
    return out;
}

}  // namespace ncr
