// ncr: chaos-augmented regression benchmarks.
//
//   ncr generate  --n 1000 --slope 2 --variance 5 --out data.csv
//   ncr benchmark --dataset data.csv --target y --model ridge --augmented
//   ncr matrix    --coarse-grid --out matrix_report.json
//   ncr report    a.json b.json --out merged.json
//
// Every run is reproducible from its flags and seed; reruns write
// byte-identical reports.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ncr/cli.hpp>

namespace {

void add_seed_option(CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "RNG seed")
        ->envname("NCR_SEED")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaos-augmented regression benchmarks"};
    app.set_config("--config", "", "read options from an INI/TOML file");
    app.require_subcommand(1);

    // generate
    ncr::SynthSpec synth;
    std::string gen_out = "synth.csv";
    auto* gen = app.add_subcommand(
        "generate", "write a synthetic linear dataset as CSV");
    gen->add_option("--n", synth.n, "sample count")->capture_default_str();
    gen->add_option("--slope", synth.slope, "line slope")
        ->capture_default_str();
    gen->add_option("--intercept", synth.intercept, "line intercept")
        ->capture_default_str();
    gen->add_option("--variance", synth.noise_variance,
                    "Gaussian noise variance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_seed_option(gen, synth.seed);
    gen->add_option("--out", gen_out, "output CSV path")
        ->capture_default_str();

    // benchmark
    ncr::RunConfig run;
    std::string run_model = "ols";
    std::string run_objective;
    std::string run_kernel;
    auto* bench = app.add_subcommand(
        "benchmark", "tune, fit and score one model on one dataset");
    bench->add_option("--dataset", run.dataset_csv,
                      "CSV path (omit to use a synthetic dataset)");
    bench->add_option("--target", run.target, "target column for CSV input")
        ->capture_default_str();
    bench->add_option("--n", run.synth.n, "synthetic sample count")
        ->capture_default_str();
    bench->add_option("--slope", run.synth.slope, "synthetic slope")
        ->capture_default_str();
    bench->add_option("--intercept", run.synth.intercept,
                      "synthetic intercept")
        ->capture_default_str();
    bench->add_option("--variance", run.synth.noise_variance,
                      "synthetic noise variance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bench->add_option("--model", run_model, "ols|ridge|lasso|svr")
        ->check(CLI::IsMember({"ols", "ridge", "lasso", "svr"}))
        ->capture_default_str();
    bench->add_flag("--augmented", run.augmented,
                    "insert the chaotic feature map");
    bench->add_option("--objective", run_objective,
                      "model selection objective (r2|mse); defaults to mse "
                      "for synthetic data, r2 for CSV data")
        ->check(CLI::IsMember({"r2", "mse"}));
    bench->add_option("--kernel", run_kernel,
                      "svr kernel (linear|rbf); defaults to linear for "
                      "synthetic data, rbf for CSV data")
        ->check(CLI::IsMember({"linear", "rbf"}));
    bench->add_flag("--coarse-grid", run.coarse,
                    "stride-reduced search grid for CI budgets");
    bench->add_flag("--lasso-small-grid", run.lasso_small_grid,
                    "use lasso penalties {1e-4, 1e-3, 1e-2}");
    add_seed_option(bench, run.seed);
    bench->add_option("--test-fraction", run.test_fraction,
                      "held-out test fraction")
        ->check(CLI::Range(0.01, 0.99))
        ->capture_default_str();
    bench->add_option("--folds", run.folds, "cross-validation folds")
        ->check(CLI::Range(2, 100))
        ->capture_default_str();
    bench->add_option("--workers", run.workers, "grid search worker threads")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    bench->add_option("--out", run.out_json, "report JSON path")
        ->capture_default_str();
    bench->add_option("--cells-csv", run.cells_csv,
                      "also dump per-cell CV scores to this CSV");

    // matrix
    ncr::MatrixConfig matrix;
    auto* mat = app.add_subcommand(
        "matrix",
        "sweep all 24 synthetic datasets x 4 models x {plain, augmented}");
    mat->add_flag("--coarse-grid", matrix.coarse,
                  "stride-reduced search grid for CI budgets");
    add_seed_option(mat, matrix.seed);
    mat->add_option("--test-fraction", matrix.test_fraction,
                    "held-out test fraction")
        ->check(CLI::Range(0.01, 0.99))
        ->capture_default_str();
    mat->add_option("--folds", matrix.folds, "cross-validation folds")
        ->check(CLI::Range(2, 100))
        ->capture_default_str();
    mat->add_option("--workers", matrix.workers,
                    "grid search worker threads")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    mat->add_option("--out", matrix.out_json, "report JSON path")
        ->capture_default_str();

    // report
    std::vector<std::string> report_inputs;
    std::string report_out = "merged_report.json";
    auto* rep = app.add_subcommand(
        "report", "merge earlier reports and recompute boost summaries");
    rep->add_option("inputs", report_inputs, "report JSON files")
        ->required()
        ->expected(-1);
    rep->add_option("--out", report_out, "merged report JSON path")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) return ncr::cmd_generate(synth, gen_out);
    if (bench->parsed()) {
        run.model = ncr::model_kind_from_name(run_model);
        if (!run_objective.empty()) {
            run.objective = run_objective == "r2" ? ncr::Objective::MaximizeR2
                                                  : ncr::Objective::MinimizeMse;
        }
        if (!run_kernel.empty()) {
            run.kernel = ncr::kernel_from_name(run_kernel);
        }
        return ncr::cmd_benchmark(run);
    }
    if (mat->parsed()) return ncr::cmd_matrix(matrix);
    if (rep->parsed()) return ncr::cmd_report(report_inputs, report_out);
    return 1;  // unreachable: a subcommand is required
}
