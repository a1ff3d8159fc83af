// ratiolaw: imbalanced-classification experiments from the command line.
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 numeric
// failure. Warnings go to standard error; every result is CSV.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "csv_table.hpp"
#include "ratiolaw/balancing.hpp"
#include "ratiolaw/classifiers.hpp"
#include "ratiolaw/dataset.hpp"
#include "ratiolaw/ensemble.hpp"
#include "ratiolaw/error.hpp"
#include "ratiolaw/experiment.hpp"
#include "ratiolaw/metrics.hpp"
#include "ratiolaw/ratio_law.hpp"
#include "ratiolaw/stats.hpp"

namespace {

using namespace ratiolaw;

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write(out);
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

// Experiment subcommands take every ExperimentConfig key as a flag; flags
// override values from --config.
struct ExperimentFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file");
    for (const auto& key : ExperimentConfig::keys()) {
      if (key == "task") continue;
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      std::string names = "--" + key;
      if (dashed != key) names += ",--" + dashed;
      cmd->add_option(names, values[key], "config key '" + key + "'");
    }
  }

  ExperimentConfig build(CLI::App* cmd, const std::string& task) const {
    ExperimentConfig config;
    config.task = task;
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_config_file(config_path)) {
        if (key == "task") {
          if (value != task) throw ConfigError("config file task '" + value + "' does not match command '" + task + "'");
          continue;
        }
        config.apply(key, value);
      }
    }
    for (const auto& [key, value] : values) {
      if (cmd->count("--" + key) > 0) config.apply(key, value);
    }
    return config;
  }
};

void logistic_flags(CLI::App* cmd, LogisticConfig& config) {
  cmd->add_option("--learning-rate,--learning_rate", config.learning_rate);
  cmd->add_option("--epochs", config.epochs);
  cmd->add_option("--l2-penalty,--l2_penalty", config.l2_penalty);
  cmd->add_option("--seed", config.seed);
}

SamplingMode parse_mode(const std::string& text) {
  if (text == "without" || text == "without_replacement" || text == "ensemble1") return SamplingMode::kWithoutReplacement;
  if (text == "with" || text == "with_replacement" || text == "ensemble2") return SamplingMode::kWithReplacement;
  throw ConfigError("sampling mode must be 'without' or 'with', got '" + text + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Imbalanced-classification toolkit: resampling, balanced bagging, metrics and ratio-law curves"};
  app.require_subcommand(1);

  // gen
  GeneratorConfig gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a two-Gaussian synthetic dataset");
  gen_cmd->add_option("--n-total,--n_total", gen.n_total);
  gen_cmd->add_option("--dim", gen.dim);
  gen_cmd->add_option("--ratio,-r", gen.ratio, "minority/majority ratio in (0, 1]");
  gen_cmd->add_option("--separation", gen.separation);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--output,-o", gen_out);

  // balance
  std::string bal_in, bal_method = "undersample", bal_out, bal_prov;
  std::uint64_t bal_seed = 0;
  std::size_t bal_k = 5;
  auto* bal_cmd = app.add_subcommand("balance", "rebalance a dataset CSV");
  bal_cmd->add_option("--input,-i", bal_in)->required();
  bal_cmd->add_option("--method", bal_method)->check(CLI::IsMember({"undersample", "oversample", "smote"}));
  bal_cmd->add_option("--seed", bal_seed);
  bal_cmd->add_option("--smote-k,--smote_k", bal_k);
  bal_cmd->add_option("--output,-o", bal_out);
  bal_cmd->add_option("--provenance", bal_prov, "SMOTE provenance CSV path");

  // train
  std::string train_in, train_out;
  LogisticConfig train_cfg;
  auto* train_cmd = app.add_subcommand("train", "fit a logistic regression and write the model text");
  train_cmd->add_option("--input,-i", train_in)->required();
  train_cmd->add_option("--output,-o", train_out);
  logistic_flags(train_cmd, train_cfg);

  // ensemble
  std::string ens_in, ens_eval, ens_out, ens_plan, ens_mode = "without", ens_vote = "hard:adaptive";
  double ens_theta = kDefaultTheta;
  LogisticConfig ens_cfg;
  auto* ens_cmd = app.add_subcommand("ensemble", "train a balanced-subset ensemble and write its predictions");
  ens_cmd->add_option("--input,-i", ens_in)->required();
  ens_cmd->add_option("--eval", ens_eval, "dataset to predict (defaults to the input)");
  ens_cmd->add_option("--mode", ens_mode, "without | with (replacement)");
  ens_cmd->add_option("--theta", ens_theta);
  ens_cmd->add_option("--vote", ens_vote);
  ens_cmd->add_option("--output,-o", ens_out);
  ens_cmd->add_option("--plan-out,--plan_out", ens_plan, "subset plan CSV path");
  logistic_flags(ens_cmd, ens_cfg);

  // eval
  std::string eval_data, eval_model, eval_preds, eval_out, eval_score_col = "score", eval_label_col = "label";
  double eval_threshold = 0.5;
  auto* eval_cmd = app.add_subcommand("eval", "compute the metrics report");
  eval_cmd->add_option("--data", eval_data, "dataset CSV scored with --model");
  eval_cmd->add_option("--model", eval_model, "model text from `train`");
  eval_cmd->add_option("--predictions", eval_preds, "CSV holding score and label columns");
  eval_cmd->add_option("--score-col,--score_col", eval_score_col);
  eval_cmd->add_option("--label-col,--label_col", eval_label_col);
  eval_cmd->add_option("--threshold", eval_threshold);
  eval_cmd->add_option("--output,-o", eval_out);

  // sweep
  ExperimentFlags sweep_flags;
  std::string sweep_summary;
  auto* sweep_cmd = app.add_subcommand("sweep", "ratio sweep over synthetic data");
  sweep_flags.attach(sweep_cmd);
  sweep_cmd->add_option("--summary", sweep_summary, "mean/sd summary CSV path");

  // compare
  ExperimentFlags cmp_flags;
  std::string cmp_ttest, cmp_scan;
  auto* cmp_cmd = app.add_subcommand("compare", "cross-validated comparison of balancing methods");
  cmp_flags.attach(cmp_cmd);
  cmp_cmd->add_option("--ttest-output,--ttest_output", cmp_ttest, "paired t-test CSV path");
  cmp_cmd->add_option("--vote-scan,--vote_scan", cmp_scan, "hard-vote threshold scan CSV path");

  // curves
  std::string curves_grid = "0.01:1:0.01", curves_out;
  auto* curves_cmd = app.add_subcommand("curves", "tabulate random-classifier F1 and AUPRC curves");
  curves_cmd->add_option("--r-grid,--r_grid", curves_grid);
  curves_cmd->add_option("--output,-o", curves_out);

  // fit-law
  std::string fit_in, fit_out;
  std::vector<std::string> fit_metrics{"f1", "auprc"};
  std::string fit_r_col = "r";
  bool fit_builtin = false;
  auto* fit_cmd = app.add_subcommand("fit-law", "fit metric = coefficient * r");
  fit_cmd->add_option("--input,-i", fit_in, "CSV with an r column and metric columns");
  fit_cmd->add_option("--r-col,--r_col", fit_r_col);
  fit_cmd->add_option("--metric", fit_metrics, "metric column(s)")->delimiter(',');
  fit_cmd->add_flag("--reference-tasks,--reference_tasks", fit_builtin, "use the bundled ten-task results");
  fit_cmd->add_option("--output,-o", fit_out);

  // ttest
  std::string tt_in, tt_a, tt_b, tt_kind = "paired", tt_metric = "value", tt_out;
  auto* tt_cmd = app.add_subcommand("ttest", "t-test between two CSV columns");
  tt_cmd->add_option("--input,-i", tt_in)->required();
  tt_cmd->add_option("--a", tt_a)->required();
  tt_cmd->add_option("--b", tt_b)->required();
  tt_cmd->add_option("--test", tt_kind)->check(CLI::IsMember({"paired", "welch", "pooled"}));
  tt_cmd->add_option("--metric", tt_metric, "label for the metric column of the output");
  tt_cmd->add_option("--output,-o", tt_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kConfig);
  }

  if (*gen_cmd) {
    const Dataset data = generate_synthetic(gen);
    with_output(gen_out, [&](std::ostream& out) { write_csv(data, out); });
  } else if (*bal_cmd) {
    const Dataset data = load_csv(bal_in);
    Dataset result = data;
    if (bal_method == "undersample") {
      result = undersample(data, bal_seed).data;
    } else if (bal_method == "oversample") {
      result = oversample(data, bal_seed).data;
    } else {
      auto sm = smote(data, SmoteConfig{bal_k, bal_seed});
      for (const auto& w : sm.warnings) warn(w);
      if (!bal_prov.empty()) with_output(bal_prov, [&](std::ostream& out) { write_provenance_csv(sm.provenance, out); });
      result = std::move(sm.resampled.data);
    }
    with_output(bal_out, [&](std::ostream& out) { write_csv(result, out); });
  } else if (*train_cmd) {
    const auto model = fit_logistic(load_csv(train_in), train_cfg);
    with_output(train_out, [&](std::ostream& out) { model->save(out); });
  } else if (*ens_cmd) {
    const Dataset data = load_csv(ens_in);
    const Dataset eval = ens_eval.empty() ? data : load_csv(ens_eval);
    const VoteSpec vote = VoteSpec::parse(ens_vote);
    const SubsetPlan plan = plan_balanced_subsets(data, parse_mode(ens_mode), ens_theta, ens_cfg.seed);
    if (!ens_plan.empty()) with_output(ens_plan, [&](std::ostream& out) { write_plan_csv(plan, out); });
    const EnsembleModel model = train_ensemble(data, plan, ens_cfg, vote);
    if (vote.family == VoteFamily::kHard && votes_required(model.size(), model.threshold()) >= model.size()) {
      warn("hard-vote threshold " + format_double(model.threshold()) + " with K=" + std::to_string(model.size()) +
           " requires a unanimous vote");
    }
    const auto prediction = model.predict(eval.features());
    with_output(ens_out, [&](std::ostream& out) { write_predictions_csv(prediction, out); });
  } else if (*eval_cmd) {
    std::vector<double> scores;
    Labels labels;
    if (!eval_preds.empty()) {
      const auto table = cli::CsvTable::load(eval_preds);
      scores = table.numeric(eval_score_col);
      for (double v : table.numeric(eval_label_col)) {
        if (v != 0.0 && v != 1.0) throw DataError("label outside {0,1} in " + eval_preds);
        labels.push_back(static_cast<int>(v));
      }
    } else if (!eval_data.empty() && !eval_model.empty()) {
      const Dataset data = load_csv(eval_data);
      std::ifstream in(eval_model);
      if (!in) throw DataError("cannot open " + eval_model);
      scores = LogisticRegression::load(in).predict_proba(data.features());
      labels = data.labels();
    } else {
      throw ConfigError("eval needs --predictions, or --data together with --model");
    }
    const auto predicted = predict_labels(scores, eval_threshold);
    const auto report = evaluate(scores, predicted, labels);
    if (report.flagged) warn("zero-division convention applied in point metrics");
    with_output(eval_out, [&](std::ostream& out) { out << kMetricsHeader << '\n' << metrics_csv_fields(report) << '\n'; });
  } else if (*sweep_cmd) {
    const ExperimentConfig config = sweep_flags.build(sweep_cmd, "sweep");
    const auto result = run_ratio_sweep(config);
    for (const auto& w : result.warnings) warn(w);
    with_output(config.output_path, [&](std::ostream& out) { write_results_csv(result.rows, out); });
    if (!sweep_summary.empty()) {
      with_output(sweep_summary, [&](std::ostream& out) { write_summary_csv(summarize(result.rows), out); });
    }
  } else if (*cmp_cmd) {
    const ExperimentConfig config = cmp_flags.build(cmp_cmd, "compare");
    const auto result = run_balancing_comparison(config);
    for (const auto& w : result.warnings) warn(w);
    for (const auto& t : result.ttests) {
      if (!t.result) warn(to_string(t.method_1) + " vs " + to_string(t.method_2) + " " + t.metric + ": " + t.note);
    }
    with_output(config.output_path, [&](std::ostream& out) { write_results_csv(result.rows, out); });
    std::string ttest_path = cmp_ttest;
    if (ttest_path.empty() && !config.output_path.empty() && config.output_path != "-") {
      ttest_path = config.output_path + ".ttest.csv";
    }
    if (!ttest_path.empty()) with_output(ttest_path, [&](std::ostream& out) { write_ttest_csv(result.ttests, out); });
    if (!cmp_scan.empty()) {
      std::vector<VoteSpec> votes;
      for (int q = 1; q <= 9; ++q) votes.push_back(VoteSpec::parse("hard:0." + std::to_string(q)));
      votes.push_back(VoteSpec::parse("hard:adaptive"));
      const auto scan = run_vote_scan(config, votes);
      if (scan.back().mean_f1 < scan[8].mean_f1) {
        warn("adaptive threshold F1 " + format_double(scan.back().mean_f1) + " is below fixed 0.9 F1 " +
             format_double(scan[8].mean_f1));
      }
      with_output(cmp_scan, [&](std::ostream& out) {
        out << "vote,mean_f1,mean_auprc\n";
        for (const auto& row : scan) {
          out << row.vote << ',' << format_double(row.mean_f1) << ',' << format_double(row.mean_auprc) << '\n';
        }
      });
    }
  } else if (*curves_cmd) {
    const auto grid = parse_grid(curves_grid);
    if (grid.empty()) throw ConfigError("r_grid must not be empty");
    const auto rows = tabulate_curves(grid);
    with_output(curves_out, [&](std::ostream& out) { write_curves_csv(rows, out); });
  } else if (*fit_cmd) {
    std::map<std::string, std::vector<RatioPoint>> series;
    if (fit_builtin) {
      for (const auto& t : reference_task_results()) {
        series["f1"].emplace_back(t.r, t.f1);
        series["auprc"].emplace_back(t.r, t.auprc);
      }
    } else {
      if (fit_in.empty()) throw ConfigError("fit-law needs --input or --reference-tasks");
      const auto table = cli::CsvTable::load(fit_in);
      const auto rs = table.numeric(fit_r_col);
      for (const auto& metric : fit_metrics) {
        if (!table.has(metric)) continue;
        const auto ms = table.numeric(metric);
        for (std::size_t i = 0; i < rs.size(); ++i) series[metric].emplace_back(rs[i], ms[i]);
      }
      if (series.empty()) throw DataError(fit_in + ": none of the requested metric columns exist");
    }
    with_output(fit_out, [&](std::ostream& out) {
      out << "fit,metric,coefficient,intercept,pearson_r,p_value,n_points\n";
      for (const auto& metric : fit_metrics) {
        const auto it = series.find(metric);
        if (it == series.end()) continue;
        const auto origin = fit_ratio_law(it->second);
        const auto ols = fit_with_intercept(it->second);
        for (const auto& [name, fit] : {std::pair{"through_origin", origin}, std::pair{"ols_intercept_diagnostic", ols}}) {
          out << name << ',' << metric << ',' << format_double(fit.coefficient) << ',' << format_double(fit.intercept)
              << ',' << format_double(fit.pearson_r) << ',' << format_double(fit.p_value) << ',' << fit.n_points
              << '\n';
        }
      }
    });
  } else if (*tt_cmd) {
    const auto table = cli::CsvTable::load(tt_in);
    const auto a = table.numeric(tt_a);
    const auto b = table.numeric(tt_b);
    const auto result = tt_kind == "paired"  ? stats::paired_ttest(a, b)
                        : tt_kind == "welch" ? stats::welch_ttest(a, b)
                                             : stats::pooled_ttest(a, b);
    with_output(tt_out, [&](std::ostream& out) {
      out << "comparison,metric,statistic,p_value,df\n"
          << tt_a << "_vs_" << tt_b << ',' << tt_metric << ',' << format_double(result.statistic) << ','
          << format_double(result.p_value) << ',' << format_double(result.degrees_of_freedom) << '\n';
    });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ratiolaw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ratiolaw::ErrorKind::kNumeric);
  }
}
