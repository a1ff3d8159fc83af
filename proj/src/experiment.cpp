#include "ratiolaw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "ratiolaw/error.hpp"
#include "ratiolaw/ratio_law.hpp"
#include "ratiolaw/rng.hpp"

namespace ratiolaw {

namespace {

struct MethodName {
  Method method;
  const char* name;
};
constexpr MethodName kMethodNames[] = {
    {Method::kUnbalanced, "unbalanced"}, {Method::kUndersample, "undersample"}, {Method::kOversample, "oversample"},
    {Method::kSmote, "smote"},           {Method::kEnsemble1, "ensemble1"},     {Method::kEnsemble2, "ensemble2"},
};

struct ModelName {
  ModelKind model;
  const char* name;
};
constexpr ModelName kModelNames[] = {
    {ModelKind::kLogReg, "logreg"},
    {ModelKind::kDummyStratified, "dummy_stratified"},
    {ModelKind::kDummyUniform, "dummy_uniform"},
};

bool is_ensemble(Method m) { return m == Method::kEnsemble1 || m == Method::kEnsemble2; }

// Runs fn(i) for i in [0, n) on up to `threads` workers; the first exception
// (by index) is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  std::vector<std::exception_ptr> errors(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string csv_safe(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

struct FoldOutput {
  std::vector<double> scores;
  Labels predicted;
};

DummyKind dummy_kind(ModelKind model) {
  return model == ModelKind::kDummyStratified ? DummyKind::kStratified : DummyKind::kUniform;
}

std::vector<std::vector<MetricsReport>> cv_core(const Dataset& dataset, Method method, ModelKind model, std::size_t k,
                                                std::uint64_t seed, const CvOptions& options,
                                                std::span<const VoteSpec> votes, std::vector<FoldTrace>* trace) {
  if (votes.empty()) throw ConfigError("no vote spec given");
  const FoldAssignment folds = stratified_kfold(dataset, k, seed);
  std::vector<std::vector<MetricsReport>> reports(votes.size(), std::vector<MetricsReport>(k));
  if (trace) trace->assign(k, {});

  for (std::size_t fold = 0; fold < k; ++fold) {
    const auto train_idx = folds.complement(fold);
    const auto val_idx = folds.members(fold);
    const Dataset train = dataset.select(train_idx);
    const Dataset val = dataset.select(val_idx);
    const ClassCounts train_counts = class_counts(train);
    const std::uint64_t fold_seed = derive_seed(seed, {fold});
    const std::uint64_t balance_seed = derive_seed(fold_seed, {1});
    const std::uint64_t model_seed = derive_seed(fold_seed, {2});

    FoldTrace local;
    local.validation_rows = val_idx;
    auto map_origins = [&](std::span<const std::size_t> origins) {
      for (std::size_t o : origins) {
        if (o == Resampled::kSyntheticOrigin) {
          ++local.synthetic_rows;
        } else {
          local.training_origins.push_back(train_idx[o]);
        }
      }
    };

    std::vector<FoldOutput> outputs;  // one per vote spec
    if (!is_ensemble(method)) {
      std::optional<Resampled> resampled;
      switch (method) {
        case Method::kUndersample:
          resampled = undersample(train, balance_seed);
          break;
        case Method::kOversample:
          resampled = oversample(train, balance_seed);
          break;
        case Method::kSmote: {
          auto result = smote(train, SmoteConfig{options.smote_k, balance_seed});
          local.warnings = std::move(result.warnings);
          resampled = std::move(result.resampled);
          break;
        }
        default:
          break;
      }
      const Dataset& training = resampled ? resampled->data : train;
      if (resampled) {
        map_origins(resampled->origin);
      } else {
        local.training_origins = train_idx;
      }

      FoldOutput out;
      if (model == ModelKind::kLogReg) {
        LogisticConfig config = options.logistic;
        config.seed = model_seed;
        LogisticRegression clf(config);
        clf.fit(training);
        out.scores = clf.predict_proba(val.features());
        out.predicted = predict_labels(out.scores, 0.5);
      } else {
        auto pred = dummy_predict({dummy_kind(model), model_seed}, class_counts(training), val.size());
        out.scores = std::move(pred.scores);
        out.predicted = std::move(pred.labels);
      }
      outputs.assign(votes.size(), out);
    } else {
      const SamplingMode mode =
          method == Method::kEnsemble1 ? SamplingMode::kWithoutReplacement : SamplingMode::kWithReplacement;
      const SubsetPlan plan = plan_balanced_subsets(train, mode, options.theta, balance_seed);
      for (std::size_t s = 0; s < plan.size(); ++s) map_origins(plan.training_rows(s));

      ProbMatrix probs;
      std::optional<VoteMatrix> labels;
      if (model == ModelKind::kLogReg) {
        LogisticConfig config = options.logistic;
        config.seed = model_seed;
        probs = train_ensemble(train, plan, config, votes.front()).base_probabilities(val.features());
      } else {
        labels.emplace();
        for (std::size_t s = 0; s < plan.size(); ++s) {
          const auto rows = plan.training_rows(s);
          Labels subset_labels;
          for (std::size_t r : rows) subset_labels.push_back(train.label(r));
          auto pred = dummy_predict({dummy_kind(model), derive_seed(model_seed, {s})}, class_counts(subset_labels),
                                    val.size());
          probs.push_back(std::move(pred.scores));
          labels->push_back(std::move(pred.labels));
        }
      }
      for (const auto& vote : votes) {
        const auto combined =
            labels ? combine_votes(probs, *labels, vote, train_counts) : combine_votes(probs, vote, train_counts);
        outputs.push_back({combined.score, combined.final_label});
      }
    }

    for (std::size_t v = 0; v < votes.size(); ++v) {
      reports[v][fold] = evaluate(outputs[v].scores, outputs[v].predicted, val.labels());
    }
    if (trace) (*trace)[fold] = std::move(local);
  }
  return reports;
}

}  // namespace

std::string to_string(Method method) {
  for (const auto& m : kMethodNames) {
    if (m.method == method) return m.name;
  }
  return "?";
}

std::string to_string(ModelKind model) {
  for (const auto& m : kModelNames) {
    if (m.model == model) return m.name;
  }
  return "?";
}

Method parse_method(const std::string& text) {
  for (const auto& m : kMethodNames) {
    if (text == m.name) return m.method;
  }
  throw ConfigError("unknown method '" + text + "'");
}

ModelKind parse_model(const std::string& text) {
  for (const auto& m : kModelNames) {
    if (text == m.name) return m.model;
  }
  throw ConfigError("unknown model '" + text + "'");
}

std::vector<MetricsReport> cross_validate(const Dataset& dataset, Method method, ModelKind model, std::size_t k,
                                          std::uint64_t seed, const CvOptions& options, std::vector<FoldTrace>* trace) {
  const VoteSpec votes[] = {options.vote};
  return cv_core(dataset, method, model, k, seed, options, votes, trace).front();
}

std::vector<std::vector<MetricsReport>> cross_validate_votes(const Dataset& dataset, Method method, ModelKind model,
                                                             std::size_t k, std::uint64_t seed,
                                                             const CvOptions& options,
                                                             std::span<const VoteSpec> votes) {
  return cv_core(dataset, method, model, k, seed, options, votes, nullptr);
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a real number, got '" + text + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  try {
    if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a nonnegative integer, got '" + text + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(trim(part));
    if (parts.size() != 3) throw ConfigError("r_grid range must be start:stop:step");
    const double start = parse_real("r_grid", parts[0]);
    const double stop = parse_real("r_grid", parts[1]);
    const double step = parse_real("r_grid", parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("r_grid range needs step > 0 and stop >= start");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
      // Round away accumulated binary noise so 0.01:0.99:0.01 yields 0.07, not 0.07000000000000001.
      out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split_list(t)) out.push_back(parse_real("r_grid", item));
  return out;
}

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k = {
      "task",   "r_grid",   "n_total",       "dim",        "separation", "seeds",   "cv_folds",
      "methods", "models",  "vote",          "theta",      "smote_k",    "learning_rate",
      "epochs", "l2_penalty", "threads",     "output"};
  return k;
}

void ExperimentConfig::apply(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "task") {
    task = value;
  } else if (key == "r_grid") {
    r_grid = parse_grid(value);
  } else if (key == "n_total") {
    n_total = parse_uint(key, value);
  } else if (key == "dim") {
    dim = parse_uint(key, value);
  } else if (key == "separation") {
    separation = parse_real(key, value);
  } else if (key == "seeds") {
    seeds.clear();
    for (const auto& s : split_list(value)) seeds.push_back(parse_uint(key, s));
  } else if (key == "cv_folds") {
    cv_folds = parse_uint(key, value);
  } else if (key == "methods") {
    methods.clear();
    for (const auto& s : split_list(value)) methods.push_back(parse_method(s));
  } else if (key == "models") {
    models.clear();
    for (const auto& s : split_list(value)) models.push_back(parse_model(s));
  } else if (key == "vote") {
    vote = VoteSpec::parse(value);
  } else if (key == "theta") {
    theta = parse_real(key, value);
  } else if (key == "smote_k") {
    smote_k = parse_uint(key, value);
  } else if (key == "learning_rate") {
    logistic.learning_rate = parse_real(key, value);
  } else if (key == "epochs") {
    logistic.epochs = parse_uint(key, value);
  } else if (key == "l2_penalty") {
    logistic.l2_penalty = parse_real(key, value);
  } else if (key == "threads") {
    threads = parse_uint(key, value);
  } else if (key == "output") {
    output_path = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (r_grid.empty()) throw ConfigError("r_grid must not be empty");
  for (double r : r_grid) {
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("r_grid values must lie in (0, 1], got " + format_double(r));
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  if (methods.empty()) throw ConfigError("methods must not be empty");
  if (models.empty()) throw ConfigError("models must not be empty");
  if (cv_folds < 2) throw ConfigError("cv_folds must be >= 2");
  if (n_total == 0) throw ConfigError("n_total must be positive");
  if (dim == 0) throw ConfigError("dim must be positive");
  if (!(separation >= 0.0)) throw ConfigError("separation must be nonnegative");
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (smote_k == 0) throw ConfigError("smote_k must be >= 1");
  if (!(logistic.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(logistic.l2_penalty >= 0.0)) throw ConfigError("l2_penalty must be nonnegative");
}

CvOptions ExperimentConfig::cv_options() const { return CvOptions{logistic, vote, theta, smote_k}; }

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

std::uint64_t data_seed(std::uint64_t seed, double r) { return derive_seed(seed, {std::bit_cast<std::uint64_t>(r)}); }

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out) {
  out << kResultHeader << '\n';
  for (const auto& row : rows) {
    out << row.task << ',' << to_string(row.method) << ',' << to_string(row.model) << ',' << format_double(row.r)
        << ',' << row.seed << ',' << row.fold << ',';
    if (row.fold < 0) {
      out << "nan,nan,nan,nan,nan,nan,nan,1";
    } else {
      out << metrics_csv_fields(row.metrics);
    }
    out << ',' << csv_safe(row.note) << '\n';
  }
}

namespace {

struct Cell {
  double r;
  std::uint64_t seed;
};

std::vector<Cell> cells_of(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (double r : config.r_grid) {
    for (auto seed : config.seeds) cells.push_back({r, seed});
  }
  return cells;
}

// Cross-validates every (method, model) on each (r, seed) cell. Failures
// of the data generator skip the cell; method failures become flagged rows.
ExperimentOutput run_cells(const ExperimentConfig& config, const std::string& task) {
  config.validate();
  const auto cells = cells_of(config);
  std::vector<ExperimentOutput> per_cell(cells.size());
  const CvOptions options = config.cv_options();

  parallel_for(cells.size(), config.threads, [&](std::size_t c) {
    const auto [r, seed] = cells[c];
    auto& out = per_cell[c];
    const GeneratorConfig gen{config.n_total, config.dim, r, config.separation, data_seed(seed, r)};
    std::optional<Dataset> data;
    try {
      data = generate_synthetic(gen);
      stratified_kfold(*data, config.cv_folds, seed);
    } catch (const DataError& e) {
      out.warnings.push_back("skipping r=" + format_double(r) + " seed=" + std::to_string(seed) + ": " + e.what());
      return;
    }
    for (Method method : config.methods) {
      for (ModelKind model : config.models) {
        std::vector<FoldTrace> traces;
        try {
          const auto reports = cross_validate(*data, method, model, config.cv_folds, seed, options, &traces);
          for (std::size_t f = 0; f < reports.size(); ++f) {
            ResultRow row{task, method, model, r, seed, static_cast<int>(f), reports[f], ""};
            if (reports[f].flagged) row.note = "zero-division convention applied";
            out.rows.push_back(std::move(row));
          }
          for (const auto& t : traces) {
            for (const auto& w : t.warnings) out.warnings.push_back(to_string(method) + ": " + w);
          }
        } catch (const DataError& e) {
          const std::string what = e.what();
          ResultRow row{task, method, model, r, seed, -1, {}, what};
          if (method == Method::kSmote) row.note = "smote_infeasible: " + what;
          out.rows.push_back(std::move(row));
          out.warnings.push_back(to_string(method) + "/" + to_string(model) + " failed at r=" + format_double(r) +
                                 " seed=" + std::to_string(seed) + ": " + what);
        }
      }
    }
  });

  ExperimentOutput merged;
  for (auto& cell : per_cell) {
    merged.rows.insert(merged.rows.end(), cell.rows.begin(), cell.rows.end());
    merged.warnings.insert(merged.warnings.end(), cell.warnings.begin(), cell.warnings.end());
  }
  std::stable_sort(merged.rows.begin(), merged.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tuple(a.model, a.r, a.seed, a.fold, a.method) < std::tuple(b.model, b.r, b.seed, b.fold, b.method);
  });
  return merged;
}

}  // namespace

ExperimentOutput run_ratio_sweep(const ExperimentConfig& config) { return run_cells(config, "sweep"); }

std::vector<SweepSummary> summarize(std::span<const ResultRow> rows) {
  std::map<std::tuple<ModelKind, Method, double>, std::vector<const MetricsReport*>> groups;
  for (const auto& row : rows) {
    if (row.fold >= 0) groups[{row.model, row.method, row.r}].push_back(&row.metrics);
  }
  std::vector<SweepSummary> out;
  for (const auto& [key, reports] : groups) {
    SweepSummary s{std::get<1>(key), std::get<0>(key), std::get<2>(key), reports.size(), {}, {}};
    auto field = [&](double MetricsReport::*member, double MetricsReport::*target) {
      std::vector<double> values;
      for (const auto* r : reports) values.push_back(r->*member);
      s.mean.*target = stats::mean(values);
      s.sd.*target = values.size() > 1 ? std::sqrt(stats::variance(values)) : 0.0;
    };
    for (auto m : {&MetricsReport::accuracy, &MetricsReport::precision, &MetricsReport::recall, &MetricsReport::fpr,
                   &MetricsReport::f1, &MetricsReport::auroc, &MetricsReport::auprc}) {
      field(m, m);
    }
    out.push_back(s);
  }
  return out;
}

void write_summary_csv(std::span<const SweepSummary> summary, std::ostream& out) {
  out << "method,model,r,n";
  for (const char* m : {"accuracy", "precision", "recall", "fpr", "f1", "auroc", "auprc"}) {
    out << ',' << m << "_mean," << m << "_sd";
  }
  out << '\n';
  for (const auto& s : summary) {
    out << to_string(s.method) << ',' << to_string(s.model) << ',' << format_double(s.r) << ',' << s.n;
    const std::pair<double, double> cols[] = {{s.mean.accuracy, s.sd.accuracy}, {s.mean.precision, s.sd.precision},
                                              {s.mean.recall, s.sd.recall},     {s.mean.fpr, s.sd.fpr},
                                              {s.mean.f1, s.sd.f1},             {s.mean.auroc, s.sd.auroc},
                                              {s.mean.auprc, s.sd.auprc}};
    for (const auto& [m, sd] : cols) out << ',' << format_double(m) << ',' << format_double(sd);
    out << '\n';
  }
}

void write_ttest_csv(std::span<const TTestRow> rows, std::ostream& out) {
  out << kTTestHeader << '\n';
  for (const auto& row : rows) {
    out << to_string(row.method_1) << "_vs_" << to_string(row.method_2) << ',' << row.metric << ','
        << to_string(row.method_1) << ',' << to_string(row.method_2) << ',' << to_string(row.model) << ','
        << format_double(row.r) << ',';
    if (row.result) {
      out << format_double(row.result->statistic) << ',' << format_double(row.result->p_value) << ','
          << format_double(row.result->degrees_of_freedom);
    } else {
      out << "nan,nan,nan";
    }
    out << ',' << csv_safe(row.note) << '\n';
  }
}

std::vector<TTestRow> paired_comparisons(std::span<const ResultRow> rows) {
  using Key = std::tuple<ModelKind, double>;
  // (model, r) -> method -> seed -> fold values, per metric
  struct Values {
    std::map<std::uint64_t, std::vector<double>> auprc, f1, auroc;
    bool failed = false;
  };
  std::map<Key, std::map<Method, Values>> groups;
  for (const auto& row : rows) {
    auto& v = groups[{row.model, row.r}][row.method];
    if (row.fold < 0) {
      v.failed = true;
      continue;
    }
    v.auprc[row.seed].push_back(row.metrics.auprc);
    v.f1[row.seed].push_back(row.metrics.f1);
    v.auroc[row.seed].push_back(row.metrics.auroc);
  }

  auto seed_means = [](const std::map<std::uint64_t, std::vector<double>>& by_seed) {
    std::vector<double> out;
    for (const auto& [seed, values] : by_seed) out.push_back(stats::mean(values));
    return out;
  };

  std::vector<TTestRow> out;
  for (const auto& [key, methods] : groups) {
    const auto [model, r] = key;
    for (auto a = methods.begin(); a != methods.end(); ++a) {
      for (auto b = std::next(a); b != methods.end(); ++b) {
        using Field = std::map<std::uint64_t, std::vector<double>> Values::*;
        const std::pair<const char*, Field> metrics[] = {{"AUPRC", &Values::auprc}, {"F1", &Values::f1},
                                                         {"AUROC", &Values::auroc}};
        for (const auto& [name, field] : metrics) {
          TTestRow row{name, a->first, b->first, model, r, std::nullopt, ""};
          if (a->second.failed || b->second.failed) {
            row.note = "skipped: method failed on at least one seed";
          } else {
            try {
              row.result = stats::paired_ttest(seed_means(a->second.*field), seed_means(b->second.*field));
            } catch (const Error& e) {
              row.note = e.what();
            }
          }
          out.push_back(std::move(row));
        }
      }
    }
  }
  return out;
}

ComparisonOutput run_balancing_comparison(const ExperimentConfig& config) {
  if (config.methods.size() < 2) throw ConfigError("compare needs at least two methods");
  auto cells = run_cells(config, "compare");
  ComparisonOutput out;
  out.ttests = paired_comparisons(cells.rows);
  out.rows = std::move(cells.rows);
  out.warnings = std::move(cells.warnings);
  return out;
}

std::vector<VoteScanRow> run_vote_scan(const ExperimentConfig& config, std::span<const VoteSpec> votes) {
  config.validate();
  Method method = Method::kEnsemble1;
  for (Method m : config.methods) {
    if (is_ensemble(m)) {
      method = m;
      break;
    }
  }
  const double r = config.r_grid.front();
  const ModelKind model = config.models.front();
  std::vector<std::vector<std::vector<MetricsReport>>> per_seed(config.seeds.size());
  parallel_for(config.seeds.size(), config.threads, [&](std::size_t s) {
    const auto seed = config.seeds[s];
    const Dataset data =
        generate_synthetic({config.n_total, config.dim, r, config.separation, data_seed(seed, r)});
    per_seed[s] = cross_validate_votes(data, method, model, config.cv_folds, seed, config.cv_options(), votes);
  });

  std::vector<VoteScanRow> out;
  for (std::size_t v = 0; v < votes.size(); ++v) {
    double f1 = 0.0, auprc = 0.0;
    std::size_t n = 0;
    for (const auto& seed_reports : per_seed) {
      for (const auto& rep : seed_reports[v]) {
        f1 += rep.f1;
        auprc += rep.auprc;
        ++n;
      }
    }
    out.push_back({votes[v].to_string(), f1 / static_cast<double>(n), auprc / static_cast<double>(n)});
  }
  return out;
}

std::vector<CurveRow> tabulate_curves(std::span<const double> r_grid) {
  std::vector<CurveRow> out;
  for (double r : r_grid) {
    out.push_back({r, f1_random(r), auprc_random(r), f1_random_derivative(r), auprc_random_derivative(r)});
  }
  return out;
}

void write_curves_csv(std::span<const CurveRow> rows, std::ostream& out) {
  out << "r,f1_random,auprc_random,f1_deriv,auprc_deriv\n";
  for (const auto& row : rows) {
    out << format_double(row.r) << ',' << format_double(row.f1_random) << ',' << format_double(row.auprc_random)
        << ',' << format_double(row.f1_deriv) << ',' << format_double(row.auprc_deriv) << '\n';
  }
}

}  // namespace ratiolaw
