#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ratiolaw/balancing.hpp"
#include "ratiolaw/classifiers.hpp"
#include "ratiolaw/ensemble.hpp"
#include "ratiolaw/error.hpp"
#include "ratiolaw/experiment.hpp"
#include "ratiolaw/metrics.hpp"
#include "ratiolaw/ratio_law.hpp"
#include "ratiolaw/stats.hpp"

namespace py = pybind11;
using namespace ratiolaw;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& x) {
  if (x.ndim() != 2) throw DataError("features must be a 2-d array");
  const auto rows = static_cast<std::size_t>(x.shape(0)), cols = static_cast<std::size_t>(x.shape(1));
  Matrix m(std::vector<double>(x.data(), x.data() + rows * cols), cols);
  if (m.rows() != rows) throw DataError("features must be a 2-d array");
  return m;
}

std::vector<double> to_vector(const DoubleArray& a) {
  if (a.ndim() != 1) throw DataError("expected a 1-d array");
  return {a.data(), a.data() + a.shape(0)};
}

Labels to_labels(const IntArray& a) {
  if (a.ndim() != 1) throw DataError("labels must be a 1-d array");
  return {a.data(), a.data() + a.shape(0)};
}

Dataset to_dataset(const DoubleArray& x, const IntArray& y) { return Dataset(to_matrix(x), to_labels(y)); }

DoubleArray from_matrix(const Matrix& m) {
  DoubleArray out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

template <typename T>
py::array_t<T> from_vector(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::tuple from_dataset(const Dataset& d) { return py::make_tuple(from_matrix(d.features()), from_vector(d.labels())); }

py::dict report_dict(const MetricsReport& m) {
  py::dict d;
  d["accuracy"] = m.accuracy;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["fpr"] = m.fpr;
  d["f1"] = m.f1;
  d["auroc"] = m.auroc;
  d["auprc"] = m.auprc;
  d["flagged"] = m.flagged;
  return d;
}

py::dict fit_dict(const LinearFit& fit) {
  py::dict d;
  d["coefficient"] = fit.coefficient;
  d["intercept"] = fit.intercept;
  d["pearson_r"] = fit.pearson_r;
  d["p_value"] = fit.p_value;
  d["n_points"] = fit.n_points;
  return d;
}

py::dict test_dict(const stats::TestResult& t) {
  py::dict d;
  d["statistic"] = t.statistic;
  d["p_value"] = t.p_value;
  d["df"] = t.degrees_of_freedom;
  return d;
}

SamplingMode parse_mode(const std::string& mode) {
  if (mode == "without") return SamplingMode::kWithoutReplacement;
  if (mode == "with") return SamplingMode::kWithReplacement;
  throw ConfigError("mode must be 'without' or 'with', got '" + mode + "'");
}

ExperimentConfig make_config(const py::kwargs& kwargs) {
  ExperimentConfig config;
  for (const auto& [key, value] : kwargs) {
    std::string text;
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) text += (text.empty() ? "" : ",") + py::str(item).cast<std::string>();
    } else {
      text = py::str(value).cast<std::string>();
    }
    config.apply(key.cast<std::string>(), text);
  }
  config.validate();
  return config;
}

py::list rows_list(const std::vector<ResultRow>& rows) {
  py::list out;
  for (const auto& row : rows) {
    py::dict d = report_dict(row.metrics);
    d["task"] = row.task;
    d["method"] = to_string(row.method);
    d["model"] = to_string(row.model);
    d["r"] = row.r;
    d["seed"] = row.seed;
    d["fold"] = row.fold;
    d["note"] = row.note;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ratiolaw, m) {
  m.doc() = "Imbalance-ratio law for random classifiers, resampling baselines and evaluation metrics";

  auto base = py::register_exception<Error>(m, "RatiolawError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  // ratio law
  m.def("f1_random", py::vectorize(&f1_random), py::arg("r"));
  m.def("auprc_random", py::vectorize(&auprc_random), py::arg("r"));
  m.def("f1_random_derivative", py::vectorize(&f1_random_derivative), py::arg("r"));
  m.def("auprc_random_derivative", py::vectorize(&auprc_random_derivative), py::arg("r"));
  m.def(
      "expected_confusion_random",
      [](double r) {
        const auto c = expected_confusion_random(r);
        return py::dict(py::arg("tp") = c.tp, py::arg("fp") = c.fp, py::arg("fn") = c.fn, py::arg("tn") = c.tn);
      },
      py::arg("r"));
  m.def(
      "fit_ratio_law",
      [](const DoubleArray& r, const DoubleArray& metric, bool intercept) {
        const auto rs = to_vector(r), ms = to_vector(metric);
        if (rs.size() != ms.size()) throw DataError("r and metric differ in length");
        std::vector<RatioPoint> points;
        for (std::size_t i = 0; i < rs.size(); ++i) points.emplace_back(rs[i], ms[i]);
        return fit_dict(intercept ? fit_with_intercept(points) : fit_ratio_law(points));
      },
      py::arg("r"), py::arg("metric"), py::arg("intercept") = false);
  m.def("reference_task_results", [] {
    py::list out;
    for (const auto& t : reference_task_results())
      out.append(py::dict(py::arg("task") = t.task, py::arg("f1") = t.f1, py::arg("auprc") = t.auprc,
                          py::arg("r") = t.r));
    return out;
  });

  // data
  m.def(
      "generate_synthetic",
      [](std::size_t n_total, std::size_t dim, double ratio, double separation, std::uint64_t seed) {
        return from_dataset(generate_synthetic({n_total, dim, ratio, separation, seed}));
      },
      py::arg("n_total"), py::arg("dim") = 2, py::arg("ratio") = 1.0, py::arg("separation") = 1.0,
      py::arg("seed") = 0, "Returns (X, y) with label 1 as the minority class.");
  m.def(
      "class_counts",
      [](const IntArray& y) {
        const auto c = class_counts(to_labels(y));
        return py::make_tuple(c.n_majority, c.n_minority);
      },
      py::arg("y"), "Returns (n_majority, n_minority).");
  m.def(
      "stratified_kfold",
      [](const DoubleArray& x, const IntArray& y, std::size_t k, std::uint64_t seed) {
        return from_vector(stratified_kfold(to_dataset(x, y), k, seed).fold_index);
      },
      py::arg("X"), py::arg("y"), py::arg("k") = 10, py::arg("seed") = 0);

  // resampling
  m.def(
      "undersample", [](const DoubleArray& x, const IntArray& y, std::uint64_t seed) {
        return from_dataset(undersample(to_dataset(x, y), seed).data);
      },
      py::arg("X"), py::arg("y"), py::arg("seed") = 0);
  m.def(
      "oversample", [](const DoubleArray& x, const IntArray& y, std::uint64_t seed) {
        return from_dataset(oversample(to_dataset(x, y), seed).data);
      },
      py::arg("X"), py::arg("y"), py::arg("seed") = 0);
  m.def(
      "smote",
      [](const DoubleArray& x, const IntArray& y, std::size_t k, std::uint64_t seed) {
        const auto out = smote(to_dataset(x, y), {k, seed});
        py::list provenance;
        for (const auto& p : out.provenance)
          provenance.append(py::make_tuple(p.synthetic_row, p.parent_i, p.parent_k, p.lambda));
        const auto& d = out.resampled.data;
        return py::make_tuple(from_matrix(d.features()), from_vector(d.labels()), provenance);
      },
      py::arg("X"), py::arg("y"), py::arg("k") = 5, py::arg("seed") = 0,
      "Returns (X, y, provenance) where provenance rows are (row, parent, neighbour, lambda).");
  m.def(
      "num_base_classifiers",
      [](std::size_t n_majority, std::size_t n_minority, const std::string& mode, double theta) {
        return num_base_classifiers({n_majority, n_minority}, parse_mode(mode), theta);
      },
      py::arg("n_majority"), py::arg("n_minority"), py::arg("mode") = "without", py::arg("theta") = kDefaultTheta);
  m.def(
      "plan_balanced_subsets",
      [](const DoubleArray& x, const IntArray& y, const std::string& mode, double theta, std::uint64_t seed) {
        return plan_balanced_subsets(to_dataset(x, y), parse_mode(mode), theta, seed).subsets;
      },
      py::arg("X"), py::arg("y"), py::arg("mode") = "without", py::arg("theta") = kDefaultTheta, py::arg("seed") = 0,
      "Majority row indices for each base learner.");

  // classifiers
  py::class_<LogisticRegression>(m, "LogisticRegression")
      .def(py::init([](double learning_rate, std::size_t epochs, double l2_penalty, std::uint64_t seed) {
             return LogisticRegression({learning_rate, epochs, l2_penalty, seed});
           }),
           py::arg("learning_rate") = 0.5, py::arg("epochs") = 200, py::arg("l2_penalty") = 0.0, py::arg("seed") = 0)
      .def(
          "fit",
          [](LogisticRegression& self, const DoubleArray& x, const IntArray& y) -> LogisticRegression& {
            self.fit(to_dataset(x, y));
            return self;
          },
          py::arg("X"), py::arg("y"), py::return_value_policy::reference_internal)
      .def(
          "predict_proba",
          [](const LogisticRegression& self, const DoubleArray& x) { return from_vector(self.predict_proba(to_matrix(x))); },
          py::arg("X"))
      .def(
          "predict",
          [](const LogisticRegression& self, const DoubleArray& x, double threshold) {
            return from_vector(predict_labels(self.predict_proba(to_matrix(x)), threshold));
          },
          py::arg("X"), py::arg("threshold") = 0.5)
      .def_property_readonly("weights", [](const LogisticRegression& self) { return from_vector(self.weights()); })
      .def_property_readonly("bias", &LogisticRegression::bias)
      .def_property_readonly("loss_history",
                             [](const LogisticRegression& self) { return from_vector(self.loss_history()); })
      .def("dumps", [](const LogisticRegression& self) {
        std::ostringstream out;
        self.save(out);
        return out.str();
      })
      .def_static("loads", [](const std::string& text) {
        std::istringstream in(text);
        return LogisticRegression::load(in);
      });

  m.def(
      "dummy_predict",
      [](const std::string& strategy, std::size_t n_majority, std::size_t n_minority, std::size_t n_eval,
         std::uint64_t seed) {
        DummyKind kind;
        if (strategy == "uniform") kind = DummyKind::kUniform;
        else if (strategy == "stratified") kind = DummyKind::kStratified;
        else throw ConfigError("strategy must be 'uniform' or 'stratified'");
        const auto out = dummy_predict({kind, seed}, {n_majority, n_minority}, n_eval);
        return py::make_tuple(from_vector(out.scores), from_vector(out.labels));
      },
      py::arg("strategy"), py::arg("n_majority"), py::arg("n_minority"), py::arg("n_eval"), py::arg("seed") = 0,
      "Returns (scores, labels) for n_eval rows given training class counts.");

  // ensemble
  m.def(
      "adaptive_threshold",
      [](std::size_t n_majority, std::size_t n_minority) { return adaptive_threshold({n_majority, n_minority}); },
      py::arg("n_majority"), py::arg("n_minority"));
  m.def("votes_required", &votes_required, py::arg("k"), py::arg("threshold"));
  m.def(
      "combine_votes",
      [](const DoubleArray& base_probs, const std::string& vote, std::size_t n_majority, std::size_t n_minority) {
        const Matrix probs = to_matrix(base_probs);
        ProbMatrix rows;
        for (std::size_t k = 0; k < probs.rows(); ++k) rows.emplace_back(probs.row(k).begin(), probs.row(k).end());
        const auto out = combine_votes(rows, VoteSpec::parse(vote), {n_majority, n_minority});
        py::dict d;
        d["vote_fraction"] = from_vector(out.vote_fraction);
        d["soft_mean"] = from_vector(out.soft_mean);
        d["soft_max"] = from_vector(out.soft_max);
        d["label"] = from_vector(out.final_label);
        d["score"] = from_vector(out.score);
        return d;
      },
      py::arg("base_probs"), py::arg("vote"), py::arg("n_majority"), py::arg("n_minority"),
      "base_probs has one row per base model and one column per sample.");
  m.def(
      "fit_predict_ensemble",
      [](const DoubleArray& x, const IntArray& y, const DoubleArray& x_eval, const std::string& mode, double theta,
         const std::string& vote, std::uint64_t seed) {
        const Dataset train = to_dataset(x, y);
        const auto plan = plan_balanced_subsets(train, parse_mode(mode), theta, seed);
        LogisticConfig base;
        base.seed = seed;
        const auto model = train_ensemble(train, plan, base, VoteSpec::parse(vote));
        const auto out = model.predict(to_matrix(x_eval));
        return py::make_tuple(from_vector(out.score), from_vector(out.final_label));
      },
      py::arg("X"), py::arg("y"), py::arg("X_eval"), py::arg("mode") = "without", py::arg("theta") = kDefaultTheta,
      py::arg("vote") = "hard:adaptive", py::arg("seed") = 0, "Returns (scores, labels) for X_eval.");

  // metrics
  m.def(
      "auroc", [](const DoubleArray& s, const IntArray& y) { return auroc(to_vector(s), to_labels(y)); },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "auprc", [](const DoubleArray& s, const IntArray& y) { return auprc(to_vector(s), to_labels(y)); },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "evaluate",
      [](const DoubleArray& s, const IntArray& predicted, const IntArray& y) {
        return report_dict(evaluate(to_vector(s), to_labels(predicted), to_labels(y)));
      },
      py::arg("scores"), py::arg("predicted"), py::arg("labels"));

  // statistics
  m.def(
      "pearson", [](const DoubleArray& a, const DoubleArray& b) { return test_dict(stats::pearson(to_vector(a), to_vector(b))); },
      py::arg("x"), py::arg("y"));
  m.def(
      "ttest",
      [](const DoubleArray& a, const DoubleArray& b, const std::string& kind) {
        const auto va = to_vector(a), vb = to_vector(b);
        if (kind == "paired") return test_dict(stats::paired_ttest(va, vb));
        if (kind == "welch") return test_dict(stats::welch_ttest(va, vb));
        if (kind == "pooled") return test_dict(stats::pooled_ttest(va, vb));
        throw ConfigError("kind must be paired, welch or pooled");
      },
      py::arg("a"), py::arg("b"), py::arg("kind") = "paired");
  m.def("student_t_sf", &stats::student_t_sf, py::arg("t"), py::arg("df"));

  // experiments; keyword arguments are the config-file keys
  m.def(
      "run_sweep",
      [](const py::kwargs& kwargs) {
        const auto config = make_config(kwargs);
        ExperimentOutput out;
        {
          py::gil_scoped_release release;
          out = run_ratio_sweep(config);
        }
        return py::make_tuple(rows_list(out.rows), out.warnings);
      },
      "Returns (rows, warnings); rows are dicts with one entry per fold.");
  m.def(
      "run_comparison",
      [](const py::kwargs& kwargs) {
        const auto config = make_config(kwargs);
        ComparisonOutput out;
        {
          py::gil_scoped_release release;
          out = run_balancing_comparison(config);
        }
        py::list tests;
        for (const auto& t : out.ttests) {
          py::dict d;
          d["metric"] = t.metric;
          d["method_1"] = to_string(t.method_1);
          d["method_2"] = to_string(t.method_2);
          d["model"] = to_string(t.model);
          d["r"] = t.r;
          d["statistic"] = t.result ? py::cast(t.result->statistic) : py::none();
          d["p_value"] = t.result ? py::cast(t.result->p_value) : py::none();
          d["note"] = t.note;
          tests.append(d);
        }
        return py::make_tuple(rows_list(out.rows), tests, out.warnings);
      },
      "Returns (rows, ttests, warnings).");
  m.def("config_keys", &ExperimentConfig::keys);
}
