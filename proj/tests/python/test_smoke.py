import numpy as np
import pytest

import ratiolaw as rl


def test_curves_and_derivatives():
    assert rl.f1_random(1.0) == pytest.approx(0.5)
    assert rl.auprc_random(1.0) == pytest.approx(0.5)
    r = np.array([0.1, 0.5, 1.0])
    np.testing.assert_allclose(rl.f1_random(r), 2 * r / (3 * r + 1))
    np.testing.assert_allclose(rl.auprc_random_derivative(r), 1 / (1 + r) ** 2)
    with pytest.raises(rl.NumericError):
        rl.f1_random(0.0)


def test_generate_and_resample():
    X, y = rl.generate_synthetic(1000, dim=3, ratio=0.25, seed=4)
    assert X.shape == (1000, 3)
    assert rl.class_counts(y) == (800, 200)
    Xu, yu = rl.undersample(X, y, seed=1)
    assert rl.class_counts(yu) == (200, 200)
    Xs, ys, prov = rl.smote(X, y, k=5, seed=1)
    assert rl.class_counts(ys) == (800, 800)
    assert len(prov) == 600
    row, a, b, lam = prov[0]
    np.testing.assert_allclose(Xs[row], X[a] + lam * (X[b] - X[a]))
    X2, y2 = rl.generate_synthetic(1000, dim=3, ratio=0.25, seed=4)
    assert np.array_equal(X, X2) and np.array_equal(y, y2)


def test_plans_and_votes():
    assert rl.num_base_classifiers(900, 100) == 9
    assert rl.num_base_classifiers(1000, 100, mode="with", theta=0.05) == 29
    X, y = rl.generate_synthetic(300, ratio=0.5, seed=2)
    subsets = rl.plan_balanced_subsets(X, y, mode="without", seed=3)
    assert len(subsets) == 2
    assert all(len(s) == 100 for s in subsets)
    assert rl.votes_required(10, 0.7) == 7
    out = rl.combine_votes(np.array([[0.9, 0.2], [0.8, 0.6], [0.1, 0.7]]), "hard:0.5", 2, 1)
    assert list(out["label"]) == [1, 1]
    np.testing.assert_allclose(out["vote_fraction"], [2 / 3, 2 / 3])


def test_logistic_and_metrics():
    X, y = rl.generate_synthetic(2000, ratio=0.5, separation=2.0, seed=0)
    model = rl.LogisticRegression(epochs=100).fit(X, y)
    p = model.predict_proba(X)
    assert p.shape == (2000,)
    assert rl.auroc(p, y) > 0.8
    report = rl.evaluate(p, model.predict(X), y)
    assert set(report) >= {"f1", "auprc", "auroc", "flagged"}
    clone = rl.LogisticRegression.loads(model.dumps())
    assert np.array_equal(clone.predict_proba(X), p)
    assert rl.auroc([0.9, 0.8, 0.3, 0.1], [1, 0, 1, 0]) == pytest.approx(0.75)
    assert rl.auprc([0.9, 0.8, 0.3, 0.1], [1, 0, 1, 0]) == pytest.approx(5 / 6)


def test_ensemble_and_dummy():
    X, y = rl.generate_synthetic(1000, ratio=0.2, seed=1)
    scores, labels = rl.fit_predict_ensemble(X, y, X, vote="soft:mean", seed=1)
    assert scores.shape == labels.shape == (1000,)
    s, lab = rl.dummy_predict("stratified", 900, 100, 50000, seed=3)
    assert abs(lab.mean() - 0.1) < 0.01


def test_fit_and_stats():
    tasks = rl.reference_task_results()
    assert len(tasks) == 10
    fit = rl.fit_ratio_law([t["r"] for t in tasks], [t["f1"] for t in tasks])
    assert fit["pearson_r"] > 0.9
    res = rl.ttest([1, 5, 2, 8, 3], [2, 3, 4, 5, 1])
    assert res["statistic"] == pytest.approx(0.8251369970070347)
    with pytest.raises(rl.NumericError):
        rl.ttest([1, 2, 3], [1, 2, 3])


def test_sweep():
    rows, warnings = rl.run_sweep(r_grid=[0.2, 1.0], n_total=400, seeds=[0], cv_folds=3,
                                  methods=["unbalanced", "undersample"], threads=1)
    assert len(rows) == 2 * 2 * 3
    assert {row["method"] for row in rows} == {"unbalanced", "undersample"}
    with pytest.raises(rl.ConfigError):
        rl.run_sweep(no_such_key=1)
