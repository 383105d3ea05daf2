"""Acceptance suite: every release criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion.  The desk-scale learning experiment (criterion 7) also
prints a tracked, non-gating directional comparison between the pairwise
and weighted listwise losses under label noise.
"""

import math
import time
from itertools import permutations

import numpy as np
import pytest

from depthrank import (
    Permutation,
    SplitMix64,
    SyntheticSpec,
    TrainConfig,
    generate_synthetic,
    listmle_loss,
    mean_average_precision,
    ndcg,
    pairs_from_permutation,
    permutation_from_scores,
    plackett_luce_log_prob,
    train,
    weighted_listmle_loss,
    whdr,
)
from depthrank import metrics
from depthrank.cli import EXIT_OK, main
from depthrank.losses import IDENTITY_WEIGHTS
from depthrank.trainer import gradcheck_cases, score

import oracles


def announce(line: str) -> None:
    print(f"\n[PASS] {line}")


def test_criterion_1_gradient_suite():
    t0 = time.perf_counter()
    rows = gradcheck_cases(seed=2024, instances=100, max_items=50)
    elapsed = time.perf_counter() - t0
    assert len(rows) == 8
    for name, err, tol in rows:
        assert err < tol, f"{name}: {err:.3e} >= {tol:.0e}"
    assert elapsed < 30.0, f"gradient suite took {elapsed:.1f}s"
    worst = max(err for _, err, _ in rows)
    announce(
        "criterion 1: analytic gradients match central differences for all "
        f"4 losses x 2 scorers, 100 instances each (worst {worst:.2e}, {elapsed:.1f}s)"
    )


def test_criterion_2_plackett_luce_normalization():
    t0 = time.perf_counter()
    rng = SplitMix64(2)
    worst = 0.0
    for n in range(2, 7):
        for _ in range(50):
            scores = 3.0 * rng.normals(n)
            total = math.fsum(
                math.exp(plackett_luce_log_prob(Permutation(p), scores))
                for p in permutations(range(n))
            )
            worst = max(worst, abs(total - 1.0))
            assert 1.0 - 1e-9 <= total <= 1.0 + 1e-9
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"normalization check took {elapsed:.1f}s"
    announce(
        "criterion 2: Plackett-Luce probabilities sum to 1 over all n! "
        f"permutations, n in 2..6 (worst deviation {worst:.2e}, {elapsed:.1f}s)"
    )


def test_criterion_3_listmle_consistent_with_log_likelihood():
    rng = SplitMix64(3)
    worst = 0.0
    for _ in range(1000):
        n = 1 + rng.below(30)
        gt = 3.0 * rng.normals(n)
        pred = 3.0 * rng.normals(n)
        perm = permutation_from_scores(gt)
        diff = abs(listmle_loss(perm, pred).value + plackett_luce_log_prob(perm, pred))
        worst = max(worst, diff)
        assert diff <= 1e-10
    announce(
        "criterion 3: listmle equals the negative permutation log likelihood "
        f"on 1000 instances (worst gap {worst:.2e})"
    )


def test_criterion_4_identity_weights_reduce_to_listmle():
    rng = SplitMix64(4)
    worst = 0.0
    for _ in range(1000):
        n = 1 + rng.below(30)
        gt = 3.0 * rng.normals(n)
        pred = 3.0 * rng.normals(n)
        perm = permutation_from_scores(gt)
        plain = listmle_loss(perm, pred)
        weighted = weighted_listmle_loss(perm, np.abs(gt), pred, IDENTITY_WEIGHTS)
        worst = max(
            worst,
            abs(weighted.value - plain.value),
            float(np.max(np.abs(weighted.grad - plain.grad))),
        )
        assert abs(weighted.value - plain.value) <= 1e-12
        assert np.all(np.abs(weighted.grad - plain.grad) <= 1e-12)
    announce(
        "criterion 4: identity gain/discount reproduces plain listmle value "
        f"and gradient on 1000 instances (worst gap {worst:.2e})"
    )


def test_criterion_5_map_matches_bruteforce_oracle():
    # derived constants, fixed by the cut-table oracle before the build
    perm3 = permutation_from_scores([2.0, 1.0, 0.0])
    reversed_map = mean_average_precision([(perm3, [0.0, 1.0, 2.0])])
    assert reversed_map == pytest.approx(11 / 24, abs=1e-12)
    assert reversed_map == pytest.approx(oracles.map_cuts([0, 1, 2], [0.0, 1.0, 2.0]), abs=1e-12)
    perm2 = permutation_from_scores([1.0, 0.0])
    assert mean_average_precision([(perm2, [0.0, 1.0])]) == pytest.approx(0.5, abs=1e-12)
    assert mean_average_precision([(perm3, [2.0, 1.0, 0.0])]) == pytest.approx(1.0, abs=1e-12)

    rng = SplitMix64(5)
    worst = 0.0
    for _ in range(200):
        n_samples = 1 + rng.below(3)
        batch = []
        oracle_values = []
        for _ in range(n_samples):
            n = 2 + rng.below(7)
            gt = rng.normals(n)
            pred = rng.normals(n)
            perm = permutation_from_scores(gt)
            batch.append((perm, pred))
            oracle_values.append(oracles.map_cuts_float(list(perm.order), pred))
        got = mean_average_precision(batch)
        want = sum(oracle_values) / len(oracle_values)
        worst = max(worst, abs(got - want))
        assert abs(got - want) <= 1e-12
    announce(
        "criterion 5: MAP matches the brute-force cut-table oracle on 200 "
        f"trials, n <= 8 (worst gap {worst:.2e}; reversed n=3 constant 11/24)"
    )


def test_criterion_6_listmle_order_optimality():
    rng = SplitMix64(6)
    for trial in range(100):
        n = 2 + rng.below(4)  # n in 2..5
        gt = rng.normals(n)
        perm = permutation_from_scores(gt)
        multiset = rng.normals(n)
        optimal = np.empty(n)
        optimal[perm.order_array] = sorted(multiset, reverse=True)
        best = listmle_loss(perm, optimal).value
        for assignment in permutations(multiset):
            assert best <= listmle_loss(perm, np.array(assignment)).value + 1e-12
    announce(
        "criterion 6: descending score assignment along the ground-truth order "
        "minimizes listmle over all n! assignments (100 multisets, n <= 5)"
    )


def test_criterion_7_desk_scale_learning():
    t0 = time.perf_counter()
    spec = SyntheticSpec(
        n_samples=1000, items_per_sample=20, feature_dim=10,
        noise_sigma=0.0, scorer_family="linear", seed=2024,
    )
    ds = generate_synthetic(spec)
    cfg = TrainConfig(
        loss="weighted-listmle", learning_rate=0.05, momentum=0.9,
        epochs=500, seed=7, batch=100,
    )
    params, trace = train(ds, cfg)
    report = metrics.evaluate(ds.samples, [score(params, s.items) for s in ds.samples])
    elapsed = time.perf_counter() - t0
    assert len(trace) == 500
    assert report.whdr < 0.02, f"whdr {report.whdr:.4f} >= 2%"
    assert report.map > 0.97, f"map {report.map:.4f} <= 0.97"
    assert elapsed < 60.0, f"desk-scale run took {elapsed:.1f}s"
    announce(
        "criterion 7: weighted listmle on noiseless linear data reaches "
        f"whdr={report.whdr:.5f} (<2%) and map={report.map:.5f} (>0.97) "
        f"after 500 epochs in {elapsed:.1f}s"
    )

    # tracked, non-gating directional check under label noise
    noisy_spec = SyntheticSpec(
        n_samples=1000, items_per_sample=20, feature_dim=10,
        noise_sigma=0.5, scorer_family="linear", seed=2025,
    )
    noisy = generate_synthetic(noisy_spec)
    results = {}
    for loss in ("pairwise", "weighted-listmle"):
        noisy_cfg = TrainConfig(
            loss=loss, learning_rate=0.05, momentum=0.9, epochs=150, seed=7,
            batch=100, pairs_per_sample=190,
        )
        p, _ = train(noisy, noisy_cfg)
        results[loss] = metrics.evaluate(
            noisy.samples, [score(p, s.items) for s in noisy.samples]
        )
    lw = results["weighted-listmle"].map
    pw = results["pairwise"].map
    ok = lw >= pw - 0.005
    print(
        f"\n[TRACKED {'PASS' if ok else 'FAIL'}] criterion 7 directional check "
        f"(non-gating): weighted-listmle map={lw:.5f} vs pairwise map={pw:.5f} "
        f"under sigma=0.5 label noise (tolerance -0.005)"
    )


def test_criterion_8_pipeline_determinism(tmp_path, monkeypatch):
    artifacts = []
    for tag in ("run1", "run2"):
        d = tmp_path / tag
        d.mkdir()
        monkeypatch.chdir(d)
        assert main([
            "gen-data", "--n-samples", "30", "--items", "12", "--dim", "6",
            "--noise", "0.2", "--seed", "99", "--out", "data.txt",
        ]) == EXIT_OK
        assert main([
            "train", "--data", "data.txt", "--loss", "weighted-listmle",
            "--lr", "0.05", "--epochs", "10", "--batch", "5", "--seed", "13",
            "--out-params", "params.txt", "--out-report", "train-report.txt",
        ]) == EXIT_OK
        assert main([
            "eval", "--params", "params.txt", "--data", "data.txt",
            "--out-report", "eval-report.txt",
        ]) == EXIT_OK
        artifacts.append(tuple(
            (d / name).read_bytes()
            for name in ("data.txt", "params.txt", "train-report.txt", "eval-report.txt")
        ))
    assert artifacts[0] == artifacts[1]
    announce(
        "criterion 8: gen-data -> train -> eval with fixed seeds reproduces "
        "datasets, params, and reports byte for byte"
    )


def test_criterion_9_metric_invariance_under_monotone_transforms():
    transforms = (lambda x: 2.0 * x + 7.0, lambda x: x**3 + x)
    rng = SplitMix64(9)
    for _ in range(100):
        n = 2 + rng.below(10)
        gt = rng.normals(n)
        pred = rng.normals(n)
        perm = permutation_from_scores(gt)
        pairs = pairs_from_permutation(perm, gt)
        relevance = np.abs(gt)
        base = (
            whdr(pairs, pred),
            mean_average_precision([(perm, pred)]),
            ndcg(relevance, pred),
        )
        for transform in transforms:
            t_pred = transform(pred)
            assert permutation_from_scores(t_pred).order == permutation_from_scores(pred).order
            transformed = (
                whdr(pairs, t_pred),
                mean_average_precision([(perm, t_pred)]),
                ndcg(relevance, t_pred),
            )
            assert transformed == base  # exact equality: order-only dependence
    announce(
        "criterion 9: whdr, map, and ndcg are exactly invariant under the two "
        "fixed strictly increasing transforms (100 instances)"
    )
