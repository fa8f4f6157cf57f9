# Copyright 2026 rwmlab developers.
# SPDX-License-Identifier: Apache-2.0
import csv
import io
import math

import pytest

import rwmlab


def test_normalize_linear():
    t = rwmlab.normalize(rwmlab.GSpec.linear(2.0))
    assert t.normalizer == pytest.approx(0.43233235838169365, rel=1e-10)
    assert t.fstar == pytest.approx(1.3130352854993315, rel=1e-10)
    assert t.cdf(1.0) == pytest.approx(1.0, abs=1e-12)


def test_invalid_target_raises():
    with pytest.raises(rwmlab.InvalidTarget):
        rwmlab.normalize(rwmlab.GSpec(rwmlab.Family.linear, [], rwmlab.Support.unit))


def test_speed_functions():
    assert rwmlab.aoar(4.0, 1.0) == pytest.approx(math.exp(-2), rel=1e-12)
    assert rwmlab.phi(4.0, 1.0) == pytest.approx(0.7217881772619343, rel=1e-9)


def test_rwm_step_is_seeded():
    t = rwmlab.normalize(rwmlab.GSpec.uniform())
    k = rwmlab.KernelConfig(4.0, 50)
    x = rwmlab.sample_iid(t, 50, rwmlab.Rng(3))
    a = rwmlab.rwm_step(t, k, x, rwmlab.Rng(7))
    b = rwmlab.rwm_step(t, k, x, rwmlab.Rng(7))
    assert a == b
    assert len(a[0]) == 50


def test_kernel_config_validates():
    with pytest.raises(ValueError):
        rwmlab.KernelConfig(-1.0, 10)


def test_small_experiment():
    text = rwmlab.execute_experiment(
        {
            "tag": "simulate",
            "target": {"family": "uniform"},
            "d": 20,
            "l": 4,
            "n_iters": 2000,
            "n_chains": 2,
            "seed": 1,
        }
    )
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["chain"] for r in rows] == ["0", "1", "all"]
    assert 0.0 < float(rows[-1]["accept_rate"]) < 1.0
    assert text == rwmlab.execute_experiment(
        '{"tag": "simulate", "target": {"family": "uniform"}, "d": 20, "l": 4,'
        ' "n_iters": 2000, "n_chains": 2, "seed": 1}'
    )


def test_run_experiment_writes_csv(tmp_path):
    paths = rwmlab.run_experiment(
        {"tag": "theory", "target": {"family": "uniform"}, "l": [4], "c": [1]},
        str(tmp_path),
    )
    assert len(paths) == 1
    assert "0.135335" in open(paths[0]).read()
