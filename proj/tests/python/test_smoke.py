import math

import numpy as np
import pytest

import qhs


def test_group_basics():
    g = qhs.Group("D4")
    assert g.order == 8
    assert not g.is_abelian
    assert g.label(6) == "r^2s"
    assert len(qhs.all_subgroups(g)) == 10


def test_fourier_is_unitary():
    f = qhs.fourier_matrix(qhs.Group("D5"))
    assert f.shape == (10, 10)
    assert np.allclose(f @ f.conj().T, np.eye(10), atol=1e-12)
    rep = qhs.representation_report(qhs.Group("Z2xZ4"))
    assert rep["completeness_defect"] == 0


def test_simon_pipeline_and_recovery():
    g = qhs.Group("Z2^3")
    d = qhs.run_pipeline(g, [5])
    probs = dict(zip(d.labels, d.probs))
    for y in ("0", "2", "5", "7"):
        assert probs[y] == pytest.approx(0.25, abs=1e-12)
    support = [int(label) for label, p in probs.items() if p > 1e-10]
    assert qhs.simon_solve(3, support) == [0, 5]
    assert qhs.character_sieve(g, support) == [0, 5]
    draws = d.sample(20, 7)
    assert draws == d.sample(20, 7)


def test_shor_exact_case():
    d = qhs.shor_pipeline(15, 7, 16)
    assert qhs.peak_mass(d, 4, 16) == pytest.approx(1.0)
    assert qhs.continued_fraction_period(12, 16, 15) == 4
    assert qhs.period_from_samples([12, 8], 16, 15, 7) == (4, True)


def test_sweep_and_experiment():
    rows = qhs.sweep_transversals(15, 7, 16, bound=15, count=3, first_seed=1)
    assert [r[0] for r in rows] == [1, 2, 3]
    report = qhs.run_experiment({"experiment": "shor", "N": 15, "a": 7, "Q": 16, "seed": 1})
    assert report["peak_mass"] == 1.0 and report["r_true"] == 4
    with pytest.raises(qhs.ConfigError):
        qhs.run_experiment({"experiment": "shor", "N": 15, "a": 5, "Q": 16})
    assert math.isclose(sum(qhs.run_pipeline(qhs.Group("D4"), [2]).probs), 1.0)
