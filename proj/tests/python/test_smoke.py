import pytest

import _currents as c


def test_version_and_info():
    assert c.__version__.startswith("currents")
    info = c.algebra_info("sl2")
    assert info["dim"] == 3
    assert info["exponents"] == [1]
    assert len(info["labels"]) == 3


def test_truncated_table_matches_prediction():
    assert c.truncated_diff("sl2", 2) == []
    dims = {(d, p, w): v for d, p, w, v in c.truncated_table("sl2", 2)}
    assert dims[(0, 0, 0)] == 1
    assert dims[(3, 0, 0)] == 1
    assert dims[(3, 0, 3)] == 1
    assert dims[(6, 0, 3)] == 1
    assert sum(dims.values()) == 4


def test_predicted_series_coefficients():
    pred = {(d, p, w): v for d, p, w, v in c.predicted_super("sl2", 2, 2, 3)}
    assert pred[(0, 2, 0)] == 1
    assert pred[(1, 1, 1)] == 1
    assert (0, 1, 0) not in pred


def test_super_diff_empty():
    assert c.super_diff("sl2", 2, 2, 3, threads=2) == []


def test_hodge_deviations_small():
    dev = c.hodge_deviations("sl2", 1, 1, 2)
    assert dev["adjointness"] < 1e-9
    assert dev["laplacian_split"] < 1e-8
    assert dev["nakano_invariant"] < 1e-8
    assert dev["nakano_zero_mode"] < 1e-8
    assert dev["transfer_split"] < 1e-8


def test_harmonic_dims():
    assert c.harmonic_dim("sl2", 0, 2, 0) == 1
    assert c.harmonic_dim("sl2", 1, 1, 1) == 1
    assert c.harmonic_dim("sl2", 1, 0, 1) == 0


def test_delta1():
    rep = c.delta1(1, 2, max_k=6)
    assert rep["kernel_dim"] == 0
    assert rep["cokernel_weights"] == [3]
    rep0 = c.delta1(1, 0, max_k=6)
    assert rep0["kernel_dim"] == 1
    assert rep0["cokernel_weights"] == []


def test_iwahori_diff_empty():
    assert c.iwahori_diff("sl2", 1, 2, 2) == []


def test_unsupported_inputs_raise():
    with pytest.raises(ValueError):
        c.algebra_info("so8")
    with pytest.raises(ValueError):
        c.hodge_deviations("gl2", 0, 0, 0)
