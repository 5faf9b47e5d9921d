import math

import numpy as np
import pytest

from plu import network
from plu.activations import ActivationSpec, PluParams, plu_final
from plu.harness.experiments import activation_for
from plu.numerics import Rng, central_diff
from plu.optim import bce_with_logits

FAMILIES = ["relu", "gelu", "snake", "plu-theoretical", "plu"]


def _batch(seed=0, n=8):
    rng = Rng(seed)
    x = rng.uniform(-1, 1, 2 * n).reshape(n, 2)
    return x, np.arange(n) % 2.0


@pytest.mark.parametrize("arch, expected", [([2, 8, 8, 1], 105), ([2, 2, 2, 1], 15), ([2, 4, 4, 1], 37)])
def test_param_counts(arch, expected):
    # 2*8+8 + 8*8+8 + 8*1+1 = 105; 2*2+2 + 2*2+2 + 2+1 = 15
    assert network.param_count(arch) == expected
    m = network.init_mlp(arch, ActivationSpec("plu"), Rng(0))
    assert m.n_params == expected + 4
    assert network.to_vector(m).size == expected + 4


@pytest.mark.parametrize("arch", [[2, 1], [3, 4, 1], [2, 4, 2], [2, 0, 1]])
def test_invalid_arch(arch):
    with pytest.raises(ValueError):
        network.init_mlp(arch, ActivationSpec("relu"), Rng(0))


def test_init_scheme_and_determinism():
    a = network.init_mlp([2, 8, 8, 1], ActivationSpec("plu"), Rng(3))
    b = network.init_mlp([2, 8, 8, 1], ActivationSpec("plu"), Rng(3))
    np.testing.assert_array_equal(network.to_vector(a), network.to_vector(b))
    for layer in a.layers:
        assert np.all(np.abs(layer.weights) <= math.sqrt(1.0 / layer.fan_in))
        assert np.all(layer.bias == 0)
    assert list(network.to_vector(a)[-4:]) == [1.0, 5.0, 1.0, 0.15]


def test_vector_round_trip():
    m = network.init_mlp([2, 8, 8, 1], ActivationSpec("snake"), Rng(1))
    v = network.to_vector(m) + np.linspace(0, 1, m.n_params)
    m2 = network.with_vector(m, v)
    np.testing.assert_array_equal(network.to_vector(m2), v)
    m3 = network.mlp_from_checkpoint(network.checkpoint_dict(m2))
    np.testing.assert_array_equal(network.to_vector(m3), v)


def test_checkpoint_file_round_trip(tmp_path):
    m = network.init_mlp([2, 4, 4, 1], ActivationSpec("plu"), Rng(9))
    network.save_checkpoint(m, tmp_path / "c.json")
    m2 = network.load_checkpoint(tmp_path / "c.json")
    np.testing.assert_array_equal(network.to_vector(m), network.to_vector(m2))
    assert m2.arch == [2, 4, 4, 1] and m2.activation.family == "plu"


def test_zero_network_gives_zero_logits():
    m = network.init_mlp([2, 8, 8, 1], ActivationSpec("plu"), Rng(0))
    m = network.with_vector(m, np.r_[np.zeros(105), network.to_vector(m)[-4:]])
    logits, _ = network.forward(m, np.random.default_rng(0).normal(size=(13, 2)))
    assert logits.shape == (13,)
    np.testing.assert_array_equal(logits, 0.0)


def test_forward_matches_hand_composition():
    p = PluParams(1.3, 5.0, 0.9, 0.15)
    w1 = np.array([[0.7, -0.2]])
    w2 = np.array([[1.1]])
    w3 = np.array([[-0.6]])
    m = network.Mlp([network.DenseLayer(w1, np.array([0.1])), network.DenseLayer(w2, np.array([-0.3])),
                     network.DenseLayer(w3, np.array([0.05]))], ActivationSpec("plu", p))
    x = np.array([[0.4, -0.8]])
    h1 = plu_final(0.7 * 0.4 - 0.2 * -0.8 + 0.1, p)[0]
    h2 = plu_final(1.1 * h1 - 0.3, p)[0]
    logits, _ = network.forward(m, x)
    assert logits[0] == pytest.approx(-0.6 * h2 + 0.05, abs=1e-14)


def test_forward_rejects_bad_input_and_reports_layer():
    m = network.init_mlp([2, 4, 1], ActivationSpec("relu"), Rng(0))
    with pytest.raises(ValueError):
        network.forward(m, np.zeros((3, 3)))
    m.layers[1].bias[0] = math.inf
    with pytest.raises(network.NonFiniteForwardError) as exc:
        network.forward(m, np.zeros((2, 2)))
    assert exc.value.layer == 1


def _numeric_grad(m, x, y, h=1e-5):
    theta = network.to_vector(m)

    def loss(i):
        def f(v):
            t = theta.copy()
            t[i] = v
            return bce_with_logits(network.forward(network.with_vector(m, t), x)[0], y)[0]
        return f
    return np.array([central_diff(loss(i), theta[i], h) for i in range(theta.size)])


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("arch", [[2, 8, 8, 1], [2, 2, 2, 1]])
def test_backward_matches_finite_differences(family, arch):
    rng = Rng(17)
    m = network.init_mlp(arch, activation_for(family), rng)
    for layer in m.layers:
        layer.bias[:] = rng.uniform(-0.5, 0.5, layer.fan_out)
    x, y = _batch(4)
    if family == "relu":
        _, cache = network.forward(m, x)
        assert all(np.min(np.abs(z)) > 1e-3 for z in cache["pre"][:-1])
    logits, cache = network.forward(m, x)
    _, d = bce_with_logits(logits, y)
    analytic = network.backward(m, cache, d)
    numeric = _numeric_grad(m, x, y)
    err = np.abs(analytic - numeric) / np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), 1e-2)
    assert err.max() < 1e-5


def test_backward_linearity():
    m = network.init_mlp([2, 8, 8, 1], ActivationSpec("plu"), Rng(2))
    x, _ = _batch(1)
    _, cache = network.forward(m, x)
    np.testing.assert_array_equal(network.backward(m, cache, np.zeros(8)), 0.0)
    d = np.linspace(-1, 1, 8)
    g1 = network.backward(m, cache, d)
    g2 = network.backward(m, cache, 2 * d)
    np.testing.assert_allclose(g2, 2 * g1, rtol=1e-14, atol=0)


def test_backward_shape_mismatch():
    m = network.init_mlp([2, 4, 1], ActivationSpec("relu"), Rng(0))
    _, cache = network.forward(m, np.zeros((5, 2)))
    with pytest.raises(ValueError):
        network.backward(m, cache, np.zeros(4))


def test_shared_parameter_gets_contributions_from_every_hidden_layer():
    m = network.init_mlp([2, 8, 8, 1], ActivationSpec("plu"), Rng(4))
    x, y = _batch(2, 16)
    logits, cache = network.forward(m, x)
    _, d = bce_with_logits(logits, y)
    grad, terms = network.backward(m, cache, d, return_layer_terms=True)
    assert len(terms) == 2
    assert all(np.all(np.abs(t) > 0) for t in terms)
    np.testing.assert_allclose(terms[0] + terms[1], grad[-4:], rtol=1e-13)


def test_predict_proba_saturates_without_overflow():
    np.testing.assert_array_equal(network.sigmoid(np.array([0.0])), [0.5])
    with np.errstate(over="raise"):
        p = network.sigmoid(np.array([50.0, -50.0, 1000.0, -1000.0]))
    assert p[0] == pytest.approx(1.0) and p[1] == pytest.approx(0.0, abs=1e-20)
    assert p[2] == 1.0 and p[3] == 0.0


def test_predict_proba_range():
    m = network.init_mlp([2, 8, 8, 1], ActivationSpec("gelu"), Rng(0))
    p = network.predict_proba(m, np.random.default_rng(1).normal(size=(50, 2)))
    assert np.all((p > 0) & (p < 1))
