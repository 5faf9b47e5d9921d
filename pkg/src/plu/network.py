"""Dense MLP with one activation parameter record shared network-wide.

Flat parameter order (the ``ParamVector`` layout): for each layer, its weight
matrix row-major (``fan_out x fan_in``) then its bias; the shared activation
parameters come last, in the field order of the family's parameter record.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .activations import ActivationSpec, apply
from .numerics import Rng


class NonFiniteForwardError(FloatingPointError):
    def __init__(self, layer: int, msg: str = ""):
        self.layer = layer
        super().__init__(f"non-finite values in layer {layer}{': ' + msg if msg else ''}")


@dataclass
class DenseLayer:
    weights: np.ndarray
    bias: np.ndarray

    @property
    def fan_in(self) -> int:
        return self.weights.shape[1]

    @property
    def fan_out(self) -> int:
        return self.weights.shape[0]


@dataclass
class Mlp:
    layers: list[DenseLayer]
    activation: ActivationSpec

    @property
    def arch(self) -> list[int]:
        return [self.layers[0].fan_in] + [layer.fan_out for layer in self.layers]

    @property
    def n_layer_params(self) -> int:
        return sum(layer.weights.size + layer.bias.size for layer in self.layers)

    @property
    def n_params(self) -> int:
        return self.n_layer_params + self.activation.n_params


def validate_arch(arch) -> list[int]:
    arch = [int(a) for a in arch]
    if len(arch) < 3:
        raise ValueError(f"architecture needs at least one hidden layer, got {arch}")
    if arch[0] != 2 or arch[-1] != 1:
        raise ValueError(f"architecture must start with 2 inputs and end with 1 output, got {arch}")
    if any(a < 1 for a in arch):
        raise ValueError(f"layer widths must be positive, got {arch}")
    return arch


def init_mlp(arch, act: ActivationSpec, rng: Rng) -> Mlp:
    """Uniform(+-sqrt(1/fan_in)) weights, zero biases, activation params from ``act``."""
    arch = validate_arch(arch)
    layers = []
    for fan_in, fan_out in zip(arch[:-1], arch[1:]):
        lim = np.sqrt(1.0 / fan_in)
        w = rng.uniform(-lim, lim, fan_in * fan_out).reshape(fan_out, fan_in)
        layers.append(DenseLayer(w, np.zeros(fan_out)))
    return Mlp(layers, act)


def to_vector(m: Mlp) -> np.ndarray:
    parts = []
    for layer in m.layers:
        parts.append(layer.weights.ravel())
        parts.append(layer.bias)
    parts.append(m.activation.values())
    return np.concatenate(parts)


def from_vector(arch, act: ActivationSpec, values) -> Mlp:
    """Rebuild a network of shape ``arch`` using ``act``'s family."""
    arch = validate_arch(arch)
    values = np.asarray(values, dtype=np.float64)
    expected = param_count(arch) + act.n_params
    if values.shape != (expected,):
        raise ValueError(f"expected {expected} values for {arch} + {act.family}, got {values.shape}")
    layers = []
    i = 0
    for fan_in, fan_out in zip(arch[:-1], arch[1:]):
        w = values[i:i + fan_in * fan_out].reshape(fan_out, fan_in).copy()
        i += fan_in * fan_out
        b = values[i:i + fan_out].copy()
        i += fan_out
        layers.append(DenseLayer(w, b))
    return Mlp(layers, act.with_values(values[i:]))


def with_vector(m: Mlp, values) -> Mlp:
    return from_vector(m.arch, m.activation, values)


def param_count(arch) -> int:
    """Weights plus biases, excluding activation parameters."""
    return sum(a * b + b for a, b in zip(arch[:-1], arch[1:]))


def layer_slices(m: Mlp) -> dict[str, slice]:
    """Named slices into the flat vector, e.g. ``W1``, ``b1``, ..., ``act``."""
    out = {}
    i = 0
    for k, layer in enumerate(m.layers, start=1):
        out[f"W{k}"] = slice(i, i + layer.weights.size)
        i += layer.weights.size
        out[f"b{k}"] = slice(i, i + layer.bias.size)
        i += layer.bias.size
    out["act"] = slice(i, i + m.activation.n_params)
    return out


def forward(m: Mlp, inputs):
    """Return ``(logits, cache)``; cache holds each layer's input and pre-activation."""
    a = np.asarray(inputs, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] != 2:
        raise ValueError(f"inputs must have shape (n, 2), got {a.shape}")
    layer_inputs = []
    pre = []
    clamped = False
    last = len(m.layers) - 1
    for k, layer in enumerate(m.layers):
        layer_inputs.append(a)
        z = a @ layer.weights.T + layer.bias
        if not np.all(np.isfinite(z)):
            raise NonFiniteForwardError(k, "pre-activation")
        pre.append(z)
        if k == last:
            break
        a, g = apply(m.activation, z)
        clamped = clamped or g.clamped
        if not np.all(np.isfinite(a)):
            raise NonFiniteForwardError(k, "activation output")
    logits = pre[-1][:, 0]
    return logits, {"inputs": layer_inputs, "pre": pre, "clamped": clamped}


def backward(m: Mlp, cache, d_logits, return_layer_terms: bool = False):
    """Gradient of a scalar loss in the flat parameter layout.

    The shared activation gradient is the sum over every neuron and sample.
    With ``return_layer_terms`` also returns that sum split by hidden layer.
    """
    d_logits = np.asarray(d_logits, dtype=np.float64)
    n = cache["inputs"][0].shape[0]
    if d_logits.shape != (n,) or len(cache["pre"]) != len(m.layers):
        raise ValueError("cache and d_logits do not match this network")
    n_act = m.activation.n_params
    grads_w = [None] * len(m.layers)
    grads_b = [None] * len(m.layers)
    d_act = np.zeros(n_act)
    layer_terms = []

    dz = d_logits[:, None]
    for k in range(len(m.layers) - 1, -1, -1):
        layer = m.layers[k]
        grads_w[k] = dz.T @ cache["inputs"][k]
        grads_b[k] = dz.sum(axis=0)
        if k == 0:
            break
        da = dz @ layer.weights
        _, g = apply(m.activation, cache["pre"][k - 1])
        term = np.array([np.sum(da * dp) for dp in g.d_params])
        layer_terms.append(term)
        d_act += term
        dz = da * g.d_input

    parts = []
    for gw, gb in zip(grads_w, grads_b):
        parts.append(gw.ravel())
        parts.append(gb)
    parts.append(d_act)
    grad = np.concatenate(parts)
    if return_layer_terms:
        return grad, layer_terms[::-1]
    return grad


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def predict_proba(m: Mlp, inputs) -> np.ndarray:
    logits, _ = forward(m, inputs)
    return sigmoid(logits)


def checkpoint_dict(m: Mlp) -> dict:
    return {
        "arch": m.arch,
        "activation": m.activation.family,
        "values": [float(v) for v in to_vector(m)],
    }


def mlp_from_checkpoint(d: dict) -> Mlp:
    act = ActivationSpec(d["activation"])
    return from_vector(d["arch"], act, d["values"])


def save_checkpoint(m: Mlp, path) -> None:
    Path(path).write_text(json.dumps(checkpoint_dict(m), indent=2) + "\n")


def load_checkpoint(path) -> Mlp:
    return mlp_from_checkpoint(json.loads(Path(path).read_text()))
