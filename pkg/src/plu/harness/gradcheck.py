"""Whole-network gradient check against central differences of the loss."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .. import network
from ..numerics import Rng, central_diff
from ..optim import bce_with_logits
from .experiments import activation_for

BATCH = 8
KINK_MARGIN = 1e-3
# errors are |a - n| / max(|a|, |n|, FLOOR): relative above FLOOR, absolute
# (scaled by 1/FLOOR) below it, so tol=1e-5 allows 1e-7 absolute near zero
FLOOR = 1e-2


@dataclass
class GradcheckReport:
    arch: list
    family: str
    tol: float
    worst: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def worst_error(self) -> float:
        return max(self.worst.values())

    @property
    def passed(self) -> bool:
        return bool(self.worst_error < self.tol)

    def to_dict(self) -> dict:
        return {"arch": self.arch, "activation": self.family, "tol": self.tol,
                "passed": self.passed, "worst_error": self.worst_error,
                "worst_by_group": self.worst, "seconds": self.seconds}


def scaled_error(analytic, numeric) -> float:
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), FLOOR)


def _probe_network(arch, family, rng: Rng):
    m = network.init_mlp(arch, activation_for(family), rng)
    for layer in m.layers:
        layer.bias[:] = rng.uniform(-0.5, 0.5, layer.fan_out)
    return m


def _near_kink(m, x) -> bool:
    _, cache = network.forward(m, x)
    return any(np.min(np.abs(z)) < KINK_MARGIN for z in cache["pre"][:-1])


def gradcheck(arch, family: str, seed: int = 0, tol: float = 1e-5, h: float = 1e-5) -> GradcheckReport:
    """Compare ``backward`` with central differences for every parameter.

    Uses 8 random points in [-1, 1]^2 with alternating labels. For ReLU the
    batch and network are redrawn until every hidden pre-activation is at
    least 1e-3 from the kink.
    """
    start = time.perf_counter()
    rng = Rng(seed).derive("gradcheck")
    arch = network.validate_arch(arch)
    while True:
        m = _probe_network(arch, family, rng)
        x = rng.uniform(-1.0, 1.0, 2 * BATCH).reshape(BATCH, 2)
        if family != "relu" or not _near_kink(m, x):
            break
    labels = np.arange(BATCH) % 2.0

    logits, cache = network.forward(m, x)
    _, d_logits = bce_with_logits(logits, labels)
    analytic = network.backward(m, cache, d_logits)
    theta = network.to_vector(m)

    def loss_at(i):
        def f(v):
            t = theta.copy()
            t[i] = v
            return bce_with_logits(network.forward(network.with_vector(m, t), x)[0], labels)[0]
        return f

    report = GradcheckReport(arch, family, tol)
    for group, sl in network.layer_slices(m).items():
        errs = [scaled_error(analytic[i], central_diff(loss_at(i), theta[i], h))
                for i in range(sl.start, sl.stop)]
        if errs:
            report.worst[group] = max(errs)
    report.seconds = time.perf_counter() - start
    return report
