"""Activation families with analytic derivatives.

Every activation returns ``(y, ActivationGrad)``. ``x`` may be a float or a
numpy array; parameters are always scalars because the network shares one
parameter record across all neurons.

Families: ``relu``, ``gelu``, ``snake``, ``plu-theoretical`` and ``plu``.
The last is the periodic linear unit with repulsive reparameterization::

    alpha_eff = alpha + |rho_alpha| / alpha
    beta_eff  = beta  + |rho_beta|  / beta
    y = x + beta_eff / (1 + |beta_eff|) * sin(|alpha_eff| * x)

Repulsion terms are stored raw and passed through ``abs`` at use sites, so
the optimizer may move them freely without ever producing negative
repulsion.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, field
from typing import NamedTuple

import numpy as np

POLE_GUARD = 1e-8
SNAKE_GUARD = 1e-4
GELU_K = math.sqrt(2.0 / math.pi)
GELU_C = 0.044715

FAMILIES = ("relu", "gelu", "snake", "plu-theoretical", "plu")


class NonFiniteActivationError(FloatingPointError):
    pass


@dataclass
class PluParams:
    alpha: float = 1.0
    rho_alpha: float = 5.0
    beta: float = 1.0
    rho_beta: float = 0.15


@dataclass
class PluTheoreticalParams:
    alpha: float = 1.0
    beta: float = 1.0


@dataclass
class SnakeParams:
    a: float = 1.0


@dataclass
class NoParams:
    pass


_PARAM_TYPES = {
    "relu": NoParams,
    "gelu": NoParams,
    "snake": SnakeParams,
    "plu-theoretical": PluTheoreticalParams,
    "plu": PluParams,
}


@dataclass
class ActivationGrad:
    """Partial derivatives of one activation evaluation.

    ``d_params`` follows the field order of the family's parameter record.
    ``clamped`` is set when a guard (pole or Snake) altered a parameter.
    """

    d_input: float | np.ndarray
    d_params: tuple = ()
    clamped: bool = False


@dataclass
class ActivationSpec:
    """A family name plus its (possibly empty) learnable parameter record."""

    family: str
    params: object = field(default=None)

    def __post_init__(self):
        if self.family not in _PARAM_TYPES:
            raise ValueError(f"unknown activation family {self.family!r}; expected one of {FAMILIES}")
        if self.params is None:
            self.params = _PARAM_TYPES[self.family]()
        elif not isinstance(self.params, _PARAM_TYPES[self.family]):
            raise TypeError(f"{self.family} expects {_PARAM_TYPES[self.family].__name__}")

    @property
    def n_params(self) -> int:
        return len(astuple(self.params))

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(self.params.__dataclass_fields__)

    def values(self) -> np.ndarray:
        return np.array(astuple(self.params), dtype=np.float64)

    def with_values(self, values) -> "ActivationSpec":
        values = [float(v) for v in values]
        if len(values) != self.n_params:
            raise ValueError(f"{self.family} takes {self.n_params} parameters, got {len(values)}")
        return ActivationSpec(self.family, _PARAM_TYPES[self.family](*values))


class Reparam(NamedTuple):
    value: float
    d_p: float
    d_rho: float
    clamped: bool = False


def _sign(v: float) -> float:
    # sign(0) is +1 wherever a sign is chosen for a guard or an abs map
    return 1.0 if v >= 0 else -1.0


def reparameterize(p: float, rho: float) -> Reparam:
    """Repulsive map ``p + rho / p`` and its partials.

    For ``rho > 0`` the result never has magnitude below ``2 * sqrt(rho)``;
    the extremum sits at ``|p| = sqrt(rho)``. ``|p|`` below ``POLE_GUARD`` is
    clamped (keeping sign, zero counts as positive) and flagged.
    """
    if rho < 0:
        raise ValueError(f"repulsion must be non-negative, got {rho}")
    clamped = abs(p) < POLE_GUARD
    if clamped:
        p = _sign(p) * POLE_GUARD
    inv = 1.0 / p
    return Reparam(p + rho * inv, 1.0 - rho * inv * inv, inv, clamped)


def amplitude_scale(beta_eff: float):
    """Bounded sine amplitude ``b / (1 + |b|)`` and its derivative."""
    denom = 1.0 + abs(beta_eff)
    return beta_eff / denom, 1.0 / (denom * denom)


def plu_final(x, p: PluParams):
    ra = abs(p.rho_alpha)
    rb = abs(p.rho_beta)
    ar = reparameterize(p.alpha, ra)
    br = reparameterize(p.beta, rb)
    for name, v in (("alpha", p.alpha), ("rho_alpha", p.rho_alpha), ("beta", p.beta),
                    ("rho_beta", p.rho_beta), ("alpha_eff", ar.value), ("beta_eff", br.value)):
        if not math.isfinite(v):
            raise NonFiniteActivationError(f"non-finite {name}={v!r}")
    s, ds = amplitude_scale(br.value)
    w = abs(ar.value)
    wx = w * x
    sin_wx = np.sin(wx)
    cos_wx = np.cos(wx)

    y = x + s * sin_wx
    dy_dx = 1.0 + s * w * cos_wx
    dy_daeff = s * x * cos_wx * _sign(ar.value)
    dy_dbeff = sin_wx * ds
    d_params = (
        dy_daeff * ar.d_p,
        dy_daeff * ar.d_rho * _sign(p.rho_alpha),
        dy_dbeff * br.d_p,
        dy_dbeff * br.d_rho * _sign(p.rho_beta),
    )
    return y, ActivationGrad(dy_dx, d_params, ar.clamped or br.clamped)


def plu_theoretical(x, p: PluTheoreticalParams):
    s, ds = amplitude_scale(p.beta)
    w = abs(p.alpha)
    sin_wx = np.sin(w * x)
    cos_wx = np.cos(w * x)
    y = x + s * sin_wx
    d_params = (s * x * cos_wx * np.sign(p.alpha), sin_wx * ds)
    return y, ActivationGrad(1.0 + s * w * cos_wx, d_params)


def snake(x, p: SnakeParams):
    a = p.a
    clamped = abs(a) < SNAKE_GUARD
    if clamped:
        a = _sign(a) * SNAKE_GUARD
    sin_ax = np.sin(a * x)
    sin_2ax = np.sin(2.0 * a * x)
    y = x + sin_ax * sin_ax / a
    d_a = -sin_ax * sin_ax / (a * a) + x * sin_2ax / a
    return y, ActivationGrad(1.0 + sin_2ax, (d_a,), clamped)


def relu(x, p=None):
    x = np.asarray(x, dtype=np.float64)
    y = np.maximum(x, 0.0)
    # subgradient at exactly 0 is 0
    d = (x > 0).astype(np.float64)
    if y.ndim == 0:
        return float(y), ActivationGrad(float(d))
    return y, ActivationGrad(d)


def gelu(x, p=None):
    """Tanh-approximated GELU."""
    inner = GELU_K * (x + GELU_C * x ** 3)
    t = np.tanh(inner)
    y = 0.5 * x * (1.0 + t)
    dy = 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * GELU_K * (1.0 + 3.0 * GELU_C * x * x)
    return y, ActivationGrad(dy)


_DISPATCH = {
    "relu": relu,
    "gelu": gelu,
    "snake": snake,
    "plu-theoretical": plu_theoretical,
    "plu": plu_final,
}


def apply(spec: ActivationSpec, x):
    return _DISPATCH[spec.family](x, spec.params)


def effective_params(spec: ActivationSpec) -> dict:
    """Effective frequency and amplitude quantities for trajectory logging."""
    p = spec.params
    if spec.family == "plu":
        a_eff = reparameterize(p.alpha, abs(p.rho_alpha)).value
        b_eff = reparameterize(p.beta, abs(p.rho_beta)).value
        return {"alpha_eff": a_eff, "beta_eff": b_eff, "scale": amplitude_scale(b_eff)[0]}
    if spec.family == "plu-theoretical":
        return {"alpha_eff": p.alpha, "beta_eff": p.beta, "scale": amplitude_scale(p.beta)[0]}
    return {}


def is_nonmonotonic(alpha_eff: float, beta_eff: float) -> bool:
    """True iff the PLU slope ``1 + s|a|cos(|a|x)`` dips below zero for some x."""
    return abs(amplitude_scale(beta_eff)[0]) * abs(alpha_eff) > 1.0
