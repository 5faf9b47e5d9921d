"""Binary cross-entropy on logits and a functional Adam step."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


def bce_with_logits(logits, labels):
    """Mean BCE and its gradient w.r.t. the logits.

    Uses ``log1p(exp(-|z|)) + max(z, 0) - z*y`` so large logits never overflow.
    """
    z = np.asarray(logits, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    if z.size == 0:
        raise ValueError("empty batch")
    if z.shape != y.shape:
        raise ValueError(f"logits {z.shape} and labels {y.shape} differ in shape")
    n = z.size
    loss = np.mean(np.log1p(np.exp(-np.abs(z))) + np.maximum(z, 0.0) - z * y)
    # sigmoid without overflow
    e = np.exp(-np.abs(z))
    p = np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    return float(loss), (p - y) / n


@dataclass(frozen=True)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    lr: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


def adam_init(n: int, lr: float = 0.01, beta1: float = 0.9, beta2: float = 0.999,
              eps: float = 1e-8) -> AdamState:
    return AdamState(np.zeros(n), np.zeros(n), 0, lr, beta1, beta2, eps)


def adam_step(state: AdamState, params, grads):
    """One bias-corrected Adam update; returns ``(new_params, new_state)``."""
    params = np.asarray(params, dtype=np.float64)
    grads = np.asarray(grads, dtype=np.float64)
    if params.shape != grads.shape or params.shape != state.m.shape:
        raise ValueError(f"shape mismatch: params {params.shape}, grads {grads.shape}, state {state.m.shape}")
    bad = np.flatnonzero(~np.isfinite(grads))
    if bad.size:
        raise FloatingPointError(f"non-finite gradient at parameter index {int(bad[0])}")
    t = state.t + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grads
    v = state.beta2 * state.v + (1.0 - state.beta2) * grads * grads
    m_hat = m / (1.0 - state.beta1 ** t)
    v_hat = v / (1.0 - state.beta2 ** t)
    new_params = params - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return new_params, replace(state, m=m, v=v, t=t)
