"""Scalar training objectives and their logit-space gradients.

Batch losses are sums over frames; the trainer divides gradients by the
batch size so that the learning rate stays batch-size independent, and
metrics report per-frame means.  Probabilities are clamped at 1e-300
before any log so finite inputs can never produce -inf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DimensionError

P_FLOOR = 1e-300


def _check_pair(p_t: np.ndarray, p_s: np.ndarray, op: str) -> None:
    if p_t.shape != p_s.shape:
        raise DimensionError(f"{op}: teacher {p_t.shape} vs student {p_s.shape}")


def ts_loss(p_t: np.ndarray, p_s: np.ndarray) -> float:
    """Soft-target cross entropy, summed over the batch."""
    _check_pair(p_t, p_s, "ts_loss")
    return float(-(p_t * np.log(np.maximum(p_s, P_FLOOR))).sum())


def entropy(p: np.ndarray) -> float:
    """Shannon entropy in nats, summed over rows; 0 log 0 := 0."""
    terms = np.where(p > 0.0, p * np.log(np.maximum(p, P_FLOOR)), 0.0)
    return float(-terms.sum())


def kl_divergence(p_t: np.ndarray, p_s: np.ndarray) -> float:
    """KL(p_t || p_s) summed over rows; 0 log(0/x) := 0."""
    _check_pair(p_t, p_s, "kl_divergence")
    log_ratio = np.log(np.maximum(p_t, P_FLOOR)) - np.log(np.maximum(p_s, P_FLOOR))
    terms = np.where(p_t > 0.0, p_t * log_ratio, 0.0)
    return float(terms.sum())


def condition_loss(p_c: np.ndarray, labels: np.ndarray) -> float:
    """Hard-label cross entropy over condition posteriors, summed."""
    labels = np.asarray(labels)
    if labels.shape != (p_c.shape[0],):
        raise DimensionError(
            f"condition_loss: {labels.shape[0] if labels.ndim else 0} labels "
            f"for {p_c.shape[0]} rows"
        )
    if labels.size and (labels.min() < 0 or labels.max() >= p_c.shape[1]):
        raise ArgumentError(
            f"condition_loss: labels must lie in [0, {p_c.shape[1]})"
        )
    picked = p_c[np.arange(p_c.shape[0]), labels]
    return float(-np.log(np.maximum(picked, P_FLOOR)).sum())


def total_loss(l_ts: float, l_cond, lam: float) -> float:
    """Adversarial objective: l_ts - lam * sum(l_cond)."""
    if lam < 0.0:
        raise ArgumentError(f"trade-off weight must be nonnegative, got {lam}")
    return float(l_ts - lam * sum(l_cond))


def ts_loss_grad(p_t: np.ndarray, p_s: np.ndarray) -> np.ndarray:
    """Gradient of the summed soft-target loss wrt student task logits."""
    _check_pair(p_t, p_s, "ts_loss_grad")
    return p_s - p_t


def condition_loss_grad(p_c: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Gradient of the summed condition loss wrt condition logits."""
    labels = np.asarray(labels)
    if labels.shape != (p_c.shape[0],):
        raise DimensionError("condition_loss_grad: label count does not match rows")
    grad = p_c.copy()
    grad[np.arange(p_c.shape[0]), labels] -= 1.0
    return grad


@dataclass(frozen=True)
class LossBreakdown:
    """Per-batch scalar diagnostics; l_total is derived from the parts."""

    l_ts: float
    l_cond: tuple[float, ...]
    lam: float
    l_total: float
    kl_diag: float

    @classmethod
    def from_parts(cls, l_ts: float, l_cond, lam: float, kl_diag: float) -> "LossBreakdown":
        parts = tuple(float(v) for v in l_cond)
        return cls(
            l_ts=float(l_ts),
            l_cond=parts,
            lam=float(lam),
            l_total=total_loss(l_ts, parts, lam),
            kl_diag=float(kl_diag),
        )
