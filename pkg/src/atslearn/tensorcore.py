"""Deterministic dense math: seeded random streams and layer primitives.

All numeric state lives in 2-D C-contiguous float64 numpy arrays.  Forward
functions return an output plus a cache; backward functions consume that
cache together with the upstream gradient and return exact analytic
gradients (no taped autodiff).  Random numbers come from a counter-based
splitmix64 stream so that identical seeds give identical draws on every
platform, with no dependence on process entropy or library version.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ContractError, DimensionError

_U64 = np.uint64
_MIX_MUL1 = _U64(0xBF58476D1CE4E5B9)
_MIX_MUL2 = _U64(0x94D049BB133111EB)
_GAMMA = _U64(0x9E3779B97F4A7C15)
_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO53 = float(1 << 53)


def _mix64(z: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer, elementwise on uint64 arrays."""
    z = (z ^ (z >> _U64(30))) * _MIX_MUL1
    z = (z ^ (z >> _U64(27))) * _MIX_MUL2
    return z ^ (z >> _U64(31))


class Rng:
    """Counter-based splitmix64 generator.

    The i-th raw 64-bit word of a stream is ``mix64(key + i * GAMMA)``
    where ``key = mix64(mix64(seed) ^ (stream + 1) * GAMMA)``.  Draws are
    therefore a pure function of (seed, stream, counter); each call
    advances the counter by the number of words it consumed.  Distinct
    stream ids give statistically independent sequences from one seed,
    which the corpus and trainer modules use to keep their draw order
    stable under unrelated code changes.
    """

    def __init__(self, seed: int, stream: int = 0, counter: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        with np.errstate(over="ignore"):
            k = _mix64(np.asarray(self.seed & _MASK64, dtype=_U64))
            tweak = (np.asarray((self.stream & _MASK64), dtype=_U64) + _U64(1)) * _GAMMA
            self._key = _mix64(k ^ tweak)
        self.counter = int(counter)

    def _raw(self, n: int) -> np.ndarray:
        idx = np.arange(self.counter + 1, self.counter + n + 1, dtype=_U64)
        with np.errstate(over="ignore"):
            words = _mix64(self._key + idx * _GAMMA)
        self.counter += n
        return words

    def state(self) -> tuple[int, int, int]:
        return (self.seed, self.stream, self.counter)

    @classmethod
    def from_state(cls, state: tuple[int, int, int]) -> "Rng":
        seed, stream, counter = state
        return cls(seed, stream, counter)

    def uniform(self, lo: float, hi: float, rows: int, cols: int) -> np.ndarray:
        """Deterministic uniform draws over [lo, hi), shaped (rows, cols)."""
        if not lo < hi:
            raise ArgumentError(f"uniform bounds require lo < hi, got [{lo}, {hi})")
        u = (self._raw(rows * cols) >> _U64(11)).astype(np.float64) / _TWO53
        return (lo + u * (hi - lo)).reshape(rows, cols)

    def standard_normal(self, rows: int, cols: int) -> np.ndarray:
        """Box-Muller normals; consumes exactly 2 words per entry."""
        n = rows * cols
        u1 = ((self._raw(n) >> _U64(11)).astype(np.float64) + 1.0) / _TWO53  # (0, 1]
        u2 = (self._raw(n) >> _U64(11)).astype(np.float64) / _TWO53
        z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
        return z.reshape(rows, cols)

    def permutation(self, n: int) -> np.ndarray:
        """Permutation of range(n) by stable argsort of n fresh words."""
        return np.argsort(self._raw(n), kind="stable")


def as_f64(a, name: str = "array") -> np.ndarray:
    """Coerce to a 2-D C-contiguous float64 array."""
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {out.shape}")
    return out


@dataclass
class AffineCache:
    x: np.ndarray
    w: np.ndarray


def affine_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray):
    """out = x @ w + b, with b broadcast over rows."""
    if x.shape[1] != w.shape[0]:
        raise DimensionError(
            f"affine_forward: x has {x.shape[1]} columns but w has {w.shape[0]} rows"
        )
    if b.shape != (1, w.shape[1]):
        raise DimensionError(
            f"affine_forward: b has shape {b.shape}, expected (1, {w.shape[1]})"
        )
    return x @ w + b, AffineCache(x=x, w=w)


def affine_backward(grad_out: np.ndarray, cache: AffineCache):
    """Exact gradients of the affine map: (d/dx, d/dw, d/db)."""
    if cache is None:
        raise ContractError("affine_backward called without a forward cache")
    expected = (cache.x.shape[0], cache.w.shape[1])
    if grad_out.shape != expected:
        raise ContractError(
            f"affine_backward: grad shape {grad_out.shape} does not match "
            f"forward output shape {expected}; stale cache?"
        )
    grad_x = grad_out @ cache.w.T
    grad_w = cache.x.T @ grad_out
    grad_b = grad_out.sum(axis=0, keepdims=True)
    return grad_x, grad_w, grad_b


def relu_forward(x: np.ndarray):
    return np.maximum(x, 0.0), x


def relu_backward(grad_out: np.ndarray, cache: np.ndarray) -> np.ndarray:
    if cache is None or grad_out.shape != cache.shape:
        raise ContractError("relu_backward: gradient does not match cached input")
    # subgradient at exactly 0 is defined as 0
    return grad_out * (cache > 0.0)


def softmax_rows(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax, stabilized by subtracting the row maximum."""
    if logits.shape[1] < 1:
        raise ArgumentError("softmax_rows requires at least one column")
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def rng_uniform(rng: Rng, lo: float, hi: float, rows: int, cols: int) -> np.ndarray:
    """Free-function spelling of Rng.uniform."""
    return rng.uniform(lo, hi, rows, cols)
