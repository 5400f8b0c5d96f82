"""Kernel evaluation, kernel density estimation, and the hill-climbing step.

All operations are pure functions of immutable inputs and safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Dataset,
    DimensionMismatchError,
    InvalidParamsError,
    KernelFamily,
    NonPositiveBandwidthError,
)

__all__ = ["KernelParams", "kernel_eval", "density", "climb_step"]

# smallest positive normal float64; weight sums below this are treated as
# underflow (all kernel values subnormal) rather than divided through
_TINY = float(np.finfo(np.float64).tiny)


@dataclass(frozen=True)
class KernelParams:
    """Bandwidth, data dimension, and kernel family for one clustering run."""

    h: float
    dim: int
    family: KernelFamily = KernelFamily.DIM_SCALED

    def __post_init__(self):
        if not self.h > 0:
            raise NonPositiveBandwidthError(f"bandwidth must be > 0, got {self.h}")
        if self.dim < 1:
            raise InvalidParamsError(f"dim must be >= 1, got {self.dim}")
        if not isinstance(self.family, KernelFamily):
            object.__setattr__(self, "family", KernelFamily(self.family))


def _check_dim(x: np.ndarray, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (dim,):
        raise DimensionMismatchError(f"expected a point of dimension {dim}, got shape {x.shape}")
    return x


def _weights(x: np.ndarray, pts: np.ndarray, kp: KernelParams) -> np.ndarray:
    """Kernel value of ``x`` against every row of ``pts``."""
    sq = np.sum((pts - x) ** 2, axis=1)
    if kp.family is KernelFamily.DIM_SCALED:
        return np.exp(-sq * kp.h ** (-kp.dim))
    return np.exp(-sq / (2.0 * kp.h * kp.h))


def kernel_eval(x, p, kp: KernelParams) -> float:
    """Evaluate the kernel between two points.

    Returns a value in (0, 1], equal to 1 exactly when ``x == p`` and
    strictly decreasing in ``||x - p||``.
    """
    x = _check_dim(x, kp.dim)
    p = _check_dim(p, kp.dim)
    sq = float(np.sum((x - p) ** 2))
    if kp.family is KernelFamily.DIM_SCALED:
        return float(np.exp(-sq * kp.h ** (-kp.dim)))
    return float(np.exp(-sq / (2.0 * kp.h * kp.h)))


def density(x, ds: Dataset, kp: KernelParams) -> float:
    """Kernel density estimate at ``x``: the mean kernel value over the dataset.

    Normalising by 1/n does not move the local maxima and keeps outlier
    thresholds comparable across dataset sizes.
    """
    x = _check_dim(x, kp.dim)
    if ds.dim != kp.dim:
        raise DimensionMismatchError(f"dataset dim {ds.dim} != kernel dim {kp.dim}")
    return float(np.mean(_weights(x, ds.points, kp)))


def _shift(x: np.ndarray, pts: np.ndarray, kp: KernelParams) -> tuple[np.ndarray, float]:
    """One kernel-weighted mean step; returns (new position, weight sum).

    A weight sum below the smallest normal float signals that every kernel
    value underflowed; callers must treat that as a stalled climb instead of
    dividing by (near-)zero.
    """
    w = _weights(x, pts, kp)
    total = float(w.sum())
    if total < _TINY:
        return x.copy(), total
    return (w @ pts) / total, total


def climb_step(x, ds: Dataset, kp: KernelParams) -> np.ndarray:
    """One fixed-point hill-climbing step: the kernel-weighted mean of the data.

    The result lies in the convex hull of the dataset.  If every kernel
    value underflows to subnormal, ``x`` is returned unchanged (the caller's
    climb is stalled; there is no usable ascent direction).
    """
    x = _check_dim(x, kp.dim)
    if ds.dim != kp.dim:
        raise DimensionMismatchError(f"dataset dim {ds.dim} != kernel dim {kp.dim}")
    new_x, _ = _shift(x, ds.points, kp)
    return new_x
