"""Shared domain types, configuration, and input validation.

Conventions used across the package:

* a point is a 1-D float64 array of length ``dim``;
* a dataset is an immutable ``(n, dim)`` float64 matrix whose row order is
  the load order and never changes;
* cluster labels are integers, ``-1`` marks an outlier, ids ``>= 0`` are
  assigned contiguously in order of first appearance over the row index;
* all randomness flows from a single 64-bit seed owned by :class:`Config`
  (``numpy.random.default_rng``); nothing touches the global RNG state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields

import numpy as np

__all__ = [
    "DenclueError",
    "EmptyInputError",
    "RaggedRowsError",
    "NonFiniteError",
    "DimensionMismatchError",
    "InvalidParamsError",
    "NonPositiveBandwidthError",
    "KernelFamily",
    "Dataset",
    "Config",
    "validate_dataset",
    "canonicalize_labels",
]


class DenclueError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInputError(DenclueError):
    """Raised when the input contains no rows (or rows of width zero)."""


class RaggedRowsError(DenclueError):
    """Raised when input rows do not all share the same length."""


class NonFiniteError(DenclueError):
    """Raised when a NaN or infinity appears where a finite float is required."""


class DimensionMismatchError(DenclueError):
    """Raised when point dimensions disagree with the expected dimension."""


class InvalidParamsError(DenclueError):
    """Raised for out-of-range generator or configuration parameters."""


class NonPositiveBandwidthError(DenclueError):
    """Raised when a bandwidth value is zero or negative."""


class KernelFamily(str, enum.Enum):
    """Available Gaussian kernel variants.

    ``DIM_SCALED`` (flag value ``"paper"``) uses ``exp(-d^2 * h**(-dim))``:
    the bandwidth exponent is the data dimension, matching the form the
    bandwidth selector's update rule differentiates.  ``STANDARD`` is the
    classic ``exp(-d^2 / (2 h^2))``, which carries the usual monotone
    hill-climbing guarantee.
    """

    DIM_SCALED = "paper"
    STANDARD = "standard"


@dataclass(frozen=True)
class Dataset:
    """An immutable collection of ``n`` points of common dimension ``dim``.

    Do not construct directly; use :func:`validate_dataset`, which enforces
    the invariants (finite values, equal row lengths, n >= 1).
    """

    points: np.ndarray

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return self.n


def validate_dataset(raw) -> Dataset:
    """Validate a sequence of float rows and freeze it into a :class:`Dataset`.

    Total over its input domain: every input either yields a dataset
    satisfying all invariants or raises a typed error, never a partially
    constructed value.  Row order is preserved.

    Raises:
        EmptyInputError: no rows, or rows of width zero.
        RaggedRowsError: rows of unequal length.
        NonFiniteError: NaN or infinity in any coordinate.
    """
    if isinstance(raw, np.ndarray):
        if raw.ndim != 2:
            raise RaggedRowsError(
                f"expected a 2-D array of rows, got ndim={raw.ndim}"
            )
        rows = raw
    else:
        rows = list(raw)
        if len(rows) == 0:
            raise EmptyInputError("dataset needs at least one row")
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise RaggedRowsError(f"rows have differing lengths: {sorted(lengths)}")
        rows = np.asarray(rows, dtype=np.float64)

    if rows.shape[0] == 0:
        raise EmptyInputError("dataset needs at least one row")
    if rows.shape[1] == 0:
        raise EmptyInputError("rows must have at least one coordinate")

    pts = np.array(rows, dtype=np.float64, copy=True)
    if not np.isfinite(pts).all():
        bad = np.argwhere(~np.isfinite(pts))[0]
        raise NonFiniteError(
            f"non-finite value at row {bad[0]}, column {bad[1]}"
        )
    pts.setflags(write=False)
    return Dataset(points=pts)


@dataclass(frozen=True)
class Config:
    """Pipeline configuration: selector, hill-climb, merge, and outlier knobs.

    ``fixed_h`` bypasses bandwidth selection entirely when set (useful for
    ablations against the SGD-selected value).  ``h`` is clamped to
    ``[h_min, h_max]`` after every selector step because the update rule
    contains ``h**-(dim+1)`` and ``exp(-t0 * h**-dim)``; an unclamped h can
    collapse to 0 or overflow.
    """

    eta: float = 3e-3
    h0: float = 1.0
    sgd_steps: int = 5000
    seed: int = 0
    conv_tol: float = 1e-6
    max_climb_iters: int = 200
    merge_tol: float = 1e-2
    outlier_threshold: float = 1e-3
    kernel_family: KernelFamily = KernelFamily.DIM_SCALED
    h_min: float = 1e-4
    h_max: float = 1e4
    fixed_h: float | None = None

    def __post_init__(self):
        if not self.eta > 0:
            raise InvalidParamsError(f"eta must be > 0, got {self.eta}")
        if not (0 < self.h_min < self.h0 < self.h_max):
            raise InvalidParamsError(
                f"need 0 < h_min < h0 < h_max, got "
                f"{self.h_min}, {self.h0}, {self.h_max}"
            )
        if self.sgd_steps < 0:
            raise InvalidParamsError(f"sgd_steps must be >= 0, got {self.sgd_steps}")
        if not (0 <= self.seed < 2**64):
            raise InvalidParamsError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if not self.conv_tol > 0:
            raise InvalidParamsError(f"conv_tol must be > 0, got {self.conv_tol}")
        if self.max_climb_iters < 1:
            raise InvalidParamsError(
                f"max_climb_iters must be >= 1, got {self.max_climb_iters}"
            )
        if not self.merge_tol > 0:
            raise InvalidParamsError(f"merge_tol must be > 0, got {self.merge_tol}")
        if self.outlier_threshold < 0:
            raise InvalidParamsError(
                f"outlier_threshold must be >= 0, got {self.outlier_threshold}"
            )
        if self.fixed_h is not None and not self.fixed_h > 0:
            raise NonPositiveBandwidthError(
                f"fixed_h must be > 0 when set, got {self.fixed_h}"
            )
        # accept the plain flag strings "paper" / "standard" as well
        if not isinstance(self.kernel_family, KernelFamily):
            object.__setattr__(self, "kernel_family", KernelFamily(self.kernel_family))

    def rng(self) -> np.random.Generator:
        """Fresh deterministic generator seeded with this config's seed."""
        return np.random.default_rng(self.seed)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = v.value if isinstance(v, KernelFamily) else v
        return out


def canonicalize_labels(labels) -> np.ndarray:
    """Renumber cluster ids by first appearance over the point index.

    ``-1`` (outlier) is preserved; ids >= 0 come out as a contiguous range
    ``0..K-1``.  Idempotent, and co-membership is unchanged.
    """
    labels = np.asarray(labels, dtype=np.int64)
    mapping: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        lab = int(lab)
        if lab < 0:
            out[i] = -1
            continue
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out
