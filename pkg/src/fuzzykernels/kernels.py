"""The four kernel families on fuzzy sets, plus the base kernels they build on.

Families
--------
cross_product
    Sum over all support pairs of ``k1(point_a, point_b) * k2(deg_a, deg_b)``,
    where ``k1`` compares ground-space elements and ``k2`` compares degrees.
weighted_cross_product
    Same double sum with a non-negative per-point measure weight on each
    factor; with unit weights it reduces to the plain cross product.
intersection
    Cell-aggregated T-norm overlap: for every partition cell contained in
    both supports, sum the pointwise T-norm values and weight by the cell
    measure rho(A).
nonsingleton / nonsingleton_gaussian
    Height of the T-norm intersection (an exact max over the finite ground
    space).  For pairs of Gaussian fuzzy sets under the product T-norm the
    supremum has the closed form
    ``prod_d exp(-(m_d - m'_d)^2 / (2 (sigma_d^2 + sigma'_d^2)))``.
distance_inner / distance_poly / distance_gaussian
    Distance substitution kernels built from a metric between fuzzy sets,
    by default the ratio metric ``sum|X-Y| / sum(X+Y)``.

Kernel values are accumulated in a fixed order (ascending index, ascending
pair order) so repeated evaluations are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist

from .errors import ValidationError
from .sets import DiscreteFuzzySet, GaussianFuzzySet, GroundSpace, Partition, _check_same_ground
from .tnorms import TNorm, apply as tnorm_apply

__all__ = [
    "LinearKernel",
    "RBFKernel",
    "PolynomialKernel",
    "BaseKernel",
    "base_eval",
    "base_kernel_from_config",
    "cross_product_kernel",
    "weighted_cross_product_kernel",
    "intersection_kernel",
    "nonsingleton_kernel",
    "nonsingleton_gaussian_kernel",
    "ratio_distance",
    "distance_inner",
    "distance_polynomial_kernel",
    "distance_gaussian_kernel",
    "FuzzyKernelSpec",
    "evaluate",
    "spec_from_config",
]


# ---------------------------------------------------------------------------
# Base kernels on ground elements and on degrees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearKernel:
    """k(u, v) = <u, v>"""

    def __call__(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.dot(u, v))

    def pairwise(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        return U @ V.T


@dataclass(frozen=True)
class RBFKernel:
    """k(u, v) = exp(-gamma ||u - v||^2)"""

    gamma: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("rbf gamma must be > 0")

    def __call__(self, u: np.ndarray, v: np.ndarray) -> float:
        diff = np.asarray(u, dtype=float) - np.asarray(v, dtype=float)
        return float(np.exp(-self.gamma * np.dot(diff, diff)))

    def pairwise(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        return np.exp(-self.gamma * cdist(U, V, "sqeuclidean"))


@dataclass(frozen=True)
class PolynomialKernel:
    """k(u, v) = (coef0 + gamma <u, v>)^degree"""

    coef0: float = 0.0
    gamma: float = 1.0
    degree: int = 2

    def __post_init__(self):
        if self.coef0 < 0:
            raise ValueError("polynomial coef0 must be >= 0")
        if not self.gamma > 0:
            raise ValueError("polynomial gamma must be > 0")
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValueError("polynomial degree must be an integer >= 1")

    def __call__(self, u: np.ndarray, v: np.ndarray) -> float:
        return float((self.coef0 + self.gamma * np.dot(u, v)) ** self.degree)

    def pairwise(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        return (self.coef0 + self.gamma * (U @ V.T)) ** self.degree


BaseKernel = Union[LinearKernel, RBFKernel, PolynomialKernel]


def base_eval(k: BaseKernel, u, v) -> float:
    """Evaluate a base kernel on two equal-dimension vectors (or scalars)."""
    uv = np.atleast_1d(np.asarray(u, dtype=float))
    vv = np.atleast_1d(np.asarray(v, dtype=float))
    if uv.shape != vv.shape:
        raise ValueError(f"dimension mismatch: {uv.shape} vs {vv.shape}")
    return k(uv, vv)


def base_kernel_from_config(cfg: Mapping) -> BaseKernel:
    """Build a base kernel from ``{"kind": ..., params...}``."""
    if not isinstance(cfg, Mapping) or "kind" not in cfg:
        raise ValidationError(f"base kernel config needs a 'kind' key, got {cfg!r}")
    kind = str(cfg["kind"]).lower()
    try:
        if kind == "linear":
            return LinearKernel()
        if kind == "rbf":
            return RBFKernel(gamma=float(cfg.get("gamma", 1.0)))
        if kind == "polynomial":
            return PolynomialKernel(
                coef0=float(cfg.get("coef0", 0.0)),
                gamma=float(cfg.get("gamma", 1.0)),
                degree=int(cfg.get("degree", 2)),
            )
    except ValueError as exc:
        raise ValidationError(f"bad base kernel config {cfg!r}: {exc}") from exc
    raise ValidationError(f"unknown base kernel kind {cfg['kind']!r}")


# ---------------------------------------------------------------------------
# Cross product kernels
# ---------------------------------------------------------------------------

def _sorted_support(fs: DiscreteFuzzySet) -> tuple[list[int], np.ndarray]:
    idxs = sorted(fs.support)
    degs = np.array([fs.degrees[i] for i in idxs], dtype=float)
    return idxs, degs


def cross_product_kernel(
    x: DiscreteFuzzySet, y: DiscreteFuzzySet, k1: BaseKernel, k2: BaseKernel
) -> float:
    """Sum of ``k1(points) * k2(degrees)`` over all pairs of support elements."""
    _check_same_ground(x, y)
    ix, dx = _sorted_support(x)
    iy, dy = _sorted_support(y)
    if not ix or not iy:
        return 0.0
    pts = x.ground.points
    kmat = k1.pairwise(pts[ix], pts[iy]) * k2.pairwise(dx[:, None], dy[:, None])
    return float(kmat.sum())


def weighted_cross_product_kernel(
    x: DiscreteFuzzySet,
    y: DiscreteFuzzySet,
    k1: BaseKernel,
    k2: BaseKernel,
    weights: Sequence[float] | np.ndarray,
) -> float:
    """Cross product kernel under a per-point measure: each term picks up w(a)w(b).

    Unit weights recover :func:`cross_product_kernel`; probability weights give
    the reading where ground elements are drawn at random.
    """
    _check_same_ground(x, y)
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(x.ground),):
        raise ValueError(
            f"need one weight per ground point ({len(x.ground)}), got shape {w.shape}"
        )
    if not np.isfinite(w).all() or (w < 0).any():
        raise ValueError("weights must be finite and non-negative")
    ix, dx = _sorted_support(x)
    iy, dy = _sorted_support(y)
    if not ix or not iy:
        return 0.0
    pts = x.ground.points
    kmat = k1.pairwise(pts[ix], pts[iy]) * k2.pairwise(dx[:, None], dy[:, None])
    kmat = kmat * np.outer(w[ix], w[iy])
    return float(kmat.sum())


# ---------------------------------------------------------------------------
# Intersection kernel
# ---------------------------------------------------------------------------

def intersection_kernel(
    x: DiscreteFuzzySet, y: DiscreteFuzzySet, t: TNorm, p: Partition
) -> float:
    """Measure-weighted T-norm overlap aggregated over partition cells.

    Only cells entirely contained in *both* supports contribute; a cell only
    partially covered by either support contributes nothing.
    """
    _check_same_ground(x, y)
    if p.size != len(x.ground):
        raise ValueError("partition does not belong to the fuzzy sets' ground space")
    sx = x.support
    sy = y.support
    total = 0.0
    for cell, rho in zip(p.cells, p.measures):
        if all(i in sx for i in cell) and all(i in sy for i in cell):
            cell_sum = 0.0
            for i in cell:
                cell_sum += tnorm_apply(t, x.degrees[i], y.degrees[i])
            total += cell_sum * float(rho)
    return total


# ---------------------------------------------------------------------------
# Non-singleton kernels
# ---------------------------------------------------------------------------

def nonsingleton_kernel(x: DiscreteFuzzySet, y: DiscreteFuzzySet, t: TNorm) -> float:
    """Height of the T-norm intersection: max over indices of T(x(i), y(i)).

    T(a, 0) = 0 for every T-norm, so only the common support matters and
    disjoint supports give 0.
    """
    _check_same_ground(x, y)
    best = 0.0
    for idx in sorted(x.support & y.support):
        v = tnorm_apply(t, x.degrees[idx], y.degrees[idx])
        if v > best:
            best = v
    return best


def nonsingleton_gaussian_kernel(x: GaussianFuzzySet, y: GaussianFuzzySet) -> float:
    """Closed form of the product-T-norm supremum for Gaussian memberships.

    Returns ``prod_d exp(-(m_d - m'_d)^2 / (2 (sigma_d^2 + sigma'_d^2)))``,
    which is 1 exactly when the mean vectors coincide.
    """
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    dm = x.means - y.means
    var = x.widths**2 + y.widths**2
    return float(np.exp(-0.5 * float(np.sum(dm * dm / var))))


# ---------------------------------------------------------------------------
# Distance-based kernels
# ---------------------------------------------------------------------------

Metric = Callable[[DiscreteFuzzySet, DiscreteFuzzySet], float]


def ratio_distance(x: DiscreteFuzzySet, y: DiscreteFuzzySet) -> float:
    """Ratio metric ``sum |X - Y| / sum (X + Y)`` over the union of supports.

    Ranges over [0, 1]: 0 iff the membership functions agree, 1 iff the
    supports are disjoint.  Undefined (raises) when both sets are empty.
    """
    _check_same_ground(x, y)
    union = sorted(x.support | y.support)
    if not union:
        raise ValueError("ratio distance is undefined for two empty fuzzy sets (0/0)")
    num = 0.0
    den = 0.0
    for idx in union:
        a = x.degrees.get(idx, 0.0)
        b = y.degrees.get(idx, 0.0)
        num += abs(a - b)
        den += a + b
    return num / den


def distance_inner(
    x: DiscreteFuzzySet, y: DiscreteFuzzySet, x0: DiscreteFuzzySet, d: Metric = ratio_distance
) -> float:
    """Inner product induced by a metric and a reference point:
    ``(d(x,x0)^2 + d(y,x0)^2 - d(x,y)^2) / 2``."""
    return 0.5 * (d(x, x0) ** 2 + d(y, x0) ** 2 - d(x, y) ** 2)


def distance_polynomial_kernel(
    x: DiscreteFuzzySet,
    y: DiscreteFuzzySet,
    x0: DiscreteFuzzySet,
    d: Metric = ratio_distance,
    coef0: float = 0.0,
    gamma: float = 1.0,
    degree: int = 1,
) -> float:
    """Polynomial kernel over the metric-induced inner product."""
    if coef0 < 0 or not gamma > 0 or int(degree) != degree or degree < 1:
        raise ValueError("need coef0 >= 0, gamma > 0 and integer degree >= 1")
    return float((coef0 + gamma * distance_inner(x, y, x0, d)) ** degree)


def distance_gaussian_kernel(
    x: DiscreteFuzzySet, y: DiscreteFuzzySet, d: Metric = ratio_distance, gamma: float = 1.0
) -> float:
    """Gaussian kernel over a metric: ``exp(-gamma d(x, y)^2)``."""
    if not gamma > 0:
        raise ValueError("gamma must be > 0")
    return math.exp(-gamma * d(x, y) ** 2)


# ---------------------------------------------------------------------------
# Kernel specs: declarative configuration and uniform dispatch
# ---------------------------------------------------------------------------

FuzzyDatum = Union[DiscreteFuzzySet, GaussianFuzzySet]
Record = Union[FuzzyDatum, tuple]

_FAMILIES = (
    "cross_product",
    "weighted_cross_product",
    "intersection",
    "nonsingleton",
    "nonsingleton_gaussian",
    "distance_inner",
    "distance_poly",
    "distance_gaussian",
)


@dataclass(frozen=True)
class FuzzyKernelSpec:
    """Declarative description of a kernel on fuzzy sets.

    Which fields matter depends on ``family``:

    * cross_product / weighted_cross_product: ``k1``, ``k2`` (both default to
      linear), plus ``weights`` for the weighted variant;
    * intersection / nonsingleton: ``tnorm``;
    * nonsingleton_gaussian: no parameters;
    * distance_inner / distance_poly: ``metric`` and ``reference`` (the
      ratio metric is undefined at the empty pair, so the reference must be
      supplied); distance_poly adds ``coef0``, ``gamma``, ``degree``;
    * distance_gaussian: ``metric`` and ``gamma`` (> 0).
    """

    family: str
    k1: BaseKernel | None = None
    k2: BaseKernel | None = None
    tnorm: TNorm | None = None
    weights: tuple[float, ...] | None = None
    metric: Union[str, Metric] = "ratio"
    reference: tuple[DiscreteFuzzySet, ...] | None = None
    coef0: float = 0.0
    gamma: float = 1.0
    degree: int = 1

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValidationError(
                f"unknown kernel family {self.family!r}; expected one of {', '.join(_FAMILIES)}"
            )
        if self.family in ("cross_product", "weighted_cross_product"):
            if self.k1 is None:
                object.__setattr__(self, "k1", LinearKernel())
            if self.k2 is None:
                object.__setattr__(self, "k2", LinearKernel())
        if self.family == "weighted_cross_product":
            if self.weights is None:
                raise ValidationError("weighted_cross_product needs per-point weights")
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
            if any(w < 0 or not np.isfinite(w) for w in self.weights):
                raise ValidationError("weights must be finite and non-negative")
        if self.family in ("intersection", "nonsingleton") and self.tnorm is None:
            raise ValidationError(f"{self.family} needs a T-norm")
        if self.family in ("distance_inner", "distance_poly"):
            if self.reference is None:
                raise ValidationError(f"{self.family} needs a reference fuzzy set")
            if isinstance(self.reference, DiscreteFuzzySet):
                object.__setattr__(self, "reference", (self.reference,))
            else:
                object.__setattr__(self, "reference", tuple(self.reference))
        if self.family == "distance_poly":
            if self.coef0 < 0 or not self.gamma > 0 or int(self.degree) != self.degree or self.degree < 1:
                raise ValidationError("distance_poly needs coef0 >= 0, gamma > 0, integer degree >= 1")
        if self.family == "distance_gaussian" and not self.gamma > 0:
            raise ValidationError("distance_gaussian needs gamma > 0")
        if isinstance(self.metric, str) and self.metric != "ratio":
            raise ValidationError(f"unknown metric {self.metric!r}; only 'ratio' is built in")

    @property
    def metric_fn(self) -> Metric:
        return ratio_distance if isinstance(self.metric, str) else self.metric


def _as_record(datum: Record) -> tuple[FuzzyDatum, ...]:
    if isinstance(datum, (DiscreteFuzzySet, GaussianFuzzySet)):
        return (datum,)
    return tuple(datum)


def _want(spec: FuzzyKernelSpec, attr: FuzzyDatum, kind: type) -> None:
    if not isinstance(attr, kind):
        raise ValidationError(
            f"kernel family {spec.family!r} needs {kind.__name__} attributes, "
            f"got {type(attr).__name__}"
        )


def _evaluate_attr(spec: FuzzyKernelSpec, x: FuzzyDatum, y: FuzzyDatum, slot: int) -> float:
    fam = spec.family
    if fam == "nonsingleton_gaussian":
        _want(spec, x, GaussianFuzzySet)
        _want(spec, y, GaussianFuzzySet)
        return nonsingleton_gaussian_kernel(x, y)
    _want(spec, x, DiscreteFuzzySet)
    _want(spec, y, DiscreteFuzzySet)
    if fam == "cross_product":
        return cross_product_kernel(x, y, spec.k1, spec.k2)
    if fam == "weighted_cross_product":
        return weighted_cross_product_kernel(x, y, spec.k1, spec.k2, spec.weights)
    if fam == "intersection":
        p = x.ground.partition
        if p is None:
            raise ValidationError("intersection kernel needs a partition on the ground space")
        return intersection_kernel(x, y, spec.tnorm, p)
    if fam == "nonsingleton":
        return nonsingleton_kernel(x, y, spec.tnorm)
    if fam == "distance_gaussian":
        return distance_gaussian_kernel(x, y, spec.metric_fn, spec.gamma)
    # distance_inner / distance_poly need the per-attribute reference
    if len(spec.reference) == 1:
        ref = spec.reference[0]
    elif slot < len(spec.reference):
        ref = spec.reference[slot]
    else:
        raise ValidationError(
            f"reference has {len(spec.reference)} attributes but records have more"
        )
    if fam == "distance_inner":
        return distance_inner(x, y, ref, spec.metric_fn)
    return distance_polynomial_kernel(
        x, y, ref, spec.metric_fn, spec.coef0, spec.gamma, spec.degree
    )


def evaluate(spec: FuzzyKernelSpec, x: Record, y: Record) -> float:
    """Evaluate the configured kernel on two fuzzy data.

    A datum is either a single fuzzy set or a tuple of them (a multi-attribute
    record); records combine per-attribute kernel values by product.
    """
    xs = _as_record(x)
    ys = _as_record(y)
    if len(xs) != len(ys):
        raise ValidationError(f"records have different arity: {len(xs)} vs {len(ys)}")
    if not xs:
        raise ValidationError("empty record")
    total = 1.0
    for slot, (xa, ya) in enumerate(zip(xs, ys)):
        total *= _evaluate_attr(spec, xa, ya, slot)
    return total


def spec_from_config(cfg: Mapping, ground: GroundSpace | None = None) -> FuzzyKernelSpec:
    """Build a :class:`FuzzyKernelSpec` from a plain config mapping.

    ``ground`` is needed to resolve discrete reference fuzzy sets for the
    distance families.
    """
    if not isinstance(cfg, Mapping) or "family" not in cfg:
        raise ValidationError("kernel config needs a 'family' key")
    fam = str(cfg["family"]).lower()
    kwargs: dict = {"family": fam}
    if "k1" in cfg:
        kwargs["k1"] = base_kernel_from_config(cfg["k1"])
    if "k2" in cfg:
        kwargs["k2"] = base_kernel_from_config(cfg["k2"])
    if "tnorm" in cfg:
        try:
            kwargs["tnorm"] = TNorm.from_name(cfg["tnorm"])
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
    if "weights" in cfg:
        kwargs["weights"] = tuple(float(w) for w in cfg["weights"])
    if "metric" in cfg:
        kwargs["metric"] = str(cfg["metric"])
    for key in ("coef0", "gamma"):
        if key in cfg:
            kwargs[key] = float(cfg[key])
    if "degree" in cfg:
        kwargs["degree"] = int(cfg["degree"])
    if "reference" in cfg:
        if ground is None:
            raise ValidationError("a ground space is required to resolve the reference fuzzy set")
        refs = cfg["reference"]
        if isinstance(refs, Mapping):
            refs = [refs]
        resolved = []
        for k, ref in enumerate(refs):
            if not isinstance(ref, Mapping) or ref.get("type") != "discrete":
                raise ValidationError(f"reference[{k}] must be a discrete attribute object")
            try:
                resolved.append(
                    DiscreteFuzzySet(ground, {int(i): float(d) for i, d in ref["degrees"].items()})
                )
            except (KeyError, ValueError) as exc:
                raise ValidationError(f"reference[{k}]: {exc}") from exc
        kwargs["reference"] = tuple(resolved)
    return FuzzyKernelSpec(**kwargs)
