"""Finite pointed metric spaces and countable distance-oracle families.

All catalog arithmetic is exact (`fractions.Fraction`).  A float path with a
small tolerance exists only for custom file input whose entries are not
rational; such spaces are flagged ``approximate``.

Conventions:

* a ``FiniteMetricSpace`` has points labelled ``0..n-1`` with base point 0;
* a ``MetricFamily`` is an oracle over 1-based indices ``x_1, x_2, ...``;
  truncating at N relabels ``x_1 -> 0, ..., x_N -> N-1`` so the base point
  of the truncation is the family's first point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import (
    Asymmetric,
    InvalidFamilyParameters,
    NegativeOrZeroOffDiagonal,
    TriangleViolation,
)

Rational = Fraction

FLOAT_TOLERANCE = Fraction(1, 10**9)


def as_fraction(value) -> Fraction:
    """Coerce ints, 'p/q' strings, Fractions and floats to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)  # exact binary value of the float
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fraction_str(value: Fraction) -> str:
    """Canonical 'p/q' (or 'p') encoding used in all JSON output."""
    return str(Fraction(value))


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Validated pointed metric on n points; base point is index 0."""

    dist: tuple[tuple[Fraction, ...], ...]
    approximate: bool = False

    @property
    def n(self) -> int:
        return len(self.dist)

    def rho(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def points(self) -> range:
        return range(self.n)


def validate_metric(dist, tolerance: Optional[float] = None) -> FiniteMetricSpace:
    """Check the metric axioms and return the validated space.

    Raises the first violated axiom with its witness indices, scanning
    symmetry row-major, then diagonal/positivity, then triples in
    lexicographic order (i, j, k) testing dist[i][k] <= dist[i][j] + dist[j][k].

    With ``tolerance`` set (custom float input), comparisons allow that much
    slack and the result is flagged approximate; entries are still stored as
    exact fractions of the given values, symmetrised from the upper triangle.
    """
    n = len(dist)
    if n == 0 or any(len(row) != n for row in dist):
        raise InvalidFamilyParameters("distance matrix must be square and nonempty")
    mat = [[as_fraction(v) for v in row] for row in dist]
    tol = Fraction(tolerance) if tolerance is not None else Fraction(0)

    for i in range(n):
        for j in range(i + 1, n):
            if abs(mat[i][j] - mat[j][i]) > tol:
                raise Asymmetric(i, j)
            mat[j][i] = mat[i][j]
    for i in range(n):
        if abs(mat[i][i]) > tol:
            raise NegativeOrZeroOffDiagonal(i, i)
        mat[i][i] = Fraction(0)
        for j in range(n):
            if i != j and mat[i][j] <= tol:
                raise NegativeOrZeroOffDiagonal(i, j)
    for i in range(n):
        row_i = mat[i]
        for j in range(n):
            if j == i:
                continue
            d_ij = row_i[j]
            row_j = mat[j]
            for k in range(n):
                if k == i or k == j:
                    continue
                if row_i[k] > d_ij + row_j[k] + tol:
                    raise TriangleViolation(i, j, k)

    return FiniteMetricSpace(
        dist=tuple(tuple(row) for row in mat),
        approximate=tolerance is not None,
    )


@dataclass(frozen=True)
class MetricFamily:
    """A countable pointed metric space given by a closed-form oracle.

    ``distance(i, j)`` is defined for 1-based indices.  Optional metadata
    carries the limit data the embedding constructions need; absent metadata
    forces finite-horizon estimation or an explicit error downstream.
    """

    family_id: str
    label: str
    oracle: Callable[[int, int], Fraction]  # called with i < j only
    params: tuple = ()
    size: Optional[int] = None  # None means infinite
    d_k: Optional[Callable[[int], Fraction]] = None  # k -> lim_n rho(x_k, x_n)
    d_limit: Optional[Fraction] = None  # lim_k d_k
    bounded: Optional[bool] = None
    uniformly_separated: Optional[bool] = None
    converges_to_base: bool = False  # rho(x_n, x_1) -> 0
    delta_unbounded: bool = False  # pairing (2t, 2t+1) has delta_t -> infinity
    ultrametric: bool = False
    # smallest index i >= lo with rho(i, center) > radius, or None
    first_index_beyond: Optional[Callable[[int, Fraction, int], Optional[int]]] = None

    def distance(self, i: int, j: int) -> Fraction:
        if i < 1 or j < 1:
            raise InvalidFamilyParameters("family indices are 1-based")
        if self.size is not None and (i > self.size or j > self.size):
            raise InvalidFamilyParameters(
                f"family {self.label} has only {self.size} points"
            )
        if i == j:
            return Fraction(0)
        if i > j:
            i, j = j, i
        return self.oracle(i, j)


def truncate(family: MetricFamily, N: int) -> FiniteMetricSpace:
    """Finite space on the family points x_1..x_N, base point x_1 relabelled 0."""
    if N < 1:
        raise InvalidFamilyParameters("truncation size must be >= 1")
    if family.size is not None and N > family.size:
        raise InvalidFamilyParameters(
            f"family {family.label} has only {family.size} points"
        )
    mat = [[family.distance(i + 1, j + 1) for j in range(N)] for i in range(N)]
    return validate_metric(mat)


def is_ultrametric(space: FiniteMetricSpace):
    """Strong triangle inequality check.

    Returns ``(True, None)`` or ``(False, (x, y, z))`` for the first triple in
    lexicographic order with rho(x, y) > max(rho(x, z), rho(z, y)).
    """
    d = space.dist
    n = space.n
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            dxy = d[x][y]
            for z in range(n):
                if z == x or z == y:
                    continue
                if dxy > d[x][z] and dxy > d[z][y]:
                    return False, (x, y, z)
    return True, None


@dataclass(frozen=True)
class FreeElement:
    """Finitely supported vector sum a_i * delta_{x_i} (sparse, exact).

    The base point never appears in the support (delta_0 is the zero
    element); zero coefficients and duplicate indices are normalised away.
    """

    support: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def from_pairs(pairs) -> "FreeElement":
        acc: dict[int, Fraction] = {}
        for point, coef in pairs:
            point = int(point)
            if point < 0:
                raise ValueError("point indices must be nonnegative")
            c = as_fraction(coef)
            acc[point] = acc.get(point, Fraction(0)) + c
        support = tuple(
            (p, c) for p, c in sorted(acc.items()) if p != 0 and c != 0
        )
        return FreeElement(support=support)

    def coefficient(self, point: int) -> Fraction:
        for p, c in self.support:
            if p == point:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.support

    def scaled(self, factor) -> "FreeElement":
        f = as_fraction(factor)
        if f == 0:
            return FreeElement(support=())
        return FreeElement(support=tuple((p, c * f) for p, c in self.support))

    def plus(self, other: "FreeElement") -> "FreeElement":
        return FreeElement.from_pairs(list(self.support) + list(other.support))

    def check_supported(self, space: FiniteMetricSpace) -> None:
        for p, _ in self.support:
            if not 0 <= p < space.n:
                raise ValueError(f"support point {p} outside space of size {space.n}")


def delta(point: int) -> FreeElement:
    """The evaluation element delta_x (zero element when x is the base)."""
    return FreeElement.from_pairs([(point, 1)])


@dataclass(frozen=True)
class LipFunction:
    """Real values on the points of a finite space with value 0 at the base."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("a Lipschitz function needs at least the base point")
        if self.values[0] != 0:
            raise ValueError("Lipschitz functions must vanish at the base point")

    @staticmethod
    def from_values(values: Sequence) -> "LipFunction":
        return LipFunction(values=tuple(as_fraction(v) for v in values))

    def __call__(self, point: int) -> Fraction:
        return self.values[point]


# ---------------------------------------------------------------------------
# JSON codecs (external interfaces)
# ---------------------------------------------------------------------------


def load_space(source) -> FiniteMetricSpace:
    """Load a custom space from JSON: {"n": int, "dist": [[...]]}.

    Entries may be numbers or 'p/q' strings.  Non-integral float entries
    switch validation to the tolerant path and flag the space approximate.
    The matrix must be full, not triangular.
    """
    if isinstance(source, (str, bytes)):
        obj = json.loads(source)
    elif hasattr(source, "read"):
        obj = json.load(source)
    else:
        obj = source
    if not isinstance(obj, dict) or "dist" not in obj:
        raise InvalidFamilyParameters('custom space JSON needs a "dist" matrix')
    dist = obj["dist"]
    n = obj.get("n", len(dist))
    if n != len(dist):
        raise InvalidFamilyParameters('"n" does not match the matrix size')
    has_float = any(
        isinstance(v, float) and not float(v).is_integer() for row in dist for v in row
    )
    tolerance = float(FLOAT_TOLERANCE) if has_float else None
    return validate_metric(dist, tolerance=tolerance)


def free_element_to_json(element: FreeElement) -> list:
    return [{"point": p, "coef": fraction_str(c)} for p, c in element.support]


def free_element_from_json(source) -> FreeElement:
    obj = json.loads(source) if isinstance(source, (str, bytes)) else source
    if not isinstance(obj, list):
        raise ValueError("free element JSON must be a list of {point, coef}")
    return FreeElement.from_pairs((item["point"], item["coef"]) for item in obj)
