"""Correlation polytopes: truth-table vertices, facet enumeration, facet checks.

Vertices are the 0/1 truth-table rows of single events together with the
products for the selected joint events.  The convex hull of those vertices is
the correlation polytope; its facets are Bell-type inequalities.  Facet
enumeration runs the double description (Motzkin) method over exact integer
arithmetic, so there are no tolerances anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import BudgetError, InputError

TermKey = Union[int, tuple[int, int]]
Vertex = tuple[int, ...]

MAX_SINGLE_EVENTS = 20
MAX_HULL_DIMENSION = 16
MAX_HULL_VERTICES = 128


@dataclass(frozen=True)
class EventStructure:
    """Event layout: single events, their observer sides and joint pairs."""

    n_single: int
    sides: tuple[tuple[int, ...], ...]
    joints: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_single < 1:
            raise InputError("need at least one single event")
        seen = [i for side in self.sides for i in side]
        if sorted(seen) != list(range(1, self.n_single + 1)):
            raise InputError("sides must partition events 1..n_single")
        side_of = self.side_of_event()
        if len(set(self.joints)) != len(self.joints):
            raise InputError("duplicate joint terms")
        for (i, j) in self.joints:
            if not (1 <= i <= self.n_single and 1 <= j <= self.n_single):
                raise InputError(f"joint ({i},{j}) out of range")
            if side_of[i] == side_of[j]:
                raise InputError(f"joint ({i},{j}) pairs events on the same side")

    def side_of_event(self) -> dict[int, int]:
        return {i: s for s, side in enumerate(self.sides) for i in side}

    def term_order(self) -> list[TermKey]:
        """Coordinate order: single events ascending, then joints as stored."""
        return list(range(1, self.n_single + 1)) + list(self.joints)

    @property
    def dimension(self) -> int:
        return self.n_single + len(self.joints)

    def to_json(self) -> dict:
        return {
            "n_single": self.n_single,
            "sides": [list(s) for s in self.sides],
            "joints": [list(j) for j in self.joints],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EventStructure":
        try:
            return cls(
                n_single=int(obj["n_single"]),
                sides=tuple(tuple(int(i) for i in s) for s in obj["sides"]),
                joints=tuple((int(i), int(j)) for i, j in obj["joints"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad structure JSON: {exc}") from exc


def _to_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass
class Inequality:
    """Linear form on (joint) probabilities with classical lower/upper bounds.

    ``coeffs`` maps a single-event index or an ``(i, j)`` joint pair to a
    rational coefficient.  ``lower``/``upper`` of ``None`` mean unbounded.
    """

    coeffs: dict[TermKey, Fraction]
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None

    def __post_init__(self):
        self.coeffs = {
            self._norm_key(k): _to_fraction(v) for k, v in self.coeffs.items() if v
        }
        if not self.coeffs:
            raise InputError("inequality needs at least one nonzero coefficient")
        self.lower = None if self.lower is None else _to_fraction(self.lower)
        self.upper = None if self.upper is None else _to_fraction(self.upper)
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise InputError("lower bound exceeds upper bound")

    @staticmethod
    def _norm_key(k) -> TermKey:
        if isinstance(k, int):
            return k
        i, j = k
        return (i, j) if i < j else (j, i)

    def check_keys(self, structure: EventStructure):
        valid = set(structure.term_order())
        for k in self.coeffs:
            if k not in valid:
                raise InputError(f"term key {k!r} not present in structure")

    def evaluate(self, vertex: Vertex, structure: EventStructure) -> Fraction:
        order = structure.term_order()
        if len(vertex) != len(order):
            raise InputError("vertex dimension does not match structure")
        pos = {k: i for i, k in enumerate(order)}
        return sum(
            (c * vertex[pos[k]] for k, c in self.coeffs.items()), Fraction(0)
        )

    def to_json(self) -> dict:
        def key_str(k):
            return str(k) if isinstance(k, int) else f"{k[0]},{k[1]}"

        def frac(v):
            if v is None:
                return None
            return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

        return {
            "coeffs": {key_str(k): frac(c) for k, c in self.coeffs.items()},
            "lower": frac(self.lower),
            "upper": frac(self.upper),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Inequality":
        try:
            coeffs = {}
            for ks, v in obj["coeffs"].items():
                if "," in ks:
                    i, j = ks.split(",")
                    key: TermKey = (int(i), int(j))
                else:
                    key = int(ks)
                coeffs[key] = _to_fraction(v)
            lower = obj.get("lower")
            upper = obj.get("upper")
            return cls(
                coeffs,
                None if lower is None else _to_fraction(lower),
                None if upper is None else _to_fraction(upper),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad inequality JSON: {exc}") from exc

    def canonical_key(self, structure: EventStructure):
        """Hashable canonical form used for facet-set comparisons.

        Integer coefficients with gcd 1, first nonzero coefficient positive
        (flipping the bounds when the sign is switched).
        """
        order = structure.term_order()
        den = math.lcm(*(self.coeffs.get(k, Fraction(0)).denominator for k in order))
        vec = [int(self.coeffs.get(k, Fraction(0)) * den) for k in order]
        lo = None if self.lower is None else self.lower * den
        up = None if self.upper is None else self.upper * den
        g = math.gcd(*vec)
        if g > 1:
            vec = [v // g for v in vec]
            lo = None if lo is None else lo / g
            up = None if up is None else up / g
        first = next(v for v in vec if v)
        if first < 0:
            vec = [-v for v in vec]
            lo, up = (None if up is None else -up), (None if lo is None else -lo)
        return (tuple(vec), lo, up)


@dataclass
class Polytope:
    structure: EventStructure
    vertices: list[Vertex]
    facets: Optional[list[Inequality]] = None


@dataclass
class FacetCheck:
    valid: bool
    tight_count: int
    is_facet: bool
    witness: Optional[Vertex] = None


def enumerate_vertices(structure: EventStructure) -> list[Vertex]:
    """All truth-table rows, in binary counting order on (t_1, ..., t_n)."""
    if structure.n_single > MAX_SINGLE_EVENTS:
        raise BudgetError(
            f"refusing to enumerate 2^{structure.n_single} vertices "
            f"(limit {MAX_SINGLE_EVENTS} single events)"
        )
    verts = []
    for bits in itertools.product((0, 1), repeat=structure.n_single):
        row = list(bits)
        row.extend(bits[i - 1] * bits[j - 1] for i, j in structure.joints)
        verts.append(tuple(row))
    return verts


def _row_reduce(rows: list[list[Fraction]]) -> list[tuple[int, list[Fraction]]]:
    """Gaussian elimination; returns (pivot column, reduced row) pairs."""
    basis: list[tuple[int, list[Fraction]]] = []
    for row in rows:
        v = list(row)
        for piv, bv in basis:
            if v[piv]:
                f = v[piv] / bv[piv]
                v = [a - f * c for a, c in zip(v, bv)]
        p = next((i for i, a in enumerate(v) if a), None)
        if p is not None:
            basis.append((p, v))
    return basis


def affine_rank(points: Iterable[Vertex]) -> int:
    """Dimension of the affine hull of the given points (-1 if empty)."""
    pts = list(points)
    if not pts:
        return -1
    p0 = pts[0]
    rows = [[Fraction(a - b) for a, b in zip(p, p0)] for p in pts[1:]]
    return len(_row_reduce(rows))


def _initial_basis(rows: list[Vertex], dim: int) -> Optional[list[int]]:
    basis: list[tuple[int, list[Fraction]]] = []
    idx: list[int] = []
    for k, m in enumerate(rows):
        v = [Fraction(x) for x in m]
        for piv, bv in basis:
            if v[piv]:
                f = v[piv] / bv[piv]
                v = [a - f * c for a, c in zip(v, bv)]
        p = next((i for i, a in enumerate(v) if a), None)
        if p is not None:
            basis.append((p, v))
            idx.append(k)
            if len(idx) == dim:
                return idx
    return None


def _invert_columns(mat: list[Vertex]) -> list[tuple[int, ...]]:
    """Columns of the inverse, scaled to coprime integers."""
    dim = len(mat)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(dim)]
        for i, row in enumerate(mat)
    ]
    for col in range(dim):
        piv = next(r for r in range(col, dim) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(dim):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    cols = []
    for j in range(dim):
        col = [aug[i][dim + j] for i in range(dim)]
        den = math.lcm(*(c.denominator for c in col))
        ints = [int(c * den) for c in col]
        g = math.gcd(*ints)
        cols.append(tuple(x // g for x in ints))
    return cols


def _dd_rays(vertices: list[Vertex]) -> list[tuple[int, ...]]:
    """Extreme rays (a0, a1..ad) of the dual cone: a0 + a.x >= 0 on conv(V).

    Double description with combinatorial adjacency; deterministic insertion
    order, integer arithmetic throughout.
    """
    dim = len(vertices[0]) + 1
    rows: list[Vertex] = [(1,) + v for v in vertices]
    idx = _initial_basis(rows, dim)
    if idx is None:
        raise InputError(
            "vertex set is not full-dimensional; facet enumeration requires "
            "a full-dimensional polytope"
        )
    rays = _invert_columns([rows[i] for i in idx])
    order = idx + [k for k in range(len(rows)) if k not in set(idx)]
    full = (1 << dim) - 1
    masks = [full & ~(1 << j) for j in range(dim)]

    for step in range(dim, len(rows)):
        mk = rows[order[step]]
        dots = [sum(a * b for a, b in zip(mk, r)) for r in rays]
        neg = [i for i, x in enumerate(dots) if x < 0]
        bit = 1 << step
        if not neg:
            masks = [m | bit if dots[i] == 0 else m for i, m in enumerate(masks)]
            continue
        pos = [i for i, x in enumerate(dots) if x > 0]
        zer = [i for i, x in enumerate(dots) if x == 0]
        new_rays, new_masks = [], []
        need = dim - 2
        for ip in pos:
            mp = masks[ip]
            for im in neg:
                z = mp & masks[im]
                if z.bit_count() < need:
                    continue
                adjacent = True
                for io, mo in enumerate(masks):
                    if io != ip and io != im and (z & mo) == z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = tuple(
                    dots[ip] * a - dots[im] * b
                    for a, b in zip(rays[im], rays[ip])
                )
                g = math.gcd(*r)
                if g > 1:
                    r = tuple(x // g for x in r)
                new_rays.append(r)
                new_masks.append(z | bit)
        keep = pos + zer
        rays = [rays[i] for i in keep] + new_rays
        masks = [masks[i] | bit if dots[i] == 0 else masks[i] for i in keep] + new_masks
    return rays


def _ray_to_inequality(ray: tuple[int, ...], structure: EventStructure) -> Inequality:
    a0, coeffs = ray[0], ray[1:]
    order = structure.term_order()
    first = next((c for c in coeffs if c), 0)
    if first >= 0:
        # sum a_i x_i >= -a0
        return Inequality(
            {k: Fraction(c) for k, c in zip(order, coeffs) if c},
            lower=Fraction(-a0),
            upper=None,
        )
    return Inequality(
        {k: Fraction(-c) for k, c in zip(order, coeffs) if c},
        lower=None,
        upper=Fraction(a0),
    )


def hull_facets(
    vertices: list[Vertex], structure: EventStructure
) -> list[Inequality]:
    """Complete irredundant facet list of conv(vertices), exact arithmetic.

    Each facet comes back canonicalized: coprime integer coefficients, first
    nonzero coefficient positive, constant folded into the bound.
    """
    if not vertices:
        raise InputError("empty vertex list")
    dim = len(vertices[0])
    if any(len(v) != dim for v in vertices):
        raise InputError("vertices of mixed dimension")
    if dim > MAX_HULL_DIMENSION or len(vertices) > MAX_HULL_VERTICES:
        raise BudgetError(
            f"hull budget exceeded: dim {dim} (max {MAX_HULL_DIMENSION}), "
            f"{len(vertices)} vertices (max {MAX_HULL_VERTICES})"
        )
    facets = [_ray_to_inequality(r, structure) for r in _dd_rays(vertices)]

    def sort_key(f):
        vec, lo, up = f.canonical_key(structure)
        return (vec, lo is None, lo or 0, up is None, up or 0)

    facets.sort(key=sort_key)
    return facets


def classical_range(
    ineq: Inequality, vertices: list[Vertex], structure: EventStructure
) -> tuple[Fraction, Fraction]:
    """Exact (min, max) of the linear form over the polytope's vertices."""
    ineq.check_keys(structure)
    values = [ineq.evaluate(v, structure) for v in vertices]
    return min(values), max(values)


def verify_facet(
    ineq: Inequality, vertices: list[Vertex], structure: EventStructure
) -> FacetCheck:
    """Brute-force facet oracle: validity over all vertices plus tightness.

    ``valid`` means every vertex satisfies the inequality; a violating vertex
    is reported as ``witness``.  ``is_facet`` requires, for each finite bound,
    that the vertices attaining it affinely span a hyperplane of the
    polytope's affine hull.
    """
    ineq.check_keys(structure)
    values = [(v, ineq.evaluate(v, structure)) for v in vertices]
    witness = None
    for v, val in values:
        if (ineq.lower is not None and val < ineq.lower) or (
            ineq.upper is not None and val > ineq.upper
        ):
            witness = v
            break
    dim = affine_rank(vertices)
    tight_sets = []
    for bound in (ineq.lower, ineq.upper):
        if bound is not None:
            tight_sets.append([v for v, val in values if val == bound])
    tight_count = sum(len(t) for t in tight_sets)
    is_facet = (
        witness is None
        and bool(tight_sets)
        and all(affine_rank(t) == dim - 1 for t in tight_sets)
    )
    return FacetCheck(
        valid=witness is None,
        tight_count=tight_count,
        is_facet=is_facet,
        witness=witness,
    )
