"""Arcs, hyperfocus, focus sets and the subgroup constructions on a hyperconic."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .gf2m import FieldCtx, FieldError, mult_subgroup
from .onefact import OneFactorization, edges
from .pg2 import PG2, GeometryError, Line, LineType, Point

NUCLEUS: Point = (1, 0, 0)


class ArcError(ValueError):
    pass


@dataclass(frozen=True)
class Arc:
    ctx: FieldCtx
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 2:
            raise ArcError("an arc needs at least two points")
        if not is_arc(PG2(self.ctx), self.points):
            raise ArcError("three of the points are collinear")

    @property
    def k(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class FocusData:
    line: Line
    focus_points: tuple[Point, ...]
    assignment: dict  # (i, j) with i < j -> index into focus_points


def is_arc(plane: PG2, points: Sequence[Point]) -> bool:
    if len(set(points)) != len(points):
        raise ArcError("duplicate points")
    return all(not plane.collinear(P, Q, R) for P, Q, R in combinations(points, 3))


def is_hyperfocused(plane: PG2, points: Sequence[Point], L: Line) -> Optional[FocusData]:
    """FocusData if the secants of ``points`` meet ``L`` in exactly k-1 points."""
    k = len(points)
    if any(plane.incident(P, L) for P in points):
        return None
    index: dict[Point, int] = {}
    focus: list[Point] = []
    assignment = {}
    for i, j in combinations(range(k), 2):
        X = plane.meet(plane.line_through(points[i], points[j]), L)
        f = index.get(X)
        if f is None:
            if len(focus) == k - 1:
                return None
            f = index[X] = len(focus)
            focus.append(X)
        assignment[(i, j)] = f
    if len(focus) != k - 1:
        return None
    return FocusData(L, tuple(focus), assignment)


def induced_factorization(k: int, fd: FocusData) -> OneFactorization:
    """Edge (i, j) gets the index of its focus point."""
    return OneFactorization(k, tuple(fd.assignment[e] for e in edges(k)))


def _pairing_points(plane: PG2, points: Sequence[Point], i: int, j: int) -> list[Point]:
    """Points X on secant p_i p_j, off the arc, with every line through X meeting the arc in 0 or 2 points.

    A focus point has this property, since its color class pairs up all arc points.
    """
    arc = set(points)
    out = []
    for X in plane.points_on(plane.line_through(points[i], points[j])):
        if X in arc:
            continue
        count: dict = {}
        for P in points:
            L = plane.line_through(X, P)
            count[L] = count.get(L, 0) + 1
        if all(c == 2 for c in count.values()):
            out.append(X)
    return out


def candidate_focus_lines(plane: PG2, points: Sequence[Point]) -> list[Line]:
    """Lines that could be focus lines.

    A focus line meets secants p0p1 and p0p2 in focus points, and a focus point
    pairs up the arc; candidates are the joins of such points on the two secants.
    """
    s1 = _pairing_points(plane, points, 0, 1)
    s2 = _pairing_points(plane, points, 0, 2)
    lines = set()
    for X in s1:
        for Y in s2:
            lines.add(plane.line_through(X, Y))
    return sorted(lines)


def find_focus_lines(plane: PG2, points: Sequence[Point]) -> list[tuple[Line, FocusData]]:
    if plane.q > 1 << 10:
        raise ArcError("focus-line scan is limited to q <= 1024")
    k = len(points)
    if k % 2 or k < 2:
        return []
    if k == 2:
        cands = [L for L in plane.lines() if not any(plane.incident(P, L) for P in points)]
    else:
        cands = candidate_focus_lines(plane, points)
    out = []
    for L in cands:
        fd = is_hyperfocused(plane, points, L)
        if fd is not None:
            out.append((L, fd))
    return out


# ---------- constructions on the hyperconic x^2 = yz plus nucleus (1,0,0)


def mult_subgroup_arc(ctx: FieldCtx, d: int) -> tuple[Arc, Line]:
    """Nucleus plus the conic points with parameter in the order-d subgroup of GF(q)*.

    The returned line x = 0 is secant to the conic (at (0,1,0) and (0,0,1)) and
    the arc is hyperfocused on it with focus points (0, h, 1), h^d = 1.
    """
    if d < 3:
        raise ArcError("need d >= 3")
    try:
        H = mult_subgroup(ctx, d)
    except FieldError as exc:
        raise ArcError(str(exc)) from None
    plane = PG2(ctx)
    pts = [NUCLEUS] + [plane.conic_point(t) for t in H]
    return Arc(ctx, pts), (1, 0, 0)


def mobius_generator(ctx: FieldCtx) -> int:
    """Smallest b with t -> 1/(t + b) of order q+1 on GF(q) u {inf}.

    t^2 + b t + 1 must be irreducible (its roots then lie in the norm-1
    subgroup of GF(q^2)*), and the orbit of infinity has to be everything.
    """
    q = ctx.q
    for b in range(1, q):
        if ctx.trace(ctx.inv(ctx.mul(b, b))) == 0:
            continue  # t^2 + b t + 1 has a root in GF(q)
        if len(_mobius_orbit(ctx, b, None, q + 1)) == q + 1:
            return b
    raise ArcError(f"no Mobius generator of order {q + 1} found")


def _mobius_step(ctx: FieldCtx, b: int, t: Optional[int]) -> Optional[int]:
    if t is None:
        return 0
    s = t ^ b
    return None if s == 0 else ctx.inv(s)


def _mobius_orbit(ctx: FieldCtx, b: int, start: Optional[int], limit: int, stride: int = 1):
    orbit = [start]
    t = start
    while len(orbit) <= limit:
        for _ in range(stride):
            t = _mobius_step(ctx, b, t)
        if t == start:
            return orbit
        orbit.append(t)
    return orbit


def cyclic_subgroup_arc(ctx: FieldCtx, d: int) -> tuple[Arc, Line]:
    """Nucleus plus a d-point orbit of an order-d cyclic group of the conic.

    The group is the order-d subgroup of the order-(q+1) Mobius group generated
    by t -> 1/(t+b); the arc is hyperfocused on a line external to the conic,
    found by scanning and returned (the scan result is asserted, never assumed).
    """
    q = ctx.q
    if d < 3 or (q + 1) % d:
        raise ArcError(f"need d >= 3 dividing q + 1 = {q + 1}, got {d}")
    if d == q + 1:
        raise ArcError("d = q + 1 gives the whole hyperconic; not built here")
    b = mobius_generator(ctx)
    params = _mobius_orbit(ctx, b, None, d, stride=(q + 1) // d)
    if len(params) != d:
        raise AssertionError("orbit of the order-d subgroup has the wrong size")
    plane = PG2(ctx)
    pts = [NUCLEUS] + [plane.conic_point(t) for t in params]
    arc = Arc(ctx, pts)
    conic = plane.standard_conic()
    for L, _ in find_focus_lines(plane, pts):
        if plane.classify_line(conic, L) is LineType.EXTERNAL:
            return arc, L
    raise ArcError(f"cyclic arc of size {d + 1} over GF({q}) has no external focus line")


def arc_size_bound_ok(k: int, q: int) -> bool:
    """k <= q/2 unless the arc is a hyperoval (k = q+2) or one minus two points (k = q)."""
    if k < 4 or k in (q, q + 2):
        return True
    return 2 * k <= q
