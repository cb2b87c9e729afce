"""Incidence geometry of PG(2, 2^m).

Points and lines are plain int triples (field-element bit-masks), normalized so
that the first nonzero coordinate is 1; equality is therefore tuple equality.
A point ``P`` lies on a line ``L`` iff ``L[0]*P[0] + L[1]*P[1] + L[2]*P[2] == 0``.
All operations live on :class:`PG2`, which carries the field context.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .gf2m import FieldCtx, make_ctx, parse_header, solve_quadratic

Point = tuple[int, int, int]
Line = tuple[int, int, int]


class GeometryError(ValueError):
    pass


class DegenerateError(GeometryError):
    """A configuration predicate was applied to a degenerate configuration."""


class LineType(enum.Enum):
    EXTERNAL = "external"
    TANGENT = "tangent"
    SECANT = "secant"


@dataclass(frozen=True)
class Conic:
    """a x^2 + b y^2 + c z^2 + d xy + e xz + f yz = 0, coefficients normalized."""

    coeffs: tuple[int, int, int, int, int, int]
    nondegenerate: bool

    @property
    def nucleus(self) -> Point:
        a, b, c, d, e, f = self.coeffs
        return (f, e, d)


class PG2:
    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.q = ctx.q
        self._mul = ctx.mul

    @classmethod
    def of_degree(cls, m: int) -> "PG2":
        return cls(make_ctx(m))

    def __repr__(self):
        return f"PG2(q={self.q})"

    # ---------- basics

    def normalize(self, v: Sequence[int]) -> tuple[int, int, int]:
        x, y, z = v
        if x:
            if x == 1:
                return (1, y, z)
            ix = self.ctx.inv(x)
            return (1, self._mul(y, ix), self._mul(z, ix))
        if y:
            if y == 1:
                return (0, 1, z)
            return (0, 1, self.ctx.div(z, y))
        if z:
            return (0, 0, 1)
        raise GeometryError("the zero vector is not a projective point")

    point = normalize
    line = normalize

    def cross(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
        m = self._mul
        return (
            m(u[1], v[2]) ^ m(u[2], v[1]),
            m(u[2], v[0]) ^ m(u[0], v[2]),
            m(u[0], v[1]) ^ m(u[1], v[0]),
        )

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        m = self._mul
        return m(u[0], v[0]) ^ m(u[1], v[1]) ^ m(u[2], v[2])

    def incident(self, P: Point, L: Line) -> bool:
        return self.dot(P, L) == 0

    def line_through(self, P: Point, Q: Point) -> Line:
        c = self.cross(P, Q)
        if c == (0, 0, 0):
            raise GeometryError(f"line_through needs distinct points, got {P} twice")
        return self.normalize(c)

    def meet(self, L1: Line, L2: Line) -> Point:
        c = self.cross(L1, L2)
        if c == (0, 0, 0):
            raise GeometryError(f"meet needs distinct lines, got {L1} twice")
        return self.normalize(c)

    def det(self, P: Sequence[int], Q: Sequence[int], R: Sequence[int]) -> int:
        return self.dot(self.cross(P, Q), R)

    def collinear(self, P: Point, Q: Point, R: Point) -> bool:
        return self.det(P, Q, R) == 0

    def points(self) -> Iterator[Point]:
        q = self.q
        for y in range(q):
            for z in range(q):
                yield (1, y, z)
        for z in range(q):
            yield (0, 1, z)
        yield (0, 0, 1)

    lines = points

    def points_on(self, L: Line) -> list[Point]:
        """The q + 1 points of a line, in normalized-lexicographic order."""
        a, b, c = L
        # two independent points on L span it
        basis = [self.normalize(v) for v in _kernel_basis(self.ctx, L)]
        P, Q = basis
        pts = {Q}
        for s in range(self.q):
            pts.add(self.normalize(tuple(P[i] ^ self._mul(s, Q[i]) for i in range(3))))
        return sorted(pts)

    def fmt(self, v: Sequence[int], kind: str = "p") -> str:
        return f"{kind} {v[0]:x} {v[1]:x} {v[2]:x}"

    # ---------- conics

    def standard_conic(self) -> Conic:
        """x^2 = yz, i.e. x^2 + yz = 0."""
        return Conic((1, 0, 0, 0, 0, 1), True)

    def make_conic(self, coeffs: Sequence[int]) -> Conic:
        coeffs = tuple(coeffs)
        if not any(coeffs):
            raise GeometryError("all-zero conic")
        lead = next(c for c in coeffs if c)
        il = self.ctx.inv(lead)
        coeffs = tuple(self._mul(c, il) for c in coeffs)
        a, b, c, d, e, f = coeffs
        nuc = (f, e, d)
        nondeg = nuc != (0, 0, 0) and self.quad_form(coeffs, nuc) != 0
        return Conic(coeffs, nondeg)

    def quad_form(self, coeffs: Sequence[int], P: Sequence[int]) -> int:
        a, b, c, d, e, f = coeffs
        x, y, z = P
        m = self._mul
        return (
            m(a, m(x, x)) ^ m(b, m(y, y)) ^ m(c, m(z, z))
            ^ m(d, m(x, y)) ^ m(e, m(x, z)) ^ m(f, m(y, z))
        )

    def polar(self, coeffs: Sequence[int], P: Sequence[int], Q: Sequence[int]) -> int:
        """Symmetric bilinear form B(P,Q) = Qf(P+Q) + Qf(P) + Qf(Q)."""
        a, b, c, d, e, f = coeffs
        m = self._mul
        return (
            m(d, m(P[0], Q[1]) ^ m(P[1], Q[0]))
            ^ m(e, m(P[0], Q[2]) ^ m(P[2], Q[0]))
            ^ m(f, m(P[1], Q[2]) ^ m(P[2], Q[1]))
        )

    def conic_contains(self, C: Conic, P: Point) -> bool:
        return self.quad_form(C.coeffs, P) == 0

    def conic_point(self, t: Optional[int]) -> Point:
        """Parametrization of x^2 = yz: t -> (t, t^2, 1), None (infinity) -> (0, 1, 0)."""
        if t is None:
            return (0, 1, 0)
        return self.normalize((t, self._mul(t, t), 1))

    def conic_points(self, C: Conic) -> list[Point]:
        return [P for P in self.points() if self.conic_contains(C, P)]

    def tangent_at(self, C: Conic, P: Point) -> Line:
        if not self.conic_contains(C, P):
            raise GeometryError(f"{P} is not on the conic")
        a, b, c, d, e, f = C.coeffs
        m = self._mul
        x, y, z = P
        L = (m(d, y) ^ m(e, z), m(d, x) ^ m(f, z), m(e, x) ^ m(f, y))
        if L == (0, 0, 0):
            raise GeometryError("tangent undefined (singular point of a degenerate conic)")
        return self.normalize(L)

    def nucleus_of(self, C: Conic) -> Point:
        if not C.nondegenerate:
            raise GeometryError("degenerate conic has no nucleus")
        return self.normalize(C.nucleus)

    def line_conic_points(self, C: Conic, L: Line) -> list[Point]:
        """Points of C on L, by solving the restricted quadratic."""
        P, Q = (self.normalize(v) for v in _kernel_basis(self.ctx, L))
        # points of L: P + sQ (s in GF(q)) and Q
        qP = self.quad_form(C.coeffs, P)
        qQ = self.quad_form(C.coeffs, Q)
        bPQ = self.polar(C.coeffs, P, Q)
        out = []
        if qQ == 0:
            out.append(Q)
        # qQ s^2 + bPQ s + qP = 0
        if qQ:
            ss = solve_quadratic(self.ctx, self.ctx.div(bPQ, qQ), self.ctx.div(qP, qQ))
        elif bPQ:
            ss = [self.ctx.div(qP, bPQ)]
        elif qP == 0:
            raise GeometryError(f"line {L} is contained in the conic")
        else:
            ss = []
        for s in ss:
            out.append(self.normalize(tuple(P[i] ^ self._mul(s, Q[i]) for i in range(3))))
        return sorted(set(out))

    def classify_line(self, C: Conic, L: Line) -> LineType:
        n = len(self.line_conic_points(C, L))
        return (LineType.EXTERNAL, LineType.TANGENT, LineType.SECANT)[n]

    def fit_conic(self, points: Sequence[Point]) -> Conic:
        """Conic through five points (5x6 homogeneous linear system)."""
        if len(points) != 5 or len(set(points)) != 5:
            raise GeometryError("fit_conic needs five distinct points")
        m = self._mul
        rows = [
            [m(x, x), m(y, y), m(z, z), m(x, y), m(x, z), m(y, z)]
            for x, y, z in points
        ]
        null = nullspace(self.ctx, rows)
        if len(null) != 1:
            raise DegenerateError(
                f"five points impose only {6 - len(null)} conditions on conics"
            )
        return self.make_conic(null[0])

    # ---------- configurations

    def diagonal_points(self, A: Point, B: Point, C: Point, D: Point) -> tuple[Point, Point, Point]:
        for tri in ((A, B, C), (A, B, D), (A, C, D), (B, C, D)):
            if len(set(tri)) < 3 or self.collinear(*tri):
                raise DegenerateError("not a quadrangle")
        lt = self.line_through
        return (
            self.meet(lt(A, B), lt(C, D)),
            self.meet(lt(A, C), lt(B, D)),
            self.meet(lt(A, D), lt(B, C)),
        )

    def diagonal_line(self, A: Point, B: Point, C: Point, D: Point) -> Line:
        X, Y, Z = self.diagonal_points(A, B, C, D)
        L = self.line_through(X, Y)
        if not self.incident(Z, L):
            raise AssertionError("diagonal points of a quadrangle are collinear in characteristic 2")
        return L

    def pascal_collinear(self, hexagon: Sequence[Point]) -> bool:
        """Whether the three meets of opposite sides of the hexagon are collinear."""
        if len(hexagon) != 6 or len(set(hexagon)) != 6:
            raise DegenerateError("a hexagon needs six distinct vertices")
        P = hexagon
        sides = [self.line_through(P[i], P[(i + 1) % 6]) for i in range(6)]
        meets = []
        for i in range(3):
            if sides[i] == sides[i + 3]:
                raise DegenerateError(f"opposite sides {i} and {i + 3} coincide")
            meets.append(self.meet(sides[i], sides[i + 3]))
        if len(set(meets)) < 3:
            raise DegenerateError("opposite-side meets are not distinct")
        return self.collinear(*meets)

    def _check_triangles(self, T1, T2):
        for T in (T1, T2):
            if len(set(T)) < 3 or self.collinear(*T):
                raise DegenerateError(f"{T} is not a triangle")
        if any(T1[i] == T2[i] for i in range(3)):
            raise DegenerateError("corresponding vertices coincide")

    def perspective_from_point(self, T1: Sequence[Point], T2: Sequence[Point]) -> Optional[Point]:
        """Center of perspectivity (joins of corresponding vertices concurrent) or None."""
        self._check_triangles(T1, T2)
        joins = [self.line_through(T1[i], T2[i]) for i in range(3)]
        if len(set(joins)) < 3:
            raise DegenerateError("two joins of corresponding vertices coincide")
        X = self.meet(joins[0], joins[1])
        return X if self.incident(X, joins[2]) else None

    def perspective_from_line(self, T1: Sequence[Point], T2: Sequence[Point]) -> Optional[Line]:
        """Axis of perspectivity (meets of corresponding sides collinear) or None."""
        self._check_triangles(T1, T2)
        meets = []
        for i, j in ((0, 1), (1, 2), (0, 2)):
            s1 = self.line_through(T1[i], T1[j])
            s2 = self.line_through(T2[i], T2[j])
            if s1 == s2:
                raise DegenerateError("corresponding sides coincide")
            meets.append(self.meet(s1, s2))
        if len(set(meets)) < 3:
            raise DegenerateError("meets of corresponding sides are not distinct")
        L = self.line_through(meets[0], meets[1])
        return L if self.incident(meets[2], L) else None

    # ---------- collineations (PGL(3,q) matrices as row tuples)

    def apply(self, M, P: Sequence[int]) -> Point:
        return self.normalize(tuple(self.dot(row, P) for row in M))

    def frame_map(self, p0, p1, p2, p3):
        """Matrix sending (1,0,0),(0,1,0),(0,0,1),(1,1,1) to p0..p3."""
        N = [[p0[i], p1[i], p2[i]] for i in range(3)]
        lam = solve(self.ctx, N, list(p3))
        if lam is None or 0 in lam:
            raise DegenerateError("frame points are not in general position")
        return tuple(tuple(self._mul(N[i][j], lam[j]) for j in range(3)) for i in range(3))

    def to_standard_frame(self, p0, p1, p2, p3):
        """Matrix sending p0..p3 to the standard frame."""
        return mat_inv(self.ctx, self.frame_map(p0, p1, p2, p3))


# ---------- small linear algebra over GF(2^m)


def _kernel_basis(ctx: FieldCtx, L: Sequence[int]) -> list[tuple[int, int, int]]:
    """Two independent vectors orthogonal to L."""
    a, b, c = L
    if a:
        return [(ctx.div(b, a), 1, 0), (ctx.div(c, a), 0, 1)]
    if b:
        return [(1, 0, 0), (0, ctx.div(c, b), 1)]
    if c:
        return [(1, 0, 0), (0, 1, 0)]
    raise GeometryError("all-zero line")


def rref(ctx: FieldCtx, rows):
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ctx.inv(rows[r][col])
        rows[r] = [ctx.mul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [v ^ ctx.mul(f, w) for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(ctx: FieldCtx, rows) -> list[tuple[int, ...]]:
    ncols = len(rows[0])
    red, pivots = rref(ctx, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pcol in zip(red, pivots):
            v[pcol] = row[fcol]
        basis.append(tuple(v))
    return basis


def solve(ctx: FieldCtx, A, b) -> Optional[list[int]]:
    """Unique solution of the square system A x = b, or None if singular."""
    n = len(A)
    red, pivots = rref(ctx, [list(A[i]) + [b[i]] for i in range(n)])
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def mat_inv(ctx: FieldCtx, M):
    n = len(M)
    red, pivots = rref(ctx, [list(M[i]) + [int(i == j) for j in range(n)] for i in range(n)])
    if pivots[:n] != list(range(n)):
        raise GeometryError("singular matrix")
    return tuple(tuple(red[i][n:]) for i in range(n))


# ---------- text format


def read_geometry(lines) -> tuple[FieldCtx, list[Point], list[Line]]:
    """Parse a ``field`` header followed by ``p x y z`` / ``l a b c`` lines."""
    ctx = None
    pts, lns = [], []
    for lineno, raw in enumerate(lines, 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if ctx is None:
            ctx = parse_header(s)
            plane = PG2(ctx)
            continue
        kind, *vals = s.split()
        if kind not in ("p", "l") or len(vals) != 3:
            raise GeometryError(f"line {lineno}: expected 'p|l x y z', got {s!r}")
        try:
            v = tuple(int(t, 16) for t in vals)
        except ValueError:
            raise GeometryError(f"line {lineno}: bad hex literal in {s!r}") from None
        if any(c >= ctx.q for c in v):
            raise GeometryError(f"line {lineno}: coordinate outside GF({ctx.q})")
        (pts if kind == "p" else lns).append(plane.normalize(v))
    if ctx is None:
        raise GeometryError("missing field header")
    return ctx, pts, lns


def write_geometry(ctx: FieldCtx, points, lines=()) -> str:
    plane = PG2(ctx)
    out = [ctx.header()]
    out += [plane.fmt(P, "p") for P in points]
    out += [plane.fmt(L, "l") for L in lines]
    return "\n".join(out) + "\n"
