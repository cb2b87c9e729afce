"""The two K_12 survivors, the coordinatized 12-arc and the quintic it forces.

Vertex and color labels follow the shipped fixtures (colors A..K).
"""

from __future__ import annotations

import hashlib
from importlib import resources
from typing import Optional

from .arcs import is_arc, is_hyperfocused
from .embed import EmbeddingResult, Status
from .gf2m import FieldCtx, min_poly, poly_degree, poly_from_exponents, roots
from .onefact import LETTERS, OneFactorization, parse_text
from .pg2 import PG2, Line, Point

# a^5 = a^4 + a^3 + a + 1
QUINTIC = poly_from_exponents(5, 4, 3, 1, 0)

FIXTURE_FILES = ("k12_survivor1.1f", "k12_survivor2.1f")

# pinned sha256 of the .1f transcriptions
FIXTURE_SHA256 = {
    "k12_survivor1.1f": "d246ef6ae473d6e7d29c0cee9d0250ef34798ee87ef99798a9139a1709d34da0",
    "k12_survivor2.1f": "3c77187f6a523d4f6a6f98c42d89fd1d0f3d91805c880e17202e50deb399ac24",
}

# hexagons certifying that points 1..11 lie on one conic, and one showing 0 does not
CONIC_HEXAGONS = (
    (2, 3, 6, 5, 4, 1),
    (2, 3, 1, 5, 4, 7),
    (2, 3, 7, 5, 4, 10),
    (3, 8, 7, 4, 2, 1),
    (1, 3, 9, 7, 4, 8),
    (1, 3, 11, 7, 4, 6),
)
OFF_CONIC_HEXAGON = (0, 1, 5, 3, 2, 7)


def fixture_text(index: int) -> str:
    return resources.files("hyperfocus.data").joinpath(FIXTURE_FILES[index]).read_text()


def fixture_digest(index: int) -> str:
    return hashlib.sha256(fixture_text(index).encode()).hexdigest()


def fixture(index: int) -> OneFactorization:
    """0: the survivor with no embedding; 1: the one realized over GF(2^5)."""
    return parse_text(fixture_text(index))


def _poly(ctx: FieldCtx, a: int, *exps: int) -> int:
    return ctx.eval_poly(poly_from_exponents(*exps), a)


def table_coordinates(ctx: FieldCtx, a: int) -> tuple[list[Point], dict[str, Point], Line]:
    """Arc points 0..11, focus points A..K and the focus line [1,1,a], normalized.

    J is (a^5+1, a^5+a^3, a^5+a): the meet of (06) and (39).
    """
    plane = PG2(ctx)

    def p(*exps):
        return _poly(ctx, a, *exps)

    one = 1
    raw_pts = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 1),
        (a, p(2), one),
        (p(1, 0), p(2, 0), one),
        (p(2, 1), p(2), p(2, 0)),
        (p(1, 0), one, p(2, 0)),
        (p(2, 1), p(4, 2), one),
        (p(2, 1, 0), p(4, 2, 0), one),
        (p(3, 1, 0), p(3, 2, 1, 0), p(2, 0)),
        (p(3, 2, 1), p(3, 1), p(2, 0)),
    ]
    raw_focus = {
        "A": (1, 1, 0),
        "B": (a, 0, 1),
        "C": (0, a, 1),
        "D": (p(1, 0), 1, 1),
        "E": (1, p(1, 0), 1),
        "F": (p(2, 1), p(2), 1),
        "G": (a, p(2), p(1, 0)),
        "H": (p(2, 1, 0), p(2, 0), 1),
        "I": (1, p(2, 1, 0), p(1, 0)),
        "J": (p(5, 0), p(5, 3), p(5, 1)),
        "K": (1, p(2, 1), p(4, 3, 2, 1)),
    }
    pts = [plane.normalize(P) for P in raw_pts]
    focus = {k: plane.normalize(v) for k, v in raw_focus.items()}
    return pts, focus, plane.normalize((1, 1, a))


def printed_j(ctx: FieldCtx, a: int) -> Point:
    """J exactly as typeset, (a^5+1, a^5+a^3, a^5+1); it is not on [1,1,a]."""
    return PG2(ctx).normalize((_poly(ctx, a, 5, 0), _poly(ctx, a, 5, 3), _poly(ctx, a, 5, 0)))


def table_factorization(ctx: FieldCtx, a: int) -> Optional[OneFactorization]:
    """Color each secant by the letter of the tabulated focus point it meets."""
    plane = PG2(ctx)
    pts, focus, L = table_coordinates(ctx, a)
    letter = {P: k for k, P in focus.items()}
    if len(letter) != 11 or not is_arc(plane, pts):
        return None
    factors: list[list] = [[] for _ in range(11)]
    for i in range(12):
        for j in range(i + 1, 12):
            X = plane.meet(plane.line_through(pts[i], pts[j]), L)
            if X not in letter:
                return None
            factors[LETTERS.index(letter[X])].append((i, j))
    return OneFactorization.from_factors(12, factors)


def table_as_result(ctx: FieldCtx, a: int) -> EmbeddingResult:
    """The tabulated coordinates packaged as a satisfying record."""
    pts, focus, L = table_coordinates(ctx, a)
    return EmbeddingResult(
        Status.SAT, ctx, 12, vertices=pts, focus=[focus[c] for c in LETTERS[:11]], line=L
    )


def extract_parameter(res: EmbeddingResult) -> int:
    """Send vertices 0..3 to the standard frame; vertex 4 lands on (a, a^2, 1)."""
    if not res.sat:
        raise ValueError("need a satisfying embedding")
    ctx = res.ctx
    plane = PG2(ctx)
    V = res.vertices
    M = plane.to_standard_frame(*V[:4])
    x, y, z = plane.apply(M, V[4])
    if z == 0:
        raise ValueError("vertex 4 maps to the line z = 0")
    a = ctx.div(x, z)
    if ctx.div(y, z) != ctx.mul(a, a):
        raise ValueError("vertex 4 is not on x^2 = yz in the standard frame")
    return a


def standardize(res: EmbeddingResult) -> tuple[list[Point], list[Point]]:
    """Vertices and focus points after sending vertices 0..3 to the standard frame."""
    plane = PG2(res.ctx)
    M = plane.to_standard_frame(*res.vertices[:4])
    return [plane.apply(M, P) for P in res.vertices], [plane.apply(M, X) for X in res.focus]


def matches_table(res: EmbeddingResult) -> bool:
    """Projective equivalence with the tabulated arc, focus points included."""
    a = extract_parameter(res)
    V, C = standardize(res)
    pts, focus, _ = table_coordinates(res.ctx, a)
    return V == pts and C == [focus[c] for c in LETTERS[:11]]


def quintic_roots(ctx: FieldCtx) -> list[int]:
    return roots(QUINTIC, ctx)


def parameter_ok(ctx: FieldCtx, a: int) -> bool:
    """a is a root of the quintic and generates GF(2^5)."""
    return ctx.eval_poly(QUINTIC, a) == 0 and poly_degree(min_poly(ctx, a)) == 5


def table_is_hyperfocused(ctx: FieldCtx, a: int) -> bool:
    plane = PG2(ctx)
    pts, focus, L = table_coordinates(ctx, a)
    fd = is_hyperfocused(plane, pts, L)
    return fd is not None and set(fd.focus_points) == set(focus.values())
