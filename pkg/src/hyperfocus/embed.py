"""Decide whether a 1-factorization embeds as a hyperfocused arc over GF(2^h).

The search fixes a projective frame, propagates incidences to a fixpoint and
branches on the most constrained unplaced vertex:

* frame: vertex u -> (0,0,1); the focus points of u's edges to v and w ->
  (1,0,0) and (0,1,0), so the focus line is z = 0; a fourth vertex t -> (1,1,1);
* a color whose edge has both ends placed gets its focus point, the meet of
  that secant with z = 0;
* a vertex with two known lines (through a placed neighbour and the focus
  point of the connecting color) is their meet.

Every deduction is checked on the spot; the first failure is classified as
one of ``CONTRADICTIONS``.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .arcs import arc_size_bound_ok, is_arc, is_hyperfocused
from .gf2m import FieldCtx, make_ctx
from .onefact import OneFactorization, check
from .pg2 import PG2, Line, Point

FOCUS_LINE: Line = (0, 0, 1)

CONTRADICTIONS = (
    "point-on-focus-line",
    "three-collinear",
    "focus-collision",
    "incidence-clash",
    "arc-bound",
    "size-bound",
)


class Status(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    BUDGET = "budget"


class EmbedError(ValueError):
    pass


@dataclass
class Contradiction:
    kind: str
    detail: str


@dataclass
class EmbeddingResult:
    status: Status
    ctx: FieldCtx
    n: int
    vertices: Optional[list[Point]] = None
    focus: Optional[list[Point]] = None  # indexed by color
    line: Line = FOCUS_LINE
    log: list = field(default_factory=list)  # deductions of the satisfying branch
    contradictions: Counter = field(default_factory=Counter)
    examples: dict = field(default_factory=dict)  # kind -> first Contradiction seen
    nodes: int = 0
    seconds: float = 0.0

    @property
    def sat(self) -> bool:
        return self.status is Status.SAT

    def describe(self) -> str:
        if self.sat:
            return f"sat over GF(2^{self.ctx.m})"
        if self.status is Status.BUDGET:
            return f"budget exceeded after {self.nodes} nodes"
        kinds = ", ".join(f"{k}={v}" for k, v in sorted(self.contradictions.items()))
        return f"unsat over GF(2^{self.ctx.m}) ({kinds})"


class _Clash(Exception):
    def __init__(self, kind: str, detail: str):
        self.kind = kind
        self.detail = detail


class _BudgetExceeded(Exception):
    pass


class _State:
    __slots__ = ("V", "C", "fmap", "vset", "lines", "log")

    def __init__(self, n: int):
        self.V: list = [None] * n
        self.C: list = [None] * (n - 1)
        self.fmap: dict = {}  # focus point -> color
        self.vset: dict = {}  # vertex point -> vertex
        self.lines: list = [[] for _ in range(n)]  # (line, via vertex, via color)
        self.log: list = []

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.V = self.V[:]
        s.C = self.C[:]
        s.fmap = dict(self.fmap)
        s.vset = dict(self.vset)
        s.lines = [l[:] for l in self.lines]
        s.log = self.log[:]
        return s


class Embedder:
    """One (factorization, field) search.  Use :func:`embed` for the common case."""

    def __init__(self, F: OneFactorization, ctx: FieldCtx, frame=(0, 1, 2, 3),
                 max_nodes: Optional[int] = None, time_limit: Optional[float] = None):
        self.F = check(F)
        self.n = F.n
        self.ctx = ctx
        self.plane = PG2(ctx)
        self.t = F.table
        self.p = F.partner
        self.frame = frame
        self.max_nodes = max_nodes
        self.time_limit = time_limit
        self.nodes = 0
        self.counts: Counter = Counter()
        self.examples: dict = {}
        self._t0 = 0.0

    # ---------- point helpers (focus line is z = 0)

    def _focus_of(self, P: Point, Q: Point) -> Point:
        """Meet of line PQ with z = 0, for P, Q off that line: z_Q P + z_P Q."""
        m = self.ctx.mul
        zp, zq = P[2], Q[2]
        x = m(zq, P[0]) ^ m(zp, Q[0])
        y = m(zq, P[1]) ^ m(zp, Q[1])
        if x:
            return (1, self.ctx.div(y, x), 0)
        if y:
            return (0, 1, 0)
        raise _Clash("incidence-clash", f"coincident points {P}")

    # ---------- assignments

    def _set_vertex(self, s: _State, v: int, P: Point, reason, queue):
        if P[2] == 0:
            raise _Clash("point-on-focus-line", f"vertex {v} forced onto the focus line at {P}")
        other = s.vset.get(P)
        if other is not None:
            raise _Clash("incidence-clash", f"vertices {other} and {v} forced to the same point {P}")
        # lines through placed neighbours are rechecked as secants below
        s.V[v] = P
        s.vset[P] = v
        s.log.append(("vertex", v, P, reason))
        t = self.t[v]
        for w in range(self.n):
            Q = s.V[w]
            if w == v or Q is None:
                continue
            c = t[w]
            X = self._focus_of(P, Q)
            cur = s.C[c]
            if cur is None:
                self._set_focus(s, c, X, ("secant", v, w), queue)
            elif cur != X:
                d = s.fmap.get(X)
                if d is not None and self._collinear_via(s, v, w, d):
                    raise _Clash("three-collinear", f"vertex {v} on the secant through {w} and its {_letter(d)}-partner")
                if d is not None:
                    raise _Clash(
                        "focus-collision",
                        f"secant ({min(v, w)},{max(v, w)}) of color {_letter(c)} meets the focus line "
                        f"at {X}, the focus point of {_letter(d)}",
                    )
                raise _Clash("incidence-clash", f"secant ({min(v, w)},{max(v, w)}) misses its focus point")
        queue.append(v)

    def _collinear_via(self, s, v, w, d):
        w2 = self.p[d][w]
        return w2 != v and s.V[w2] is not None and self.plane.collinear(s.V[v], s.V[w], s.V[w2])

    def _set_focus(self, s: _State, c: int, X: Point, reason, queue):
        d = s.fmap.get(X)
        if d is not None and d != c:
            if reason[0] == "secant":
                _, v, w = reason
                if self._collinear_via(s, v, w, d) or self._collinear_via(s, w, v, d):
                    raise _Clash("three-collinear", f"secant ({min(v, w)},{max(v, w)}) contains a third arc point")
            raise _Clash(
                "focus-collision",
                f"colors {_letter(c)} and {_letter(d)} forced to the same focus point {X}",
            )
        s.C[c] = X
        s.fmap[X] = c
        s.log.append(("focus", c, X, reason))
        # every placed vertex now knows a line for its c-partner
        pc = self.p[c]
        for v in range(self.n):
            P = s.V[v]
            if P is None:
                continue
            w = pc[v]
            if s.V[w] is None:
                self._add_line(s, w, self.plane.line_through(P, X), v, c, queue)

    def _add_line(self, s: _State, w: int, L: Line, via: int, c: int, queue):
        for L2, via2, _ in s.lines[w]:
            if L2 == L:
                raise _Clash("three-collinear", f"vertex {w} forced onto the line through {via2} and {via}")
        s.lines[w].append((L, via, c))
        queue.append(("line", w))

    def _propagate(self, s: _State, queue):
        while queue:
            item = queue.pop()
            if isinstance(item, tuple):
                w = item[1]
                if s.V[w] is None and len(s.lines[w]) >= 2:
                    (L1, a, _), (L2, b, _) = s.lines[w][:2]
                    P = self.plane.meet(L1, L2)
                    self._set_vertex(s, w, P, ("meet", a, b), queue)

    # ---------- search

    def _frame_state(self) -> _State:
        u, v, w, t = self.frame
        n = self.n
        if len({u, v, w, t}) != 4 or not all(0 <= x < n for x in (u, v, w, t)):
            raise EmbedError(f"bad frame {self.frame}")
        s = _State(n)
        queue: list = []
        c1, c2 = self.t[u][v], self.t[u][w]
        s.V[u] = (0, 0, 1)
        s.vset[(0, 0, 1)] = u
        s.log.append(("vertex", u, (0, 0, 1), ("frame",)))
        self._set_focus(s, c1, (1, 0, 0), ("frame",), queue)
        self._set_focus(s, c2, (0, 1, 0), ("frame",), queue)
        self._set_vertex(s, t, (1, 1, 1), ("frame",), queue)
        self._propagate(s, queue)
        return s

    def _record(self, clash: _Clash):
        self.counts[clash.kind] += 1
        self.examples.setdefault(clash.kind, Contradiction(clash.kind, clash.detail))

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _BudgetExceeded
        if self.time_limit is not None and time.perf_counter() - self._t0 > self.time_limit:
            raise _BudgetExceeded

    def _candidates(self, s: _State, v: int):
        q = self.ctx.q
        if s.lines[v]:
            L = s.lines[v][0][0]
            for P in self.plane.points_on(L):
                if P[2] and P not in s.vset:
                    yield P
        else:
            for x in range(q):
                for y in range(q):
                    P = (x, y, 1)
                    if P not in s.vset:
                        yield P

    def _search(self, s: _State) -> Optional[_State]:
        self._tick()
        free = [v for v in range(self.n) if s.V[v] is None]
        if not free:
            return s
        v = max(free, key=lambda x: (len(s.lines[x]), -x))
        for P in self._candidates(s, v):
            child = s.copy()
            queue: list = []
            try:
                self._set_vertex(child, v, P, ("branch",), queue)
                self._propagate(child, queue)
            except _Clash as clash:
                self._record(clash)
                continue
            found = self._search(child)
            if found is not None:
                return found
        return None

    def run(self, prune: bool = True) -> EmbeddingResult:
        self._t0 = time.perf_counter()
        n, q = self.n, self.ctx.q
        res = EmbeddingResult(Status.UNSAT, self.ctx, n)
        try:
            if n > q + 2:
                self._record(_Clash("arc-bound", f"{n} points exceed the hyperoval size {q + 2}"))
            elif prune and not arc_size_bound_ok(n, q):
                self._record(_Clash("size-bound", f"hyperfocused {n}-arc needs q >= {2 * n} here"))
            elif n == 2:
                res.status = Status.SAT
                res.vertices = [(0, 0, 1), (1, 1, 1)]
                res.focus = [(1, 1, 0)]
            else:
                try:
                    s = self._frame_state()
                except _Clash as clash:
                    self._record(clash)
                    s = None
                found = self._search(s) if s is not None else None
                if found is not None:
                    res.status = Status.SAT
                    res.vertices = list(found.V)
                    res.focus = list(found.C)
                    res.log = found.log
        except _BudgetExceeded:
            res.status = Status.BUDGET
        res.contradictions = Counter(self.counts)
        res.examples = dict(self.examples)
        res.nodes = self.nodes
        res.seconds = time.perf_counter() - self._t0
        return res


def _letter(c: int) -> str:
    return chr(ord("A") + c)


def embed(F: OneFactorization, ctx: FieldCtx, frame=(0, 1, 2, 3), prune: bool = True,
          max_nodes: Optional[int] = None, time_limit: Optional[float] = None) -> EmbeddingResult:
    if F.n > 12 or F.n < 2:
        raise EmbedError(f"unsupported n = {F.n}")
    if ctx.m > 10:
        raise EmbedError("fields beyond GF(2^10) are not supported")
    return Embedder(F, ctx, frame, max_nodes, time_limit).run(prune)


def verify_embedding(res: EmbeddingResult, F: OneFactorization) -> bool:
    """Arc check, hyperfocus on the result's line, and edge-by-edge color agreement."""
    if not res.sat or res.vertices is None or any(P is None for P in res.vertices):
        return False
    plane = PG2(res.ctx)
    V = res.vertices
    try:
        if not is_arc(plane, V):
            return False
    except ValueError:
        return False
    fd = is_hyperfocused(plane, V, res.line)
    if fd is None:
        return False
    if len(set(res.focus)) != F.n - 1:
        return False
    for (i, j), f in fd.assignment.items():
        if fd.focus_points[f] != res.focus[F.color(i, j)]:
            return False
    return True


def replay(res: EmbeddingResult) -> tuple[list, list]:
    """Re-apply the deduction log of a satisfying branch from scratch."""
    V = [None] * res.n
    C = [None] * (res.n - 1)
    for kind, idx, P, _ in res.log:
        target = V if kind == "vertex" else C
        if target[idx] is not None and target[idx] != P:
            raise AssertionError(f"log reassigns {kind} {idx}")
        target[idx] = P
    return V, C


def scan_fields(F: OneFactorization, h_max: int, h_min: int = 1, **kw) -> dict[int, EmbeddingResult]:
    if h_max > 10:
        raise EmbedError("scan limited to h <= 10")
    return {h: embed(F, make_ctx(h), **kw) for h in range(h_min, h_max + 1)}
