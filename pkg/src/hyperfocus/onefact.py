"""1-factorizations of the complete graph K_n.

A factorization is stored as the color of every edge, edges listed in
lexicographic order (0,1), (0,2), ..., (n-2,n-1); colors are 0..n-2 and each
color class must be a perfect matching.

Text format (``.1f``)::

    onefact n=4
    A: (0,1) (2,3)
    B: (0,2) (1,3)
    C: (0,3) (1,2)

Compact format (``.1fc``): one line per factorization, ``chr(ord('A') + color)``
for each edge in lexicographic order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional

LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class FactorizationError(ValueError):
    pass


def edges(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def edge_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class OneFactorization:
    n: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != self.n * (self.n - 1) // 2:
            raise FactorizationError(
                f"K_{self.n} has {self.n * (self.n - 1) // 2} edges, got {len(self.colors)} colors"
            )

    @classmethod
    def from_factors(cls, n: int, factors: Iterable[Iterable[tuple[int, int]]]) -> "OneFactorization":
        colors = [-1] * (n * (n - 1) // 2)
        for c, factor in enumerate(factors):
            for i, j in factor:
                if not (0 <= i < n and 0 <= j < n) or i == j:
                    raise FactorizationError(f"bad edge ({i},{j}) for K_{n}")
                e = edge_index(n, i, j)
                if colors[e] != -1:
                    raise FactorizationError(f"edge ({i},{j}) listed twice")
                colors[e] = c
        if -1 in colors:
            missing = edges(n)[colors.index(-1)]
            raise FactorizationError(f"edge {missing} is not covered")
        return cls(n, tuple(colors))

    @classmethod
    def from_table(cls, table) -> "OneFactorization":
        n = len(table)
        return cls(n, tuple(table[i][j] for i, j in edges(n)))

    @cached_property
    def table(self) -> list[list[int]]:
        """n x n color matrix, -1 on the diagonal."""
        n = self.n
        t = [[-1] * n for _ in range(n)]
        for (i, j), c in zip(edges(n), self.colors):
            t[i][j] = t[j][i] = c
        return t

    @cached_property
    def partner(self) -> list[list[int]]:
        """partner[c][v]: the vertex matched to v by color c (-1 if none)."""
        n = self.n
        p = [[-1] * n for _ in range(n - 1)]
        for (i, j), c in zip(edges(self.n), self.colors):
            if 0 <= c < n - 1:
                p[c][i] = j
                p[c][j] = i
        return p

    def color(self, i: int, j: int) -> int:
        return self.colors[edge_index(self.n, i, j)]

    def factors(self) -> list[list[tuple[int, int]]]:
        out = [[] for _ in range(self.n - 1)]
        for e, c in zip(edges(self.n), self.colors):
            out[c].append(e)
        return out

    def relabel(self, vperm, cperm=None) -> "OneFactorization":
        """Image under vertex map v -> vperm[v] and color map c -> cperm[c]."""
        n = self.n
        t = [[-1] * n for _ in range(n)]
        for (i, j), c in zip(edges(n), self.colors):
            cc = c if cperm is None else cperm[c]
            a, b = vperm[i], vperm[j]
            t[a][b] = t[b][a] = cc
        return OneFactorization.from_table(t)

    def pair_cycles(self, a: int, b: int) -> list[list[int]]:
        """Cycles of the union of color classes a and b.

        Each cycle is listed starting at its smallest vertex and walking the
        a-edge first.
        """
        pa, pb = self.partner[a], self.partner[b]
        seen = [False] * self.n
        cycles = []
        for s in range(self.n):
            if seen[s]:
                continue
            cyc = []
            v = s
            use_a = True
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = pa[v] if use_a else pb[v]
                use_a = not use_a
            cycles.append(cyc)
        return cycles

    def pair_type(self, a: int, b: int) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.pair_cycles(a, b)), reverse=True))

    def compact(self) -> str:
        return "".join(LETTERS[c] for c in self.colors)

    def __str__(self):
        return format_text(self)


def validate(F: OneFactorization) -> bool:
    n = F.n
    if n < 2 or n % 2 or n > len(LETTERS) + 1:
        return False
    if len(F.colors) != n * (n - 1) // 2:
        return False
    if any(not (0 <= c < n - 1) for c in F.colors):
        return False
    seen = [[False] * n for _ in range(n - 1)]
    for (i, j), c in zip(edges(n), F.colors):
        if seen[c][i] or seen[c][j]:
            return False
        seen[c][i] = seen[c][j] = True
    return True


def check(F: OneFactorization) -> OneFactorization:
    if not validate(F):
        raise FactorizationError("not a 1-factorization (a color class is not a perfect matching)")
    return F


# ---------- serialization


def parse_compact(line: str, n: Optional[int] = None) -> OneFactorization:
    s = line.strip()
    if n is None:
        n = _n_from_edges(len(s))
    if len(s) != n * (n - 1) // 2:
        raise FactorizationError(f"expected {n * (n - 1) // 2} characters for K_{n}, got {len(s)}")
    try:
        colors = tuple(LETTERS.index(ch) for ch in s)
    except ValueError:
        raise FactorizationError(f"invalid color character in {s!r}") from None
    return check(OneFactorization(n, colors))


def _n_from_edges(m: int) -> int:
    n = 2
    while n * (n - 1) // 2 < m:
        n += 1
    if n * (n - 1) // 2 != m:
        raise FactorizationError(f"{m} is not the edge count of a complete graph")
    return n


def format_compact(F: OneFactorization) -> str:
    return F.compact()


_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_text(text: str) -> OneFactorization:
    """Parse the ``.1f`` layout; brackets/commas between pairs are tolerated."""
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("onefact"):
        raise FactorizationError("missing 'onefact n=<int>' header")
    m = re.fullmatch(r"onefact\s+n=(\d+)", lines[0])
    if not m:
        raise FactorizationError(f"bad header {lines[0]!r}")
    n = int(m.group(1))
    factors = {}
    for lineno, line in enumerate(lines[1:], 2):
        label, sep, rest = line.partition(":")
        label = label.strip()
        if not sep or len(label) != 1 or label not in LETTERS[: n - 1]:
            raise FactorizationError(f"line {lineno}: bad factor label in {line!r}")
        if label in factors:
            raise FactorizationError(f"line {lineno}: factor {label} given twice")
        factors[label] = [(int(a), int(b)) for a, b in _PAIR.findall(rest)]
    if len(factors) != n - 1:
        raise FactorizationError(f"expected {n - 1} factors, got {len(factors)}")
    F = OneFactorization.from_factors(n, [factors[L] for L in LETTERS[: n - 1]])
    return check(F)


def format_text(F: OneFactorization) -> str:
    out = [f"onefact n={F.n}"]
    for c, factor in enumerate(F.factors()):
        out.append(f"{LETTERS[c]}: " + " ".join(f"({i},{j})" for i, j in factor))
    return "\n".join(out) + "\n"


def read_compact_file(path) -> list[OneFactorization]:
    with open(path) as fh:
        return [parse_compact(l) for l in fh if l.strip()]


# ---------- isomorphism


@dataclass(frozen=True)
class IsoMap:
    """Vertex map ``vertices[v]`` and color map ``colors[c]`` from source to target."""

    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def apply(self, F: OneFactorization) -> OneFactorization:
        return F.relabel(self.vertices, self.colors)

    def inverse(self) -> "IsoMap":
        return IsoMap(_invert(self.vertices), _invert(self.colors))

    def then(self, other: "IsoMap") -> "IsoMap":
        return IsoMap(
            tuple(other.vertices[v] for v in self.vertices),
            tuple(other.colors[c] for c in self.colors),
        )


def _invert(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def isomorphisms(F1: OneFactorization, F2: OneFactorization) -> Iterator[IsoMap]:
    """All color-preserving isomorphisms (vertex + color maps) from F1 onto F2.

    Backtracking over vertex images; every choice propagates through the
    matchings (sigma(partner_c(v)) = partner_pi(c)(sigma(v))) before branching
    again, which in practice pins the whole map after three or four choices.
    """
    if F1.n != F2.n:
        return
    n = F1.n
    t1, t2 = F1.table, F2.table
    p1, p2 = F1.partner, F2.partner
    # color degree invariants: cycle-type multiset at each vertex
    inv1 = _vertex_invariants(F1)
    inv2 = _vertex_invariants(F2)
    if sorted(inv1) != sorted(inv2):
        return

    def propagate(sigma, pi, sinv, piinv, queue):
        while queue:
            v = queue.pop()
            sv = sigma[v]
            for w in range(n):
                if w == v or sigma[w] < 0:
                    continue
                c, c2 = t1[v][w], t2[sv][sigma[w]]
                if pi[c] < 0:
                    if piinv[c2] >= 0:
                        return False
                    pi[c], piinv[c2] = c2, c
                elif pi[c] != c2:
                    return False
            for c in range(n - 1):
                if pi[c] < 0:
                    continue
                w, w2 = p1[c][v], p2[pi[c]][sv]
                if sigma[w] < 0:
                    if sinv[w2] >= 0 or inv1[w] != inv2[w2]:
                        return False
                    sigma[w], sinv[w2] = w2, w
                    queue.append(w)
                elif sigma[w] != w2:
                    return False
        return True

    def search(sigma, pi, sinv, piinv):
        try:
            v = sigma.index(-1)
        except ValueError:
            yield IsoMap(tuple(sigma), tuple(pi))
            return
        for img in range(n):
            if sinv[img] >= 0 or inv1[v] != inv2[img]:
                continue
            s, p, si, pii = sigma[:], pi[:], sinv[:], piinv[:]
            s[v], si[img] = img, v
            if propagate(s, p, si, pii, [v]):
                yield from search(s, p, si, pii)

    yield from search([-1] * n, [-1] * (n - 1), [-1] * n, [-1] * (n - 1))


def _vertex_invariants(F: OneFactorization) -> list[tuple]:
    """Per vertex: sorted cycle lengths through v over all color pairs."""
    n = F.n
    lengths = [[] for _ in range(n)]
    for a, b in combinations(range(n - 1), 2):
        for cyc in F.pair_cycles(a, b):
            for v in cyc:
                lengths[v].append(len(cyc))
    return [tuple(sorted(l)) for l in lengths]


def isomorphic(F1: OneFactorization, F2: OneFactorization) -> Optional[IsoMap]:
    return next(isomorphisms(F1, F2), None)


def automorphism_count(F: OneFactorization) -> int:
    return sum(1 for _ in isomorphisms(F, F))


# ---------- canonical form


def canonical_labeling(F: OneFactorization) -> tuple[tuple[int, ...], IsoMap]:
    """Lexicographically least color sequence over all relabelings, and a map to it.

    Relabeling new vertex k <- old vertex w[k], color classes are then renamed
    in order of first appearance; the first row (edges at new vertex 0) is
    always 0..n-2, so a color's new name is (new index of w[0]'s partner) - 1.
    Positions are filled left to right keeping only the states that achieve the
    minimum so far; a state branches only when the next new index has to be
    chosen freely.
    """
    n = F.n
    t = F.table
    p = F.partner
    # state: (w list new->old, idx list old->new)
    states = []
    for u in range(n):
        idx = [-1] * n
        idx[u] = 0
        states.append(([u], idx))
    best: list[int] = list(range(n - 1))
    for i in range(1, n - 1):
        for k in range(i + 1, n):
            nxt = []
            bestval = n
            for w, idx in states:
                # ensure w[i], w[k] placed; branch if needed
                pending = [(w, idx)]
                for pos in (i, k):
                    grown = []
                    for ww, ii in pending:
                        if pos < len(ww):
                            grown.append((ww, ii))
                            continue
                        for v in range(n):
                            if ii[v] < 0:
                                i2 = ii[:]
                                i2[v] = len(ww)
                                grown.append((ww + [v], i2))
                    pending = grown
                for ww, ii in pending:
                    x = p[t[ww[i]][ww[k]]][ww[0]]
                    if ii[x] >= 0:
                        val = ii[x] - 1
                    else:
                        val = len(ww) - 1
                        if val > bestval:
                            continue
                        i2 = ii[:]
                        i2[x] = len(ww)
                        ww, ii = ww + [x], i2
                    if val < bestval:
                        bestval = val
                        nxt = [(ww, ii)]
                    elif val == bestval:
                        nxt.append((ww, ii))
            best.append(bestval)
            states = nxt
    w = states[0][0]
    vmap = _invert(w)  # old -> new
    cmap = tuple(vmap[p[c][w[0]]] - 1 for c in range(n - 1))
    return tuple(best), IsoMap(tuple(vmap), cmap)


def canonical_form(F: OneFactorization) -> OneFactorization:
    seq, _ = canonical_labeling(F)
    return OneFactorization(F.n, seq)


def canonical_string(F: OneFactorization) -> str:
    return canonical_form(F).compact()


# ---------- enumeration

MAX_ENUM_N = 10


def even_partitions(n: int, largest: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into even parts >= 4, descending, largest partition first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 3, -1):
        if p % 2 == 0:
            for rest in even_partitions(n - p, p):
                yield (p,) + rest


def standard_pair_table(n: int, cycle_type: tuple[int, ...]):
    """Colors 0/1 alternating around cycles on consecutive vertex blocks."""
    import numpy as np

    tab = -np.ones((n, n), np.int8)
    start = 0
    for length in cycle_type:
        for i in range(length):
            a, b = start + i, start + (i + 1) % length
            tab[a, b] = tab[b, a] = i % 2
        start += length
    return tab


def _slot_perms(cycle_type):
    import numpy as np
    from itertools import permutations

    m = len(cycle_type)
    perms = [p for p in permutations(range(m)) if all(cycle_type[p[i]] == cycle_type[i] for i in range(m))]
    return np.array(perms, dtype=np.int64)


def enumerate_factorizations(n: int, progress=None) -> Iterator[OneFactorization]:
    """One canonical representative per isomorphism class of 1-factorizations of K_n.

    Every factorization has a color pair whose union has the largest cycle
    type T among its pairs.  For each T we fix that pair in standard form and
    complete it in all ways that keep every pair type <= T; completions are
    deduplicated by their least relabeling over all T-type anchor pairs, and
    survivors are output in :func:`canonical_form`, sorted.
    """
    import numpy as np

    if n % 2 or n < 2:
        raise FactorizationError(f"K_{n} has no 1-factorization")
    if n > MAX_ENUM_N:
        raise FactorizationError(
            f"native enumeration supports n <= {MAX_ENUM_N}; ingest K_{n} data from a .1fc file instead"
        )
    if n == 2:
        yield OneFactorization(2, (0,))
        return
    from . import _kernels

    reps = []
    for T in even_partitions(n):
        Tarr = np.zeros(n, np.int64)
        Tarr[: len(T)] = T
        comps = _kernels.completions(n, Tarr, standard_pair_table(n, T))
        certs = _kernels.certificates(comps, n, Tarr, _slot_perms(T)) if len(comps) else comps
        uniq = {bytes(row) for row in certs.astype(np.int8)}
        if progress:
            progress(T, len(comps), len(uniq))
        reps += [OneFactorization(n, tuple(u)) for u in sorted(uniq)]
    canon = sorted({canonical_form(F).colors for F in reps})
    for colors in canon:
        yield OneFactorization(n, colors)
