"""Necessary conditions for a 1-factorization to come from a hyperfocused arc.

``c4_filter``: if two 1-factors contain a 4-cycle, a third must complete it to
a K_4.  On a 4-set {a,b,c,d} this says: of its three splittings into two
disjoint edges, never exactly two are monochromatic.

``k4e_filter``: two vertex-disjoint copies of K_4 - e colored alike force the
missing edges to share a color as well.

Both return ``None`` on pass and a witness on failure.  The ``*_batch``
variants work on an (N, n(n-1)/2) uint8 array of color codes and only say
pass/fail; they back the streaming stage.
"""

from __future__ import annotations

import json
import logging
import multiprocessing as mp
import os
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .onefact import LETTERS, OneFactorization, edge_index, edges

log = logging.getLogger(__name__)

STAGES = ("c4", "k4e")


@dataclass(frozen=True)
class C4Witness:
    factor: int  # color of the pair of edges the check started from
    edges: tuple[tuple[int, int], tuple[int, int]]
    present: tuple[tuple[int, int], tuple[int, int]]  # disjoint pair sharing one color
    missing: tuple[tuple[int, int], tuple[int, int]]  # disjoint pair with two colors


@dataclass(frozen=True)
class K4eWitness:
    U: tuple[int, int, int, int]
    V: tuple[int, int, int, int]
    matching: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # five same-color pairs
    mismatched: tuple[tuple[int, int], tuple[int, int]]


# ---------- scalar predicates


def c4_filter(F: OneFactorization, skip_one: bool = True) -> Optional[C4Witness]:
    """C4-completion check, one 1-factor at a time.

    For every factor f (all but the last one when ``skip_one``) and every two
    edges ab, cd of f, look at the splittings {ac, bd} and {ad, bc}: exactly
    one of them monochromatic is a violation.  A violation involves two
    factors and is seen from either, so skipping one factor loses nothing.
    """
    t = F.table
    factors = F.factors()
    last = len(factors) - 1 if skip_one else len(factors)
    for f in range(last):
        for (a, b), (c, d) in combinations(factors[f], 2):
            m1 = t[a][c] == t[b][d]
            m2 = t[a][d] == t[b][c]
            if m1 != m2:
                p1, p2 = ((a, c), (b, d)), ((a, d), (b, c))
                present, missing = (p1, p2) if m1 else (p2, p1)
                return C4Witness(f, ((a, b), (c, d)), present, missing)
    return None


K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def k4e_filter(F: OneFactorization) -> Optional[K4eWitness]:
    """Two-K4-minus-edge check over every unordered 4-set U and ordered disjoint 4-tuple V.

    Corresponding edges U[i]U[j] and V[i]V[j] are compared; exactly five
    agreeing colors out of six is a violation.
    """
    n = F.n
    if n < 8:
        return None
    from ._kernels import k4e_find

    hit = k4e_find(np.asarray(F.colors, dtype=np.int64), n)
    if hit[0] < 0:
        return None
    U = tuple(int(x) for x in hit[:4])
    V = tuple(int(x) for x in hit[4:])
    t = F.table
    match, bad = [], None
    for i, j in K4_EDGES:
        pair = ((U[i], U[j]), (V[i], V[j]))
        if t[U[i]][U[j]] == t[V[i]][V[j]]:
            match.append(pair)
        else:
            bad = pair
    return K4eWitness(U, V, tuple(match), bad)


# ---------- batch predicates on uint8 color arrays


@lru_cache(maxsize=None)
def _c4_index(n: int):
    """For each 4-set, edge indices of its three splittings: shape (sets, 3, 2)."""
    out = []
    for a, b, c, d in combinations(range(n), 4):
        ix = lambda i, j: edge_index(n, i, j)
        out.append(
            [
                [ix(a, b), ix(c, d)],
                [ix(a, c), ix(b, d)],
                [ix(a, d), ix(b, c)],
            ]
        )
    return np.array(out, dtype=np.intp)


def c4_batch(X: np.ndarray, n: int) -> np.ndarray:
    """Boolean pass mask: no 4-set with exactly two monochromatic splittings."""
    if n < 4 or len(X) == 0:
        return np.ones(len(X), dtype=bool)
    from ._kernels import c4_pass

    return c4_pass(np.ascontiguousarray(X, dtype=np.uint8), _c4_index(n))


def k4e_batch(X: np.ndarray, n: int) -> np.ndarray:
    if n < 8 or len(X) == 0:
        return np.ones(len(X), dtype=bool)
    from ._kernels import k4e_pass

    return k4e_pass(np.ascontiguousarray(X, dtype=np.uint8), n)


@lru_cache(maxsize=None)
def _incidence(n: int) -> np.ndarray:
    """Edge indices at each vertex, shape (n, n-1)."""
    return np.array(
        [[edge_index(n, v, w) for w in range(n) if w != v] for v in range(n)], dtype=np.intp
    )


def valid_batch(X: np.ndarray, n: int) -> np.ndarray:
    """Rows whose colors at every vertex are exactly 0..n-2."""
    if len(X) == 0:
        return np.ones(0, dtype=bool)
    at = np.sort(X[:, _incidence(n)], axis=2)
    return (at == np.arange(n - 1, dtype=X.dtype)).all(axis=(1, 2))


# ---------- streaming


class FilterInputError(ValueError):
    def __init__(self, message: str, lineno: int, offset: int):
        super().__init__(f"line {lineno} (byte offset {offset}): {message}")
        self.lineno = lineno
        self.offset = offset


@dataclass
class FilterReport:
    read: int = 0
    rejected_c4: int = 0
    rejected_k4e: int = 0
    survived: int = 0

    def __add__(self, other: "FilterReport") -> "FilterReport":
        return FilterReport(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def to_text(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in asdict(self).items())

    def summary(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d) -> "FilterReport":
        return cls(**{f.name: int(d[f.name]) for f in fields(cls)})


@dataclass
class Checkpoint:
    offset: int  # input bytes consumed
    lineno: int
    out_size: int  # bytes of survivors written
    report: FilterReport = field(default_factory=FilterReport)
    n: Optional[int] = None

    def save(self, path) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(
                {"offset": self.offset, "lineno": self.lineno, "out_size": self.out_size,
                 "n": self.n, "report": asdict(self.report)},
                fh,
                sort_keys=True,
            )
            fh.write("\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "Checkpoint":
        with open(path) as fh:
            d = json.load(fh)
        return cls(d["offset"], d["lineno"], d["out_size"], FilterReport.from_dict(d["report"]), d["n"])


def _decode_chunk(lines: Sequence[bytes], n: int, first_lineno: int, first_offset: int) -> np.ndarray:
    ne = n * (n - 1) // 2
    offset = first_offset
    for k, raw in enumerate(lines):
        body = raw.rstrip(b"\r\n")
        if len(body) != ne:
            raise FilterInputError(
                f"expected {ne} color characters for K_{n}, got {len(body)}", first_lineno + k, offset
            )
        offset += len(raw)
    X = np.frombuffer(b"".join(l.rstrip(b"\r\n") for l in lines), dtype=np.uint8).reshape(len(lines), ne)
    X = X - np.uint8(ord("A"))
    bad = np.flatnonzero((X >= n - 1).any(axis=1) | ~valid_batch(np.minimum(X, n - 2), n))
    if len(bad):
        k = int(bad[0])
        msg = "color out of range" if (X[k] >= n - 1).any() else "a color class is not a perfect matching"
        raise FilterInputError(msg, first_lineno + k, first_offset + sum(len(l) for l in lines[:k]))
    return X


def process_chunk(args) -> tuple[list[bytes], FilterReport]:
    """Filter one chunk of raw compact lines; survivors keep their input order."""
    lines, n, stages, first_lineno, first_offset = args
    X = _decode_chunk(lines, n, first_lineno, first_offset)
    rep = FilterReport(read=len(lines))
    alive = np.ones(len(lines), dtype=bool)
    if "c4" in stages:
        ok = c4_batch(X, n)
        rep.rejected_c4 = int((~ok).sum())
        alive &= ok
    if "k4e" in stages:
        idx = np.flatnonzero(alive)
        ok = k4e_batch(X[idx], n)
        rep.rejected_k4e = int((~ok).sum())
        alive[idx[~ok]] = False
    rep.survived = int(alive.sum())
    survivors = [lines[i].rstrip(b"\r\n") + b"\n" for i in np.flatnonzero(alive)]
    return survivors, rep


def _chunks(fh, n_hint: Optional[int], chunk_size: int, lineno: int, offset: int, state: dict):
    """Read raw lines in chunks, skipping blanks; infers n from the first record."""
    n = n_hint
    buf, buf_line, buf_off = [], None, None
    for raw in fh:
        lineno += 1
        if raw.strip():
            if n is None:
                n = _infer_n(len(raw.rstrip(b"\r\n")), lineno, offset)
                state["n"] = n
            if not buf:
                buf_line, buf_off = lineno, offset
            buf.append(raw if raw.endswith(b"\n") else raw + b"\n")
        offset += len(raw)
        if len(buf) == chunk_size:
            yield (buf, n, buf_line, buf_off), lineno, offset
            buf = []
    if buf:
        yield (buf, n, buf_line, buf_off), lineno, offset


def _infer_n(m: int, lineno: int, offset: int) -> int:
    n = 2
    while n * (n - 1) // 2 < m:
        n += 1
    if n * (n - 1) // 2 != m or n % 2:
        raise FilterInputError(f"{m} characters is not the edge count of K_n, n even", lineno, offset)
    return n


def filter_stream(
    in_path,
    out_path,
    stages: Iterable[str] = STAGES,
    checkpoint_path=None,
    workers: Optional[int] = None,
    chunk_size: int = 20000,
    n: Optional[int] = None,
    max_chunks: Optional[int] = None,
) -> FilterReport:
    """Stream ``in_path`` (.1fc) through the chosen stages into ``out_path``.

    With ``checkpoint_path`` an existing checkpoint is resumed (input seek,
    survivors file truncated to the recorded size) and the checkpoint is
    rewritten after every chunk.  ``max_chunks`` stops early, leaving a
    resumable state behind.  Worker count defaults to ``$HYPERFOCUS_WORKERS``
    or 1; output does not depend on it.
    """
    stages = tuple(s for s in STAGES if s in set(stages))
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages {sorted(unknown)}")
    if workers is None:
        workers = int(os.environ.get("HYPERFOCUS_WORKERS", "1"))
    ck = None
    if checkpoint_path and os.path.exists(checkpoint_path):
        ck = Checkpoint.load(checkpoint_path)
        n = n or ck.n
    if ck is None:
        ck = Checkpoint(0, 0, 0, FilterReport(), n)
        open(out_path, "wb").close()
    report = ck.report
    state = {"n": n}
    with open(in_path, "rb") as fin, open(out_path, "r+b") as fout:
        fin.seek(ck.offset)
        fout.truncate(ck.out_size)
        fout.seek(ck.out_size)
        gen = _chunks(fin, n, chunk_size, ck.lineno, ck.offset, state)
        positions = []

        def jobs():
            for k, (job, lineno, offset) in enumerate(gen):
                if max_chunks is not None and k >= max_chunks:
                    return
                positions.append((lineno, offset))
                lines, n_, first_line, first_off = job
                yield lines, n_, stages, first_line, first_off

        if workers > 1:
            pool = mp.get_context("fork").Pool(workers)
            results = pool.imap(process_chunk, jobs())
        else:
            pool = None
            results = map(process_chunk, jobs())
        try:
            for k, (survivors, rep) in enumerate(results):
                fout.writelines(survivors)
                fout.flush()
                report = report + rep
                lineno, offset = positions[k]
                ck = Checkpoint(offset, lineno, fout.tell(), report, state["n"])
                if checkpoint_path:
                    ck.save(checkpoint_path)
                log.debug("chunk %d: %s", k, rep.summary())
        finally:
            if pool is not None:
                pool.close()
                pool.join()
    return report


def filter_factorizations(Fs: Iterable[OneFactorization], stages: Iterable[str] = STAGES):
    """In-memory convenience: (survivors, report) using the scalar predicates."""
    stages = set(stages)
    rep = FilterReport()
    out = []
    for F in Fs:
        rep.read += 1
        if "c4" in stages and c4_filter(F) is not None:
            rep.rejected_c4 += 1
            continue
        if "k4e" in stages and k4e_filter(F) is not None:
            rep.rejected_k4e += 1
            continue
        rep.survived += 1
        out.append(F)
    return out, rep
