"""Command line front end: enumerate / ingest -> filter -> embed -> construct and compare.

Exit codes: 0 success (or Sat), 1 data error or negative answer, 2 usage
error, 10 Unsat, 11 search budget exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import hashlib
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from . import arcs, embed as emb, filters, onefact, twelve
from .gf2m import make_ctx
from .pg2 import PG2, read_geometry, write_geometry

log = logging.getLogger("hyperfocus")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSAT, EXIT_BUDGET = 0, 1, 2, 10, 11


# ---------- reading factorizations


def read_factorizations(path) -> list[onefact.OneFactorization]:
    """``.1f`` text (one or more ``onefact`` blocks) or ``.1fc`` compact lines."""
    text = Path(path).read_text()
    body = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if body and body[0].lstrip().startswith("onefact"):
        blocks, cur = [], []
        for l in body:
            if l.lstrip().startswith("onefact") and cur:
                blocks.append(cur)
                cur = []
            cur.append(l)
        blocks.append(cur)
        return [onefact.parse_text("\n".join(b)) for b in blocks]
    return [F for F, _, _ in ingest(path)]


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


# ---------- ingestion


@dataclass
class IngestState:
    offset: int = 0
    lineno: int = 0
    count: int = 0
    n: Optional[int] = None

    def save(self, path) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(asdict(self), fh, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "IngestState":
        with open(path) as fh:
            return cls(**json.load(fh))


def ingest(path, expected_n: Optional[int] = None, state: Optional[IngestState] = None,
           chunk_size: int = 20000) -> Iterator[tuple[onefact.OneFactorization, int, int]]:
    """Validated records of a ``.1fc`` file as (F, line number, byte offset).

    ``state`` (if given) is advanced after every chunk, so saving it between
    records of different chunks gives a resumable position.  The first bad
    record raises :class:`filters.FilterInputError` carrying its offset.
    """
    st = state if state is not None else IngestState()
    n = expected_n or st.n
    box: dict = {"n": n}
    with open(path, "rb") as fh:
        fh.seek(st.offset)
        for (lines, n_, first_line, first_off), lineno, offset in filters._chunks(
            fh, n, chunk_size, st.lineno, st.offset, box
        ):
            if expected_n is not None and n_ != expected_n:
                raise filters.FilterInputError(f"record is for K_{n_}, expected K_{expected_n}", first_line, first_off)
            X = filters._decode_chunk(lines, n_, first_line, first_off)
            off = first_off
            for k, row in enumerate(X):
                yield onefact.OneFactorization(n_, tuple(int(c) for c in row)), first_line + k, off
                off += len(lines[k])
            st.offset, st.lineno, st.count, st.n = offset, lineno, st.count + len(lines), n_


# ---------- reports


@dataclass
class JobReport:
    input: str = ""
    input_sha256: str = ""
    n: int = 0
    filter: filters.FilterReport = field(default_factory=filters.FilterReport)
    survivors: list = field(default_factory=list)  # compact strings, input order
    verdicts: dict = field(default_factory=dict)  # survivor index -> {h: verdict}
    contradictions: dict = field(default_factory=dict)  # survivor index -> {h: {kind: count}}
    parameters: dict = field(default_factory=dict)  # survivor index -> {h: "a=.. minpoly=.."}
    construction: str = ""
    construction_ok: Optional[bool] = None
    matches_construction: dict = field(default_factory=dict)  # survivor index -> bool
    seconds: dict = field(default_factory=dict)

    def check_counts(self) -> bool:
        f = self.filter
        return f.read == f.rejected_c4 + f.rejected_k4e + f.survived

    def to_markdown(self, timings: bool = True) -> str:
        f = self.filter
        out = [
            f"# Classification of 1-factorizations of K_{self.n}",
            "",
            f"- input: `{self.input}`",
            f"- sha256: `{self.input_sha256}`",
            "",
            "## Filters",
            "",
            "| stage | in | rejected | out |",
            "|---|---|---|---|",
            f"| c4 | {f.read} | {f.rejected_c4} | {f.read - f.rejected_c4} |",
            f"| k4e | {f.read - f.rejected_c4} | {f.rejected_k4e} | {f.survived} |",
            "",
            f"survived: {f.survived}",
            "",
        ]
        if self.survivors:
            hs = sorted({h for v in self.verdicts.values() for h in v})
            out += ["## Embedding", "", "| survivor | " + " | ".join(f"h={h}" for h in hs) + " |",
                    "|---|" + "---|" * len(hs)]
            for i, s in enumerate(self.survivors):
                row = self.verdicts.get(i, {})
                out.append(f"| {i} | " + " | ".join(row.get(h, "-") for h in hs) + " |")
            out.append("")
            for i, s in enumerate(self.survivors):
                out.append(f"- survivor {i}: `{s}`")
                for h, kinds in sorted(self.contradictions.get(i, {}).items()):
                    if kinds:
                        out.append(f"  - h={h} contradictions: " + ", ".join(f"{k}={v}" for k, v in sorted(kinds.items())))
                for h, p in sorted(self.parameters.get(i, {}).items()):
                    out.append(f"  - h={h} witness: {p}")
            out.append("")
        if self.construction:
            out += ["## Construction", "", f"- {self.construction}: verified={self.construction_ok}"]
            for i, ok in sorted(self.matches_construction.items()):
                out.append(f"- survivor {i} isomorphic to construction: {ok}")
            out.append("")
        if timings:
            out += ["## Timing", ""] + [f"- {k}: {v:.2f} s" for k, v in self.seconds.items()] + [""]
        return "\n".join(out)


def reference_construction(n: int, h_max: int = 10):
    """A subgroup construction of a hyperfocused n-arc in the smallest field h <= h_max."""
    d = n - 1
    for h in range(1, h_max + 1):
        q = 1 << h
        ctx = make_ctx(h)
        if d >= 3 and (q + 1) % d == 0 and d < q + 1:
            arc, L = arcs.cyclic_subgroup_arc(ctx, d)
            return f"cyclic d={d} over GF(2^{h})", ctx, arc, L
        if d >= 3 and (q - 1) % d == 0:
            arc, L = arcs.mult_subgroup_arc(ctx, d)
            return f"mult d={d} over GF(2^{h})", ctx, arc, L
    return None


def classify(in_path, n: int, scan: int, survivors_path=None, checkpoint_path=None,
             workers: Optional[int] = None, chunk_size: int = 20000, max_nodes=None,
             time_limit=None) -> JobReport:
    rep = JobReport(input=str(in_path), input_sha256=file_digest(in_path), n=n)
    t0 = time.perf_counter()
    tmpdir = None
    if survivors_path is None:
        tmpdir = tempfile.TemporaryDirectory()
        survivors_path = os.path.join(tmpdir.name, "survivors.1fc")
    rep.filter = filters.filter_stream(in_path, survivors_path, filters.STAGES, checkpoint_path,
                                       workers, chunk_size, n)
    rep.seconds["filter"] = time.perf_counter() - t0
    survivors = [F for F, _, _ in ingest(survivors_path, n)] if rep.filter.survived else []
    if tmpdir is not None:
        tmpdir.cleanup()
    rep.survivors = [F.compact() for F in survivors]

    t0 = time.perf_counter()
    for i, F in enumerate(survivors):
        res = emb.scan_fields(F, scan, max_nodes=max_nodes, time_limit=time_limit)
        rep.verdicts[i] = {h: r.status.value for h, r in res.items()}
        rep.contradictions[i] = {h: dict(r.contradictions) for h, r in res.items() if not r.sat}
        for h, r in res.items():
            if r.sat and n >= 5:
                rep.parameters.setdefault(i, {})[h] = _witness_summary(r)
    rep.seconds["embed"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ref = reference_construction(n)
    if ref is not None:
        desc, ctx, arc, L = ref
        fd = arcs.is_hyperfocused(PG2(ctx), arc.points, L)
        rep.construction = desc
        rep.construction_ok = fd is not None
        if fd is not None:
            G = arcs.induced_factorization(arc.k, fd)
            for i, F in enumerate(survivors):
                rep.matches_construction[i] = onefact.isomorphic(F, G) is not None
    rep.seconds["construction"] = time.perf_counter() - t0
    return rep


def _witness_summary(r: emb.EmbeddingResult) -> str:
    from .gf2m import min_poly, poly_str

    try:
        a = twelve.extract_parameter(r)
    except Exception:
        return "vertex 4 is not on the frame conic"
    return f"a={a:x}, min_poly(a)={poly_str(min_poly(r.ctx, a), 'x')}"


# ---------- subcommands


def _out(path):
    return open(path, "w") if path and path != "-" else contextlib.nullcontext(sys.stdout)


def cmd_enumerate(args) -> int:
    t0 = time.perf_counter()
    reps = list(onefact.enumerate_factorizations(args.n))
    with _out(args.out) as fh:
        for F in reps:
            fh.write(F.compact() + "\n" if args.format == "compact" else onefact.format_text(F))
    log.info("K_%d: %d classes in %.1f s", args.n, len(reps), time.perf_counter() - t0)
    return EXIT_OK


def cmd_filter(args) -> int:
    stages = [s.strip() for s in args.stages.split(",") if s.strip()]
    rep = filters.filter_stream(args.input, args.survivors, stages, args.checkpoint, args.workers,
                                args.chunk_size, args.n)
    text = rep.to_text() + rep.summary() + "\n"
    if args.report:
        Path(args.report).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def _print_result(res: emb.EmbeddingResult, F) -> None:
    if res.sat:
        sys.stdout.write(write_geometry(res.ctx, res.vertices, [res.line]))
        plane = PG2(res.ctx)
        for c, X in enumerate(res.focus):
            sys.stdout.write(f"# {onefact.LETTERS[c]} {plane.fmt(X, 'p')[2:]}\n")
    else:
        sys.stdout.write(res.describe() + "\n")
        for kind, ex in sorted(res.examples.items()):
            sys.stdout.write(f"  {kind}: {ex.detail}\n")


def cmd_embed(args) -> int:
    Fs = read_factorizations(args.input)
    if args.index >= len(Fs):
        raise ValueError(f"{args.input} holds {len(Fs)} factorizations")
    F = Fs[args.index]
    kw = dict(prune=not args.no_prune, max_nodes=args.max_nodes, time_limit=args.time_limit)
    if args.scan:
        res = emb.scan_fields(F, args.scan, **kw)
        for h, r in res.items():
            sys.stdout.write(f"h={h}\t{r.status.value}\t{r.nodes} nodes\t{r.describe()}\n")
        if any(r.status is emb.Status.BUDGET for r in res.values()):
            return EXIT_BUDGET
        return EXIT_OK if any(r.sat for r in res.values()) else EXIT_UNSAT
    if args.h is None:
        raise ValueError("give --h or --scan")
    res = emb.embed(F, make_ctx(args.h), **kw)
    _print_result(res, F)
    if res.sat and not emb.verify_embedding(res, F):
        raise AssertionError("satisfying assignment failed verification")
    return {emb.Status.SAT: EXIT_OK, emb.Status.UNSAT: EXIT_UNSAT, emb.Status.BUDGET: EXIT_BUDGET}[res.status]


def cmd_construct(args) -> int:
    ctx = make_ctx(args.h)
    make = arcs.mult_subgroup_arc if args.mode == "mult" else arcs.cyclic_subgroup_arc
    arc, L = make(ctx, args.order)
    text = write_geometry(ctx, arc.points, [L])
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not args.verify:
        return EXIT_OK
    return _verify(ctx, list(arc.points), L)


def _verify(ctx, pts, L) -> int:
    plane = PG2(ctx)
    if not arcs.is_arc(plane, pts):
        print("not an arc", file=sys.stderr)
        return EXIT_FAIL
    fd = arcs.is_hyperfocused(plane, pts, L)
    if fd is None:
        print(f"not hyperfocused on {plane.fmt(L, 'l')}", file=sys.stderr)
        return EXIT_FAIL
    F = arcs.induced_factorization(len(pts), fd)
    kind = plane.classify_line(plane.standard_conic(), L).value
    print(f"# hyperfocused {len(pts)}-arc; focus line {kind} to x^2 = yz", file=sys.stderr)
    print(f"# induced factorization {F.compact()}", file=sys.stderr)
    if len(pts) == 12:
        iso = onefact.isomorphic(F, twelve.fixture(1))
        print(f"# isomorphic to the GF(2^5) survivor: {iso is not None}", file=sys.stderr)
        if iso is None:
            return EXIT_FAIL
    return EXIT_OK


def cmd_verify_arc(args) -> int:
    with open(args.input) as fh:
        ctx, pts, lns = read_geometry(fh)
    plane = PG2(ctx)
    if not arcs.is_arc(plane, pts):
        print("not an arc")
        return EXIT_FAIL
    if lns:
        return _verify(ctx, pts, lns[0])
    found = arcs.find_focus_lines(plane, pts)
    for L, fd in found:
        print(plane.fmt(L, "l"))
    return EXIT_OK if found else EXIT_FAIL


def cmd_canon(args) -> int:
    for F in read_factorizations(args.input):
        print(onefact.canonical_string(F))
    return EXIT_OK


def cmd_iso(args) -> int:
    A = read_factorizations(args.a)[args.index_a]
    B = read_factorizations(args.b)[args.index_b]
    m = onefact.isomorphic(A, B)
    if m is None:
        print("not isomorphic")
        return EXIT_FAIL
    print("vertices " + " ".join(map(str, m.vertices)))
    print("colors " + " ".join(onefact.LETTERS[c] for c in m.colors))
    return EXIT_OK


def cmd_ingest(args) -> int:
    st = IngestState.load(args.checkpoint) if args.checkpoint and os.path.exists(args.checkpoint) else IngestState()
    last = st.offset
    for _F, _line, _off in ingest(args.input, args.n, st):
        if args.checkpoint and st.offset != last:
            st.save(args.checkpoint)
            last = st.offset
    if args.checkpoint:
        st.save(args.checkpoint)
    print(f"records={st.count}")
    print(f"n={st.n}")
    print(f"bytes={st.offset}")
    return EXIT_OK


def cmd_classify(args) -> int:
    rep = classify(args.input, args.n, args.scan, args.survivors, args.checkpoint, args.workers,
                   args.chunk_size, args.max_nodes, args.time_limit)
    text = rep.to_markdown(timings=not args.no_timing)
    if args.report:
        with open(args.report, "a") as fh:
            fh.write(text + "\n")
    sys.stdout.write(text)
    return EXIT_OK if rep.check_counts() else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperfocus", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("enumerate", help="nonisomorphic 1-factorizations of K_n (n <= 10)")
    s.add_argument("n", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=("compact", "text"), default="compact")
    s.set_defaults(func=cmd_enumerate)

    def stream_opts(s):
        s.add_argument("--checkpoint")
        s.add_argument("--workers", type=int)
        s.add_argument("--chunk-size", type=int, default=20000)
        s.add_argument("--n", type=int)

    s = sub.add_parser("filter", help="stream a .1fc file through the c4/k4e stages")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--stages", default="c4,k4e")
    s.add_argument("--survivors", required=True)
    s.add_argument("--report")
    stream_opts(s)
    s.set_defaults(func=cmd_filter)

    def search_opts(s):
        s.add_argument("--max-nodes", type=int)
        s.add_argument("--time-limit", type=float)

    s = sub.add_parser("embed", help="search for a hyperfocused embedding over GF(2^h)")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--h", type=int)
    s.add_argument("--scan", type=int, metavar="HMAX")
    s.add_argument("--no-prune", action="store_true")
    search_opts(s)
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("construct", help="subgroup construction of a hyperfocused arc")
    s.add_argument("--mode", choices=("mult", "cyclic"), required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify-arc", help="check an arc file for hyperfocus")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_verify_arc)

    s = sub.add_parser("canon", help="canonical compact form of each factorization")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("iso", help="isomorphism between two factorizations")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--index-a", type=int, default=0)
    s.add_argument("--index-b", type=int, default=0)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("ingest", help="validate a .1fc file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--checkpoint")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("classify", help="filters, field scan and comparison with the construction")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--scan", type=int, default=7)
    s.add_argument("--survivors")
    s.add_argument("--report", help="append the markdown report here")
    s.add_argument("--checkpoint")
    s.add_argument("--workers", type=int)
    s.add_argument("--chunk-size", type=int, default=20000)
    s.add_argument("--no-timing", action="store_true")
    search_opts(s)
    s.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(message)s")
    try:
        return args.func(args)
    except (filters.FilterInputError, onefact.FactorizationError, arcs.ArcError, emb.EmbedError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
