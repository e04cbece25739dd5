"""Command line entry point: ``python -m seidelgen <command> ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .canonical import seidel_canon
from .core import MAX_S6_ORDER, CensusRecord, MalformedGraphError, S6Error, read_census
from .generator import Generated, extend_level, seed
from .linalg import ArithmeticCheckError, IntPolynomial, charpoly_batch, check_seidel_charpoly
from .prune import parse_prune
from .spectral import SpectrumSpec, cospectral_census, distinct_count_from_poly, lambda_min_class_poly

log = logging.getLogger("seidelgen")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
SPLIT_TARGET = 64  # starting points are taken from the first level with at least this many classes


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- manifests


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict[str, str]
    shard: tuple[int, int] = (0, 1)
    input: str = "-"
    output: str = "-"
    jobs: int = 1
    started: str = ""
    finished: str = ""
    counts: dict[int, int] = field(default_factory=dict)
    checkpoint: int = -1  # last fully written starting point (position within the shard)
    offset: int = 0  # output size at the checkpoint

    @staticmethod
    def path_for(output: str | os.PathLike) -> Path:
        return Path(str(output) + ".manifest")

    def dump(self) -> str:
        lines = [
            f"subcommand: {self.subcommand}",
            *(f"param.{k}: {v}" for k, v in sorted(self.parameters.items())),
            f"shard: {self.shard[0]}/{self.shard[1]}",
            f"input: {self.input}",
            f"output: {self.output}",
            f"jobs: {self.jobs}",
            f"started: {self.started}",
            f"finished: {self.finished}",
            *(f"count.{k}: {v}" for k, v in sorted(self.counts.items())),
            f"checkpoint: {self.checkpoint}",
            f"offset: {self.offset}",
        ]
        return "\n".join(lines) + "\n"

    def save(self, output) -> None:
        path = self.path_for(output)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(self.dump())
        os.replace(tmp, path)

    @classmethod
    def load(cls, output) -> "RunManifest":
        raw: dict[str, str] = {}
        for line in cls.path_for(output).read_text().splitlines():
            if line.strip():
                k, _, v = line.partition(":")
                raw[k.strip()] = v.strip()
        params = {k[6:]: v for k, v in raw.items() if k.startswith("param.")}
        counts = {int(k[6:]): int(v) for k, v in raw.items() if k.startswith("count.")}
        i, m = raw["shard"].split("/")
        return cls(
            raw["subcommand"], params, (int(i), int(m)), raw["input"], raw["output"], int(raw["jobs"]),
            raw.get("started", ""), raw.get("finished", ""), counts, int(raw["checkpoint"]), int(raw["offset"]),
        )


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S")


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        i, m = (int(v) for v in text.split("/"))
    except ValueError:
        raise UsageError(f"bad shard {text!r}, expected i/m") from None
    if m < 1 or not 0 <= i < m:
        raise UsageError(f"bad shard {text!r}")
    return i, m


def _load_single_order(path) -> list[CensusRecord]:
    try:
        recs = read_census(path)
    except OSError as exc:
        raise InputError(str(exc)) from None
    orders = {r.matrix.order for r in recs}
    if len(orders) > 1:
        raise InputError(f"{path}: census mixes orders {sorted(orders)}")
    return recs


# ---------------------------------------------------------------- generate


def _subtree(args):
    S, prunes, n_target = args
    counts = {}
    level = [S]
    gens: list[Generated] = []
    order = S.order
    while order < n_target and level:
        gens = extend_level(level, prunes)
        order += 1
        counts[order] = len(gens)
        level = [g.matrix for g in gens]
    return counts, gens


def _annotated(gens: list[Generated]) -> list[CensusRecord]:
    out = []
    for g in gens:
        aut = g.aut_order or seidel_canon(g.matrix).aut_order
        out.append(CensusRecord(g.matrix, [str(aut)]))
    return out


def cmd_generate(args) -> int:
    n = args.order
    if n < 1 or n > MAX_S6_ORDER:
        raise InputError(f"unsupported order {n} (1..{MAX_S6_ORDER})")
    shard = _parse_shard(args.shard)
    try:
        prunes = [p for spec in args.prune for p in parse_prune(spec)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = [r.matrix for r in _load_single_order(args.input)] if args.input else seed()
    if start and start[0].order > n:
        raise InputError(f"input order {start[0].order} exceeds --order {n}")
    params = {"order": str(n), "prune": ",".join(args.prune) or "none"}
    out = Path(args.out)

    manifest = RunManifest("generate", params, shard, args.input or "-", str(out), args.jobs, _now())
    if args.resume and RunManifest.path_for(out).exists():
        old = RunManifest.load(out)
        if old.parameters != params or old.shard != shard or old.input != manifest.input:
            raise InputError("manifest parameters differ from this invocation; refusing to resume")
        manifest.counts, manifest.checkpoint, manifest.offset = old.counts, old.checkpoint, old.offset
        manifest.started = old.started
        with open(out, "r+b") as fh:
            fh.truncate(manifest.offset)
    else:
        out.write_bytes(b"")

    # unsharded prefix: advance until there are enough starting points
    level = [Generated(S, 0, b"") for S in start]
    order = level[0].matrix.order if level else n
    counts: dict[int, int] = {order: len(level)}
    while order < n and 0 < len(level) < SPLIT_TARGET:
        level = extend_level([g.matrix for g in level], prunes, jobs=args.jobs)
        order += 1
        counts[order] = len(level)
    if order == n:
        # nothing left to shard: shard the final level itself
        mine = [g for k, g in enumerate(level) if k % shard[1] == shard[0]]
        with open(out, "a") as fh:
            for rec in _annotated(mine):
                fh.write(rec.line() + "\n")
        manifest.counts = {**counts, n: len(mine)}
    else:
        points = [g.matrix for k, g in enumerate(level) if k % shard[1] == shard[0]]
        if manifest.checkpoint < 0:
            manifest.counts = dict(counts)
            manifest.counts[order] = len(points)
        todo = list(range(manifest.checkpoint + 1, len(points)))
        tasks = ((points[k], tuple(prunes), n) for k in todo)
        if args.jobs > 1 and len(todo) > 1:
            import multiprocessing as mp

            pool = mp.get_context("fork").Pool(args.jobs)
            results = pool.imap(_subtree, tasks, chunksize=1)
        else:
            pool = None
            results = map(_subtree, tasks)
        try:
            with open(out, "a") as fh:
                for k, (sub_counts, gens) in zip(todo, results):
                    for rec in _annotated(gens):
                        fh.write(rec.line() + "\n")
                    fh.flush()
                    for o, c in sub_counts.items():
                        manifest.counts[o] = manifest.counts.get(o, 0) + c
                    manifest.checkpoint = k
                    manifest.offset = fh.tell()
                    manifest.save(out)
        finally:
            if pool is not None:
                pool.close()
                pool.join()
        for o in range(order + 1, n + 1):
            manifest.counts.setdefault(o, 0)
    manifest.finished = _now()
    manifest.save(out)
    print("order\tclasses")
    for o in sorted(manifest.counts):
        print(f"{o}\t{manifest.counts[o]}")
    return EXIT_OK


# ---------------------------------------------------------------- census reports


def _charpolys(recs: list[CensusRecord]) -> list[tuple[int, ...]]:
    if not recs:
        return []
    n = recs[0].matrix.order
    polys: list[tuple[int, ...]] = []
    step = 4096
    for i in range(0, len(recs), step):
        stack = np.stack([r.matrix.array for r in recs[i:i + step]])
        for c in charpoly_batch(stack):
            check_seidel_charpoly(IntPolynomial(c), n)
            polys.append(tuple(c))
    return polys


def _is_pruned(path) -> bool:
    mpath = RunManifest.path_for(path)
    if not mpath.exists():
        return False
    try:
        return RunManifest.load(path).parameters.get("prune", "none") != "none"
    except (KeyError, ValueError):
        return False


def _aut_orders(recs: list[CensusRecord]) -> list[int]:
    out = []
    for r in recs:
        if r.annotations and r.annotations[0].isdigit() and int(r.annotations[0]) > 0:
            out.append(int(r.annotations[0]))
        else:
            out.append(seidel_canon(r.matrix).aut_order)
    return out


def cmd_census(args) -> int:
    from .verify import PrunedCensusError, aut_histogram, mass_check

    recs = _load_single_order(args.input)
    n = recs[0].matrix.order if recs else 0
    report = args.report
    if report == "charpoly":
        s = cospectral_census(_charpolys(recs), shard_prime=args.mod_prime)
        print("order\tclasses\tdistinct_polys\twith_mate\tmax_family")
        print(f"{n}\t{len(recs)}\t{s.distinct_polys}\t{s.with_mate}\t{s.max_family}")
    elif report == "distinct-eig":
        hist = Counter(distinct_count_from_poly(IntPolynomial(p)) for p in _charpolys(recs))
        print("k\tclasses")
        for k in range(1, n + 1):
            print(f"{k}\t{hist.get(k, 0)}")
    elif report == "lambda-min":
        polys = [IntPolynomial(p) for p in _charpolys(recs)]
        print("x\tlambda_min_ge_x\tlambda_min_eq_x")
        for x in (-3, -5, -7):
            cls = [lambda_min_class_poly(p, x) for p in polys]
            print(f"{x}\t{sum(c >= 0 for c in cls)}\t{sum(c == 0 for c in cls)}")
    elif report == "aut-hist":
        print("aut_order\tclasses")
        for a, c in aut_histogram(_aut_orders(recs)).items():
            print(f"{a}\t{c}")
    elif report == "mass":
        try:
            res = mass_check(n, _aut_orders(recs), pruned=args.pruned or _is_pruned(args.input))
        except PrunedCensusError as exc:
            raise InputError(str(exc)) from None
        print(res.line())
        if not res.ok:
            return EXIT_INTERNAL
    return EXIT_OK


# ---------------------------------------------------------------- three eigenvalues


def cmd_three_ev(args) -> int:
    from . import three_ev as te

    if args.action == "feasible":
        if args.order < 3:
            raise InputError("--order must be at least 3")
        print("spectrum\tself_negating")
        for f in te.enumerate_feasible(args.order):
            print(f"{f.spec}\t{int(f.self_negating)}")
        return EXIT_OK
    if args.action == "count":
        total, rows = te.count_three_ev(args.order, jobs=args.jobs)
        print("spectrum\tself_negating\tclasses")
        for f, c in rows:
            print(f"{f.spec}\t{int(f.self_negating)}\t{c}")
        print(f"total\t-\t{total}")
        return EXIT_OK
    if args.action == "search":
        try:
            spec = SpectrumSpec.parse(args.spectrum)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if not spec.is_seidel_consistent():
            raise InputError(f"{spec}: trace identities fail")
        failed = te.necessary_conditions(spec)
        if failed:
            raise InputError(f"{spec}: fails necessary condition(s) {', '.join(failed)}")
        if te.is_open(spec):
            msg = f"{spec}: pruning is weak for this spectrum and the search may not finish"
            if not args.allow_open:
                raise UsageError(msg + "; pass --allow-open to run it anyway")
            print("warning: " + msg, file=sys.stderr)
        res = te.search_spectrum(spec, jobs=args.jobs)
        if args.out:
            with open(args.out, "w") as fh:
                for S in res.matrices:
                    fh.write(CensusRecord(S).line() + "\n")
        print(res.count)
        return EXIT_OK
    if args.action == "regular-check":
        recs = _load_single_order(args.input)
        print("s6\tregular_member")
        for r in recs:
            try:
                ok = te.has_regular_switching_graph(r.matrix)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            print(f"{CensusRecord(r.matrix).line()}\t{int(ok)}")
        return EXIT_OK
    raise UsageError(f"unknown action {args.action}")


# ---------------------------------------------------------------- lines


def _parse_angle(text: str) -> int:
    num, _, den = text.partition("/")
    try:
        if int(num) != 1:
            raise ValueError
        k = int(den)
    except ValueError:
        raise UsageError(f"angle must look like 1/K, got {text!r}") from None
    return k


def cmd_lines(args) -> int:
    from .equiangular import LineSystemTarget, check_seed, iter_lines

    k = _parse_angle(args.angle)
    start = [r.matrix for r in _load_single_order(args.input)] if args.input else None
    bound = {"on": True, "off": False, "auto": start is None}[args.lambda_min_bound]
    try:
        target = LineSystemTarget(args.dimension, k, bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if start is not None:
        bad = check_seed(target, start)
        if bad:
            raise InputError(f"{len(bad)} seed matrices violate the prune (first at line {bad[0] + 1})")
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    print("order\tclasses")
    for order, level in iter_lines(target, args.max_order, start, jobs=args.jobs):
        print(f"{order}\t{len(level)}", flush=True)
        if args.out_dir:
            with open(Path(args.out_dir) / f"lines_{order}.s6", "w") as fh:
                for g in level:
                    fh.write(CensusRecord(g.matrix).line() + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seidelgen", description="Seidel matrix generation and classification")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="classes of a given order, optionally pruned")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--prune", action="append", default=[], help="lambda-min-ge:X or eig-mult:R:D")
    g.add_argument("--in", dest="input", help="start census of a single order (default: order 1)")
    g.add_argument("--out", required=True)
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--shard", default="0/1", help="i/m: keep starting points with index = i mod m")
    g.add_argument("--resume", action="store_true", help="continue from the manifest checkpoint")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", help="reports on a census file")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--report", required=True, choices=["charpoly", "distinct-eig", "lambda-min", "aut-hist", "mass"])
    c.add_argument("--mod-prime", type=int, help="bucket characteristic polynomials by |det| mod P")
    c.add_argument("--pruned", action="store_true", help="declare the census pruned (mass refuses)")
    c.set_defaults(func=cmd_census)

    t = sub.add_parser("three-ev", help="matrices with exactly three distinct eigenvalues")
    tsub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    tf = tsub.add_parser("feasible")
    tf.add_argument("--order", type=int, required=True)
    tc = tsub.add_parser("count")
    tc.add_argument("--order", type=int, required=True)
    tc.add_argument("--jobs", type=int, default=1)
    ts = tsub.add_parser("search")
    ts.add_argument("--spectrum", required=True, help='e.g. "[-3]^2,[1]^3,[3]^1" or "[0]^1,Q(0,-5)^2"')
    ts.add_argument("--allow-open", action="store_true")
    ts.add_argument("--out")
    ts.add_argument("--jobs", type=int, default=1)
    tr = tsub.add_parser("regular-check")
    tr.add_argument("--in", dest="input", required=True)
    t.set_defaults(func=cmd_three_ev)

    ln = sub.add_parser("lines", help="equiangular line searches")
    ln.add_argument("--dimension", type=int, required=True)
    ln.add_argument("--angle", required=True, help="1/K with K odd")
    ln.add_argument("--max-order", type=int, required=True)
    ln.add_argument("--in", dest="input", help="seed census")
    ln.add_argument("--lambda-min-bound", choices=["auto", "on", "off"], default="auto",
                    help="also prune on lambda_min >= -K (auto: only without a seed)")
    ln.add_argument("--out-dir")
    ln.add_argument("--jobs", type=int, default=1)
    ln.set_defaults(func=cmd_lines)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"seidelgen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, S6Error, MalformedGraphError, FileNotFoundError) as exc:
        print(f"seidelgen: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, ArithmeticCheckError) as exc:
        print(f"seidelgen: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
