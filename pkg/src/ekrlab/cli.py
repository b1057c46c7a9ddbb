"""Command-line entry point: ``ekrlab {exact,formula,construct,verify,table,oracle}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 search
budget exhausted before optimality was proven.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from pathlib import Path

from . import bounds, constructions, shifting
from .bounds import binom, formula_F
from .clique import DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET, graph_from_predicate, max_clique
from .core import Lk_size, VectorFamily, iter_bits, iter_Lk, min_pairwise_product
from .errors import EkrlabError
from .setfam import (
    SetFamily,
    cross_intersection_report,
    is_t_intersecting,
)
from .solver import exact_F, exact_F_forbidden, verify_vector_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "EKRLAB_BUDGET_MS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- output helpers ------------------------------------------------------------

def write_json_atomic(path: str | Path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(obj, fh, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_family(path: str | Path):
    obj = json.loads(Path(path).read_text())
    if "vectors" in obj:
        return VectorFamily.from_json(obj)
    if "sets" in obj:
        return SetFamily.from_json(obj)
    raise EkrlabError(f"{path}: neither a vector nor a set family file")


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump(report, out, indent=1, default=str)
        out.write("\n")
    elif fmt == "tsv":
        keys = [k for k, v in report.items() if not isinstance(v, (dict, list))]
        out.write("\t".join(keys) + "\n")
        out.write("\t".join(str(report[k]) for k in keys) + "\n")
    else:
        for key, value in report.items():
            if isinstance(value, dict):
                value = ", ".join(f"{k}={v}" for k, v in value.items())
            elif isinstance(value, list):
                value = "; ".join(map(str, value))
            out.write(f"{key}: {value}\n")


def time_budget(args) -> float:
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env) / 1000.0
    return args.time_budget


# -- commands ----------------------------------------------------------------

def cmd_exact(args) -> int:
    solve = exact_F if args.mode == "atleast" else exact_F_forbidden
    res = solve(args.n, args.k, args.l, node_budget=args.node_budget,
                time_budget=time_budget(args), threads=args.threads,
                symmetry_break=args.symmetry_break)
    formula = formula_F(args.n, args.k, args.l) if args.mode == "atleast" else None
    report = {
        "command": "exact",
        "parameters": {"n": args.n, "k": args.k, "l": args.l, "mode": args.mode},
        "value": res.value,
        "source": "search",
        "optimal": res.optimal,
        "formula": None if formula is None else formula.value,
        "nodes": res.nodes,
        "elapsed_ms": round(res.elapsed * 1000, 1),
    }
    if args.mode == "forbid":
        report["construction_lower_bound"] = bounds.katona_f(args.k, args.l) * binom(args.n, args.k)
    if args.witness:
        doc = res.witness.to_json()
        doc["run"] = res.metadata()
        write_json_atomic(args.witness, doc)
        report["witness"] = str(args.witness)
    emit(report, args.format)
    return EXIT_OK if res.optimal else EXIT_BUDGET


def cmd_formula(args) -> int:
    res = formula_F(args.n, args.k, args.l)
    report = {"command": "formula", "parameters": {"n": args.n, "k": args.k, "l": args.l}}
    if res is None:
        report["value"] = "no closed form"
    else:
        report.update(value=res.value, provenance=str(res.provenance),
                      confidence=str(res.confidence))
    emit(report, args.format)
    return EXIT_OK


def _need(args, *names):
    missing = [f"-{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"construct {args.name} needs {' '.join(missing)}")


def _vector_validity(fam: VectorFamily, l=None, forbidden=None) -> dict:
    ok, bad = verify_vector_family(fam, l=l, forbidden=forbidden)
    out = {"size": len(fam), "valid": ok}
    if l is not None:
        out["min_product_required"] = l
    if forbidden is not None:
        out["forbidden_product"] = forbidden
    if bad:
        out["offending_pair"] = f"{bad[0].to_text()} / {bad[1].to_text()} -> {bad[2]}"
    return out


def cmd_construct(args) -> int:
    name = args.name
    second = None
    if name == "u6":
        fam = constructions.construct_U6()
        check = _vector_validity(fam, l=0)
    elif name == "vn":
        _need(args, "n")
        fam = constructions.construct_Vn(args.n)
        check = _vector_validity(fam, l=0)
    elif name == "star":
        _need(args, "n", "k", "l")
        fam = constructions.star_vector_family(args.n, args.k, args.l)
        check = _vector_validity(fam, l=args.l)
        check["expected_size"] = binom(args.n - args.l, args.k - args.l)
    elif name == "katona":
        _need(args, "n", "k", "l")
        fam = constructions.katona_vector_family(args.n, args.k, args.l)
        check = _vector_validity(fam, l=-args.l, forbidden=-args.l - 1)
        check["expected_size"] = bounds.katona_f(args.k, args.l) * binom(args.n, args.k)
    elif name == "katona-sets":
        _need(args, "n", "s")
        fam = constructions.katona_set_family(args.n, args.s, args.j)
        unions = max(((x | y).bit_count() for x in fam for y in fam), default=0)
        check = {"size": len(fam), "expected_size": bounds.katona_f(args.n, args.s),
                 "max_union": unions, "valid": unions <= args.s}
    elif name in ("ak", "m"):
        _need(args, "k", "s", "t", "i")
        make = constructions.ak_family if name == "ak" else constructions.m_family
        fam = make(args.k, args.s, args.t, args.i)
        check = {"size": len(fam), "valid": is_t_intersecting(fam, args.t)}
    elif name == "crosspair":
        _need(args, "n", "k", "s", "t", "i")
        fam, second = constructions.cross_pair(args.n, args.k, args.s, args.t, args.i)
        rep = cross_intersection_report(fam, second, args.s)
        ok = (len(fam) > 0 and len(second) > 0 and rep.ok
              and is_t_intersecting(fam, args.t) and is_t_intersecting(second, args.t))
        check = {"size_A": len(fam), "size_B": len(second), "sum": len(fam) + len(second),
                 "non_empty": len(fam) > 0 and len(second) > 0,
                 "t_intersecting": is_t_intersecting(fam, args.t)
                 and is_t_intersecting(second, args.t),
                 "s_cross_intersecting": rep.ok and not rep.vacuous, "valid": ok}
    else:
        raise UsageError(f"unknown construction {name!r}")
    report = {"command": "construct", "name": name, **check}
    if args.output:
        write_json_atomic(args.output, fam.to_json())
        report["file"] = str(args.output)
        if second is not None:
            out_b = args.output_b or str(Path(args.output).with_suffix("")) + "_B.json"
            write_json_atomic(out_b, second.to_json())
            report["file_B"] = out_b
    emit(report, args.format)
    return EXIT_OK if check["valid"] else EXIT_FAIL


def cmd_verify(args) -> int:
    fam = load_family(args.file)
    checks = {}
    failures = []
    if isinstance(fam, VectorFamily):
        if args.min_product is not None or args.forbid_product is not None:
            ok, bad = verify_vector_family(fam, l=args.min_product, forbidden=args.forbid_product)
            checks["products"] = ok
            if bad:
                failures.append(f"{bad[0].to_text()} / {bad[1].to_text()} -> {bad[2]}")
        if args.uniform is not None:
            checks["uniform"] = all(v.k == args.uniform for v in fam)
    else:
        if args.min_product is not None or args.forbid_product is not None:
            raise UsageError("product checks need a vector family file")
        if args.t_intersecting is not None:
            checks["t_intersecting"] = is_t_intersecting(fam, args.t_intersecting)
        if args.cross is not None:
            if args.s is None:
                raise UsageError("--cross needs -s")
            other = load_family(args.cross)
            rep = cross_intersection_report(fam, other, args.s)
            checks["cross_intersecting"] = rep.ok
            if rep.vacuous:
                checks["cross_vacuous"] = True
            if rep.violation:
                a, b = rep.violation
                failures.append(f"{[x + 1 for x in iter_bits(a)]} / {[x + 1 for x in iter_bits(b)]}")
        if args.uniform is not None:
            checks["uniform"] = all(m.bit_count() == args.uniform for m in fam)
    if not checks:
        raise UsageError("no checks requested")
    passed = all(v for k, v in checks.items() if k != "cross_vacuous")
    report = {"command": "verify", "file": str(args.file), "size": len(fam),
              "checks": checks, "result": "pass" if passed else "fail"}
    if failures:
        report["offending"] = failures
    emit(report, args.format)
    return EXIT_OK if passed else EXIT_FAIL


THM3_ROW = (3, 4, 5, 6, 7)


def props_grid(max_vertices: int = 300, max_n: int = 9):
    """(n, k, l) cells whose dispatch clause is one of the four propositions."""
    for k in range(1, 6):
        for n in range(k, max_n + 1):
            if Lk_size(n, k) > max_vertices:
                continue
            for l in range(-k, k + 1):
                if (l == -k + 1 or n == k or l == k - 1 and n > k
                        or l == k - 2 and n > k):
                    yield n, k, l


def cmd_table(args) -> int:
    if args.name == "thm3":
        cells = [(n, 3, 0) for n in THM3_ROW]
    elif args.name == "props":
        cells = list(props_grid())
    else:
        raise UsageError(f"unknown table {args.name!r} (choose thm3 or props)")
    out = sys.stdout
    cols = ["n", "k", "l", "search", "optimal", "formula", "provenance", "confidence", "match"]
    out.write("\t".join(cols) + "\n")
    mismatches = truncated = 0
    for n, k, l in cells:
        res = exact_F(n, k, l, node_budget=args.node_budget, time_budget=time_budget(args),
                      threads=args.threads)
        f = formula_F(n, k, l)
        if f is None:
            match = "n/a"
        else:
            match = "yes" if f.value == res.value else "NO"
            if f.exact and f.value != res.value and res.optimal:
                mismatches += 1
        truncated += not res.optimal
        row = [n, k, l, res.value, res.optimal, "-" if f is None else f.value,
               "-" if f is None else f.provenance, "-" if f is None else f.confidence, match]
        out.write("\t".join(map(str, row)) + "\n")
        out.flush()
    out.write(f"# cells={len(cells)}\tmismatches={mismatches}\ttruncated={truncated}\n")
    if truncated:
        return EXIT_BUDGET
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_oracle(args) -> int:
    """Randomized self-check: clique search against brute force, shifting invariants."""
    rng = random.Random(args.seed)
    bad = 0
    for g in range(args.graphs):
        nv = rng.randint(0, args.max_vertices)
        density = rng.random()
        edges = {(a, b) for a in range(nv) for b in range(a + 1, nv) if rng.random() < density}
        graph = graph_from_predicate(list(range(nv)), lambda a, b: (min(a, b), max(a, b)) in edges)
        got = max_clique(graph).value
        want = _brute_clique(graph.adjacency)
        if got != want:
            bad += 1
            print(f"graph {g}: search {got} != brute force {want}")
    for _ in range(args.families):
        n = rng.randint(3, 7)
        k = rng.randint(1, 3)
        pool = list(iter_Lk(n, k))
        fam = VectorFamily(n, rng.sample(pool, rng.randint(1, min(len(pool), 20))), k=k)
        sh = shifting.make_shifted(fam)
        if (len(sh) != len(fam) or min_pairwise_product(sh) < min_pairwise_product(fam)
                or not shifting.is_shifted(sh)):
            bad += 1
            print(f"shifting invariant broken on n={n} k={k}")
    print(f"graphs={args.graphs}\tfamilies={args.families}\tseed={args.seed}\tfailures={bad}")
    return EXIT_FAIL if bad else EXIT_OK


def _brute_clique(adj) -> int:
    nv = len(adj)
    best = 0
    for mask in range(1 << nv):
        size = mask.bit_count()
        if size <= best:
            continue
        if all(mask & ~(1 << v) & ~adj[v] == 0 for v in iter_bits(mask)):
            best = size
    return best


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ekrlab", description="Exact extremal values for signed vector "
                "families and intersecting set families.")
    p.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized tooling")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_opts(q):
        q.add_argument("--threads", type=int, default=1)
        q.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
        q.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET,
                       help=f"seconds; {BUDGET_ENV} (milliseconds) overrides")

    q = sub.add_parser("exact", help="exact F(n,k,l) or the forbidden-product variant")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-l", type=int, required=True)
    q.add_argument("--mode", choices=("atleast", "forbid"), default="atleast")
    q.add_argument("--witness", help="write the witness family JSON here")
    q.add_argument("--symmetry-break", action="store_true",
                   help="fix u(1..k) in the family (valid for the full L_k)")
    search_opts(q)
    q.set_defaults(func=cmd_exact)

    q = sub.add_parser("formula", help="closed-form F(n,k,l) with provenance")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-l", type=int, required=True)
    q.set_defaults(func=cmd_formula)

    q = sub.add_parser("construct", help="emit a named construction and check it")
    q.add_argument("name", help="u6, vn, star, katona, katona-sets, ak, m, crosspair")
    for flag in ("n", "k", "l", "s", "t", "i", "j"):
        q.add_argument(f"-{flag}", type=int)
    q.add_argument("-o", "--output")
    q.add_argument("--output-b", help="second family file for crosspair")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("verify", help="check predicates on a family file")
    q.add_argument("file")
    q.add_argument("--min-product", type=int)
    q.add_argument("--forbid-product", type=int)
    q.add_argument("--t-intersecting", type=int)
    q.add_argument("--cross", help="second set family file")
    q.add_argument("-s", type=int, help="cross-intersection threshold")
    q.add_argument("--uniform", type=int)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("table", help="reproduce a table: thm3 or props")
    q.add_argument("name")
    search_opts(q)
    q.set_defaults(func=cmd_table)

    q = sub.add_parser("oracle", help="randomized self-check against brute force")
    q.add_argument("--graphs", type=int, default=50)
    q.add_argument("--max-vertices", type=int, default=16)
    q.add_argument("--families", type=int, default=50)
    q.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EkrlabError as exc:
        # invalid parameters and exhausted caps are both caller errors here
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
