"""Command-line front end: ``mvcr crystal``, ``mvcr verify``, ``mvcr demazure``.

Coweights are given in fundamental-coweight coordinates (``--lambda 1,1``) and
Weyl group elements as words in the 1-based generators (``--x 121``, ``--x
1,2,1`` or ``--x e``).

Exit codes: 0 when every check passes, 1 on any failure, 2 when some check is
inconclusive (factorisation search hit ``--nmax``), 64 for invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields

from .rootdata import (
    CartanDatum,
    RootDataError,
    build_cartan,
    is_dominant,
    min_coset_rep,
    min_coset_reps,
    parse_word,
    weyl_group_of,
)

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64
FORMATS = ("json", "dot", "tsv")
THEOREMS = ("main", "corollary", "tensor", "minext", "sanity", "all")


class ConfigError(ValueError):
    def __init__(self, field_name: str, msg: str):
        super().__init__(f"invalid {field_name}: {msg}")
        self.field = field_name


@dataclass
class RunConfig:
    cartan: str | None = None
    lam: str | None = None
    x: str | None = None
    lambda1: str | None = None
    lambda2: str | None = None
    nmax: int | None = None
    output: str | None = None
    format: str = "json"
    jobs: int | None = None
    conjecture: bool = False
    witnesses: str | None = None


# config-file keys that differ from attribute names
_ALIASES = {"lambda": "lam"}


def load_config_file(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        data = json.loads(raw)
    else:
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(raw.decode())
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a table/object")
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for k, v in data.items():
        key = _ALIASES.get(k, k)
        if key not in known:
            raise ConfigError(k, "unknown configuration key")
        if key in ("lam", "lambda1", "lambda2") and isinstance(v, list):
            v = ",".join(str(a) for a in v)
        out[key] = v
    return out


def _parse_coweight(text, name: str, rank: int) -> tuple:
    try:
        v = tuple(int(a) for a in str(text).replace(" ", "").split(",") if a != "")
    except ValueError:
        raise ConfigError(name, f"{text!r} is not a comma-separated list of integers") from None
    if len(v) != rank:
        raise ConfigError(name, f"expected {rank} coordinates, got {len(v)}")
    if not is_dominant(v):
        raise ConfigError(name, f"{v} is not dominant")
    return v


@dataclass
class Resolved:
    cd: CartanDatum
    lam: tuple | None
    x: object
    lambda1: tuple | None
    lambda2: tuple | None
    nmax: int
    output: str | None
    format: str
    jobs: int
    conjecture: bool
    witnesses: str | None


def resolve(cfg: RunConfig, need: tuple = ()) -> Resolved:
    """Validate every field before any computation."""
    if not cfg.cartan:
        raise ConfigError("cartan", "missing (e.g. --cartan A2)")
    try:
        cd = build_cartan(cfg.cartan)
    except RootDataError as exc:
        raise ConfigError("cartan", f"{type(exc).__name__}: {exc}") from None
    except (ValueError, TypeError) as exc:
        raise ConfigError("cartan", str(exc)) from None
    r = cd.rank
    lam = _parse_coweight(cfg.lam, "lambda", r) if cfg.lam is not None else None
    l1 = _parse_coweight(cfg.lambda1, "lambda1", r) if cfg.lambda1 is not None else None
    l2 = _parse_coweight(cfg.lambda2, "lambda2", r) if cfg.lambda2 is not None else None
    for name, val in (("lambda", lam), ("lambda1", l1), ("lambda2", l2)):
        if name in need and val is None:
            raise ConfigError(name, "missing")
    x = None
    if cfg.x is not None:
        try:
            x = weyl_group_of(cd).elem_from_word(parse_word(str(cfg.x), r))
        except (RootDataError, ValueError) as exc:
            raise ConfigError("x", str(exc)) from None
    nmax = cfg.nmax
    if nmax is None:
        env = os.environ.get("MVCR_NMAX")
        if env:
            try:
                nmax = int(env)
            except ValueError:
                raise ConfigError("nmax", f"MVCR_NMAX={env!r} is not an integer") from None
        else:
            nmax = 24
    if not isinstance(nmax, int) or nmax < 1:
        raise ConfigError("nmax", "must be a positive integer")
    if cfg.format not in FORMATS:
        raise ConfigError("format", f"must be one of {', '.join(FORMATS)}")
    jobs = cfg.jobs if cfg.jobs is not None else (os.cpu_count() or 1)
    if not isinstance(jobs, int) or jobs < 1:
        raise ConfigError("jobs", "must be a positive integer")
    return Resolved(cd, lam, x, l1, l2, nmax, cfg.output, cfg.format, jobs,
                    bool(cfg.conjecture), cfg.witnesses)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reduce_x(x, lam):
    y = min_coset_rep(x, lam)
    if y != x:
        print(f"note: x={x.label()} replaced by its minimal coset representative "
              f"{y.label()} (same Demazure crystal)", file=sys.stderr)
    return y


# --------------------------------------------------------------------------

def cmd_crystal(rc: Resolved) -> int:
    from .mvcrystal import crystal

    B = crystal(rc.cd, rc.lam)
    if rc.format == "dot":
        text = B.to_dot()
    elif rc.format == "tsv":
        rows = ["id\tweight\tlusztig"]
        rows += [f"{k}\t{','.join(map(str, P.wt))}\t{','.join(map(str, P.lusztig().n))}"
                 for k, P in enumerate(B)]
        text = "\n".join(rows) + "\n"
    else:
        text = B.dumps() + "\n"
    _emit(text, rc.output)
    return EXIT_OK


def cmd_demazure(rc: Resolved) -> int:
    from .demazure import demazure_set
    from .extremal import extremal_polytope, is_extremal
    from .mvcrystal import crystal
    from .polytope import contains

    W = weyl_group_of(rc.cd)
    x = _reduce_x(rc.x if rc.x is not None else W.e, rc.lam)
    D = demazure_set(x, rc.lam)
    E = extremal_polytope(x, rc.lam)
    members = D.sorted_members()
    rows = []
    for P in members:
        xe = is_extremal(P)
        rows.append({"weight": list(P.wt), "lusztig": list(P.lusztig().n),
                     "extremal": xe.label() if xe is not None else None,
                     "inside_extremal": contains(E, P)})
    if rc.format == "json":
        data = D.to_json()
        data["rows"] = rows
        text = json.dumps(data, indent=1) + "\n"
    elif rc.format == "tsv":
        lines = ["weight\tlusztig\textremal\tinside_extremal"]
        lines += [f"{','.join(map(str, r['weight']))}\t{','.join(map(str, r['lusztig']))}\t"
                  f"{r['extremal'] or '-'}\t{int(r['inside_extremal'])}" for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        B = crystal(rc.cd, rc.lam)
        keep = {B.node_id(P) for P in members}
        lines = ["digraph Demazure {",
                 f'  label="MV_{x.label()}({",".join(map(str, rc.lam))}) Cartan {rc.cd.name}";',
                 "  node [shape=box];"]
        for k in sorted(keep):
            P = B.nodes[k]
            lines.append(f'  n{k} [label="wt=({",".join(map(str, P.wt))})\\n'
                         f'n=({",".join(map(str, P.lusztig().n))})"];')
        for s, d, j in B.edges:
            if s in keep and d in keep:
                lines.append(f'  n{s} -> n{d} [label="{j + 1}"];')
        text = "\n".join(lines + ["}"]) + "\n"
    _emit(text, rc.output)
    return EXIT_OK


def _xs(rc: Resolved) -> list:
    if rc.x is not None:
        return [_reduce_x(rc.x, rc.lam)]
    return min_coset_reps(rc.cd, rc.lam)


def run_verify(theorem: str, rc: Resolved) -> list:
    from . import verify as V

    reports = []
    if theorem in ("main", "all"):
        reports += [V.verify_main_theorem(rc.cd, rc.lam, x, rc.nmax, jobs=rc.jobs) for x in _xs(rc)]
    if theorem in ("corollary", "all"):
        reports += [V.verify_corollary(rc.cd, rc.lam, x, jobs=rc.jobs) for x in _xs(rc)]
    if theorem in ("sanity", "all"):
        reports.append(V.crystal_sanity(rc.cd, rc.lam))
    if theorem == "tensor" or (theorem == "all" and rc.lambda1 is not None):
        reports.append(V.verify_tensor_estimate(rc.cd, rc.lambda1, rc.lambda2,
                                                conjecture=rc.conjecture, jobs=rc.jobs))
    if theorem == "minext" or (theorem == "all" and rc.lambda1 is not None):
        reports.append(V.verify_min_ext(rc.cd, rc.lambda1, rc.lambda2))
    return reports


def _overall(reports) -> str:
    st = {r.status for r in reports}
    return "fail" if "fail" in st else "inconclusive" if "inconclusive" in st else "pass"


def cmd_verify(theorem: str, rc: Resolved) -> int:
    from .verify import converse_records, save_converse_witnesses

    reports = run_verify(theorem, rc)
    status = _overall(reports)
    if rc.format == "tsv":
        lines = ["theorem\tparams\tid\tstatus"]
        for r in reports:
            p = " ".join(f"{k}={v}" for k, v in r.params.items())
            lines += [f"{r.theorem}\t{p}\t{i.id}\t{i.status}" for i in r.instances]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"status": status, "reports": [r.to_json() for r in reports]},
                          indent=1) + "\n"
    _emit(text, rc.output)
    if rc.witnesses:
        recs = [rec for r in reports if r.theorem == "corollary" for rec in converse_records(r)]
        save_converse_witnesses(rc.witnesses, recs)
    for r in reports:
        for i in r.instances:
            if i.status == "inconclusive":
                print(f"inconclusive: {r.theorem} {i.id}: no factorisation with N <= {rc.nmax}",
                      file=sys.stderr)
    print(f"{status}: {sum(len(r.instances) for r in reports)} instances in "
          f"{len(reports)} report(s)", file=sys.stderr)
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[status]


# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    d = argparse.SUPPRESS
    p.add_argument("--config", default=d, help="TOML or JSON file with the same keys as the flags")
    p.add_argument("--cartan", default=d, help='Cartan type ("A2", "A1xA1", "D4") or JSON matrix')
    p.add_argument("--lambda", dest="lam", default=d,
                   help="dominant coweight in fundamental-coweight coordinates, e.g. 1,1")
    p.add_argument("--x", default=d, help='Weyl group word, e.g. "121", "1,2,1" or "e"')
    p.add_argument("--output", "-o", default=d, help="write to this file instead of stdout")
    p.add_argument("--format", default=d, choices=FORMATS)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mvcr", description="MV polytopes, crystals and polytopal estimates")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("crystal", help="export MV(lambda)")
    _common(c)
    dm = sub.add_parser("demazure", help="list MV_x(lambda)")
    _common(dm)
    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("theorem", choices=THEOREMS)
    _common(v)
    d = argparse.SUPPRESS
    v.add_argument("--lambda1", default=d)
    v.add_argument("--lambda2", default=d)
    v.add_argument("--nmax", type=int, default=d,
                   help="cap on N in the factorisation search (env MVCR_NMAX, default 24)")
    v.add_argument("--jobs", type=int, default=d, help="worker threads (default: all cores)")
    v.add_argument("--conjecture", action="store_true", default=d,
                   help="experimental: also test non-extremal left factors")
    v.add_argument("--witnesses", default=d, help="save converse witnesses to this JSON file")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    vals = {}
    if getattr(ns, "config", None):
        vals.update(load_config_file(ns.config))
    for f in fields(RunConfig):
        if hasattr(ns, f.name):
            vals[f.name] = getattr(ns, f.name)
    return RunConfig(**vals)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if ns.command == "verify":
            need = {"tensor": ("lambda1", "lambda2"), "minext": ("lambda1", "lambda2")}.get(
                ns.theorem, ("lambda",))
            rc = resolve(cfg, need)
            if (rc.lambda1 is None) != (rc.lambda2 is None):
                raise ConfigError("lambda2" if rc.lambda2 is None else "lambda1", "missing")
            return cmd_verify(ns.theorem, rc)
        rc = resolve(cfg, ("lambda",))
        return cmd_crystal(rc) if ns.command == "crystal" else cmd_demazure(rc)
    except ConfigError as exc:
        print(f"mvcr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mvcr: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
