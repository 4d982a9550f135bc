"""Command-line front end.

Subcommands: ``table`` (full-flag tables), ``parabolic`` (quotient tables),
``billey`` (single equivariant Schubert restriction), ``verify`` (identity
suites), ``bench`` (timed table builds).  Options resolve in precedence order
command line > config file > environment > built-in defaults.

Exit codes: 0 success, 1 a verification or benchmark failed, 2 the request
itself was invalid.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, fields, replace

from . import schubert_limit, stable_basis
from .parabolic import ROUTES, parabolic_table
from .root_system import (
    DEFAULT_MAX_GROUP_ORDER,
    GroupTooLarge,
    IndexOutOfRange,
    NotReduced,
    RankOutOfRange,
    UnknownType,
    build_root_system,
    coset_space,
)
from .serialize import (
    FORMATS,
    MalformedLabel,
    dumps_json,
    element_label,
    parse_word,
    poly_to_json,
    poly_to_latex,
    render_table,
    report_to_json,
    table_to_json,
)
from .stable_basis import METHODS, stab_table
from .suites import SUITES, SuiteConfig, UnknownSuite, run_suites

ENV_MAX_GROUP_ORDER = "STAB_MAX_GROUP_ORDER"


class ConfigInvalid(ValueError):
    """A flag, config-file entry, or environment value does not make sense."""


class TimeBudgetExceeded(RuntimeError):
    """A benchmark ran past its --budget."""


@dataclass(frozen=True)
class JobConfig:
    """Fully resolved options for one invocation."""

    cartan_type: str = "A"
    rank: int = 2
    subset: tuple[int, ...] | None = None
    chamber: str = "both"
    method: str | None = None
    fmt: str = "text"
    out: str | None = None
    suites: tuple[str, ...] | None = None
    seed: int = 0
    jobs: int = 1
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER
    budget: float | None = None
    samples: int = 0
    label: str | None = None
    point: str | None = None


_INT_KEYS = {"rank", "seed", "jobs", "max_group_order", "samples"}
_FLOAT_KEYS = {"budget"}


def _parse_subset(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "none"):
        return ()
    try:
        parts = tuple(sorted({int(p) for p in text.split(",")}))
    except ValueError:
        raise ConfigInvalid(f"subset must be comma-separated integers, got {text!r}")
    return parts


def _parse_suites(text: str) -> tuple[str, ...]:
    names = tuple(p.strip() for p in text.split(",") if p.strip())
    if not names:
        raise ConfigInvalid("empty suite list")
    return names


def load_config_file(path: str) -> dict:
    """key = value lines; blank lines and # comments ignored."""
    values: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config file {path}: {exc}")
    valid = {f.name for f in fields(JobConfig)}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigInvalid(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key == "type":
            key = "cartan_type"
        if key == "format":
            key = "fmt"
        if key not in valid:
            raise ConfigInvalid(f"{path}:{lineno}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigInvalid(f"{path}:{lineno}: {key} must be an integer")
        elif key in _FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ConfigInvalid(f"{path}:{lineno}: {key} must be a number")
        elif key == "subset":
            values[key] = _parse_subset(value)
        elif key == "suites":
            values[key] = _parse_suites(value)
        else:
            values[key] = value
    return values


def _env_values() -> dict:
    raw = os.environ.get(ENV_MAX_GROUP_ORDER)
    if raw is None:
        return {}
    try:
        return {"max_group_order": int(raw)}
    except ValueError:
        raise ConfigInvalid(f"{ENV_MAX_GROUP_ORDER} must be an integer, got {raw!r}")


def resolve_config(args: argparse.Namespace) -> JobConfig:
    cfg = JobConfig()
    cfg = replace(cfg, **_env_values())
    if getattr(args, "config", None):
        cfg = replace(cfg, **load_config_file(args.config))
    overrides = {}
    for f in fields(JobConfig):
        got = getattr(args, f.name, None)
        if got is not None:
            overrides[f.name] = got
    return replace(cfg, **overrides)


def _add_common(sub: argparse.ArgumentParser, *, chamber_choices=("minus", "plus", "both")):
    sub.add_argument("--type", dest="cartan_type", choices=list("ABCDEFG"))
    sub.add_argument("--rank", type=int)
    sub.add_argument("--chamber", choices=chamber_choices)
    sub.add_argument("--format", dest="fmt", choices=FORMATS)
    sub.add_argument("--out", help="write the rendered output to this file")
    sub.add_argument("--config", help="key = value option file")
    sub.add_argument("--max-group-order", dest="max_group_order", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stab",
        description="Exact restriction tables for cotangent stable classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="full-flag restriction table")
    _add_common(p_table)
    p_table.add_argument("--method", choices=list(METHODS))

    p_par = sub.add_parser("parabolic", help="quotient restriction table")
    _add_common(p_par)
    p_par.add_argument("--method", choices=list(ROUTES))
    p_par.add_argument("--subset", type=_parse_subset, help="e.g. 1,3")

    p_billey = sub.add_parser("billey", help="one equivariant Schubert restriction")
    _add_common(p_billey, chamber_choices=("minus",))
    p_billey.add_argument("--label", help='element label, e.g. "1.2" or "e"')
    p_billey.add_argument("--point", help="element label of the evaluation point")

    p_verify = sub.add_parser("verify", help="run identity suites")
    _add_common(p_verify, chamber_choices=("both",))
    p_verify.add_argument("--suites", type=_parse_suites, help="comma-separated names")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--jobs", type=int)

    p_bench = sub.add_parser("bench", help="time table construction")
    _add_common(p_bench)
    p_bench.add_argument("--budget", type=float, help="fail past this many seconds")
    p_bench.add_argument("--samples", type=int, help="0 = full tables, else sampled entries")
    p_bench.add_argument("--seed", type=int)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {out}", file=sys.stderr)


def _build_system(cfg: JobConfig):
    return build_root_system(
        cfg.cartan_type, cfg.rank, max_group_order=cfg.max_group_order
    )


def _chambers(cfg: JobConfig) -> list[str]:
    return ["minus", "plus"] if cfg.chamber == "both" else [cfg.chamber]


def _render_tables(tables: list, fmt: str) -> str:
    if fmt == "csv" and len(tables) > 1:
        raise ConfigInvalid("csv output needs --chamber minus or --chamber plus")
    if fmt == "json":
        if len(tables) == 1:
            return dumps_json(table_to_json(tables[0]))
        return dumps_json({"tables": [table_to_json(t) for t in tables]})
    return "\n".join(render_table(t, fmt) for t in tables)


def cmd_table(cfg: JobConfig) -> int:
    rs = _build_system(cfg)
    method = cfg.method or "closed_form"
    tables = [stab_table(rs, chamber, method) for chamber in _chambers(cfg)]
    _emit(_render_tables(tables, cfg.fmt), cfg.out)
    return 0


def cmd_parabolic(cfg: JobConfig) -> int:
    if cfg.subset is None:
        raise ConfigInvalid("parabolic needs --subset (possibly empty: --subset none)")
    rs = _build_system(cfg)
    cs = coset_space(rs, frozenset(cfg.subset))
    method = cfg.method or "route_a1"
    tables = [parabolic_table(rs, cs, chamber, method) for chamber in _chambers(cfg)]
    _emit(_render_tables(tables, cfg.fmt), cfg.out)
    return 0


def cmd_billey(cfg: JobConfig) -> int:
    if cfg.label is None or cfg.point is None:
        raise ConfigInvalid("billey needs --label and --point")
    rs = _build_system(cfg)
    word_w = parse_word(cfg.label)
    word_y = parse_word(cfg.point)
    w = rs.element_by_word(word_w)
    y = rs.element_by_word(word_y)
    value = schubert_limit.billey_restriction(rs, w, y.word)
    if cfg.fmt == "json":
        doc = {
            "type": rs.cartan_type,
            "rank": rs.rank,
            "label": element_label(w),
            "point": element_label(y),
            "value": poly_to_json(value),
        }
        _emit(dumps_json(doc), cfg.out)
    elif cfg.fmt == "latex":
        _emit(poly_to_latex(value) + "\n", cfg.out)
    else:
        _emit(f"{element_label(w)} at {element_label(y)}: {value}\n", cfg.out)
    return 0


def _verify_text(results, system_name: str, seed: int) -> str:
    lines = [f"{system_name} seed={seed}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name:22s} checks={r.checks:6d} {r.wall_time:7.2f}s")
        for failure in r.failures:
            lines.append(f"     {failure}")
    total = sum(r.checks for r in results)
    good = sum(1 for r in results if r.passed)
    verdict = "PASSED" if good == len(results) else "FAILED"
    lines.append(f"{verdict} {good}/{len(results)} suites, {total} checks")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: JobConfig) -> int:
    rs = _build_system(cfg)
    names = list(cfg.suites) if cfg.suites else None
    results = run_suites(rs, names, SuiteConfig(seed=cfg.seed), jobs=cfg.jobs)
    if cfg.fmt == "json":
        doc = report_to_json(
            results,
            config={
                "type": rs.cartan_type,
                "rank": rs.rank,
                "seed": cfg.seed,
                "jobs": cfg.jobs,
            },
        )
        _emit(dumps_json(doc), cfg.out)
    else:
        _emit(_verify_text(results, f"{rs.cartan_type}{rs.rank}", cfg.seed), cfg.out)
    return 0 if all(r.passed for r in results) else 1


def _bench_full(rs, chambers: list[str], deadline: float | None, phases: list) -> bool:
    ok = True
    for chamber in chambers:
        built = {}
        for method in METHODS:
            start = time.perf_counter()
            built[method] = stab_table(rs, chamber, method)
            phases.append((f"{chamber}/{method}", time.perf_counter() - start))
            _check_deadline(deadline)
        first = built[METHODS[0]]
        agree = all(built[m] == first for m in METHODS[1:])
        phases.append((f"{chamber}/methods-agree", float(agree)))
        ok = ok and agree
    return ok


def _bench_sampled(rs, chambers, samples: int, seed: int, deadline, phases) -> bool:
    import random

    g = rs.weyl()
    rng = random.Random(seed)
    order = len(g.elements)
    for chamber in chambers:
        start = time.perf_counter()
        for w in g.elements:
            stable_basis.diagonal_value(rs, chamber, w)
        phases.append((f"{chamber}/diagonal x{order}", time.perf_counter() - start))
        _check_deadline(deadline)
        start = time.perf_counter()
        for _ in range(samples):
            a = g.elements[rng.randrange(order)]
            b = g.elements[rng.randrange(order)]
            if chamber == "minus":
                stable_basis.stab_minus_restriction(rs, a, b.word)
            else:
                stable_basis.stab_plus_restriction(rs, a.word, b)
            _check_deadline(deadline)
        phases.append((f"{chamber}/entries x{samples}", time.perf_counter() - start))
    return True


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.perf_counter() > deadline:
        raise TimeBudgetExceeded("benchmark exceeded its budget")


def cmd_bench(cfg: JobConfig) -> int:
    rs = _build_system(cfg)
    deadline = None if cfg.budget is None else time.perf_counter() + cfg.budget
    phases: list[tuple[str, float]] = []
    start = time.perf_counter()
    if cfg.samples > 0:
        ok = _bench_sampled(rs, _chambers(cfg), cfg.samples, cfg.seed, deadline, phases)
    else:
        ok = _bench_full(rs, _chambers(cfg), deadline, phases)
    total = time.perf_counter() - start
    if cfg.fmt == "json":
        doc = {
            "system": f"{rs.cartan_type}{rs.rank}",
            "passed": ok,
            "total_seconds": round(total, 3),
            "phases": [{"name": n, "value": round(v, 3)} for n, v in phases],
        }
        _emit(dumps_json(doc), cfg.out)
    else:
        lines = [f"bench {rs.cartan_type}{rs.rank}"]
        lines += [f"  {name:28s} {value:8.3f}" for name, value in phases]
        lines.append(f"  {'total':28s} {total:8.3f}  {'ok' if ok else 'MISMATCH'}")
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if ok else 1


_COMMANDS = {
    "table": cmd_table,
    "parabolic": cmd_parabolic,
    "billey": cmd_billey,
    "verify": cmd_verify,
    "bench": cmd_bench,
}

_USER_ERRORS = (
    ConfigInvalid,
    UnknownType,
    RankOutOfRange,
    GroupTooLarge,
    IndexOutOfRange,
    NotReduced,
    UnknownSuite,
    MalformedLabel,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return _COMMANDS[args.command](cfg)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TimeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
