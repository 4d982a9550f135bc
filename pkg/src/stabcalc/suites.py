"""Identity-checking suites over a chosen root system.

Each suite verifies one family of facts about the restriction tables (column
identities, dualities, degenerations, limits) and reports the number of
checks, a capped list of failure descriptions, and wall time.  Suites sample
deterministically from a seeded generator when the group is large, so a given
(system, seed) pair always checks the same instances.
"""

from __future__ import annotations

import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import parabolic, schubert_limit, stable_basis
from .group_algebra import rmatrix_minus, rmatrix_plus
from .poly_ring import MPoly
from .root_system import (
    RootSystem,
    build_root_system,
    coset_space,
    reduced_words,
)
from .serialize import element_label

MAX_REPORTED_FAILURES = 10
CHAMBERS = ("minus", "plus")


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    max_pairs: int = 500
    max_elements: int = 48
    max_words_per_element: int = 4
    # word-independence enumerates all reduced words of an element, which is
    # only tractable for short elements
    max_word_length: int = 8


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    failures: list
    wall_time: float
    details: dict = field(default_factory=dict)


class _Recorder:
    def __init__(self) -> None:
        self.checks = 0
        self.fail_count = 0
        self.failures: list[str] = []

    def record(self, ok: bool, describe) -> None:
        self.checks += 1
        if ok:
            return
        self.fail_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(describe() if callable(describe) else describe)

    @property
    def passed(self) -> bool:
        return self.fail_count == 0


class VerifyContext:
    """Shared state for one verification run: the system, the sampling
    config, and a cache of restriction tables reused across suites."""

    def __init__(self, rs: RootSystem, config: SuiteConfig | None = None):
        self.rs = rs
        self.config = config or SuiteConfig()
        self._lock = threading.Lock()
        self._tables: dict = {}

    def rng(self, suite_name: str) -> random.Random:
        return random.Random(f"{self.config.seed}:{suite_name}")

    def table(self, chamber: str, method: str = "closed_form"):
        key = (chamber, method)
        with self._lock:
            got = self._tables.get(key)
        if got is not None:
            return got
        built = stable_basis.stab_table(self.rs, chamber, method)
        with self._lock:
            return self._tables.setdefault(key, built)

    def sample_pairs(self, suite_name: str) -> list[tuple[int, int]]:
        order = len(self.rs.weyl().elements)
        pairs = [(a, b) for a in range(order) for b in range(order)]
        cap = self.config.max_pairs
        if len(pairs) <= cap:
            return pairs
        return sorted(self.rng(suite_name).sample(pairs, cap))

    def sample_elements(self, suite_name: str, predicate=None) -> list:
        pool = [w for w in self.rs.weyl().elements if predicate is None or predicate(w)]
        cap = self.config.max_elements
        if len(pool) <= cap:
            return pool
        picked = self.rng(suite_name).sample(pool, cap)
        return sorted(picked, key=lambda w: w.index)


def _maximal_subsets(rs: RootSystem) -> list[frozenset[int]]:
    full = range(1, rs.rank + 1)
    return [frozenset(j for j in full if j != i) for i in full]


def _mod_hbar2_truncate(p: MPoly) -> MPoly:
    return MPoly(p.nvars, {e: c for e, c in p.terms.items() if e[-1] < 2})


def _suite_word_independence(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    cfg = ctx.config
    elements = ctx.sample_elements(
        "word-independence", lambda w: 2 <= w.length <= cfg.max_word_length
    )
    tested = 0
    for w in elements:
        words = reduced_words(ctx.rs, w)
        if len(words) < 2:
            continue
        words = words[: cfg.max_words_per_element]
        tested += 1
        base = words[0]
        ref_minus = stable_basis.minus_column(ctx.rs, base)
        ref_plus = stable_basis.plus_column(ctx.rs, base)
        ref_rm = rmatrix_minus(ctx.rs, base)
        ref_rp = rmatrix_plus(ctx.rs, base)
        for other in words[1:]:
            lab = f"{element_label(w)} via {other}"
            rec.record(
                stable_basis.minus_column(ctx.rs, other) == ref_minus,
                f"minus column differs across words: {lab}",
            )
            rec.record(
                stable_basis.plus_column(ctx.rs, other) == ref_plus,
                f"plus column differs across words: {lab}",
            )
            rec.record(
                rmatrix_minus(ctx.rs, other) == ref_rm,
                f"minus wall product differs across words: {lab}",
            )
            rec.record(
                rmatrix_plus(ctx.rs, other) == ref_rp,
                f"plus wall product differs across words: {lab}",
            )
    return rec, {"elements_tested": tested}


def _suite_method_agreement(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    elements = ctx.rs.weyl().elements
    for chamber in CHAMBERS:
        reference = ctx.table(chamber, "closed_form")
        for method in ("rmatrix", "recursion"):
            candidate = ctx.table(chamber, method)
            for a in elements:
                for b in elements:
                    rec.record(
                        reference.entry(a, b) == candidate.entry(a, b),
                        lambda a=a, b=b, m=method, c=chamber: (
                            f"{c}/{m} disagrees with closed_form at "
                            f"({element_label(a)}, {element_label(b)})"
                        ),
                    )
    return rec, {}


def _suite_support(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    """Entries are nonzero exactly on a Bruhat cone; the chamber decides which
    coordinate dominates."""
    rec = _Recorder()
    g = ctx.rs.weyl()
    for chamber in CHAMBERS:
        table = ctx.table(chamber)
        for a in g.elements:
            for b in g.elements:
                nonzero = not table.entry(a, b).is_zero
                if chamber == "minus":
                    expected = g.bruhat_leq(a.index, b.index)
                else:
                    expected = g.bruhat_leq(b.index, a.index)
                rec.record(
                    nonzero == expected,
                    lambda a=a, b=b, c=chamber, nz=nonzero: (
                        f"{c} support violated at ({element_label(a)}, "
                        f"{element_label(b)}): {'nonzero' if nz else 'zero'}"
                    ),
                )
    return rec, {}


def _suite_hbar_divisibility(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    for chamber in CHAMBERS:
        for (a, b), val in sorted(ctx.table(chamber).entries.items()):
            if a == b:
                continue
            rec.record(
                all(e[-1] >= 1 for e in val.terms),
                f"{chamber} off-diagonal entry ({a}, {b}) not divisible by h",
            )
    return rec, {}


def _suite_diagonal(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    for chamber in CHAMBERS:
        table = ctx.table(chamber)
        for w in ctx.rs.weyl().elements:
            rec.record(
                table.entry(w, w) == stable_basis.diagonal_value(ctx.rs, chamber, w),
                lambda w=w, c=chamber: f"{c} diagonal wrong at {element_label(w)}",
            )
    return rec, {}


def _suite_duality(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    plus_t = ctx.table("plus")
    minus_t = ctx.table("minus")
    pairs = ctx.sample_pairs("duality")
    for y, w in pairs:
        expected = 1 if y == w else 0
        got = stable_basis.duality_pairing(ctx.rs, plus_t, minus_t, y, w)
        rec.record(
            got == expected,
            lambda y=y, w=w, got=got: f"pairing ({y}, {w}) = {got}",
        )
    return rec, {"pairs": len(pairs)}


def _suite_a0_lemma(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    """The simple-root difference operator sends a basis class to minus
    itself minus the reflected class.  Simple roots only; the identity has no
    reason to survive for other reflections and empirically does not."""
    rec = _Recorder()
    g = ctx.rs.weyl()
    rank = ctx.rs.rank
    for chamber in CHAMBERS:
        table = ctx.table(chamber)
        for i in range(1, rank + 1):
            alpha = tuple(1 if j == i - 1 else 0 for j in range(rank))
            sigma = g.simple[i - 1]
            for y in g.elements:
                psi = table.class_function(y)
                reflected = table.class_function(g.mul(y.index, sigma))
                image = stable_basis.apply_A0(ctx.rs, alpha, psi)
                bad = None
                for z in g.elements:
                    total = image.get(z.index) + psi.get(z.index) + reflected.get(z.index)
                    if not total.is_zero:
                        bad = z
                        break
                rec.record(
                    bad is None,
                    lambda y=y, i=i, c=chamber, bad=bad: (
                        f"{c} operator at root {i} fails on class "
                        f"{element_label(y)} at point {element_label(bad)}"
                    ),
                )
    return rec, {}


def _suite_mod_h2(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    g = ctx.rs.weyl()
    for chamber in CHAMBERS:
        table = ctx.table(chamber)
        for w in g.elements:
            for y in g.elements:
                if w.index == y.index:
                    continue
                if chamber == "minus":
                    entry = table.entry(w, y)
                else:
                    entry = table.entry(y, w)
                rec.record(
                    _mod_hbar2_truncate(entry)
                    == stable_basis.mod_hbar2(ctx.rs, chamber, w, y),
                    lambda w=w, y=y, c=chamber: (
                        f"{c} mod-h^2 mismatch at ({element_label(w)}, "
                        f"{element_label(y)})"
                    ),
                )
    return rec, {}


def _suite_parabolic_crosscheck(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    subsets = _maximal_subsets(ctx.rs)
    for subset in subsets:
        cs = coset_space(ctx.rs, subset)
        for chamber in CHAMBERS:
            borel = ctx.table(chamber)
            t1 = parabolic.parabolic_table(ctx.rs, cs, chamber, "route_a1", borel=borel)
            t2 = parabolic.parabolic_table(ctx.rs, cs, chamber, "route_a2", borel=borel)
            for lab in range(len(cs)):
                for pt in range(len(cs)):
                    rec.record(
                        t1.entry(lab, pt) == t2.entry(lab, pt),
                        lambda s=subset, c=chamber, lab=lab, pt=pt: (
                            f"routes disagree: subset={sorted(s)} {c} ({lab}, {pt})"
                        ),
                    )
                    audit = parabolic.representative_audit(
                        ctx.rs, cs, chamber, lab, pt, borel=borel
                    )
                    rec.record(
                        audit["minimal_anchor_ok"],
                        lambda s=subset, c=chamber, lab=lab, pt=pt: (
                            f"minimal anchor audit failed: subset={sorted(s)} "
                            f"{c} ({lab}, {pt})"
                        ),
                    )
    # degenerations: empty subset reproduces the full table, the full subset
    # collapses to the 1x1 identity table
    empty = coset_space(ctx.rs, frozenset())
    full = coset_space(ctx.rs, frozenset(range(1, ctx.rs.rank + 1)))
    for chamber in CHAMBERS:
        borel = ctx.table(chamber)
        t_empty = parabolic.parabolic_table(ctx.rs, empty, chamber, borel=borel)
        rec.record(
            dict(t_empty.entries) == {k: v for k, v in borel.entries.items() if not v.is_zero},
            f"empty-subset degeneration differs from full table ({chamber})",
        )
        t_full = parabolic.parabolic_table(ctx.rs, full, chamber, borel=borel)
        rec.record(
            len(full) == 1 and t_full.entry(0, 0) == MPoly.constant(ctx.rs.nvars, 1),
            f"full-subset degeneration is not the unit table ({chamber})",
        )
    return rec, {"subsets": [sorted(s) for s in subsets]}


def _suite_parabolic_duality(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    for subset in _maximal_subsets(ctx.rs):
        cs = coset_space(ctx.rs, subset)
        tabs = {
            chamber: parabolic.parabolic_table(
                ctx.rs, cs, chamber, borel=ctx.table(chamber)
            )
            for chamber in CHAMBERS
        }
        count = len(cs)
        for y in range(count):
            for w in range(count):
                got = parabolic.parabolic_duality_pairing(
                    ctx.rs, cs, tabs["plus"], tabs["minus"], y, w
                )
                rec.record(
                    got == (1 if y == w else 0),
                    lambda s=subset, y=y, w=w, got=got: (
                        f"quotient pairing subset={sorted(s)} ({y}, {w}) = {got}"
                    ),
                )
        for chamber in CHAMBERS:
            for w in range(count):
                for y in range(count):
                    if w == y:
                        continue
                    entry = (
                        tabs[chamber].entry(w, y)
                        if chamber == "minus"
                        else tabs[chamber].entry(y, w)
                    )
                    rec.record(
                        _mod_hbar2_truncate(entry)
                        == parabolic.mod_hbar2_P(ctx.rs, cs, chamber, w, y),
                        lambda s=subset, c=chamber, w=w, y=y: (
                            f"quotient mod-h^2 mismatch subset={sorted(s)} {c} ({w}, {y})"
                        ),
                    )
    return rec, {}


def _suite_billey_limit(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    g = ctx.rs.weyl()
    minus_t = ctx.table("minus")
    pairs = ctx.sample_pairs("billey-limit")
    for a, b in pairs:
        w = g.elements[a]
        y = g.elements[b]
        expected = schubert_limit.billey_restriction(ctx.rs, w, y.word)
        got = schubert_limit.billey_from_limit(
            ctx.rs, w, y.word, minus_entry=minus_t.entry(w, y)
        )
        rec.record(
            got == expected,
            lambda w=w, y=y: (
                f"limit mismatch at ({element_label(w)}, {element_label(y)})"
            ),
        )
    for w in g.elements:
        rec.record(
            schubert_limit.billey_restriction(ctx.rs, w, w.word)
            == schubert_limit.billey_diagonal(ctx.rs, w),
            lambda w=w: f"diagonal restriction wrong at {element_label(w)}",
        )
    return rec, {"pairs": len(pairs)}


def _suite_coset_constancy(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    rec = _Recorder()
    for subset in _maximal_subsets(ctx.rs):
        cs = coset_space(ctx.rs, subset)
        count = len(cs)
        for wbar in range(count):
            for ybar in range(count):
                try:
                    got = schubert_limit.schubert_P_restriction(ctx.rs, cs, wbar, ybar)
                except schubert_limit.RepresentativeInconsistency as exc:
                    rec.record(
                        False,
                        f"subset={sorted(subset)} ({wbar}, {ybar}): {exc}",
                    )
                    continue
                expected = schubert_limit.billey_restriction(
                    ctx.rs, cs.minimal_reps[wbar], cs.minimal_reps[ybar].word
                )
                rec.record(
                    got == expected,
                    f"subset={sorted(subset)} ({wbar}, {ybar}): value differs "
                    "from minimal-representative restriction",
                )
    return rec, {}


_BRAID_SYSTEMS = (
    ("A", 2, 1, 2, 3),
    ("B", 2, 1, 2, 4),
    ("G", 2, 1, 2, 6),
    ("A", 3, 1, 3, 2),
)


def _suite_braid_cases(ctx: VerifyContext) -> tuple[_Recorder, dict]:
    """Rank-two braid relations on a fixed roster of systems, whatever system
    the run was pointed at: both alternating words of the longest dihedral
    element must give identical wall products and identical columns."""
    rec = _Recorder()
    for ctype, rank, i, j, m in _BRAID_SYSTEMS:
        rs = build_root_system(ctype, rank)
        word_a = tuple(i if k % 2 == 0 else j for k in range(m))
        word_b = tuple(j if k % 2 == 0 else i for k in range(m))
        name = f"{ctype}{rank}<{i},{j}>"
        rec.record(
            rmatrix_minus(rs, word_a) == rmatrix_minus(rs, word_b),
            f"{name}: minus wall products differ across braid words",
        )
        rec.record(
            rmatrix_plus(rs, word_a) == rmatrix_plus(rs, word_b),
            f"{name}: plus wall products differ across braid words",
        )
        rec.record(
            stable_basis.minus_column(rs, word_a)
            == stable_basis.minus_column(rs, word_b),
            f"{name}: minus columns differ across braid words",
        )
        rec.record(
            stable_basis.plus_column(rs, word_a)
            == stable_basis.plus_column(rs, word_b),
            f"{name}: plus columns differ across braid words",
        )
    return rec, {"systems": [f"{t}{r}<{i},{j}> m={m}" for t, r, i, j, m in _BRAID_SYSTEMS]}


SUITES = {
    "word-independence": _suite_word_independence,
    "method-agreement": _suite_method_agreement,
    "support": _suite_support,
    "hbar-divisibility": _suite_hbar_divisibility,
    "diagonal": _suite_diagonal,
    "duality": _suite_duality,
    "a0-lemma": _suite_a0_lemma,
    "mod-h2": _suite_mod_h2,
    "parabolic-crosscheck": _suite_parabolic_crosscheck,
    "parabolic-duality": _suite_parabolic_duality,
    "billey-limit": _suite_billey_limit,
    "coset-constancy": _suite_coset_constancy,
    "braid-cases": _suite_braid_cases,
}


class UnknownSuite(ValueError):
    """Requested suite name is not registered."""


def run_suite(name: str, ctx: VerifyContext) -> SuiteResult:
    fn = SUITES.get(name)
    if fn is None:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    start = time.perf_counter()
    rec, details = fn(ctx)
    elapsed = time.perf_counter() - start
    if rec.fail_count > len(rec.failures):
        details = dict(details)
        details["failures_not_shown"] = rec.fail_count - len(rec.failures)
    return SuiteResult(name, rec.passed, rec.checks, rec.failures, elapsed, details)


def run_suites(
    rs: RootSystem,
    names: list[str] | None = None,
    config: SuiteConfig | None = None,
    jobs: int = 1,
) -> list[SuiteResult]:
    names = list(SUITES) if names is None else list(names)
    for name in names:
        if name not in SUITES:
            raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    ctx = VerifyContext(rs, config)
    if jobs <= 1:
        return [run_suite(name, ctx) for name in names]
    # warm the shared table cache serially; the suites then only read it
    for chamber in CHAMBERS:
        ctx.table(chamber)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_suite, name, ctx) for name in names]
        return [f.result() for f in futures]
