"""Restriction tables for the two chambers of stable classes on T*(G/B).

Entries are exact polynomials.  Every table is keyed (label, point)
where the label names the class and the point the fixed point it is
restricted to.  Matrix rendering differs per chamber so that both
chambers print upper-triangular: the minus chamber puts labels on rows,
the plus chamber puts points on rows.

Three independent construction methods are kept deliberately separate
so they can be compared entry by entry: a subword dynamic program per
column, expansion of ordered factor products in the group algebra, and
a first-column seed propagated by a divided-difference style recursion.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import group_algebra
from .poly_ring import (
    FixedPointFunction,
    LinearForm,
    MPoly,
    NonPolynomialResult,
    RatFunc,
    exact_divide,
)
from .root_system import RootSystem, WeylElement, inversion_set


class NonConstantPairing(ArithmeticError):
    """A pairing expected to collapse to a scalar did not."""


class AmbiguousBeta(ValueError):
    """More than one root satisfies a condition that must pin down one."""


METHODS = ("closed_form", "rmatrix", "recursion")


def _hbar_form(rs: RootSystem) -> LinearForm:
    return LinearForm((0,) * rs.rank, 1)


def _positive_product(rs: RootSystem) -> MPoly:
    out = MPoly.constant(rs.nvars, 1)
    for root in rs.positive_roots:
        out = out.mul_linear(LinearForm.from_root(root))
    return out


# -- closed-form dynamic programs ------------------------------------------


def _minus_dp(rs: RootSystem, word, betas, target: int | None = None) -> dict:
    """States are subword products z of the processed prefix; the value at z
    collects h**(skips) times the product of prefix roots at chosen spots."""
    g = rs.weyl()
    hform = _hbar_form(rs)
    total = len(word)
    states = {0: MPoly.constant(rs.nvars, 1)}
    for t, (letter, beta) in enumerate(zip(word, betas), start=1):
        remaining = total - t
        bform = LinearForm.from_root(beta)
        step: dict = {}
        for zi, val in states.items():
            z2 = g.rmul(zi, letter)
            for key, piece in ((zi, val.mul_linear(hform)), (z2, val.mul_linear(bform))):
                if target is not None and g.length(g.mul(g.inverse[key], target)) > remaining:
                    continue
                got = step.get(key)
                merged = piece if got is None else got + piece
                if merged.is_zero:
                    step.pop(key, None)
                else:
                    step[key] = merged
        states = step
    return states


def _plus_dp(rs: RootSystem, word, target: int | None = None) -> dict:
    """States are the chosen-position products; values are rational with
    denominators built from prefix images of the letters."""
    g = rs.weyl()
    rank = rs.rank
    units = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    hpoly = MPoly.variable(rs.nvars, rank)
    total = len(word)
    states = {0: RatFunc.constant(rs.nvars, 1)}
    for t, letter in enumerate(word, start=1):
        remaining = total - t
        unit = units[letter - 1]
        step: dict = {}
        for zi, val in states.items():
            za = g.apply(zi, unit)
            za_form = LinearForm.from_root(za)
            z2 = g.rmul(zi, letter)
            branches = (
                (zi, val * RatFunc(hpoly, (za_form,))),
                (z2, val * RatFunc(LinearForm.from_root(za, 1).to_mpoly(), (za_form,))),
            )
            for key, piece in branches:
                if target is not None and g.length(g.mul(g.inverse[key], target)) > remaining:
                    continue
                got = step.get(key)
                merged = piece if got is None else got + piece
                if merged.is_zero:
                    step.pop(key, None)
                else:
                    step[key] = merged
        states = step
    return states


def _minus_scale(rs: RootSystem, betas, value: MPoly) -> MPoly:
    inv = set(betas)
    for root in rs.positive_roots:
        if root not in inv:
            value = value.mul_linear(LinearForm.from_root(root, -1))
    if len(betas) % 2:
        value = -value
    return value


def minus_column(rs: RootSystem, y_word, target: WeylElement | None = None) -> dict:
    """All restrictions of minus classes to the point y, as {label index: value}."""
    betas = inversion_set(rs, y_word)
    tgt = target.index if target is not None else None
    states = _minus_dp(rs, tuple(y_word), betas, tgt)
    out = {}
    for zi, val in states.items():
        scaled = _minus_scale(rs, betas, val)
        if not scaled.is_zero:
            out[zi] = scaled
    return out


def plus_column(rs: RootSystem, y_word, target: WeylElement | None = None) -> dict:
    """All restrictions of the plus class labelled y, as {point index: value}."""
    word = tuple(y_word)
    tgt = target.index if target is not None else None
    states = _plus_dp(rs, word, tgt)
    sign = -1 if len(word) % 2 else 1
    out = {}
    for zi, val in states.items():
        for root in rs.positive_roots:
            val = val.mul_form(LinearForm.from_root(root))
        poly = val.to_mpoly()
        if not poly.is_zero:
            out[zi] = poly if sign == 1 else -poly
    return out


def stab_minus_restriction(rs: RootSystem, w: WeylElement, y_word) -> MPoly:
    col = minus_column(rs, y_word, target=w)
    return col.get(w.index, MPoly(rs.nvars))


def stab_plus_restriction(rs: RootSystem, y_word, w: WeylElement) -> MPoly:
    col = plus_column(rs, y_word, target=w)
    return col.get(w.index, MPoly(rs.nvars))


# -- diagonal and Euler data -------------------------------------------------


def diagonal_value(rs: RootSystem, chamber: str, w: WeylElement) -> MPoly:
    _check_chamber(chamber)
    out = MPoly.constant(rs.nvars, 1)
    for root in rs.positive_roots:
        image = rs.apply(w, root)
        positive = all(c >= 0 for c in image)
        if chamber == "minus":
            form = LinearForm.from_root(image, -1) if positive else LinearForm.from_root(image)
        else:
            form = LinearForm.from_root(image) if positive else LinearForm.from_root(image, -1)
        out = out.mul_linear(form)
    return out


def euler_factors(rs: RootSystem, y: WeylElement) -> tuple[LinearForm, ...]:
    forms = []
    for root in rs.positive_roots:
        image = rs.apply(y, root)
        forms.append(LinearForm.from_root(image, -1))
        forms.append(LinearForm.from_root(tuple(-c for c in image)))
    return tuple(forms)


def euler_class_fixed_point(rs: RootSystem, y: WeylElement) -> MPoly:
    out = MPoly.constant(rs.nvars, 1)
    for form in euler_factors(rs, y):
        out = out.mul_linear(form)
    return out


# -- tables -------------------------------------------------------------------


def _check_chamber(chamber: str) -> None:
    if chamber not in ("plus", "minus"):
        raise ValueError(f"chamber must be 'plus' or 'minus', got {chamber!r}")


@dataclass
class RestrictionTable:
    """Full table of one chamber, entries keyed (label index, point index)."""

    rs: RootSystem = field(repr=False)
    chamber: str
    method: str
    entries: dict

    def entry(self, label: WeylElement | int, point: WeylElement | int) -> MPoly:
        li = label if isinstance(label, int) else label.index
        pi = point if isinstance(point, int) else point.index
        got = self.entries.get((li, pi))
        return got if got is not None else MPoly(self.rs.nvars)

    def class_function(self, label: WeylElement | int) -> FixedPointFunction:
        li = label if isinstance(label, int) else label.index
        values = {}
        for (a, b), val in self.entries.items():
            if a == li:
                values[b] = RatFunc.from_mpoly(val)
        return FixedPointFunction(self.rs.nvars, values)

    def matrix(self):
        """Rows/columns in the order that renders upper-triangular: minus has
        labels on rows, plus has points on rows."""
        elements = self.rs.weyl().elements
        if self.chamber == "minus":
            rows = [[self.entry(r, c) for c in elements] for r in elements]
        else:
            rows = [[self.entry(c, r) for c in elements] for r in elements]
        return elements, rows

    def __eq__(self, other):
        if not isinstance(other, RestrictionTable):
            return NotImplemented
        if self.chamber != other.chamber:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self.entry(*k) == other.entry(*k) for k in keys)

    __hash__ = None


def stab_table(rs: RootSystem, chamber: str, method: str = "closed_form") -> RestrictionTable:
    _check_chamber(chamber)
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    builder = {"closed_form": _table_closed_form,
               "rmatrix": _table_rmatrix,
               "recursion": _table_recursion}[method]
    return RestrictionTable(rs, chamber, method, builder(rs, chamber))


def _table_closed_form(rs: RootSystem, chamber: str) -> dict:
    entries: dict = {}
    for y in rs.weyl().elements:
        if chamber == "minus":
            for wi, val in minus_column(rs, y.word).items():
                entries[(wi, y.index)] = val
        else:
            for wi, val in plus_column(rs, y.word).items():
                entries[(y.index, wi)] = val
    return entries


def _table_rmatrix(rs: RootSystem, chamber: str) -> dict:
    entries: dict = {}
    hpoly = MPoly.variable(rs.nvars, rs.rank)
    for y in rs.weyl().elements:
        length = y.length
        sign = -1 if length % 2 else 1
        if chamber == "minus":
            expansion = group_algebra.rmatrix_minus(rs, y.word)
            betas = inversion_set(rs, y.word)
            hpow = RatFunc.from_mpoly(hpoly ** length)
            for wi, coeff in expansion.coeffs.items():
                cleared = (coeff * hpow).to_mpoly()
                val = _minus_scale(rs, betas, cleared)
                if not val.is_zero:
                    entries[(wi, y.index)] = val
        else:
            expansion = group_algebra.rmatrix_plus(rs, y.word)
            for wi, coeff in expansion.coeffs.items():
                for root in rs.positive_roots:
                    coeff = coeff.mul_form(LinearForm.from_root(root))
                poly = coeff.to_mpoly()
                if not poly.is_zero:
                    entries[(y.index, wi)] = poly if sign == 1 else -poly
    return entries


def _table_recursion(rs: RootSystem, chamber: str) -> dict:
    g = rs.weyl()
    rank = rs.rank
    units = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    hform = _hbar_form(rs)
    entries: dict = {}
    zero = MPoly(rs.nvars)
    seed = diagonal_value(rs, chamber, g.elements[0])
    if chamber == "minus":
        entries[(0, 0)] = seed
        for y in g.elements[1:]:
            letter = y.word[-1]
            prev = g.rmul(y.index, letter)
            yp_alpha = g.apply(prev, units[letter - 1])
            move = LinearForm.from_root(yp_alpha)
            divisor = LinearForm.from_root(yp_alpha, -1)
            for w in g.elements:
                p = entries.get((w.index, prev), zero)
                q = entries.get((g.rmul(w.index, letter), prev), zero)
                numer = -(p.mul_linear(hform)) - q.mul_linear(move)
                val = exact_divide(numer, divisor)
                if not val.is_zero:
                    entries[(w.index, y.index)] = val
    else:
        entries[(0, 0)] = seed
        for y in g.elements[1:]:
            letter = y.word[-1]
            prev = g.rmul(y.index, letter)
            for w in g.elements:
                w_alpha = g.apply(w.index, units[letter - 1])
                p = entries.get((prev, w.index), zero)
                q = entries.get((prev, g.rmul(w.index, letter)), zero)
                numer = -(p.mul_linear(hform)) - q.mul_linear(LinearForm.from_root(w_alpha, -1))
                val = exact_divide(numer, LinearForm.from_root(w_alpha))
                if not val.is_zero:
                    entries[(y.index, w.index)] = val
    return entries


# -- operators and pairings ---------------------------------------------------


def apply_A0(rs: RootSystem, alpha, psi: FixedPointFunction) -> FixedPointFunction:
    """The degree-lowering difference operator attached to a positive root:
    value at w is (psi(w s_alpha) - psi(w)) * (w alpha - h) / (w alpha)."""
    g = rs.weyl()
    root = tuple(alpha)
    sigma = g.reflection(root)
    values = {}
    for w in g.elements:
        ws = g.mul(w.index, sigma)
        diff = psi.get(ws) - psi.get(w.index)
        if diff.is_zero:
            continue
        wa = g.apply(w.index, root)
        factor = RatFunc(LinearForm.from_root(wa, -1).to_mpoly(), (LinearForm.from_root(wa),))
        values[w.index] = diff * factor
    return FixedPointFunction(rs.nvars, values)


def _pairing_value(rs: RootSystem, terms) -> int | Fraction:
    """Sum of P*Q / prod((z beta - h)(-z beta)) over the given terms, where
    each term supplies the image vectors z beta.  Every factor pair divides
    the universal product prod(gamma (gamma-h) (gamma+h)), so the sum clears
    against that product and must come out scalar."""
    nvars = rs.nvars
    universal: Counter = Counter()
    for root in rs.positive_roots:
        universal[LinearForm.from_root(root)] += 1
        universal[LinearForm.from_root(root, -1)] += 1
        universal[LinearForm.from_root(root, 1)] += 1
    total = MPoly(nvars)
    for p, q, vectors in terms:
        if p.is_zero or q.is_zero:
            continue
        rest = Counter(universal)
        for vec in vectors:
            positive = all(c >= 0 for c in vec)
            gamma = vec if positive else tuple(-c for c in vec)
            rest[LinearForm.from_root(gamma)] -= 1
            rest[LinearForm.from_root(gamma, -1 if positive else 1)] -= 1
        if min(rest.values()) < 0:
            raise NonConstantPairing("an Euler factor fell outside the universal product")
        piece = p * q
        for form, k in rest.items():
            for _ in range(k):
                piece = piece.mul_linear(form)
        total = total + piece
    if total.is_zero:
        return 0
    try:
        for form in universal.elements():
            total = exact_divide(total, form)
    except ArithmeticError as err:
        raise NonConstantPairing(f"pairing does not clear: {err}") from err
    if not total.is_constant:
        raise NonConstantPairing(f"pairing is not scalar: {total}")
    return total.constant_value()


def duality_pairing(
    rs: RootSystem,
    plus_table: RestrictionTable,
    minus_table: RestrictionTable,
    y: WeylElement | int,
    w: WeylElement | int,
) -> int | Fraction:
    """The localization pairing of the plus class at y with the minus class
    at w; equals 1 exactly when y == w and 0 otherwise."""
    g = rs.weyl()
    if isinstance(y, int):
        y = g.elements[y]
    if isinstance(w, int):
        w = g.elements[w]
    terms = []
    for z in g.elements:
        if not (g.bruhat_leq(w.index, z.index) and g.bruhat_leq(z.index, y.index)):
            continue
        p = plus_table.entry(y.index, z.index)
        q = minus_table.entry(w.index, z.index)
        vectors = [g.apply(z.index, root) for root in rs.positive_roots]
        terms.append((p, q, vectors))
    return _pairing_value(rs, terms)


def mod_hbar2(rs: RootSystem, chamber: str, w: WeylElement, y: WeylElement) -> MPoly:
    """First-order part of the restriction that pairs the labels w and y,
    with y the Bruhat-larger element; valid modulo h**2 off the diagonal.

    Nonzero exactly when w = y s_beta < y for a positive root beta, and then
    equal to (-1)**(l(y)+1) h prod(alpha) / (y beta), one exact division.
    Both chambers share the value; the chamber picks which table entry it
    matches, (w, y) for minus and (y, w) for plus.
    """
    _check_chamber(chamber)
    g = rs.weyl()
    if w.index == y.index or w.length >= y.length:
        return MPoly(rs.nvars)
    t = g.mul(g.inverse[y.index], w.index)
    beta = g.reflection_roots().get(t)
    if beta is None:
        return MPoly(rs.nvars)
    ybeta = g.apply(y.index, beta)
    numer = _positive_product(rs).mul_linear(_hbar_form(rs))
    value = exact_divide(numer, LinearForm.from_root(ybeta))
    return value if y.length % 2 else -value
