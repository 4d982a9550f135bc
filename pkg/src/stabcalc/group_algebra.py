"""Weyl-group algebra with rational-function coefficients.

Two multiplications matter here.  In the twisted product, moving a
scalar past a group generator acts on it: u_w * f = (w f) * u_w.  In
the central product, scalars pass through untouched.  The ordered
factor expansions below produce restriction coefficients; the minus
family expands centrally, the plus family twisted.
"""
from __future__ import annotations

from .poly_ring import LinearForm, MPoly, RatFunc, weyl_act
from .root_system import RootSystem, inversion_set


class GroupAlgebraElement:
    """A finite sum of (rational function) * u_w, keyed by element index."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: dict | None = None):
        self.nvars = nvars
        clean = {}
        if coeffs:
            for idx, c in coeffs.items():
                if not c.is_zero:
                    clean[idx] = c
        self.coeffs = clean

    def coefficient(self, idx: int) -> RatFunc:
        got = self.coeffs.get(idx)
        if got is None:
            return RatFunc.constant(self.nvars, 0)
        return got

    def support(self):
        return sorted(self.coeffs)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            got = out.get(idx)
            out[idx] = c if got is None else got + c
        return GroupAlgebraElement(self.nvars, out)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        for idx in set(self.coeffs) | set(other.coeffs):
            if self.coefficient(idx) != other.coefficient(idx):
                return False
        return True

    __hash__ = None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[i]})*u[{i}]" for i in sorted(self.coeffs))


def scalar_element(rs: RootSystem, value) -> GroupAlgebraElement:
    nvars = rs.nvars
    if isinstance(value, RatFunc):
        c = value
    elif isinstance(value, MPoly):
        c = RatFunc.from_mpoly(value)
    else:
        c = RatFunc.constant(nvars, value)
    return GroupAlgebraElement(nvars, {0: c})


def basis_element(rs: RootSystem, w, coeff=None) -> GroupAlgebraElement:
    c = coeff if coeff is not None else RatFunc.constant(rs.nvars, 1)
    if isinstance(c, MPoly):
        c = RatFunc.from_mpoly(c)
    return GroupAlgebraElement(rs.nvars, {w.index: c})


def algebra_mul(rs: RootSystem, a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Twisted product: (f u_w)(g u_v) = f * (w g) u_{wv}."""
    g = rs.weyl()
    out: dict = {}
    for wi, cw in a.coeffs.items():
        w = g.elements[wi]
        for vi, cv in b.coeffs.items():
            key = g.mul(wi, vi)
            term = cw * weyl_act(rs, w, cv)
            got = out.get(key)
            out[key] = term if got is None else got + term
    return GroupAlgebraElement(rs.nvars, out)


def central_mul(rs: RootSystem, a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Product with scalars treated as central: (f u_w)(g u_v) = f g u_{wv}."""
    g = rs.weyl()
    out: dict = {}
    for wi, cw in a.coeffs.items():
        for vi, cv in b.coeffs.items():
            key = g.mul(wi, vi)
            term = cw * cv
            got = out.get(key)
            out[key] = term if got is None else got + term
    return GroupAlgebraElement(rs.nvars, out)


def act_coefficients(rs: RootSystem, w, a: GroupAlgebraElement) -> GroupAlgebraElement:
    """Apply w to every coefficient, leaving the group part alone."""
    return GroupAlgebraElement(rs.nvars, {i: weyl_act(rs, w, c) for i, c in a.coeffs.items()})


def coefficient(a: GroupAlgebraElement, w) -> RatFunc:
    idx = w if isinstance(w, int) else w.index
    return a.coefficient(idx)


def rmatrix_minus(rs: RootSystem, word) -> GroupAlgebraElement:
    """Ordered central product of (1 + (beta_i / h) u_{s_i}) over the word,
    where beta_i is the i-th prefix root of the (reduced) word."""
    betas = inversion_set(rs, word)
    g = rs.weyl()
    nvars = rs.nvars
    hform = LinearForm((0,) * rs.rank, 1)
    out = {0: RatFunc.constant(nvars, 1)}
    for letter, beta in zip(word, betas):
        step: dict = {}
        for zi, val in out.items():
            got = step.get(zi)
            step[zi] = val if got is None else got + val
            z2 = g.rmul(zi, letter)
            term = RatFunc(val.numer.mul_linear(LinearForm.from_root(beta)),
                           val.denom + (hform,))
            got2 = step.get(z2)
            step[z2] = term if got2 is None else got2 + term
        out = step
    return GroupAlgebraElement(nvars, out)


def rmatrix_plus(rs: RootSystem, word) -> GroupAlgebraElement:
    """Ordered twisted product of (h/a_i + ((h + a_i)/a_i) u_{s_i}) over the
    word; the twisting pushes accumulated prefixes into every denominator."""
    inversion_set(rs, word)  # reject non-reduced words
    g = rs.weyl()
    nvars = rs.nvars
    rank = rs.rank
    units = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    hpoly = MPoly.variable(nvars, rank)
    out = {0: RatFunc.constant(nvars, 1)}
    for letter in word:
        unit = units[letter - 1]
        step: dict = {}
        for zi, val in out.items():
            za = g.apply(zi, unit)
            za_form = LinearForm.from_root(za)
            skip = val * RatFunc(hpoly, (za_form,))
            got = step.get(zi)
            step[zi] = skip if got is None else got + skip
            z2 = g.rmul(zi, letter)
            chosen = val * RatFunc(LinearForm.from_root(za, 1).to_mpoly(), (za_form,))
            got2 = step.get(z2)
            step[z2] = chosen if got2 is None else got2 + chosen
        out = step
    return GroupAlgebraElement(nvars, out)
