"""Schubert-class restrictions and their recovery as leading parts.

The direct route is the classical positive subword sum over reduced
subwords.  The indirect route extracts the top h-degree coefficient of
a minus-chamber restriction; the two must agree, which ties the stable
tables to ordinary Schubert calculus.
"""
from __future__ import annotations

from .poly_ring import LinearForm, MPoly
from .root_system import CosetSpace, RootSystem, WeylElement, inversion_set
from .stable_basis import stab_minus_restriction


class RepresentativeInconsistency(AssertionError):
    """A quantity that must be constant on a coset is not."""


def billey_restriction(rs: RootSystem, w: WeylElement, y_word) -> MPoly:
    """Sum over reduced subwords of y_word multiplying to w of the product
    of prefix roots at the chosen positions.  Nonnegative integer output."""
    word = tuple(y_word)
    betas = inversion_set(rs, word)
    g = rs.weyl()
    total = len(word)
    goal = w.length
    states = {0: MPoly.constant(rs.nvars, 1)}
    for t, (letter, beta) in enumerate(zip(word, betas), start=1):
        remaining = total - t
        bform = LinearForm.from_root(beta)
        step: dict = {}
        for zi, val in states.items():
            if g.length(g.mul(g.inverse[zi], w.index)) <= remaining:
                got = step.get(zi)
                step[zi] = val if got is None else got + val
            z2 = g.rmul(zi, letter)
            if g.length(z2) <= g.length(zi) or g.length(z2) > goal:
                continue
            if g.length(g.mul(g.inverse[z2], w.index)) > remaining:
                continue
            piece = val.mul_linear(bform)
            got = step.get(z2)
            step[z2] = piece if got is None else got + piece
        states = step
    return states.get(w.index, MPoly(rs.nvars))


def billey_diagonal(rs: RootSystem, w: WeylElement) -> MPoly:
    """The restriction of the class labelled w at w itself: the product of
    the prefix roots of any reduced word for w."""
    out = MPoly.constant(rs.nvars, 1)
    for beta in inversion_set(rs, w.word):
        out = out.mul_linear(LinearForm.from_root(beta))
    return out


def billey_from_limit(rs: RootSystem, w: WeylElement, y_word, minus_entry: MPoly | None = None) -> MPoly:
    """Recover the subword sum as the top h-degree part of the minus entry:
    the coefficient of h**(N - l(w)) times (-1)**N, N the positive-root count."""
    if minus_entry is None:
        minus_entry = stab_minus_restriction(rs, w, y_word)
    n = rs.num_positive
    coeff = minus_entry.coefficient_of_hbar_power(n - w.length)
    return coeff if n % 2 == 0 else -coeff


def schubert_P_restriction(rs: RootSystem, cs: CosetSpace, wbar: int, ybar: int) -> MPoly:
    """Quotient Schubert restriction: the subword sum for the minimal label
    representative, evaluated at every member of the point coset.  The
    members must all give the same polynomial."""
    g = rs.weyl()
    w_min = cs.minimal_reps[wbar]
    values = []
    for yi in cs.members[ybar]:
        values.append(billey_restriction(rs, w_min, g.elements[yi].word))
    first = values[0]
    for yi, val in zip(cs.members[ybar][1:], values[1:]):
        if val != first:
            raise RepresentativeInconsistency(
                f"representatives {cs.members[ybar][0]} and {yi} of coset {ybar} "
                f"give different restrictions of label {wbar}"
            )
    return first
