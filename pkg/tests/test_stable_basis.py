from fractions import Fraction

import pytest

from helpers import truncate_mod_h2
from stabcalc.poly_ring import LinearForm, MPoly, NonPolynomialResult, PolyRing, RatFunc
from stabcalc.root_system import build_root_system, inversion_set
from stabcalc.stable_basis import (
    METHODS,
    NonConstantPairing,
    RestrictionTable,
    apply_A0,
    diagonal_value,
    duality_pairing,
    euler_class_fixed_point,
    minus_column,
    mod_hbar2,
    plus_column,
    stab_minus_restriction,
    stab_plus_restriction,
    stab_table,
)

R1 = PolyRing(1)
R2 = PolyRing(2)


@pytest.fixture(scope="module")
def a1():
    return build_root_system("A", 1)


@pytest.fixture(scope="module")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="module")
def b2():
    return build_root_system("B", 2)


@pytest.fixture(scope="module")
def a2_tables(a2):
    return {ch: stab_table(a2, ch) for ch in ("minus", "plus")}


@pytest.fixture(scope="module")
def b2_tables(b2):
    return {ch: stab_table(b2, ch) for ch in ("minus", "plus")}


def test_golden_a1_minus_all_methods(a1):
    a, h = R1.gen(1), R1.hbar
    expected = {
        (0, 0): a - h,
        (0, 1): -h,
        (1, 1): -a,
    }
    for method in METHODS:
        table = stab_table(a1, "minus", method)
        for key, value in expected.items():
            assert table.entry(*key) == value, (method, key)
        assert table.entry(1, 0).is_zero


def test_golden_a1_plus_all_methods(a1):
    a, h = R1.gen(1), R1.hbar
    expected = {
        (0, 0): a,
        (1, 0): -h,
        (1, 1): -a - h,
    }
    for method in METHODS:
        table = stab_table(a1, "plus", method)
        for key, value in expected.items():
            assert table.entry(*key) == value, (method, key)
        assert table.entry(0, 1).is_zero


def test_golden_a1_matrix_renders_upper_triangular(a1):
    a, h = R1.gen(1), R1.hbar
    elements, rows = stab_table(a1, "minus").matrix()
    assert [w.word for w in elements] == [(), (1,)]
    assert rows == [[a - h, -h], [MPoly(2), -a]]
    _, rows_plus = stab_table(a1, "plus").matrix()
    assert rows_plus == [[a, -h], [MPoly(2), -a - h]]


def test_a2_entries_factor_as_pinned(a2_tables):
    a1p, a2p, h = R2.gen(1), R2.gen(2), R2.hbar
    tm = a2_tables["minus"]
    neg = MPoly.constant(3, -1)
    assert tm.entry(0, 0) == (a1p - h) * (a2p - h) * (a1p + a2p - h)
    assert tm.entry(0, 1) == neg * h * (a2p - h) * (a1p + a2p - h)
    assert tm.entry(1, 1) == neg * a1p * (a2p - h) * (a1p + a2p - h)
    # the identity column has a single entry
    assert tm.entry(1, 0).is_zero and tm.entry(5, 0).is_zero
    tp = a2_tables["plus"]
    assert tp.entry(0, 0) == a1p * a2p * (a1p + a2p)
    assert tp.entry(5, 5) == neg * (a1p + h) * (a2p + h) * (a1p + a2p + h)


def test_column_builders_match_tables(a2, a2_tables):
    g = a2.weyl()
    y = g.elements[4]
    col = minus_column(a2, y.word)
    for w in g.elements:
        assert col.get(w.index, MPoly(3)) == a2_tables["minus"].entry(w.index, y.index)
        assert stab_minus_restriction(a2, w, y.word) == a2_tables["minus"].entry(
            w.index, y.index
        )
    colp = plus_column(a2, y.word)
    for w in g.elements:
        assert colp.get(w.index, MPoly(3)) == a2_tables["plus"].entry(y.index, w.index)
        assert stab_plus_restriction(a2, y.word, w) == a2_tables["plus"].entry(
            y.index, w.index
        )


def test_diagonal_matches_inversion_split(b2, b2_tables):
    """Independent recomputation: the diagonal value is a product over the
    positive roots, with the (root - h) factor on the side the element keeps
    positive for minus and the side it flips for plus."""
    g = b2.weyl()
    for w in g.elements:
        minus_expect = MPoly.constant(3, 1)
        plus_expect = MPoly.constant(3, 1)
        for root in b2.positive_roots:
            image = b2.apply(w, root)
            positive = all(c >= 0 for c in image)
            if positive:
                minus_expect = minus_expect.mul_linear(LinearForm.from_root(image, -1))
                plus_expect = plus_expect.mul_linear(LinearForm.from_root(image))
            else:
                minus_expect = minus_expect.mul_linear(LinearForm.from_root(image))
                plus_expect = plus_expect.mul_linear(LinearForm.from_root(image, -1))
        assert b2_tables["minus"].entry(w, w) == minus_expect
        assert b2_tables["plus"].entry(w, w) == plus_expect
        assert diagonal_value(b2, "minus", w) == minus_expect
        assert diagonal_value(b2, "plus", w) == plus_expect


def test_support_and_divisibility(a2, a2_tables, b2, b2_tables):
    for rs, tables in ((a2, a2_tables), (b2, b2_tables)):
        g = rs.weyl()
        for a in g.elements:
            for b in g.elements:
                minus_entry = tables["minus"].entry(a, b)
                assert minus_entry.is_zero != g.bruhat_leq(a.index, b.index)
                plus_entry = tables["plus"].entry(a, b)
                assert plus_entry.is_zero != g.bruhat_leq(b.index, a.index)
                if a.index != b.index:
                    assert all(e[-1] >= 1 for e in minus_entry.terms)
                    assert all(e[-1] >= 1 for e in plus_entry.terms)
                # entries are homogeneous of degree = number of positive roots
                for entry in (minus_entry, plus_entry):
                    assert all(sum(e) == rs.num_positive for e in entry.terms)


def test_methods_agree_on_b2(b2, b2_tables):
    for chamber in ("minus", "plus"):
        for method in ("rmatrix", "recursion"):
            assert stab_table(b2, chamber, method) == b2_tables[chamber]


def test_duality_is_kronecker(a1, a2, a2_tables):
    t1 = {ch: stab_table(a1, ch) for ch in ("minus", "plus")}
    for rs, tabs in ((a1, t1), (a2, a2_tables)):
        n = len(rs.weyl().elements)
        for y in range(n):
            for w in range(n):
                got = duality_pairing(rs, tabs["plus"], tabs["minus"], y, w)
                assert got == (1 if y == w else 0)


def test_duality_matches_naive_localization_sum(a2, a2_tables):
    """Dual route for the pairing: accumulate the honest rational-function
    sum over fixed points instead of clearing a universal denominator."""
    g = a2.weyl()
    for y in (0, 2, 5):
        for w in (0, 2, 5):
            total = RatFunc.constant(3, 0)
            for z in g.elements:
                p = a2_tables["plus"].entry(y, z.index)
                q = a2_tables["minus"].entry(w, z.index)
                if p.is_zero or q.is_zero:
                    continue
                denoms = []
                for root in a2.positive_roots:
                    image = g.apply(z.index, root)
                    denoms.append(LinearForm.from_root(image, -1))
                    denoms.append(LinearForm.from_root(image))
                total = total + RatFunc(p * q, tuple(denoms))
            assert total == (1 if y == w else 0)


def test_pairing_rejects_mismatched_tables(a2, a2_tables):
    with pytest.raises(NonConstantPairing):
        duality_pairing(a2, a2_tables["minus"], a2_tables["minus"], 5, 5)


def test_euler_class_reflection_identity(b2):
    """Reflecting the fixed point multiplies the Euler class by
    (y beta + h)/(y beta - h) over the roots the reflection inverts; for a
    simple root that is the single classic factor swap."""
    g = b2.weyl()
    for y in g.elements:
        for root in b2.positive_roots:
            sigma = g.reflection(root)
            ys = g.elements[g.mul(y.index, sigma)]
            inverted = inversion_set(b2, g.elements[sigma].word)
            left = euler_class_fixed_point(b2, ys)
            right = euler_class_fixed_point(b2, y)
            for beta in inverted:
                yb = g.apply(y.index, beta)
                left = left.mul_linear(LinearForm.from_root(yb, -1))
                right = right.mul_linear(LinearForm.from_root(yb, 1))
            assert left == right
    # simple-root special case: exactly one inverted root, the root itself
    for i in (1, 2):
        alpha = tuple(1 if j == i - 1 else 0 for j in range(2))
        assert inversion_set(b2, (i,)) == (alpha,)


def test_mod_hbar2_pinned_and_matches_tables(a2, a2_tables):
    a1p, a2p, h = R2.gen(1), R2.gen(2), R2.hbar
    g = a2.weyl()
    e, s1 = g.elements[0], g.elements[1]
    assert mod_hbar2(a2, "minus", e, s1) == MPoly.constant(3, -1) * h * a2p * (a1p + a2p)
    assert mod_hbar2(a2, "minus", e, e).is_zero
    assert mod_hbar2(a2, "plus", s1, s1).is_zero
    for chamber in ("minus", "plus"):
        table = a2_tables[chamber]
        for w in g.elements:
            for y in g.elements:
                if w.index == y.index:
                    continue
                entry = table.entry(w, y) if chamber == "minus" else table.entry(y, w)
                assert truncate_mod_h2(entry) == mod_hbar2(a2, chamber, w, y)


def test_difference_operator_on_basis_classes(a2, a2_tables, b2, b2_tables):
    """For a simple root, the operator folds a class onto minus itself minus
    the reflected class."""
    for rs, tables in ((a2, a2_tables), (b2, b2_tables)):
        g = rs.weyl()
        for chamber in ("minus", "plus"):
            table = tables[chamber]
            for i in range(1, rs.rank + 1):
                alpha = tuple(1 if j == i - 1 else 0 for j in range(rs.rank))
                sigma = g.simple[i - 1]
                for y in g.elements:
                    psi = table.class_function(y)
                    reflected = table.class_function(g.mul(y.index, sigma))
                    image = apply_A0(rs, alpha, psi)
                    for z in g.elements:
                        total = (
                            image.get(z.index)
                            + psi.get(z.index)
                            + reflected.get(z.index)
                        )
                        assert total.is_zero, (chamber, i, y.word, z.word)


def test_difference_operator_fails_beyond_simple_roots(a2, a2_tables):
    # the folding identity is a simple-root fact; the highest root breaks it
    alpha = (1, 1)
    g = a2.weyl()
    table = a2_tables["minus"]
    sigma = g.reflection(alpha)
    broken = False
    for y in g.elements:
        psi = table.class_function(y)
        reflected = table.class_function(g.mul(y.index, sigma))
        image = apply_A0(a2, alpha, psi)
        for z in g.elements:
            total = image.get(z.index) + psi.get(z.index) + reflected.get(z.index)
            if not total.is_zero:
                broken = True
    assert broken


def test_chamber_validation(a2):
    with pytest.raises(ValueError):
        stab_table(a2, "up")
    with pytest.raises(ValueError):
        diagonal_value(a2, "sideways", a2.identity)
    with pytest.raises(ValueError):
        stab_table(a2, "minus", "guesswork")


def test_table_entry_accepts_elements_and_indices(a2, a2_tables):
    g = a2.weyl()
    w = g.elements[3]
    table = a2_tables["minus"]
    assert table.entry(w, w) == table.entry(3, 3)


def test_class_function_covers_support(a2, a2_tables):
    g = a2.weyl()
    psi = a2_tables["minus"].class_function(g.elements[1])
    for z in g.elements:
        expected = a2_tables["minus"].entry(1, z.index)
        assert psi.get(z.index) == RatFunc.from_mpoly(expected)
