import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import subword_bruhat_leq
from stabcalc.root_system import (
    GroupTooLarge,
    IndexOutOfRange,
    NotReduced,
    RankOutOfRange,
    UnknownType,
    build_root_system,
    coset_space,
    enumerate_weyl,
    inversion_set,
    reduced_words,
    weyl_order,
)

# (type, rank) -> (number of positive roots, group order)
SIZES = {
    ("A", 1): (1, 2),
    ("A", 2): (3, 6),
    ("A", 3): (6, 24),
    ("A", 4): (10, 120),
    ("B", 2): (4, 8),
    ("B", 3): (9, 48),
    ("B", 4): (16, 384),
    ("C", 3): (9, 48),
    ("D", 4): (12, 192),
    ("F", 4): (24, 1152),
    ("G", 2): (6, 12),
}


@pytest.fixture(scope="module")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="module")
def b2():
    return build_root_system("B", 2)


def test_sizes_and_orders():
    for (ctype, rank), (npos, order) in SIZES.items():
        rs = build_root_system(ctype, rank)
        assert rs.num_positive == npos
        assert len(rs.weyl().elements) == order
        assert weyl_order(ctype, rank) == order


def test_cartan_matrices_pinned(a2, b2):
    assert a2.cartan_matrix == ((2, -1), (-1, 2))
    assert b2.cartan_matrix == ((2, -1), (-2, 2))
    g2 = build_root_system("G", 2)
    assert g2.cartan_matrix == ((2, -3), (-1, 2))


def test_positive_roots_pinned(a2, b2):
    assert set(a2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert set(b2.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    g2 = build_root_system("G", 2)
    assert set(g2.positive_roots) == {
        (1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2),
    }


def test_simple_reflection_images(b2):
    g2 = build_root_system("G", 2)
    assert b2.apply(b2.simple_reflection(1), (0, 1)) == (1, 1)
    assert b2.apply(b2.simple_reflection(2), (1, 0)) == (1, 2)
    assert g2.apply(g2.simple_reflection(1), (0, 1)) == (3, 1)
    assert g2.apply(g2.simple_reflection(2), (1, 0)) == (1, 1)
    # a simple reflection negates its own root
    assert b2.apply(b2.simple_reflection(1), (1, 0)) == (-1, 0)


def test_element_enumeration_order(a2):
    words = [w.word for w in a2.weyl().elements]
    assert words == [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)]
    assert [w.index for w in a2.weyl().elements] == list(range(6))
    assert repr(a2.weyl().elements[3]) == "W(1.2)"


def test_longest_element_words(a2, b2):
    w0 = a2.weyl().elements[-1]
    assert sorted(reduced_words(a2, w0)) == [(1, 2, 1), (2, 1, 2)]
    w0b = b2.weyl().elements[-1]
    assert sorted(reduced_words(b2, w0b)) == [(1, 2, 1, 2), (2, 1, 2, 1)]
    assert w0b.length == 4


def test_longest_element_f4():
    f4 = build_root_system("F", 4)
    w0 = max(f4.weyl().elements, key=lambda w: w.length)
    assert w0.length == 24
    # the longest element sends every positive root to a negative one
    for root in f4.positive_roots:
        image = f4.apply(w0, root)
        assert all(c <= 0 for c in image) and any(c < 0 for c in image)


def test_group_laws(a2):
    g = a2.weyl()
    for u in g.elements:
        assert g.mul(u.index, g.inverse[u.index]) == 0
        for v in g.elements:
            prod = g.mul(u.index, v.index)
            assert g.inverse[prod] == g.mul(g.inverse[v.index], g.inverse[u.index])
            assert g.length(prod) <= u.length + v.length
            assert (g.length(prod) - u.length - v.length) % 2 == 0


def test_bruhat_matches_subword_oracle(a2, b2):
    for rs in (a2, b2, build_root_system("A", 3)):
        g = rs.weyl()
        for w in g.elements:
            for y in g.elements:
                assert g.bruhat_leq(w.index, y.index) == subword_bruhat_leq(rs, w, y)


def test_inversion_sets(a2, b2):
    assert inversion_set(a2, (1, 2, 1)) == ((1, 0), (1, 1), (0, 1))
    assert inversion_set(a2, ()) == ()
    with pytest.raises(NotReduced):
        inversion_set(a2, (1, 1))
    for rs in (a2, b2):
        w0 = rs.weyl().elements[-1]
        assert set(inversion_set(rs, w0.word)) == set(rs.positive_roots)
        for w in rs.weyl().elements:
            assert len(inversion_set(rs, w.word)) == w.length


def test_reflections_assemble_from_roots(b2):
    g = b2.weyl()
    for idx, root in g.reflection_roots().items():
        w = g.elements[idx]
        assert w.length % 2 == 1
        assert b2.apply(w, root) == tuple(-c for c in root)
        assert g.mul(idx, idx) == 0


def test_coset_space_pinned(a2):
    cs = coset_space(a2, {2})
    assert [rep.word for rep in cs.minimal_reps] == [(), (1,), (2, 1)]
    assert len(cs) == 3
    assert set(cs.subgroup) == {0, a2.simple_reflection(2).index}
    # projection is constant on each coset and hits the right minimal rep
    for bar, members in enumerate(cs.members):
        for idx in members:
            assert cs.projection[idx] == bar
    for bar, rep in enumerate(cs.minimal_reps):
        assert cs.projection[rep.index] == bar


def test_coset_space_degenerate_subsets(a2):
    full = coset_space(a2, {1, 2})
    assert len(full) == 1 and full.minimal_reps[0].word == ()
    empty = coset_space(a2, set())
    assert len(empty) == len(a2.weyl().elements)


def test_quotient_bruhat(a2):
    cs = coset_space(a2, {2})
    g = a2.weyl()
    for abar in range(len(cs)):
        for bbar in range(len(cs)):
            expected = g.bruhat_leq(
                cs.minimal_reps[abar].index, cs.minimal_reps[bbar].index
            )
            assert cs.leq(abar, bbar) == expected


def test_validation_errors():
    with pytest.raises(UnknownType):
        build_root_system("Z", 2)
    for args in [("A", 0), ("A", 7), ("B", 1), ("D", 2), ("F", 3), ("G", 3), ("E", 6)]:
        with pytest.raises(RankOutOfRange):
            build_root_system(*args)
    assert build_root_system("E", 6, allow_e=True).num_positive == 36
    with pytest.raises(GroupTooLarge):
        build_root_system("A", 3, max_group_order=5).weyl()
    a2 = build_root_system("A", 2)
    with pytest.raises(IndexOutOfRange):
        a2.simple_reflection(0)
    with pytest.raises(IndexOutOfRange):
        a2.simple_reflection(3)


def test_enumerate_weyl_respects_cap(a2):
    assert len(enumerate_weyl(a2)) == 6
    with pytest.raises(GroupTooLarge):
        enumerate_weyl(build_root_system("B", 3), max_order=10)


def test_is_reduced_word(a2):
    assert a2.is_reduced_word((1, 2, 1))
    assert not a2.is_reduced_word((2, 2))
    assert a2.is_reduced_word(())


@given(st.lists(st.integers(1, 3), max_size=8))
@settings(max_examples=60, deadline=None)
def test_element_by_word_properties(word):
    rs = build_root_system("A", 3)
    w = rs.element_by_word(tuple(word))
    assert w.length <= len(word)
    assert (len(word) - w.length) % 2 == 0
    # the canonical word reproduces the element
    assert rs.element_by_word(w.word).index == w.index


@given(st.lists(st.integers(1, 2), max_size=6), st.integers(-4, 4), st.integers(-4, 4))
@settings(max_examples=60, deadline=None)
def test_action_is_a_group_action(word, x, y):
    rs = build_root_system("B", 2)
    w = rs.element_by_word(tuple(word))
    vec = (x, y)
    moved = rs.apply(w, vec)
    back = rs.apply(rs.inverse(w), moved)
    assert back == vec
