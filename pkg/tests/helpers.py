"""Independent oracles shared across test modules."""

from itertools import combinations

from stabcalc.poly_ring import MPoly


def subword_bruhat_leq(rs, w, y) -> bool:
    """Subword criterion, evaluated literally: w <= y iff some subsequence of
    a fixed reduced word of y multiplies to w with no length drop."""
    word_y = y.word
    lw = w.length
    if lw > len(word_y):
        return False
    for positions in combinations(range(len(word_y)), lw):
        sub = tuple(word_y[p] for p in positions)
        if rs.element_by_word(sub).index == w.index:
            return True
    return False


def truncate_mod_h2(p: MPoly) -> MPoly:
    return MPoly(p.nvars, {e: c for e, c in p.terms.items() if e[-1] < 2})


def hbar_free(p: MPoly) -> bool:
    return all(e[-1] == 0 for e in p.terms)
