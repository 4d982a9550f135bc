"""Finite crystallographic root systems and their Weyl groups.

Roots are integer vectors in simple-root coordinates, so every reflection
and Weyl action is an exact integer matrix operation.  The stored Cartan
matrix has entries C[i][j] = <alpha_j, alpha_i^vee>, which makes the
simple reflection through alpha_i act by

    sigma_i(v) = v - (sum_j C[i][j] v_j) alpha_i .

Types follow the Bourbaki numbering: B_n has its last simple root short,
C_n its last simple root long, G_2 its first simple root short (so the
highest root is 3*alpha_1 + 2*alpha_2), and F_4 has roots 1, 2 long and
3, 4 short.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial


class UnknownType(ValueError):
    """Cartan type letter outside A-G."""


class RankOutOfRange(ValueError):
    """Rank invalid for the type, or above the configured bound."""


class GroupTooLarge(ValueError):
    """Weyl group order exceeds the configured enumeration bound."""


class IndexOutOfRange(ValueError):
    """Simple-root index outside 1..rank."""


class NotReduced(ValueError):
    """A word that was required to be reduced is not."""


DEFAULT_MAX_RANK = 6
DEFAULT_MAX_GROUP_ORDER = 200_000

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51_840,
    ("E", 7): 2_903_040,
    ("E", 8): 696_729_600,
    ("F", 4): 1152,
    ("G", 2): 12,
}

_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def weyl_order(cartan_type: str, rank: int) -> int:
    if cartan_type == "A":
        return factorial(rank + 1)
    if cartan_type in ("B", "C"):
        return 2**rank * factorial(rank)
    if cartan_type == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return _EXCEPTIONAL_ORDERS[(cartan_type, rank)]


def _validate_type_rank(cartan_type: str, rank: int, max_rank: int, allow_e: bool) -> None:
    if cartan_type not in "ABCDEFG" or len(cartan_type) != 1:
        raise UnknownType(f"unknown Cartan type {cartan_type!r}")
    mins = {"A": 1, "B": 2, "C": 2, "D": 3, "F": 4, "G": 2}
    if cartan_type in mins and rank < mins[cartan_type]:
        raise RankOutOfRange(f"type {cartan_type} needs rank >= {mins[cartan_type]}, got {rank}")
    if cartan_type == "F" and rank != 4:
        raise RankOutOfRange(f"type F exists only in rank 4, got {rank}")
    if cartan_type == "G" and rank != 2:
        raise RankOutOfRange(f"type G exists only in rank 2, got {rank}")
    if cartan_type == "E":
        if rank not in (6, 7, 8):
            raise RankOutOfRange(f"type E exists only in ranks 6, 7, 8, got {rank}")
        if not allow_e:
            raise RankOutOfRange("type E is only available with allow_e=True (large group)")
    if rank > max_rank:
        raise RankOutOfRange(f"rank {rank} exceeds the configured bound {max_rank}")


def _cartan(cartan_type: str, rank: int) -> tuple[tuple[int, ...], ...]:
    n = rank
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    # (i, j, C[i][j], C[j][i]) per Dynkin edge, 0-based
    if cartan_type in ("A", "B", "C"):
        edges = [(i, i + 1, -1, -1) for i in range(n - 1)]
        if cartan_type == "B" and n >= 2:
            edges[-1] = (n - 2, n - 1, -1, -2)
        if cartan_type == "C" and n >= 2:
            edges[-1] = (n - 2, n - 1, -2, -1)
    elif cartan_type == "D":
        edges = [(i, i + 1, -1, -1) for i in range(n - 2)]
        edges.append((n - 3, n - 1, -1, -1))
    elif cartan_type == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        edges = [(chain[k], chain[k + 1], -1, -1) for k in range(len(chain) - 1)]
        edges.append((1, 3, -1, -1))
    elif cartan_type == "F":
        edges = [(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)]
    else:  # G
        edges = [(0, 1, -3, -1)]
    for i, j, cij, cji in edges:
        m[i][j] = cij
        m[j][i] = cji
    return tuple(tuple(row) for row in m)


def _reflect_vec(cartan, i0, v):
    # i0 is 0-based; only the i0-th coordinate changes
    pairing = sum(cartan[i0][j] * v[j] for j in range(len(v)) if v[j])
    if not pairing:
        return tuple(v)
    w = list(v)
    w[i0] -= pairing
    return tuple(w)


def _generate_positive_roots(cartan):
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = list(simple)
    while queue:
        v = queue.pop()
        for i in range(n):
            w = _reflect_vec(cartan, i, v)
            if w not in seen and all(c >= 0 for c in w):
                seen.add(w)
                queue.append(w)
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


@dataclass(frozen=True)
class WeylElement:
    """One Weyl group element: canonical reduced word plus its action matrix.

    `word` is the lexicographically least reduced word (1-based letters);
    `action` row j holds the simple-root coordinates of w(alpha_{j+1}).
    """

    index: int
    word: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        return "W(e)" if not self.word else "W(" + ".".join(map(str, self.word)) + ")"


class _WeylGroup:
    """Fully enumerated Weyl group with Cayley tables, indexed deterministically
    by (length, canonical word)."""

    def __init__(self, rs: "RootSystem"):
        self.rs = rs
        cartan = rs.cartan_matrix
        n = rs.rank
        ident = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))

        def rstep(action, i0):
            row_i = action[i0]
            return tuple(
                tuple(rj[k] - cartan[i0][j] * row_i[k] for k in range(n)) if cartan[i0][j] else rj
                for j, rj in enumerate(action)
            )

        # BFS by length over right multiplication
        actions = [ident]
        index = {ident: 0}
        plen = [0]
        redge = [[-1] * n]
        frontier = [0]
        while frontier:
            nxt = []
            for p in frontier:
                for i0 in range(n):
                    q_act = rstep(actions[p], i0)
                    q = index.get(q_act)
                    if q is None:
                        q = len(actions)
                        actions.append(q_act)
                        index[q_act] = q
                        plen.append(plen[p] + 1)
                        redge.append([-1] * n)
                        nxt.append(q)
                    redge[p][i0] = q
                    if plen[q] < plen[p]:
                        redge[q][i0] = p
            frontier = nxt
        count = len(actions)
        assert count == weyl_order(rs.cartan_type, rs.rank)

        def lstep(action, i0):
            return tuple(_reflect_vec(cartan, i0, row) for row in action)

        # canonical word = smallest left descent, recursively
        words: list[tuple[int, ...] | None] = [None] * count
        words[0] = ()
        for p in sorted(range(count), key=plen.__getitem__):
            if p == 0:
                continue
            for i0 in range(n):
                q = index[lstep(actions[p], i0)]
                if plen[q] < plen[p]:
                    words[p] = (i0 + 1,) + words[q]
                    break

        order = sorted(range(count), key=lambda p: (plen[p], words[p]))
        newidx = [0] * count
        for new, old in enumerate(order):
            newidx[old] = new
        self.elements = tuple(
            WeylElement(new, words[old], actions[old]) for new, old in enumerate(order)
        )
        self.index = {e.action: e.index for e in self.elements}
        self.right = tuple(
            tuple(newidx[redge[old][i0]] for i0 in range(n)) for old in order
        )
        inv = [0] * count
        for e in self.elements:
            j = 0
            for letter in reversed(e.word):
                j = self.right[j][letter - 1]
            inv[e.index] = j
        self.inverse = tuple(inv)
        self.simple = tuple(self.index[lstep(ident, i0)] for i0 in range(n))
        self._bruhat: dict[tuple[int, int], bool] = {}
        self._reflection: dict[tuple[int, ...], int] = {}
        self._refl_roots: dict[int, tuple[int, ...]] | None = None

    def length(self, i: int) -> int:
        return len(self.elements[i].word)

    def apply(self, i: int, v) -> tuple[int, ...]:
        act = self.elements[i].action
        n = len(v)
        return tuple(sum(v[j] * act[j][k] for j in range(n) if v[j]) for k in range(n))

    def rmul(self, i: int, letter: int) -> int:
        return self.right[i][letter - 1]

    def lmul(self, letter: int, i: int) -> int:
        cartan = self.rs.cartan_matrix
        act = tuple(_reflect_vec(cartan, letter - 1, row) for row in self.elements[i].action)
        return self.index[act]

    def mul(self, i: int, j: int) -> int:
        for letter in self.elements[j].word:
            i = self.right[i][letter - 1]
        return i

    def bruhat_leq(self, a: int, b: int) -> bool:
        if a == 0:
            return True
        la, lb = self.length(a), self.length(b)
        if la > lb:
            return False
        if la == lb:
            return a == b
        key = (a, b)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        # lifting property along a right descent of b
        i0 = self.elements[b].word[-1] - 1
        b2 = self.right[b][i0]
        a2 = self.right[a][i0]
        if self.length(a2) < la:
            res = self.bruhat_leq(a2, b2)
        else:
            res = self.bruhat_leq(a, b2)
        self._bruhat[key] = res
        return res

    def reflection(self, root: tuple[int, ...]) -> int:
        """Index of the reflection through a positive root."""
        got = self._reflection.get(root)
        if got is not None:
            return got
        ht = sum(root)
        if ht == 1:
            idx = self.simple[root.index(1)]
        else:
            cartan = self.rs.cartan_matrix
            idx = -1
            for i0 in range(self.rs.rank):
                lower = _reflect_vec(cartan, i0, root)
                if sum(lower) < ht and all(c >= 0 for c in lower):
                    inner = self.reflection(lower)
                    idx = self.lmul(i0 + 1, self.rmul(inner, i0 + 1))
                    break
            assert idx >= 0
        self._reflection[root] = idx
        return idx

    def reflection_roots(self) -> dict[int, tuple[int, ...]]:
        """Element index -> positive root, over all reflections."""
        if self._refl_roots is None:
            self._refl_roots = {self.reflection(r): r for r in self.rs.positive_roots}
        return self._refl_roots


class RootSystem:
    """Immutable root-system data; the Weyl group is enumerated on demand."""

    def __init__(self, cartan_type: str, rank: int, max_group_order: int):
        self.cartan_type = cartan_type
        self.rank = rank
        self.cartan_matrix = _cartan(cartan_type, rank)
        self.positive_roots = _generate_positive_roots(self.cartan_matrix)
        expected = _POSITIVE_COUNTS[cartan_type](rank)
        assert len(self.positive_roots) == expected
        self.num_positive = len(self.positive_roots)
        self.nvars = rank + 1  # polynomial variables a1..an plus h
        self.max_group_order = max_group_order
        self._weyl: _WeylGroup | None = None

    def __repr__(self) -> str:
        return f"RootSystem({self.cartan_type}{self.rank})"

    @property
    def weyl_group_order(self) -> int:
        return weyl_order(self.cartan_type, self.rank)

    def weyl(self) -> _WeylGroup:
        if self._weyl is None:
            if self.weyl_group_order > self.max_group_order:
                raise GroupTooLarge(
                    f"|W| = {self.weyl_group_order} exceeds the bound {self.max_group_order}"
                )
            self._weyl = _WeylGroup(self)
        return self._weyl

    # -- convenience accessors used throughout ------------------------------

    @property
    def identity(self) -> WeylElement:
        return self.weyl().elements[0]

    def element(self, i: int) -> WeylElement:
        return self.weyl().elements[i]

    def simple_reflection(self, i: int) -> WeylElement:
        self._check_index(i)
        g = self.weyl()
        return g.elements[g.simple[i - 1]]

    def element_by_word(self, word) -> WeylElement:
        g = self.weyl()
        j = 0
        for letter in word:
            self._check_index(letter)
            j = g.right[j][letter - 1]
        return g.elements[j]

    def mul(self, w: WeylElement, y: WeylElement) -> WeylElement:
        g = self.weyl()
        return g.elements[g.mul(w.index, y.index)]

    def inverse(self, w: WeylElement) -> WeylElement:
        g = self.weyl()
        return g.elements[g.inverse[w.index]]

    def apply(self, w: WeylElement, v) -> tuple[int, ...]:
        return self.weyl().apply(w.index, v)

    def is_positive_root(self, v) -> bool:
        return all(c >= 0 for c in v)

    def is_reduced_word(self, word) -> bool:
        g = self.weyl()
        j = 0
        length = 0
        for letter in word:
            self._check_index(letter)
            k = g.right[j][letter - 1]
            if g.length(k) <= length:
                return False
            j, length = k, length + 1
        return True

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"simple-root index {i} outside 1..{self.rank}")


def build_root_system(
    cartan_type: str,
    rank: int,
    *,
    max_rank: int = DEFAULT_MAX_RANK,
    allow_e: bool = False,
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
) -> RootSystem:
    """Validate (type, rank) and build the root system.

    Type E needs the explicit allow_e opt-in (even E6 has |W| = 51840);
    ranks above max_rank are rejected up front.
    """
    _validate_type_rank(cartan_type, rank, max_rank, allow_e)
    return RootSystem(cartan_type, rank, max_group_order)


def reflect(rs: RootSystem, i: int, v) -> tuple[int, ...]:
    """Simple reflection sigma_i applied to a vector in root coordinates."""
    rs._check_index(i)
    if len(v) != rs.rank:
        raise IndexOutOfRange(f"vector length {len(v)} != rank {rs.rank}")
    return _reflect_vec(rs.cartan_matrix, i - 1, tuple(v))


def enumerate_weyl(rs: RootSystem, max_order: int | None = None) -> tuple[WeylElement, ...]:
    """All Weyl group elements, identity first, ordered by (length, word)."""
    if max_order is not None and rs.weyl_group_order > max_order:
        raise GroupTooLarge(
            f"|W| = {rs.weyl_group_order} exceeds the bound {max_order}"
        )
    return rs.weyl().elements


def reduced_words(rs: RootSystem, w: WeylElement) -> list[tuple[int, ...]]:
    """Every reduced word of w, by recursion over right descents."""
    g = rs.weyl()
    memo: dict[int, list[tuple[int, ...]]] = {0: [()]}

    def rec(idx: int) -> list[tuple[int, ...]]:
        got = memo.get(idx)
        if got is not None:
            return got
        ln = g.length(idx)
        out = []
        for i0 in range(rs.rank):
            j = g.right[idx][i0]
            if g.length(j) < ln:
                out.extend(word + (i0 + 1,) for word in rec(j))
        memo[idx] = out
        return out

    return rec(w.index)


def bruhat_leq(rs: RootSystem, w: WeylElement, y: WeylElement) -> bool:
    """Bruhat order, via the lifting property with memoization."""
    return rs.weyl().bruhat_leq(w.index, y.index)


def inversion_set(rs: RootSystem, word) -> tuple[tuple[int, ...], ...]:
    """The roots beta_i = sigma_{a_1}...sigma_{a_{i-1}}(alpha_{a_i}) of a word.

    All beta_i are positive exactly when the word is reduced; a negative
    one raises NotReduced.  Works directly on action matrices, so it does
    not need the Weyl group enumerated.
    """
    cartan = rs.cartan_matrix
    n = rs.rank
    action = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    betas = []
    for pos, letter in enumerate(word):
        rs._check_index(letter)
        i0 = letter - 1
        beta = action[i0]
        if not all(c >= 0 for c in beta):
            raise NotReduced(f"word {tuple(word)} is not reduced (letter at position {pos})")
        betas.append(beta)
        row_i = action[i0]
        action = [
            tuple(rj[k] - cartan[i0][j] * row_i[k] for k in range(n)) if cartan[i0][j] else rj
            for j, rj in enumerate(action)
        ]
    assert len(set(betas)) == len(betas)
    return tuple(betas)


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets W / W_I with their minimal-length representatives.

    minimal_reps is ordered like the ambient group (identity coset first);
    projection maps an element index to its coset index; members lists the
    element indices of each coset.
    """

    rs: RootSystem = field(repr=False)
    subset: frozenset[int]
    parabolic_positive_roots: tuple[tuple[int, ...], ...]
    minimal_reps: tuple[WeylElement, ...]
    projection: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    subgroup: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.minimal_reps)

    def coset_of(self, w: WeylElement) -> int:
        return self.projection[w.index]

    def leq(self, cbar: int, dbar: int) -> bool:
        """Bruhat order on the quotient, via minimal representatives."""
        return self.rs.weyl().bruhat_leq(
            self.minimal_reps[cbar].index, self.minimal_reps[dbar].index
        )


def coset_space(rs: RootSystem, subset) -> CosetSpace:
    """Cosets W / W_I for I a set of simple-root indices (1-based)."""
    subset = frozenset(subset)
    for i in subset:
        rs._check_index(i)
    g = rs.weyl()
    n = rs.rank

    sub = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            for i in subset:
                q = g.right[p][i - 1]
                if q not in sub:
                    sub.add(q)
                    nxt.append(q)
        frontier = nxt
    subgroup = tuple(sorted(sub))

    para_roots = tuple(
        r for r in rs.positive_roots if all(r[j] == 0 or (j + 1) in subset for j in range(n))
    )

    units = {i: tuple(1 if j == i - 1 else 0 for j in range(n)) for i in subset}
    minimal = [
        e for e in g.elements
        if all(all(c >= 0 for c in g.apply(e.index, units[i])) for i in subset)
    ]
    assert len(minimal) * len(subgroup) == len(g.elements)

    rep_pos = {e.index: k for k, e in enumerate(minimal)}
    projection = []
    for e in g.elements:
        p = e.index
        while True:
            for i in subset:
                if not all(c >= 0 for c in g.apply(p, units[i])):
                    p = g.right[p][i - 1]
                    break
            else:
                break
        projection.append(rep_pos[p])
    members: list[list[int]] = [[] for _ in minimal]
    for idx, cbar in enumerate(projection):
        members[cbar].append(idx)

    return CosetSpace(
        rs=rs,
        subset=subset,
        parabolic_positive_roots=para_roots,
        minimal_reps=tuple(minimal),
        projection=tuple(projection),
        members=tuple(tuple(m) for m in members),
        subgroup=subgroup,
    )
