"""Exact polynomial and rational-function arithmetic for restriction tables.

Variables are a1..an for the simple roots plus a trailing h for the
fibre weight.  Coefficients are ints or Fractions, never floats.  Every
denominator that occurs in this package is a product of linear forms
(roots, roots shifted by h, or h itself), so rational functions keep
their denominators as explicit multisets of linear forms and reduce by
exact division against those forms.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class RankMismatch(ValueError):
    """Operands live over different variable counts."""


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


class DivideByZeroForm(ZeroDivisionError):
    """Division by the zero linear form or the zero function."""


class PoleAtPoint(ZeroDivisionError):
    """A denominator vanishes at the evaluation point."""


class NonPolynomialResult(ArithmeticError):
    """A rational function expected to clear to a polynomial did not."""


def _normc(c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c)
    return c


_UNIT_CACHE: dict[int, tuple[tuple[int, ...], ...]] = {}


def _units(nvars: int) -> tuple[tuple[int, ...], ...]:
    got = _UNIT_CACHE.get(nvars)
    if got is None:
        got = tuple(tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars))
        _UNIT_CACHE[nvars] = got
    return got


class MPoly:
    """Multivariate polynomial with exact coefficients.

    Exponent keys are tuples of length nvars with the h exponent last.
    The canonical term order is graded lexicographic, largest first.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @classmethod
    def from_terms(cls, nvars: int, mapping) -> "MPoly":
        clean = {}
        for e, c in mapping.items():
            c = _normc(c)
            if c:
                clean[tuple(e)] = c
        return cls(nvars, clean)

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        c = _normc(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "MPoly":
        return cls(nvars, {_units(nvars)[idx]: 1})

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self):
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.nvars != other.nvars:
            raise RankMismatch(f"{self.nvars} variables vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = _normc(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _normc(other)
            if not other:
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: _normc(c * other) for e, c in self.terms.items()})
        if isinstance(other, LinearForm):
            return self.mul_linear(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out: dict = {}
        n = self.nvars
        for e2, c2 in small.items():
            for e1, c1 in big.items():
                key = tuple(e1[k] + e2[k] for k in range(n))
                s = _normc(out.get(key, 0) + c1 * c2)
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def mul_linear(self, form: "LinearForm") -> "MPoly":
        """Multiply by a linear form; the workhorse for building products."""
        if len(form.coeffs) + 1 != self.nvars:
            raise RankMismatch(f"form rank {len(form.coeffs)} vs {self.nvars - 1}")
        units = _units(self.nvars)
        out: dict = {}
        n = self.nvars
        for idx, fc in enumerate((*form.coeffs, form.hbar)):
            if not fc:
                continue
            u = units[idx]
            for e, c in self.terms.items():
                key = tuple(e[k] + u[k] for k in range(n))
                s = _normc(out.get(key, 0) + c * fc)
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly(self.nvars, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if len(self.terms) != len(other.terms):
            return False
        for e, c in self.terms.items():
            if other.terms.get(e, 0) != c:
                return False
        return True

    __hash__ = None

    # -- queries -------------------------------------------------------------

    def coefficient_of_hbar_power(self, k: int) -> "MPoly":
        """The coefficient of h**k, as a polynomial with h exponent zero."""
        h = self.nvars - 1
        out = {}
        for e, c in self.terms.items():
            if e[h] == k:
                out[e[:h] + (0,)] = c
        return MPoly(self.nvars, out)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise RankMismatch(f"point length {len(point)} vs {self.nvars} variables")
        if all(type(x) is int for x in point):
            total = 0
            for e, c in self.terms.items():
                v = c
                for x, k in zip(point, e):
                    if k:
                        v = v * x**k
                total = total + v
            return _normc(total)
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return _normc(total)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = []
            hexp = e[-1]
            if hexp:
                mono.append("h" if hexp == 1 else f"h^{hexp}")
            for i, k in enumerate(e[:-1], start=1):
                if k:
                    mono.append(f"a{i}" if k == 1 else f"a{i}^{k}")
            mag = abs(c) if isinstance(c, int) else abs(Fraction(c))
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = "*".join([str(mag), *mono])
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


_NORM_CACHE: dict = {}


@dataclass(frozen=True)
class LinearForm:
    """A linear form c1*a1 + ... + cn*an + c_h*h, with no constant part."""

    coeffs: tuple
    hbar: int | Fraction = 0

    @classmethod
    def from_root(cls, root, hbar=0) -> "LinearForm":
        return cls(tuple(root), hbar)

    @property
    def is_zero(self) -> bool:
        return self.hbar == 0 and not any(self.coeffs)

    def to_mpoly(self) -> MPoly:
        n = len(self.coeffs) + 1
        units = _units(n)
        terms = {}
        for i, c in enumerate((*self.coeffs, self.hbar)):
            if c:
                terms[units[i]] = _normc(c)
        return MPoly(n, terms)

    def evaluate(self, point):
        if len(point) != len(self.coeffs) + 1:
            raise RankMismatch(f"point length {len(point)} vs {len(self.coeffs) + 1}")
        total = Fraction(0)
        for c, x in zip((*self.coeffs, self.hbar), point):
            if c:
                total += Fraction(c) * Fraction(x)
        return _normc(total)

    def normalized(self) -> tuple["LinearForm", Fraction]:
        """Primitive integer form with positive leading coefficient, and the
        scalar that recovers self."""
        got = _NORM_CACHE.get(self)
        if got is not None:
            return got
        seq = (*self.coeffs, self.hbar)
        if self.is_zero:
            raise DivideByZeroForm("zero linear form")
        denoms = lcm(*(Fraction(c).denominator for c in seq))
        ints = [int(Fraction(c) * denoms) for c in seq]
        g = gcd(*ints)
        lead = next(c for c in ints if c)
        if lead < 0:
            g = -g
        prim = tuple(c // g for c in ints)
        scalar = Fraction(g, denoms)
        result = (LinearForm(prim[:-1], prim[-1]), scalar)
        _NORM_CACHE[self] = result
        return result

    def scaled(self, s) -> "LinearForm":
        return LinearForm(tuple(_normc(Fraction(c) * s) for c in self.coeffs),
                          _normc(Fraction(self.hbar) * s))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if len(self.coeffs) != len(other.coeffs):
            raise RankMismatch("linear forms of different rank")
        return LinearForm(
            tuple(_normc(a + b) for a, b in zip(self.coeffs, other.coeffs)),
            _normc(self.hbar + other.hbar),
        )

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs), -self.hbar)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def sort_key(self):
        return (self.hbar, self.coeffs)

    def __str__(self) -> str:
        return str(self.to_mpoly())


def exact_divide(f: MPoly, form: LinearForm) -> MPoly:
    """Divide f by a linear form, raising NotDivisible on any remainder."""
    if form.is_zero:
        raise DivideByZeroForm("division by the zero linear form")
    n = f.nvars
    if len(form.coeffs) + 1 != n:
        raise RankMismatch(f"form rank {len(form.coeffs)} vs {n - 1}")
    if f.is_zero:
        return MPoly(n)
    seq = (*form.coeffs, form.hbar)
    pivot = next(i for i, c in enumerate(seq) if c)
    c0 = seq[pivot]
    others = [(j, cj) for j, cj in enumerate(seq) if cj and j != pivot]

    layers: dict[int, dict] = {}
    for e, c in f.terms.items():
        layers.setdefault(e[pivot], {})[e] = c
    quotient: dict = {}
    for k in range(max(layers), 0, -1):
        layer = layers.pop(k, None)
        if not layer:
            continue
        below = layers.setdefault(k - 1, {})
        for e, c in layer.items():
            qc = Fraction(c, c0) if isinstance(c, int) else Fraction(c) / c0
            qe = e[:pivot] + (k - 1,) + e[pivot + 1:]
            s = _normc(quotient.get(qe, 0) + qc)
            if s:
                quotient[qe] = s
            else:
                quotient.pop(qe, None)
            for j, cj in others:
                e2 = qe[:j] + (qe[j] + 1,) + qe[j + 1:]
                s2 = _normc(below.get(e2, 0) - qc * cj)
                if s2:
                    below[e2] = s2
                else:
                    below.pop(e2, None)
    rest = layers.get(0, {})
    if any(rest.values()):
        raise NotDivisible(f"({f}) is not divisible by ({form})")
    return MPoly(n, quotient)


_PROBE_CACHE: dict = {}


def _point_on_form(form: LinearForm, nvars: int):
    """A deterministic integer point where the (integer) form vanishes; used
    as a cheap necessary test before attempting exact division."""
    key = (form, nvars)
    got = _PROBE_CACHE.get(key)
    if got is not None:
        return got
    rng = random.Random(hash(key) & 0xFFFFFFFF)
    seq = (*form.coeffs, form.hbar)
    pivot = next(i for i, c in enumerate(seq) if c)
    cp = seq[pivot]
    point = [cp * rng.randrange(3, 10_000) for _ in range(nvars)]
    point[pivot] = -sum(seq[i] * (point[i] // cp) for i in range(nvars) if i != pivot and seq[i])
    point = tuple(point)
    _PROBE_CACHE[key] = point
    return point


class RatFunc:
    """A rational function numer / prod(denominators of linear forms).

    Denominator forms are primitive with positive leading coefficient;
    sign and content live in the numerator.  Construction cancels every
    denominator factor that exactly divides the numerator, so the
    denominator tuple is empty exactly when the value is a polynomial.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer: MPoly, denom=()):
        scale = Fraction(1)
        counts: Counter = Counter()
        for form in denom:
            prim, s = form.normalized()
            scale /= s
            counts[prim] += 1
        if scale != 1:
            numer = numer * scale
        if numer.is_zero:
            counts.clear()
        elif counts:
            for form in list(counts):
                while counts[form]:
                    probe = _point_on_form(form, numer.nvars)
                    if numer.evaluate(probe) != 0:
                        break
                    try:
                        numer = exact_divide(numer, form)
                    except NotDivisible:
                        break
                    counts[form] -= 1
                if not counts[form]:
                    del counts[form]
        self.numer = numer
        self.denom = tuple(sorted(counts.elements(), key=LinearForm.sort_key))

    @classmethod
    def from_mpoly(cls, p: MPoly) -> "RatFunc":
        r = cls.__new__(cls)
        r.numer = p
        r.denom = ()
        return r

    @classmethod
    def constant(cls, nvars: int, c) -> "RatFunc":
        return cls.from_mpoly(MPoly.constant(nvars, c))

    @property
    def nvars(self) -> int:
        return self.numer.nvars

    @property
    def is_zero(self) -> bool:
        return self.numer.is_zero

    @property
    def is_polynomial(self) -> bool:
        return not self.denom

    def to_mpoly(self) -> MPoly:
        if self.denom:
            raise NonPolynomialResult(f"denominator remains: {self}")
        return self.numer

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc.from_mpoly(other)
        if isinstance(other, LinearForm):
            return RatFunc.from_mpoly(other.to_mpoly())
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.numer.nvars != other.numer.nvars:
            raise RankMismatch(f"{self.numer.nvars} variables vs {other.numer.nvars}")
        mine, theirs = Counter(self.denom), Counter(other.denom)
        union = mine | theirs
        left = self.numer
        for form, k in (union - mine).items():
            for _ in range(k):
                left = left.mul_linear(form)
        right = other.numer
        for form, k in (union - theirs).items():
            for _ in range(k):
                right = right.mul_linear(form)
        return RatFunc(left + right, tuple(union.elements()))

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.numer = -self.numer
        r.denom = self.denom
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = RatFunc.__new__(RatFunc)
            r.numer = self.numer * other
            r.denom = self.denom if not r.numer.is_zero else ()
            return r
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.numer * other.numer, self.denom + other.denom)

    __rmul__ = __mul__

    def mul_form(self, form: LinearForm) -> "RatFunc":
        """Multiply by a linear form, cancelling against the denominator."""
        return RatFunc(self.numer.mul_linear(form), self.denom)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivideByZeroForm("division by zero scalar")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, LinearForm):
            return RatFunc(self.numer, self.denom + (other,))
        if isinstance(other, MPoly) and other.is_constant:
            return self / other.constant_value()
        if isinstance(other, RatFunc):
            if other.is_zero:
                raise DivideByZeroForm("division by the zero function")
            if other.numer.is_constant:
                flip = MPoly.constant(self.nvars, Fraction(1) / Fraction(other.numer.constant_value()))
                for form in other.denom:
                    flip = flip.mul_linear(form)
                return self * RatFunc.from_mpoly(flip)
            raise TypeError("divisor must be scalar, a linear form, or have factored shape")
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.numer.nvars != other.numer.nvars:
            return False
        if self.denom == other.denom:
            return self.numer == other.numer
        left = self.numer
        for form in other.denom:
            left = left.mul_linear(form)
        right = other.numer
        for form in self.denom:
            right = right.mul_linear(form)
        return left == right

    __hash__ = None

    def evaluate(self, point):
        bottom = Fraction(1)
        for form in self.denom:
            v = form.evaluate(point)
            if v == 0:
                raise PoleAtPoint(f"({form}) vanishes at {point}")
            bottom *= v
        return _normc(Fraction(self.numer.evaluate(point)) / bottom)

    def __str__(self) -> str:
        if not self.denom:
            return str(self.numer)
        bottom = " * ".join(f"({form})" for form in self.denom)
        return f"({self.numer}) / ({bottom})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


class PolyRing:
    """Factory bundle for one rank: generators, roots as forms, products."""

    def __init__(self, rank: int):
        self.rank = rank
        self.nvars = rank + 1

    @property
    def zero(self) -> MPoly:
        return MPoly(self.nvars)

    @property
    def one(self) -> MPoly:
        return MPoly.constant(self.nvars, 1)

    def const(self, c) -> MPoly:
        return MPoly.constant(self.nvars, c)

    def gen(self, i: int) -> MPoly:
        if not 1 <= i <= self.rank:
            raise RankMismatch(f"generator index {i} outside 1..{self.rank}")
        return MPoly.variable(self.nvars, i - 1)

    @property
    def hbar(self) -> MPoly:
        return MPoly.variable(self.nvars, self.nvars - 1)

    @property
    def hbar_form(self) -> LinearForm:
        return LinearForm((0,) * self.rank, 1)

    def root_form(self, root, hbar=0) -> LinearForm:
        if len(root) != self.rank:
            raise RankMismatch(f"root length {len(root)} vs rank {self.rank}")
        return LinearForm(tuple(root), hbar)

    def root_poly(self, root, hbar=0) -> MPoly:
        return self.root_form(root, hbar).to_mpoly()

    def product_of_forms(self, forms) -> MPoly:
        out = self.one
        for form in forms:
            out = out.mul_linear(form)
        return out


def weyl_act(rs, w, obj):
    """Act by a Weyl element: a_i goes to the form of w(alpha_i), h is fixed."""
    action = w.action
    rank = len(action)
    if isinstance(obj, LinearForm):
        if len(obj.coeffs) != rank:
            raise RankMismatch(f"form rank {len(obj.coeffs)} vs {rank}")
        coeffs = tuple(
            _normc(sum(obj.coeffs[i] * action[i][k] for i in range(rank) if obj.coeffs[i]))
            for k in range(rank)
        )
        return LinearForm(coeffs, obj.hbar)
    if isinstance(obj, MPoly):
        n = obj.nvars
        if n != rank + 1:
            raise RankMismatch(f"{n} variables vs rank {rank}")
        images = [LinearForm(tuple(action[i]), 0) for i in range(rank)]
        h = n - 1
        out = MPoly(n)
        for e, c in obj.terms.items():
            piece = MPoly(n, {(0,) * h + (e[h],): c})
            for i in range(rank):
                for _ in range(e[i]):
                    piece = piece.mul_linear(images[i])
            out = out + piece
        return out
    if isinstance(obj, RatFunc):
        numer = weyl_act(rs, w, obj.numer)
        denom = tuple(weyl_act(rs, w, form) for form in obj.denom)
        return RatFunc(numer, denom)
    raise TypeError(f"cannot act on {type(obj).__name__}")


def hbar_coefficient(p: MPoly, k: int) -> MPoly:
    return p.coefficient_of_hbar_power(k)


def eval_rational(r: RatFunc, point):
    return r.evaluate(point)


@dataclass
class FixedPointFunction:
    """A function on fixed points: element index -> rational function."""

    nvars: int
    values: dict

    def get(self, idx: int) -> RatFunc:
        got = self.values.get(idx)
        if got is None:
            return RatFunc.constant(self.nvars, 0)
        return got

    def __eq__(self, other):
        if not isinstance(other, FixedPointFunction):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        for idx in set(self.values) | set(other.values):
            if self.get(idx) != other.get(idx):
                return False
        return True
