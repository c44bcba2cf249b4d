"""Polynomials over Q and fractions whose denominators are products of characters.

Every equivariant multiplicity computed by this package lives in
``(1/(chi_1 ... chi_n)) S`` with ``S`` the symmetric algebra of the character
lattice, so a denominator is stored as a multiset of primitive, lex-positive
characters and equality never needs a multivariate gcd.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, PoleError
from .lattice import Vector, as_vector, lex_sign, normalize_character, pairing

Exponent = tuple[int, ...]


def _term_key(exp: Exponent):
    # higher total degree first, then lex-descending exponents
    return (-sum(exp), tuple(-e for e in exp))


class Polynomial:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise DimensionError(f"exponent {exp} has wrong length for {nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> Polynomial:
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: Polynomial):
        if other.nvars != self.nvars:
            raise DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        return Polynomial(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def total_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def homogeneous_component(self, k: int) -> Polynomial:
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError("evaluation point has wrong length")
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _term_key(t[0]))

    def divide_linear(self, form: Sequence[int]) -> Polynomial | None:
        """Exact quotient by the linear form, or ``None`` if it does not divide."""
        lead = next(i for i, c in enumerate(form) if c)
        a = Fraction(form[lead])
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        # lex order with variable ``lead`` most significant: the leading term of
        # the form is a * x_lead, so a term is divisible iff it contains x_lead.
        def key(e):
            return (e[lead],) + e
        while rem:
            e = max(rem, key=key)
            if e[lead] == 0:
                return None
            c = rem[e] / a
            q = e[:lead] + (e[lead] - 1,) + e[lead + 1:]
            quot[q] = quot.get(q, 0) + c
            for i, fc in enumerate(form):
                if not fc:
                    continue
                t = q[:i] + (q[i] + 1,) + q[i + 1:]
                nv = rem.get(t, 0) - c * fc
                if nv:
                    rem[t] = nv
                else:
                    rem.pop(t, None)
        return Polynomial(self.nvars, quot)

    def __repr__(self):
        return f"Polynomial({render_polynomial(self)!r})"


def variable_names(n: int) -> list[str]:
    if n <= 4:
        return ["x", "y", "z", "w"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    names = names or variable_names(p.nvars)
    if p.is_zero():
        return "0"
    pieces = []
    for exp, c in p.sorted_terms():
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        else:
            body = _fmt_coeff(mag)
        pieces.append(("-" if c < 0 else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def render_linear(chi: Sequence[int], names: Sequence[str] | None = None) -> str:
    """Compact rendering of a linear form, e.g. ``2x-y``."""
    names = names or variable_names(len(chi))
    out = ""
    for n, c in zip(names, chi):
        if not c:
            continue
        mag = abs(c)
        body = n if mag == 1 else f"{mag}{n}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += ("-" if c < 0 else "+") + body
    return out or "0"


class CharFraction:
    """``numerator / prod(chi ** m)`` in canonical reduced form.

    Denominator characters are primitive and lex-positive; scalars live in the
    numerator; linear factors dividing the numerator are cancelled.
    """

    __slots__ = ("rank", "numerator", "denominator", "_hash")

    def __init__(self, numerator: Polynomial, denominator: Iterable[tuple[Sequence[int], int]] = ()):
        self.rank = numerator.nvars
        scale = Fraction(1)
        den: Counter = Counter()
        for chi, mult in denominator:
            chi = as_vector(chi)
            if len(chi) != self.rank:
                raise DimensionError(f"character {chi} is not of rank {self.rank}")
            if not any(chi):
                raise ZeroDivisionError("zero character in denominator")
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult == 0:
                continue
            g, p = normalize_character(chi)
            scale /= Fraction(g) ** mult
            den[p] += mult
        num = numerator.scale(scale) if scale != 1 else numerator
        self.numerator, self.denominator = _reduce(num, den)
        self._hash = None

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> CharFraction:
        return cls(p)

    @classmethod
    def constant(cls, rank: int, c) -> CharFraction:
        return cls(Polynomial.constant(rank, c))

    @classmethod
    def zero(cls, rank: int) -> CharFraction:
        return cls(Polynomial(rank))

    @classmethod
    def reciprocal_product(cls, chars: Sequence[Sequence[int]], coeff=1, rank: int | None = None) -> CharFraction:
        """``coeff / prod(chars)``."""
        if rank is None:
            rank = len(chars[0])
        return cls(Polynomial.constant(rank, coeff), [(c, 1) for c in chars])

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return not self.denominator

    def denominator_degree(self) -> int:
        return sum(self.denominator.values())

    def denominator_items(self) -> list[tuple[Vector, int]]:
        """Denominator factors, sparsest first, then lex-descending."""
        return sorted(self.denominator.items(),
                      key=lambda t: (sum(1 for c in t[0] if c), tuple(-c for c in t[0])))

    def denominator_polynomial(self) -> Polynomial:
        out = Polynomial.constant(self.rank, 1)
        for chi, m in self.denominator_items():
            out = out * Polynomial.linear(chi) ** m
        return out

    def is_homogeneous(self) -> bool:
        return self.numerator.is_homogeneous()

    def degree(self) -> int | None:
        """Degree as a homogeneous rational function; ``None`` if not homogeneous or zero."""
        if self.is_zero() or not self.is_homogeneous():
            return None
        return self.numerator.total_degree() - self.denominator_degree()

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: CharFraction):
        if other.rank != self.rank:
            raise DimensionError(f"fractions of rank {self.rank} and {other.rank}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CharFraction.constant(self.rank, other)
        self._check(other)
        den = self.denominator | other.denominator
        num = (self.numerator * _cofactor(self.denominator, den, self.rank)
               + other.numerator * _cofactor(other.denominator, den, self.rank))
        return CharFraction._raw(num, den)

    __radd__ = __add__

    def __neg__(self):
        return CharFraction._raw(-self.numerator, Counter(self.denominator))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CharFraction._raw(self.numerator.scale(other), Counter(self.denominator))
        if isinstance(other, Polynomial):
            other = CharFraction(other)
        self._check(other)
        return CharFraction._raw(self.numerator * other.numerator,
                                 self.denominator + other.denominator)

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, num: Polynomial, den: Counter) -> CharFraction:
        obj = cls.__new__(cls)
        obj.rank = num.nvars
        obj.numerator, obj.denominator = _reduce(num, den)
        obj._hash = None
        return obj

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CharFraction.constant(self.rank, other)
        if not isinstance(other, CharFraction):
            return NotImplemented
        if other.rank != self.rank:
            return False
        # cross-multiplied cleared forms
        return (self.numerator * other.denominator_polynomial()
                == other.numerator * self.denominator_polynomial())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.numerator, frozenset(self.denominator.items())))
        return self._hash

    def evaluate(self, lam: Sequence[int]) -> Fraction:
        return frac_eval(self, lam)

    def pullback(self, basis: Sequence[Sequence[int]], rank: int) -> CharFraction:
        """Re-express in a rank ``rank`` lattice: character ``c`` maps to
        ``sum(c_i * basis[i])``; numerator variables are substituted likewise."""
        k = len(basis)
        if k != self.rank:
            raise DimensionError("basis size does not match fraction rank")
        if any(len(b) != rank for b in basis):
            raise DimensionError("basis vectors of wrong length")
        n = rank
        num = Polynomial(n)
        lin = [Polynomial.linear(b) for b in basis]
        for exp, c in self.numerator.terms.items():
            t = Polynomial.constant(n, c)
            for form, e in zip(lin, exp):
                if e:
                    t = t * form ** e
            num = num + t
        den = []
        for chi, m in self.denominator.items():
            big = tuple(sum(ci * b[j] for ci, b in zip(chi, basis)) for j in range(n))
            den.append((big, m))
        return CharFraction(num, den)

    # -- rendering / serialization ----------------------------------------
    def render(self, names: Sequence[str] | None = None) -> str:
        names = names or variable_names(self.rank)
        num = render_polynomial(self.numerator, names)
        if not self.denominator:
            return num
        factors = []
        if self.numerator.is_constant() and self.numerator.constant_term().denominator != 1:
            c = self.numerator.constant_term()
            num, factors = str(c.numerator), [str(c.denominator)]
        for chi, m in self.denominator_items():
            lin = render_linear(chi, names)
            if sum(1 for c in chi if c) > 1:
                lin = f"({lin})"
            factors.append(lin if m == 1 else f"{lin}^{m}")
        den = "*".join(factors)
        if len(factors) > 1 or "^" in den:
            den = f"({den})"
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        return f"{num}/{den}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"CharFraction({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "num": [[c.numerator, c.denominator, list(e)] for e, c in self.numerator.sorted_terms()],
            "den": [[list(chi), m] for chi, m in self.denominator_items()],
        }

    @classmethod
    def from_json(cls, data: Mapping, rank: int | None = None) -> CharFraction:
        num_terms = data.get("num", [])
        den_terms = data.get("den", [])
        if rank is None:
            if num_terms:
                rank = len(num_terms[0][2])
            elif den_terms:
                rank = len(den_terms[0][0])
            else:
                raise ValueError("cannot infer rank of an empty fraction")
        terms: dict[Exponent, Fraction] = {}
        for cn, cd, exp in num_terms:
            e = as_vector(exp)
            terms[e] = terms.get(e, 0) + Fraction(int(cn), int(cd))
        return cls(Polynomial(rank, terms), [(as_vector(ch), int(m)) for ch, m in den_terms])


def _cofactor(den: Counter, total: Counter, rank: int) -> Polynomial:
    out = Polynomial.constant(rank, 1)
    for chi, m in total.items():
        extra = m - den.get(chi, 0)
        if extra:
            out = out * Polynomial.linear(chi) ** extra
    return out


def _reduce(num: Polynomial, den: Counter) -> tuple[Polynomial, Counter]:
    den = Counter({k: v for k, v in den.items() if v > 0})
    if num.is_zero():
        return num, Counter()
    for chi in sorted(den):
        while den[chi]:
            q = num.divide_linear(chi)
            if q is None:
                break
            num = q
            den[chi] -= 1
    return num, Counter({k: v for k, v in den.items() if v > 0})


def frac_sum(terms: Iterable[CharFraction], rank: int | None = None) -> CharFraction:
    """Exact sum in canonical form."""
    terms = list(terms)
    if not terms:
        if rank is None:
            raise ValueError("empty sum needs an explicit rank")
        return CharFraction.zero(rank)
    return reduce(lambda a, b: a + b, terms)


def frac_eval(f: CharFraction, lam: Sequence[int]) -> Fraction:
    """Value at the one-parameter subgroup ``lam``; denominators are pairings."""
    lam = as_vector(lam)
    if len(lam) != f.rank:
        raise DimensionError(f"lambda of length {len(lam)} for a rank {f.rank} fraction")
    den = Fraction(1)
    for chi, m in f.denominator_items():
        v = pairing(lam, chi)
        if v == 0:
            raise PoleError(chi, lam)
        den *= Fraction(v) ** m
    return f.numerator.evaluate(lam) / den


__all__ = [
    "Polynomial", "CharFraction", "frac_sum", "frac_eval", "render_polynomial",
    "render_linear", "variable_names", "lex_sign",
]
