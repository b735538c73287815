"""Exact matrix checks for dense-conjugacy-class obstructions.

A closed subgroup of ``GL_n(C)`` with a dense conjugacy class is trivial;
on the way there every element is shown to be unipotent (characteristic
polynomial ``(t - 1)^n``) and ``Tr(C(B - Id)) = 0`` for all ``B, C``. So
one non-unipotent element of a finitely generated group is a certificate
that the group has no dense class. Everything here runs over ``Q(i)``
exactly; :func:`approx_dense_class_obstruction` is the labelled float path.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

import numpy as np

from .errors import (
    CapExceeded,
    DimMismatch,
    EngineInconsistency,
    ParseError,
    SingularMatrix,
)

DEFAULT_WORD_CAP = 10_000
TRACE_PAIR_LIMIT = 200
APPROX_TOL = 1e-9


class GaussianRational:
    """``(a + b*i) / d`` with integers ``a, b`` and ``d > 0`` in lowest terms."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self.a = re.numerator * (d // re.denominator)
        self.b = im.numerator * (d // im.denominator)
        self.d = d

    @classmethod
    def _raw(cls, a, b, d):
        g = gcd(a, b, d)
        if d < 0:
            g = -g
        x = object.__new__(cls)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        x.a, x.b, x.d = a, b, d
        return x

    @property
    def re(self):
        return Fraction(self.a, self.d)

    @property
    def im(self):
        return Fraction(self.b, self.d)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_gaussian(x)
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact; use the approximate path")
        return cls(x)

    def __add__(self, o):
        o = _g(o)
        if self.d == o.d:
            return GaussianRational._raw(self.a + o.a, self.b + o.b, self.d)
        return GaussianRational._raw(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d,
                                     self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-_g(o))

    def __rsub__(self, o):
        return _g(o) + (-self)

    def __mul__(self, o):
        o = _g(o)
        return GaussianRational._raw(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a,
                                     self.d * o.d)

    __rmul__ = __mul__

    def norm(self):
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    def conjugate(self):
        return GaussianRational._raw(self.a, -self.b, self.d)

    def __truediv__(self, o):
        o = _g(o)
        n = o.a * o.a + o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (a + bi)/d / ((c + ei)/f) = (a + bi)(c - ei) f / (d (c^2 + e^2))
        return GaussianRational._raw((self.a * o.a + self.b * o.b) * o.d,
                                     (self.b * o.a - self.a * o.b) * o.d, self.d * n)

    def __rtruediv__(self, o):
        return _g(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = GaussianRational(o)
        elif not isinstance(o, GaussianRational):
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)}i"

    def __repr__(self):
        return f"GaussianRational({self})"


def _g(x):
    return x if isinstance(x, GaussianRational) else GaussianRational(x)


_RAT = r"\d+(?:/\d+)?"
_REAL = re.compile(rf"^([+-]?{_RAT})$")
_IMAG = re.compile(rf"^([+-]?)({_RAT})?i$")
_BOTH = re.compile(rf"^([+-]?{_RAT})([+-])({_RAT})?i$")


def _rational(text):
    num, _, den = text.lstrip("+").partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_gaussian(text):
    """Parse ``a``, ``a/b``, ``c/di`` or ``a/b+c/di`` exactly; reject anything else."""
    s = text.strip()
    if m := _REAL.match(s):
        return GaussianRational(_rational(m.group(1)), 0)
    if m := _IMAG.match(s):
        mag = _rational(m.group(2)) if m.group(2) else Fraction(1)
        return GaussianRational(0, -mag if m.group(1) == "-" else mag)
    if m := _BOTH.match(s):
        mag = _rational(m.group(3)) if m.group(3) else Fraction(1)
        return GaussianRational(_rational(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise ParseError(f"malformed Gaussian rational {text!r}")


class RationalMatrix:
    """A square matrix over ``Q(i)``, immutable."""

    __slots__ = ("n", "rows", "_key")

    def __init__(self, rows):
        rows = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DimMismatch("matrix must be square with dimension >= 1")
        self.n = n
        self.rows = rows
        self._key = None

    @classmethod
    def _wrap(cls, rows):
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.n = len(m.rows)
        m._key = None
        return m

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_flat(cls, n, entries):
        if len(entries) != n * n:
            raise DimMismatch(f"need {n * n} entries, got {len(entries)}")
        return cls([entries[i * n:(i + 1) * n] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _same(self, o):
        if not isinstance(o, RationalMatrix) or o.n != self.n:
            raise DimMismatch(f"dimension mismatch: {self.n} vs {getattr(o, 'n', '?')}")

    def __add__(self, o):
        self._same(o)
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        self._same(o)
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __mul__(self, o):
        if not isinstance(o, RationalMatrix):
            c = _g(o)
            return RationalMatrix([[c * a for a in r] for r in self.rows])
        self._same(o)
        cols = list(zip(*o.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = r[0] * c[0]
                for x, y in zip(r[1:], c[1:]):
                    if x.a or x.b:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return RationalMatrix._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), GaussianRational())

    def is_zero(self):
        return not any(x for r in self.rows for x in r)

    def _eliminate(self, augment):
        """Gauss-Jordan on ``[self | augment]``; returns (det, reduced augment)."""
        n = self.n
        a = [list(r) + list(s) for r, s in zip(self.rows, augment)]
        det = GaussianRational(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return GaussianRational(0), None
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            p = a[col][col]
            det = det * p
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det, [row[n:] for row in a]

    def det(self):
        return self._eliminate([[] for _ in range(self.n)])[0]

    def inverse(self):
        det, inv = self._eliminate(RationalMatrix.identity(self.n).rows)
        if not det:
            raise SingularMatrix("matrix is singular")
        return RationalMatrix(inv)

    def key(self):
        if self._key is None:
            self._key = tuple((x.a, x.b, x.d) for r in self.rows for x in r)
        return self._key

    def __eq__(self, o):
        return isinstance(o, RationalMatrix) and self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def flat_strings(self):
        return [str(x) for r in self.rows for x in r]

    def __repr__(self):
        return "RationalMatrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"


def char_poly(M):
    """Coefficients of ``det(t Id - M)``, leading (degree ``n``) first.

    Faddeev-LeVerrier: ``M_k = M M_{k-1} + c_{n-k+1} Id`` and
    ``c_{n-k} = -Tr(M M_k) / k``; the divisions are by integers, so exact.
    """
    n = M.n
    ident = RationalMatrix.identity(n)
    coeffs = [GaussianRational(1)]
    Mk = RationalMatrix.zero(n)
    for k in range(1, n + 1):
        Mk = M * Mk + ident * coeffs[-1]
        coeffs.append(-(M * Mk).trace() / k)
    return coeffs


def unipotent_poly(n):
    """Coefficients of ``(t - 1)^n``, leading first."""
    return [GaussianRational((-1) ** k * comb(n, k)) for k in range(n + 1)]


def unipotent_check(M):
    """``char_poly(M) == (t-1)^n``, cross-checked against ``(M - Id)^n == 0``."""
    by_poly = char_poly(M) == unipotent_poly(M.n)
    by_power = ((M - RationalMatrix.identity(M.n)) ** M.n).is_zero()
    if by_poly != by_power:
        raise EngineInconsistency(f"Cayley-Hamilton disagreement for {M!r}")
    return by_poly


def trace_pair_check(B, C):
    """``Tr(C (B - Id))``, which vanishes on groups with a dense class."""
    if B.n != C.n:
        raise DimMismatch(f"dimension mismatch: {B.n} vs {C.n}")
    return (C * (B - RationalMatrix.identity(B.n))).trace()


def conj_invariance_check(A, B):
    """``char_poly(B A B^-1) == char_poly(A)``."""
    if A.n != B.n:
        raise DimMismatch(f"dimension mismatch: {A.n} vs {B.n}")
    if not B.det():
        raise SingularMatrix("conjugating matrix is singular")
    return char_poly(B * A * B.inverse()) == char_poly(A)


@dataclass
class CheckedWord:
    word: str
    matrix: object
    char_poly: list
    unipotent: bool


@dataclass
class ObstructionReport:
    generators: list
    word_length: int
    checked: list
    verdict: str
    witness: int = None
    trace_pairs_checked: int = 0
    trace_nonzero: list = field(default_factory=list)
    approximate: bool = False

    @property
    def words_checked(self):
        return len(self.checked)


def _letters(generators, inverse):
    letters = []
    for i, g in enumerate(generators):
        letters.append((f"g{i}", g))
        letters.append((f"g{i}^-1", inverse(g)))
    return letters


def _enumerate_words(generators, word_length, cap, multiply, inverse, key):
    """Distinct products of at most ``word_length`` letters, breadth first."""
    seen = {}
    frontier = []
    for name, m in _letters(generators, inverse):
        k = key(m)
        if k not in seen:
            seen[k] = (name, m)
            frontier.append((name, m))
    letters = _letters(generators, inverse)
    for _ in range(word_length - 1):
        nxt = []
        for wname, w in frontier:
            for lname, l in letters:
                m = multiply(w, l)
                k = key(m)
                if k not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"more than {cap} distinct words")
                    seen[k] = (f"{wname} {lname}", m)
                    nxt.append((f"{wname} {lname}", m))
        frontier = nxt
    return list(seen.values())


def dense_class_obstruction(generators, word_length, cap=DEFAULT_WORD_CAP,
                            trace_pair_limit=TRACE_PAIR_LIMIT):
    """Search words in the generators for a non-unipotent element.

    ``OBSTRUCTED`` is a certificate that the generated group has no dense
    conjugacy class; ``INCONCLUSIVE`` only says none of the checked words
    rules it out. Nonzero ``Tr(C(B - Id))`` among the first
    ``trace_pair_limit`` words is recorded as further evidence.
    """
    if word_length < 1:
        raise ValueError("word_length must be at least 1")
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    for i, g in enumerate(generators):
        if g.n != n:
            raise DimMismatch(f"generator {i} has dimension {g.n}, expected {n}")
        if not g.det():
            raise SingularMatrix(f"generator {i} is singular")
    words = _enumerate_words(generators, word_length, cap,
                             lambda a, b: a * b, lambda a: a.inverse(), lambda a: a.key())
    checked = [CheckedWord(name, m, char_poly(m), unipotent_check(m)) for name, m in words]
    witness = next((i for i, c in enumerate(checked) if not c.unipotent), None)
    head = checked[:trace_pair_limit]
    nonzero = []
    for i, b in enumerate(head):
        for j, c in enumerate(head):
            v = trace_pair_check(b.matrix, c.matrix)
            if v and len(nonzero) < 10:
                nonzero.append((i, j, v))
    return ObstructionReport(
        generators=list(generators),
        word_length=word_length,
        checked=checked,
        verdict="OBSTRUCTED" if witness is not None else "INCONCLUSIVE",
        witness=witness,
        trace_pairs_checked=len(head) ** 2,
        trace_nonzero=nonzero,
    )


def _as_tuples(a):
    return tuple(tuple(complex(z) for z in row) for row in a.tolist())


def approx_dense_class_obstruction(generators, word_length, tol=APPROX_TOL,
                                   cap=DEFAULT_WORD_CAP):
    """Floating-point variant for decimal input; results are approximate.

    Unipotence is judged with absolute tolerance ``tol`` on both the
    characteristic polynomial and ``(M - Id)^n``.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    n = gens[0].shape[0]
    for i, g in enumerate(gens):
        if g.shape != (n, n):
            raise DimMismatch(f"generator {i} has shape {g.shape}")
        if abs(np.linalg.det(g)) <= tol:
            raise SingularMatrix(f"generator {i} is numerically singular")
    digits = max(int(-np.log10(tol)) - 1, 1)
    words = _enumerate_words(gens, word_length, cap, lambda a, b: a @ b, np.linalg.inv,
                             lambda a: tuple(np.round(a, digits).ravel().tolist()))
    target = np.array([(-1) ** k * comb(n, k) for k in range(n + 1)], dtype=complex)
    ident = np.eye(n)
    checked = []
    for name, m in words:
        poly = np.poly(m)
        uni = (np.max(np.abs(poly - target)) <= tol
               and np.max(np.abs(np.linalg.matrix_power(m - ident, n))) <= tol)
        checked.append(CheckedWord(name, _as_tuples(m), [complex(z) for z in poly], bool(uni)))
    witness = next((i for i, c in enumerate(checked) if not c.unipotent), None)
    return ObstructionReport(
        generators=[_as_tuples(g) for g in gens],
        word_length=word_length,
        checked=checked,
        verdict="OBSTRUCTED" if witness is not None else "INCONCLUSIVE",
        witness=witness,
        approximate=True,
    )
