"""Exact arithmetic in Q_p and in the Eisenstein extensions K_e = Q_p[t]/(t^e - p).

Elements are stored as ``e`` rational coefficients on the power basis
1, t, ..., t^(e-1).  Valuations are exact rationals (denominator dividing e)
normalised so that v(p) = 1; the zero element has valuation ``INF``.
"""

from __future__ import annotations

import ast
import contextvars
import math
from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

INF = math.inf

_GUARD_BITS: contextvars.ContextVar[int | None] = contextvars.ContextVar(
    "bigcell_guard_bits", default=None
)


class FieldMismatch(ValueError):
    """Operands live in different fields (different p, or incompatible e)."""


class BitLengthExceeded(ArithmeticError):
    """A numerator or denominator outgrew the active bit-length guard."""


@contextmanager
def bit_guard(bits: int | None):
    """Abort any computation in this context whose rationals exceed ``bits`` bits."""
    token = _GUARD_BITS.set(bits)
    try:
        yield
    finally:
        _GUARD_BITS.reset(token)


def _guarded(c: tuple) -> tuple:
    limit = _GUARD_BITS.get()
    if limit is not None:
        for x in c:
            if x.numerator.bit_length() > limit or x.denominator.bit_length() > limit:
                raise BitLengthExceeded(
                    f"rational with {max(x.numerator.bit_length(), x.denominator.bit_length())}"
                    f" bits exceeds guard of {limit} bits"
                )
    return c


def _as_mpq(x) -> mpq:
    if isinstance(x, (int, Rational)) or type(x).__name__ in ("mpz", "mpq"):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def vp_rational(x, p: int) -> Fraction | float:
    """p-adic valuation of a rational number (INF for 0)."""
    x = mpq(x)
    if x == 0:
        return INF
    num = gmpy2.remove(x.numerator, p)[1] if x.numerator % p == 0 else 0
    den = gmpy2.remove(x.denominator, p)[1] if x.denominator % p == 0 else 0
    return Fraction(num - den)


class ExactScalar:
    """An element of K_e = Q_p[t]/(t^e - p); ``e == 1`` is Q_p itself.

    Instances are immutable.  Plain ints and rationals are promoted into the
    field on the fly, as are e = 1 scalars with the same prime.
    """

    __slots__ = ("p", "e", "c")

    def __init__(self, value=0, p: int = 2, e: int = 1):
        if e < 1:
            raise ValueError("ramification index must be >= 1")
        if not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        if isinstance(value, ExactScalar):
            value = value._lift(p, e).c
        if isinstance(value, (list, tuple)):
            if len(value) > e:
                raise ValueError(f"expected at most {e} coefficients, got {len(value)}")
            c = tuple(_as_mpq(x) for x in value) + (mpq(0),) * (e - len(value))
        else:
            c = (_as_mpq(value),) + (mpq(0),) * (e - 1)
        self.p = p
        self.e = e
        self.c = _guarded(c)

    @classmethod
    def _make(cls, p: int, e: int, c: tuple) -> "ExactScalar":
        obj = object.__new__(cls)
        obj.p = p
        obj.e = e
        obj.c = _guarded(c)
        return obj

    @classmethod
    def uniformizer(cls, p: int, e: int = 1) -> "ExactScalar":
        """t (or p itself when e = 1)."""
        if e == 1:
            return cls(p, p, 1)
        return cls((0, 1), p, e)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(x.numerator), int(x.denominator)) for x in self.c)

    # -- coercion -----------------------------------------------------------

    def _lift(self, p: int, e: int) -> "ExactScalar":
        if self.p != p:
            raise FieldMismatch(f"mixed primes {self.p} and {p}")
        if self.e == e:
            return self
        if self.e == 1:
            return ExactScalar._make(p, e, self.c + (mpq(0),) * (e - 1))
        raise FieldMismatch(f"cannot combine ramification {self.e} with {e}")

    def _coerce(self, other) -> tuple["ExactScalar", "ExactScalar"]:
        if isinstance(other, ExactScalar):
            if other.p != self.p:
                raise FieldMismatch(f"mixed primes {self.p} and {other.p}")
            if other.e == self.e:
                return self, other
            e = max(self.e, other.e)
            return self._lift(self.p, e), other._lift(self.p, e)
        try:
            x = _as_mpq(other)
        except TypeError:
            return NotImplemented, NotImplemented
        return self, ExactScalar._make(self.p, self.e, (x,) + (mpq(0),) * (self.e - 1))

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return ExactScalar._make(a.p, a.e, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return ExactScalar._make(a.p, a.e, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return ExactScalar._make(a.p, a.e, tuple(y - x for x, y in zip(a.c, b.c)))

    def __neg__(self):
        return ExactScalar._make(self.p, self.e, tuple(-x for x in self.c))

    def __pos__(self):
        return self

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        e = a.e
        if e == 1:
            return ExactScalar._make(a.p, 1, (a.c[0] * b.c[0],))
        out = [mpq(0)] * e
        p = a.p
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if not y:
                    continue
                k = i + j
                if k < e:
                    out[k] += x * y
                else:
                    out[k - e] += p * x * y
        return ExactScalar._make(p, e, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in K_e")
        e = self.e
        if e == 1:
            return ExactScalar._make(self.p, 1, (1 / self.c[0],))
        # Solve (multiplication-by-self) x = 1 on the power basis.
        cols = []
        basis = ExactScalar._make(self.p, e, (mpq(1),) + (mpq(0),) * (e - 1))
        t = ExactScalar.uniformizer(self.p, e)
        for _ in range(e):
            cols.append((self * basis).c)
            basis = basis * t
        aug = [[cols[j][i] for j in range(e)] + [mpq(1 if i == 0 else 0)] for i in range(e)]
        for col in range(e):
            piv = next(r for r in range(col, e) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(e):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return ExactScalar._make(self.p, e, tuple(aug[i][e] for i in range(e)))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if a.e == 1:
            if not b.c[0]:
                raise ZeroDivisionError("division by zero in Q_p")
            return ExactScalar._make(a.p, 1, (a.c[0] / b.c[0],))
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return b / a

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactScalar._make(self.p, self.e, (mpq(1),) + (mpq(0),) * (self.e - 1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            if other.p != self.p:
                return False
            if other.e != self.e:
                try:
                    a, b = self._coerce(other)
                except FieldMismatch:
                    return False
                return a.c == b.c
            return self.c == other.c
        try:
            x = _as_mpq(other)
        except TypeError:
            return NotImplemented
        return self.c[0] == x and not any(self.c[1:])

    def __hash__(self):
        if not any(self.c[1:]):
            return hash((self.p, Fraction(int(self.c[0].numerator), int(self.c[0].denominator))))
        return hash((self.p, self.e, self.c))

    # -- valuation ----------------------------------------------------------

    def valuation(self) -> Fraction | float:
        """Exact valuation with v(p) = 1; ``INF`` for zero."""
        best = INF
        for i, x in enumerate(self.c):
            if x:
                v = vp_rational(x, self.p) + Fraction(i, self.e)
                if v < best:
                    best = v
        return best

    def is_integral(self) -> bool:
        return self.valuation() >= 0

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def max_bits(self) -> int:
        return max(max(x.numerator.bit_length(), x.denominator.bit_length()) for x in self.c)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r}, p={self.p}, e={self.e})"


def _fmt_rational(x: mpq) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x: ExactScalar) -> str:
    """Canonical literal, readable back by :func:`parse_scalar`."""
    terms = []
    for i, c in enumerate(x.c):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = _fmt_rational(mag)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            body = mono if mag == 1 else f"{_fmt_rational(mag)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_scalar(text: str, p: int, e: int = 1) -> ExactScalar:
    """Parse a scalar literal such as ``"3^2 * 7/5"`` or ``"1 - 2*t^3"``.

    ``t`` is the generator of K_e (only meaningful for e > 1; for e = 1 it
    denotes p).  ``^`` and ``**`` both mean integer exponentiation.
    """
    if not isinstance(text, str):
        if isinstance(text, int):
            return ExactScalar(text, p, e)
        raise ValueError(f"scalar literal must be a string, got {type(text).__name__}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed scalar literal {text!r}: {exc.msg}") from None
    gen = ExactScalar.uniformizer(p, e)

    def walk(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ExactScalar(node.value, p, e)
        if isinstance(node, ast.Name) and node.id == "t":
            return gen
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            if isinstance(node.op, ast.Pow):
                k = _int_exponent(node.right)
                return walk(node.left) ** k
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            return a / b
        raise ValueError(f"unsupported token in scalar literal {text!r}: {ast.dump(node)[:40]}")

    def _int_exponent(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -_int_exponent(node.operand)
        raise ValueError(f"exponent in {text!r} must be an integer literal")

    return walk(tree.body)


def min_valuation(values) -> Fraction | float:
    return min((x.valuation() for x in values), default=INF)
