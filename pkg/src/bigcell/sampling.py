"""Seeded random scalars and group elements for the verification suites."""

from __future__ import annotations

import random

from . import linalg
from .exactfield import ExactScalar
from .groups import GroupElement, ParabolicDatum, weyl_group


class Sampler:
    """Draw random exact elements; ``window`` bounds scalar valuations to [-w, w]."""

    def __init__(self, p: int, e: int = 1, seed: int = 0, window: int = 3):
        self.p, self.e, self.window = p, e, window
        self.rng = random.Random(seed)
        self._pi = ExactScalar.uniformizer(p, e)

    # -- scalars ----------------------------------------------------------

    def small_unit(self) -> ExactScalar:
        r = self.rng
        while True:
            a, b = r.randint(-4 * self.p, 4 * self.p), r.randint(1, 2 * self.p)
            if a % self.p and b % self.p:
                return ExactScalar(a, self.p, self.e) / b

    def scalar(self, lo: int | None = None, hi: int | None = None, allow_zero: bool = False) -> ExactScalar:
        """Random element with valuation in [lo, hi] (in units of 1/e)."""
        lo = -self.window if lo is None else lo
        hi = self.window if hi is None else hi
        if allow_zero and self.rng.random() < 0.1:
            return ExactScalar(0, self.p, self.e)
        k = self.rng.randint(lo * self.e, hi * self.e)
        x = self.small_unit() * self._pi ** k
        if self.rng.random() < 0.5:
            x = x + self.small_unit() * self._pi ** (k + self.rng.randint(1, 2))
        return x

    def integral(self, allow_zero: bool = True) -> ExactScalar:
        return self.scalar(0, self.window, allow_zero=allow_zero)

    def unit(self) -> ExactScalar:
        x = self.small_unit()
        if self.rng.random() < 0.5:
            x = x + self.small_unit() * self._pi ** self.rng.randint(1, 2)
        return x

    # -- group elements ---------------------------------------------------

    def _from_rows(self, family, rows) -> GroupElement:
        return GroupElement(family, len(rows), tuple(tuple(r) for r in rows))

    def root_element(self, datum: ParabolicDatum, root, c: ExactScalar) -> GroupElement:
        """x_alpha(c) = 1 + c X_alpha (root vectors square to zero)."""
        X = root.matrix(datum.n, self.p, self.e)
        return GroupElement(datum.family, datum.n,
                            linalg.add(linalg.identity(datum.n, self.p, self.e), linalg.scale(X, c)))

    def unipotent(self, datum: ParabolicDatum, roots, integral: bool = False) -> GroupElement:
        g = GroupElement.identity(datum.family, datum.n, self.p, self.e)
        for root in roots:
            c = self.integral() if integral else self.scalar(allow_zero=True)
            g = g @ self.root_element(datum, root, c)
        return g

    def u_minus(self, datum: ParabolicDatum, integral: bool = False) -> GroupElement:
        return self.unipotent(datum, datum.u_minus_roots, integral)

    def u_plus(self, datum: ParabolicDatum, integral: bool = False) -> GroupElement:
        return self.unipotent(datum, datum.r_plus, integral)

    def torus(self, datum: ParabolicDatum, integral: bool = False) -> GroupElement:
        n, fam = datum.n, datum.family
        draw = self.unit if integral else (lambda: self.scalar())
        nil = ExactScalar(0, self.p, self.e)
        if fam == "Sp":
            m = n // 2
            half = [draw() for _ in range(m)]
            diag = half + [x.inverse() for x in half]
        else:
            diag = [draw() for _ in range(n)]
            if fam == "SL":
                prod = diag[0] * 0 + 1
                for x in diag[:-1]:
                    prod = prod * x
                diag[-1] = prod.inverse()
        return self._from_rows(fam, [[diag[i] if i == j else nil for j in range(n)] for i in range(n)])

    def levi(self, datum: ParabolicDatum, integral: bool = False) -> GroupElement:
        g = self.torus(datum, integral)
        for _ in range(2):
            g = g @ self.unipotent(datum, datum.levi_roots, integral)
        return g

    def p_plus(self, datum: ParabolicDatum, integral: bool = False) -> GroupElement:
        return self.levi(datum, integral) @ self.u_plus(datum, integral)

    def weyl(self, datum: ParabolicDatum):
        return self.rng.choice(weyl_group(datum, self.p, self.e))

    def generic(self, datum: ParabolicDatum) -> GroupElement:
        """A random group element, usually but not always in the big cell."""
        g = self.u_minus(datum) @ self.levi(datum) @ self.u_plus(datum)
        if self.rng.random() < 0.5:
            g = g @ self.weyl(datum).element @ self.u_minus(datum)
        return g

    def integral_element(self, datum: ParabolicDatum) -> GroupElement:
        """A random element of G_o (integral, unit determinant)."""
        g = self.torus(datum, integral=True)
        for _ in range(2):
            g = g @ self.weyl(datum).element
            g = g @ self.unipotent(datum, datum.roots, integral=True)
        return g

    def omega_point(self, datum: ParabolicDatum) -> GroupElement:
        return self.u_minus(datum)

    def vector(self, d: int) -> list:
        return [self.scalar(allow_zero=True) for _ in range(d)]
