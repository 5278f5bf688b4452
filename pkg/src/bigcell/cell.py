"""The big-cell function f, the factorisation g = u- l u+, and the Lemma-f suite."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .exactfield import ExactScalar
from .report import Report
from .groups import (
    GroupElement,
    ParabolicDatum,
    levi_weyl_group,
    root_value,
    weyl_constant,
    weyl_group,
    weyl_sign,
)


class NotInBigCell(ValueError):
    """g is not in U- L U+ (equivalently f(g) = 0)."""


class UnsupportedDatum(ValueError):
    pass


class SymplecticConsistencyError(RuntimeError):
    pass


def f_minor(g: GroupElement, datum: ParabolicDatum) -> ExactScalar:
    """f(g): the R_I^+ x R_I^+ minor of Ad(g), i.e. the Y-coefficient of Ad(g)Y."""
    rp = datum.r_plus
    one = g.entries[0][0] * 0 + 1
    if not rp:
        return one
    G, Gi = g.entries, g.inv().entries
    cols = []
    for alpha in rp:
        col = []
        for beta in rp:
            a, b = beta.pivot
            acc = None
            for (i, j), c in alpha.entries:
                term = G[a][i] * Gi[j][b]
                if c != 1:
                    term = term * c
                acc = term if acc is None else acc + term
            col.append(acc)
        cols.append(col)
    return linalg.det(linalg.transpose(cols))


def closed_form_kind(datum: ParabolicDatum) -> str | None:
    if datum.family == "Sp":
        return "siegel"
    if len(datum.blocks) == 2:
        return "two_block"
    if datum.is_borel:
        return "borel"
    return None


def _det_block(g: GroupElement, rg) -> ExactScalar:
    return linalg.det(linalg.block(g.entries, rg, rg))


def f_closed_form(g: GroupElement, datum: ParabolicDatum) -> ExactScalar:
    """f through the known determinant formulas.

    Two blocks (n1, n2): det(g22)^(n1+n2) det(g)^(-n2).  Siegel Sp(2m):
    det(D)^(m+1).  Borel: prod over positive roots of alpha(t) with t read off
    the trailing principal minors.
    """
    kind = closed_form_kind(datum)
    if kind is None:
        raise UnsupportedDatum(f"no closed form for {datum.name}")
    return _closed(g, datum, kind, extend=False)


def _closed(g: GroupElement, datum: ParabolicDatum, kind: str, extend: bool) -> ExactScalar:
    n = datum.n
    if kind == "siegel":
        m = n // 2
        return _det_block(g, range(m, n)) ** (m + 1)
    if kind == "two_block":
        n2 = datum.blocks[1]
        val = _det_block(g, range(n - n2, n)) ** n
        if datum.family == "GL" or not extend:
            val = val / g.det() ** n2
        return val
    # Borel: t_k = Delta_k / Delta_{k+1}, Delta_k = det g[k:, k:]
    minors = [_det_block(g, range(k, n)) for k in range(n)] + [g.entries[0][0] * 0 + 1]
    if datum.family == "SL" and extend:
        minors[0] = minors[-1]
    acc = minors[-1]
    for k in range(n):
        expo = 2 * k - n + 1
        if expo:
            acc = acc * (minors[k] / minors[k + 1]) ** expo
    return acc


def f_extended(g: GroupElement, datum: ParabolicDatum) -> ExactScalar:
    """The formula used to extend f to all of GL(n) when computing N.

    Agrees with f on the group itself; for SL the det(g) factors are dropped
    (det = 1 there), which makes the extension a polynomial.
    """
    kind = closed_form_kind(datum)
    if kind is None:
        return f_minor(g, datum)
    return _closed(g, datum, kind, extend=True)


def f_value(g: GroupElement, datum: ParabolicDatum) -> ExactScalar:
    """Fast evaluation of f: closed form when one exists, else the minor."""
    kind = closed_form_kind(datum)
    if kind is None:
        return f_minor(g, datum)
    return _closed(g, datum, kind, extend=False)


@dataclass(frozen=True)
class BigCellFactorization:
    u_minus: GroupElement
    levi: GroupElement
    u_plus: GroupElement

    def product(self) -> GroupElement:
        return self.u_minus @ self.levi @ self.u_plus


def big_cell_factor(g: GroupElement, datum: ParabolicDatum) -> BigCellFactorization:
    """g = u- l u+ by block elimination from the bottom-right block upwards.

    At each step [[A, B], [C, D]] = [[1, BD^-1], [0, 1]] diag(A - BD^-1 C, D)
    [[1, 0], [D^-1 C, 1]] and the Schur complement is peeled further.
    """
    n, p, e = g.n, g.p, g.e
    nil = ExactScalar(0, p, e)
    um = [list(r) for r in linalg.identity(n, p, e)]
    up = [list(r) for r in linalg.identity(n, p, e)]
    lv = [[nil] * n for _ in range(n)]
    S = g.entries
    for rg in reversed(datum.block_ranges):
        k0, k1 = rg.start, rg.stop
        top = range(0, k0)
        D = linalg.block(S, range(k0, k1), range(k0, k1))
        try:
            Dinv = linalg.inverse(D)
        except ZeroDivisionError:
            raise NotInBigCell(f"block {k0}:{k1} is singular") from None
        for i in range(k0, k1):
            for j in range(k0, k1):
                lv[i][j] = D[i - k0][j - k0]
        if k0 == 0:
            break
        B = linalg.block(S, top, range(k0, k1))
        C = linalg.block(S, range(k0, k1), top)
        BD = linalg.matmul(B, Dinv)
        DC = linalg.matmul(Dinv, C)
        for i in top:
            for j in range(k0, k1):
                um[i][j] = BD[i][j - k0]
        for i in range(k0, k1):
            for j in top:
                up[i][j] = DC[i - k0][j]
        A = linalg.block(S, top, top)
        S = linalg.sub(A, linalg.matmul(BD, C))
    fam = g.family
    res = BigCellFactorization(
        GroupElement(fam, n, tuple(tuple(r) for r in um)),
        GroupElement(fam, n, tuple(tuple(r) for r in lv)),
        GroupElement(fam, n, tuple(tuple(r) for r in up)),
    )
    if fam == "Sp":
        _check_siegel(res, datum)
    return res


def _check_siegel(res: BigCellFactorization, datum: ParabolicDatum):
    n = datum.n
    m = n // 2
    X = linalg.block(res.u_minus.entries, range(m), range(m, n))
    if not linalg.equal(X, linalg.transpose(X)):
        raise SymplecticConsistencyError("upper Siegel block of u- is not symmetric")
    A = linalg.block(res.levi.entries, range(m), range(m))
    D = linalg.block(res.levi.entries, range(m, n), range(m, n))
    if not linalg.equal(A, linalg.transpose(linalg.inverse(D))):
        raise SymplecticConsistencyError("Levi part is not of the form diag(D^-T, D)")


# -- Lemma-f verification ---------------------------------------------------


@lru_cache(maxsize=None)
def weyl_leading_constant(datum: ParabolicDatum, w, p: int, e: int) -> ExactScalar:
    """sign(w) * prod_{alpha in R_I^+} c_{w,alpha}."""
    acc = ExactScalar(weyl_sign(w, datum), p, e)
    for alpha in datum.r_plus:
        acc = acc * weyl_constant(w, alpha, datum)
    return acc


def _torus_character(t: GroupElement, datum: ParabolicDatum) -> ExactScalar:
    acc = t.entries[0][0] * 0 + 1
    for alpha in datum.r_plus:
        acc = acc * root_value(alpha, t, datum.family)
    return acc


def verify_lemma_f(datum: ParabolicDatum, sampler, per_w: int = 50, pairs: int = 50) -> Report:
    """Check the character law on P+, the Bruhat-cell values, vanishing off W_I,
    and U- / U+ invariance of f, exactly on random samples."""
    rep = Report(datum.name)
    p, e = sampler.p, sampler.e
    for _ in range(pairs):
        a, b = sampler.p_plus(datum), sampler.p_plus(datum)
        if f_minor(a @ b, datum) != f_minor(a, datum) * f_minor(b, datum):
            rep.fail("character", p1=a, p2=b)
            return rep
        rep.tick("character")
    levi_w = {id(w) for w in levi_weyl_group(datum, p, e)}
    for w in weyl_group(datum, p, e):
        in_levi = id(w) in levi_w
        for _ in range(per_w):
            vm, t, vp = sampler.u_minus(datum), sampler.torus(datum), sampler.u_plus(datum)
            g = vm @ w.element @ t @ vp
            val = f_minor(g, datum)
            if in_levi:
                expect = weyl_leading_constant(datum, w, p, e) * _torus_character(t, datum)
                if val != expect:
                    rep.fail("bruhat_value", w=w.element, t=t, v_minus=vm, v_plus=vp, got=val, expected=expect)
                    return rep
                rep.tick("bruhat_value")
            else:
                if not val.is_zero():
                    rep.fail("vanishing", w=w.element, t=t, v_minus=vm, v_plus=vp, got=val)
                    return rep
                rep.tick("vanishing")
            um, upl = sampler.u_minus(datum), sampler.u_plus(datum)
            if f_minor(um @ g, datum) != val or f_minor(g @ upl, datum) != val:
                rep.fail("invariance", g=g, u_minus=um, u_plus=upl)
                return rep
            rep.tick("invariance")
    return rep
