"""Star action, automorphy factor, and Omega(m) membership."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cell import NotInBigCell, UnsupportedDatum, big_cell_factor, closed_form_kind, f_value
from .exactfield import ExactScalar
from .groups import GroupElement, ParabolicDatum, levi_weyl_group, weyl_group
from .report import Report


def star_action(g: GroupElement, u: GroupElement, datum: ParabolicDatum) -> GroupElement:
    """g * u: the U- component of g u."""
    return big_cell_factor(g @ u, datum).u_minus


def automorphy_factor(g: GroupElement, u: GroupElement, datum: ParabolicDatum) -> GroupElement:
    """j(g, u): the P+ component of g u, so that (g * u) j(g, u) = g u."""
    F = big_cell_factor(g @ u, datum)
    return F.levi @ F.u_plus


def star_and_factor(g: GroupElement, u: GroupElement, datum: ParabolicDatum):
    F = big_cell_factor(g @ u, datum)
    return F.u_minus, F.levi @ F.u_plus


def f_pair(g: GroupElement, u: GroupElement, datum: ParabolicDatum) -> ExactScalar:
    """f(g^, u) = f(g u); zero is a legal value."""
    return f_value(g @ u, datum)


# -- covering constants -----------------------------------------------------


@dataclass(frozen=True)
class CoveringConstants:
    N: int
    M: int
    r: int
    extension_degree: int
    M_reason: str


def _extension_degree(datum: ParabolicDatum) -> int:
    kind = closed_form_kind(datum)
    n = datum.n
    if kind == "siegel":
        m = n // 2
        return m * (m + 1)
    if kind == "two_block":
        return n * datum.blocks[1] if datum.family == "SL" else 0
    if kind == "borel":
        return n * (n - 1) if datum.family == "SL" else 0
    if datum.family == "GL":
        return 0  # the minor of Ad(g) is invariant under scalars
    raise UnsupportedDatum(f"no polynomial extension of f known for {datum.name}")


def covering_constants(datum: ParabolicDatum) -> CoveringConstants:
    """N = total degree of det(g)^r f(g) and M (coefficient bound exponent).

    M = 0 for every shipped datum: the extensions are integer polynomials in
    the entries (determinants, or for the minor route, cofactors times the
    integral root vectors), so all coefficients lie in the integers.
    """
    deg = _extension_degree(datum)
    N = datum.n * datum.r + deg
    reason = ("integer determinant formula" if closed_form_kind(datum)
              else "integral root vectors: det(g)^r times the Ad-minor has integer coefficients")
    return CoveringConstants(N=N, M=0, r=datum.r, extension_degree=deg, M_reason=reason)


# -- Omega(m) -----------------------------------------------------------------


def sup_norm(u: GroupElement) -> Fraction:
    """|u| = max(1, |u_ij|), returned as its valuation exponent min(0, v(u_ij))."""
    mu = Fraction(0)
    for row in u.entries:
        for x in row:
            v = x.valuation()
            if v < mu:
                mu = v
    return mu


def omega_bound(u: GroupElement, m: int, consts: CoveringConstants) -> Fraction:
    """Largest valuation of f(g^, u) allowed in Omega(m; g^)."""
    return consts.N * sup_norm(u) + consts.N * (consts.M + m)


def in_omega_m_hat(u: GroupElement, m: int, g: GroupElement, datum: ParabolicDatum,
                   consts: CoveringConstants | None = None) -> bool:
    consts = consts or covering_constants(datum)
    return f_pair(g, u, datum).valuation() <= omega_bound(u, m, consts)


def in_omega_m(u: GroupElement, m: int, reps, datum: ParabolicDatum,
               consts: CoveringConstants | None = None) -> bool:
    """Membership of u in the intersection of Omega(m; g^) over ``reps``.
    A vanishing f(g^, u) has valuation +inf and always fails."""
    consts = consts or covering_constants(datum)
    bound = omega_bound(u, m, consts)
    return all(f_pair(g, u, datum).valuation() <= bound for g in reps)


def omega_violations(u: GroupElement, m: int, reps, datum: ParabolicDatum,
                     consts: CoveringConstants | None = None) -> list:
    consts = consts or covering_constants(datum)
    bound = omega_bound(u, m, consts)
    out = []
    for g in reps:
        v = f_pair(g, u, datum).valuation()
        if v > bound:
            out.append((g, v, bound))
    return out


def _is_sl2_borel(datum: ParabolicDatum) -> bool:
    return datum.family == "SL" and datum.n == 2


REP_LIMIT = 20000
_rep_lock = threading.Lock()


def enumerate_reps(datum: ParabolicDatum, m: int, p: int, e: int = 1) -> tuple:
    """Representatives in SL(2, Z) of the classes P-(Z/p^k) \\ SL(2, Z/p^k), k = Nm + 1.

    Classes are indexed by the bottom row up to units, i.e. by P^1(Z/p^k):
    (1, d) lifts to [[0, -1], [1, d]] and (c, 1) with p | c to [[1, 0], [c, 1]].
    The identity is the class (0, 1).
    """
    if not _is_sl2_borel(datum):
        raise UnsupportedDatum("representative sets are enumerated only for SL(2)")
    if m < 0:
        raise ValueError("m must be non-negative")
    k = covering_constants(datum).N * m + 1
    size = p ** (k - 1) * (p + 1)
    if size > REP_LIMIT:
        raise UnsupportedDatum(f"{size} representatives exceeds the limit {REP_LIMIT}")
    with _rep_lock:
        return _enumerate_sl2(p, e, k)


@lru_cache(maxsize=None)
def _enumerate_sl2(p: int, e: int, k: int) -> tuple:
    mod = p ** k
    out = [GroupElement.identity("SL", 2, p, e)]
    for c in range(p, mod, p):
        out.append(GroupElement.from_rows("SL", [[1, 0], [c, 1]], p, e, check=False))
    for d in range(mod):
        out.append(GroupElement.from_rows("SL", [[0, -1], [1, d]], p, e, check=False))
    return tuple(out)


def _constant_coefficient(x: ExactScalar) -> ExactScalar:
    return ExactScalar(x.coeffs[0], x.p, x.e)


def sl2_critical_rep(u: GroupElement) -> GroupElement:
    """The integral class maximising v(f(g^, u)) for SL(2).

    With z the upper-right entry: if v(z) >= 0 the bottom row (1, -z0) makes
    z - z0 as small as possible; otherwise the row (-w0, 1) with w = 1/z.
    """
    z = u.entries[0][1]
    p, e = z.p, z.e
    if z.is_zero():
        return GroupElement.from_rows("SL", [[0, -1], [1, 0]], p, e, check=False)
    if z.valuation() >= 0:
        z0 = _constant_coefficient(z)
        return GroupElement.from_rows("SL", [[0, -1], [1, -z0]], p, e, check=False)
    w0 = _constant_coefficient(z.inverse())
    return GroupElement.from_rows("SL", [[1, 0], [-w0, 1]], p, e, check=False)


def in_omega_m_sl2(u: GroupElement, m: int, datum: ParabolicDatum) -> bool:
    """Exact Omega(m) membership for SL(2) using the identity and the critical class."""
    if not _is_sl2_borel(datum):
        raise UnsupportedDatum("exact decision is implemented for SL(2) only")
    reps = [GroupElement.identity("SL", 2, u.p, u.e), sl2_critical_rep(u)]
    return in_omega_m(u, m, reps, datum)


def minimal_m(u: GroupElement, reps, datum: ParabolicDatum, limit: int = 64) -> int | None:
    """Smallest m with u in Omega(m) for the given reps, or None."""
    for m in range(limit + 1):
        if in_omega_m(u, m, reps, datum):
            return m
    return None


def omega_falsify(u: GroupElement, datum: ParabolicDatum, sampler=None, trials: int = 100):
    """Look for g with f(g u) = 0.  Returns the witness or None.

    An u with F-rational entries is always caught: for w outside W_I the
    element w u^-1 lands u on w, where f vanishes.
    """
    if all(c == 0 for row in u.entries for x in row for c in x.coeffs[1:]):
        p, e = u.p, u.e
        levi = {id(w) for w in levi_weyl_group(datum, p, e)}
        for w in weyl_group(datum, p, e):
            if id(w) not in levi:
                g = w.element @ u.inv()
                if f_pair(g, u, datum).is_zero():
                    return g
    if _is_sl2_borel(datum):
        g = sl2_critical_rep(u)
        if f_pair(g, u, datum).is_zero():
            return g
    if sampler is not None:
        for _ in range(trials):
            g = sampler.integral_element(datum)
            if f_pair(g, u, datum).is_zero():
                return g
    return None


# -- translation bound --------------------------------------------------------


@dataclass(frozen=True)
class ProjectionDegrees:
    """Degrees of the U- projection u -> g * u as a rational map.

    The entries of g * u are (polynomial of degree <= D in u) / f(g, u)^s,
    with coefficients bounded by |p|^(-L), and t the power of det(g) involved.
    """
    D: int
    L: int
    s: int
    t: int


def projection_degrees(datum: ParabolicDatum) -> ProjectionDegrees:
    # For two blocks, g*u has upper block B D^-1 = B adj(D) det(D)^(k-1) / det(D)^k
    # so with f = det(D)^k det(g)^-q the numerator has degree n2 * k in u.
    if datum.family == "Sp":
        m = datum.n // 2
        return ProjectionDegrees(D=m * (m + 1), L=0, s=1, t=0)
    if datum.family in ("GL", "SL") and len(datum.blocks) == 2:
        n2 = datum.blocks[1]
        q = n2 if datum.family == "GL" else 0
        return ProjectionDegrees(D=n2 * datum.n, L=0, s=1, t=q)
    raise UnsupportedDatum(f"projection degrees not derived for {datum.name}")


def translate_bound(m: int, datum: ParabolicDatum) -> int:
    """m' with g * Omega(m) inside Omega(m') for g in G_o: -M - L + max(D, N s)(M + m)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    c = covering_constants(datum)
    d = projection_degrees(datum)
    return max(0, -c.M - d.L + max(d.D, c.N * d.s) * (c.M + m))


def check_translate_bound(m: int, datum: ParabolicDatum, sampler, trials: int = 1000,
                          max_draws: int = 200000) -> Report:
    """Empirical check of the translation bound on SL(2) with exact membership."""
    if not _is_sl2_borel(datum):
        raise UnsupportedDatum("the empirical check needs exact membership (SL(2))")
    m2 = translate_bound(m, datum)
    rep = Report(f"{datum.name} m={m} m'={m2}")
    draws = 0
    while rep.checks.get("inclusion", 0) < trials:
        draws += 1
        if draws > max_draws:
            rep.fail("sampling", reason="could not draw enough points of Omega(m)")
            return rep
        u = sampler.omega_point(datum)
        if not in_omega_m_sl2(u, m, datum):
            continue
        g = sampler.integral_element(datum)
        try:
            gu = star_action(g, u, datum)
        except NotInBigCell:
            rep.fail("defined", g=g, u=u)
            return rep
        if not in_omega_m_sl2(gu, m2, datum):
            rep.fail("inclusion", g=g, u=u, image=gu)
            return rep
        rep.tick("inclusion")
    return rep


# -- automorphy identities ----------------------------------------------------


def verify_cocycle(datum: ParabolicDatum, sampler, trials: int = 200) -> Report:
    """Cocycle law, L-equivariance, f(j) = f, multiplicativity and the L-twist,
    plus compatibility of the star action with products."""
    rep = Report(datum.name)
    while rep.checks.get("cocycle", 0) < trials:
        g1, g2 = sampler.generic(datum), sampler.generic(datum)
        u = sampler.omega_point(datum)
        l = sampler.levi(datum)
        try:
            s2, j2 = star_and_factor(g2, u, datum)
            s1, j1 = star_and_factor(g1, s2, datum)
            s12, j12 = star_and_factor(g1 @ g2, u, datum)
        except NotInBigCell:
            rep.tick("skipped")
            continue
        if j12 != j1 @ j2:
            rep.fail("cocycle", g1=g1, g2=g2, u=u)
            return rep
        rep.tick("cocycle")
        if s12 != s1:
            rep.fail("star_product", g1=g1, g2=g2, u=u)
            return rep
        rep.tick("star_product")
        if automorphy_factor(l @ g2, u, datum) != l @ j2:
            rep.fail("levi_equivariance", l=l, g=g2, u=u)
            return rep
        rep.tick("levi_equivariance")
        f2 = f_pair(g2, u, datum)
        if f_value(j2, datum) != f2:
            rep.fail("f_of_j", g=g2, u=u)
            return rep
        rep.tick("f_of_j")
        if f_pair(g1 @ g2, u, datum) != f_pair(g1, s2, datum) * f2:
            rep.fail("multiplicativity", g1=g1, g2=g2, u=u)
            return rep
        rep.tick("multiplicativity")
        if f_pair(l @ g2, u, datum) != f_value(l, datum) * f2:
            rep.fail("levi_twist", l=l, g=g2, u=u)
            return rep
        rep.tick("levi_twist")
    return rep
