"""Finite-level duality operators between Dirac distributions and rigid functions."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cell import NotInBigCell
from .groups import GroupElement, ParabolicDatum, weyl_group
from .reps import (
    RationalRep,
    constant_closure,
    pair,
    phi_closure,
    phi_function,
    pi_action,
    psi_function,
    t_closure,
    vec_equal,
)
from .report import Report


@dataclass(frozen=True)
class FiniteDistribution:
    """sum_i c_i xi_{g_i, v_i}, where <phi, xi_{g, v}> = <v, phi(g)>."""

    terms: tuple = ()

    @classmethod
    def dirac(cls, g: GroupElement, v, c=None) -> "FiniteDistribution":
        c = v[0] * 0 + 1 if c is None else c
        return cls(((c, g, tuple(v)),))

    def __add__(self, other: "FiniteDistribution") -> "FiniteDistribution":
        return FiniteDistribution(self.terms + other.terms)

    def scaled(self, c) -> "FiniteDistribution":
        return FiniteDistribution(tuple((c * a, g, v) for a, g, v in self.terms))

    def pair(self, phi) -> object:
        acc = None
        for c, g, v in self.terms:
            term = c * pair(list(v), phi(g))
            acc = term if acc is None else acc + term
        return acc

    def pullback(self, g: GroupElement) -> "FiniteDistribution":
        """T*(g): <phi, T*(g) xi> = <T(g^-1) phi, xi>, so xi_{h, v} -> xi_{h g^-1, v}."""
        gi = g.inv()
        return FiniteDistribution(tuple((c, h @ gi, v) for c, h, v in self.terms))


@dataclass(frozen=True)
class EvaluationFunctional:
    """mu_{u, v*}: psi -> <psi(u), v*>."""

    u: GroupElement
    vstar: tuple

    def __call__(self, psi) -> object:
        return pair(psi(self.u), list(self.vstar))


def _basis(sigma: RationalRep, basis, p: int, e: int):
    """Columns of ``basis`` and the dual basis (rows of its inverse)."""
    B = basis if basis is not None else linalg.identity(sigma.dim, p, e)
    Binv = linalg.inverse(B)
    vs = [list(c) for c in linalg.transpose(B)]
    duals = [list(r) for r in Binv]
    return vs, duals


def I_sigma(xi: FiniteDistribution, u: GroupElement, sigma: RationalRep, datum: ParabolicDatum,
            basis=None) -> list:
    """I(xi)(u) = sum_k <phi_{u, v*_k}, xi> v_k."""
    vs, duals = _basis(sigma, basis, u.p, u.e)
    out = [u.entries[0][0] * 0] * sigma.dim
    if not xi.terms:
        return out
    for vk, dk in zip(vs, duals):
        coeff = xi.pair(phi_closure(u, dk, sigma, datum))
        out = [a + coeff * b for a, b in zip(out, vk)]
    return out


def I_closure(xi, sigma, datum, basis=None):
    return lambda u: I_sigma(xi, u, sigma, datum, basis)


def J_sigma(mu: EvaluationFunctional, g: GroupElement, sigma: RationalRep, datum: ParabolicDatum,
            basis=None) -> list:
    """J(mu)(g^) = sum_k <psi_{g^, v_k}, mu> v*_k."""
    vs, duals = _basis(sigma, basis, g.p, max(g.e, mu.u.e))
    out = [mu.u.entries[0][0] * 0] * sigma.dim
    for vk, dk in zip(vs, duals):
        coeff = mu(lambda u, vk=vk: psi_function(g, vk, u, sigma, datum))
        out = [a + coeff * b for a, b in zip(out, dk)]
    return out


def J_closure(mu, sigma, datum, basis=None):
    return lambda g: J_sigma(mu, g, sigma, datum, basis)


def pairing_J(mu: EvaluationFunctional, xi: FiniteDistribution, sigma, datum):
    """<J(mu), xi>."""
    return xi.pair(J_closure(mu, sigma, datum))


def pairing_I(xi: FiniteDistribution, mu: EvaluationFunctional, sigma, datum):
    """<I(xi), mu>."""
    return mu(I_closure(xi, sigma, datum))


def verify_equivariance(g: GroupElement, xi: FiniteDistribution, us, sigma: RationalRep,
                        datum: ParabolicDatum, report: Report | None = None) -> Report:
    """I(T*(g) xi)(u) = (pi(g) I(xi))(u) at every sampled u where both sides are defined."""
    rep = report or Report(f"equivariance {datum.name}")
    left_dist = xi.pullback(g)
    for u in us:
        try:
            lhs = I_sigma(left_dist, u, sigma, datum)
            rhs = pi_action(g, I_closure(xi, sigma, datum), u, sigma, datum)
        except NotInBigCell:
            rep.tick("skipped")
            continue
        if not vec_equal(lhs, rhs):
            rep.fail("equivariance", g=g, u=u, lhs=lhs, rhs=rhs)
            return rep
        rep.tick("equivariance")
    return rep


def generators(datum: ParabolicDatum, sampler) -> list:
    """Torus, root subgroup elements of both signs, and Weyl representatives."""
    gens = [sampler.torus(datum)]
    for root in datum.roots:
        gens.append(sampler.root_element(datum, root, sampler.scalar()))
    gens.extend(w.element for w in weyl_group(datum, sampler.p, sampler.e))
    return gens


def _random_invertible(sampler, d: int):
    while True:
        B = tuple(tuple(sampler.scalar(allow_zero=True) for _ in range(d)) for _ in range(d))
        if not linalg.det(B).is_zero():
            return B


def duality_suite(datum: ParabolicDatum, sigma: RationalRep, sampler, samples: int = 20) -> Report:
    """All finite-level duality identities on random Diracs and evaluation functionals."""
    rep = Report(f"{datum.name} {sigma.describe()}")
    d = sigma.dim
    points = [sampler.omega_point(datum) for _ in range(samples)]
    classes = [sampler.generic(datum) for _ in range(samples)]
    for u, g in zip(points, classes):
        v, v2, w = sampler.vector(d), sampler.vector(d), sampler.vector(d)
        if all(x.is_zero() for x in w):
            w = [x + 1 for x in w]
        try:
            psi = psi_function(g, v, u, sigma, datum)
        except NotInBigCell:
            rep.tick("skipped")
            continue
        xi = FiniteDistribution.dirac(g, v)
        if not vec_equal(I_sigma(xi, u, sigma, datum), psi):
            rep.fail("dirac", g=g, u=u, v=v)
            return rep
        rep.tick("dirac")
        lin = FiniteDistribution.dirac(g, v) + FiniteDistribution.dirac(g, v2)
        if not vec_equal(I_sigma(lin, u, sigma, datum),
                         psi_function(g, [a + b for a, b in zip(v, v2)], u, sigma, datum)):
            rep.fail("linearity", g=g, u=u, v1=v, v2=v2)
            return rep
        rep.tick("linearity")
        if not vec_equal(psi, pi_action(g.inv(), constant_closure(v), u, sigma, datum)):
            rep.fail("psi_as_translate", g=g, u=u, v=v)
            return rep
        rep.tick("psi_as_translate")
        mu = EvaluationFunctional(u, tuple(w))
        if not vec_equal(J_sigma(mu, g, sigma, datum), phi_function(u, w, g, sigma, datum)):
            rep.fail("round_trip", g=g, u=u, vstar=w)
            return rep
        rep.tick("round_trip")
        xi2 = xi + FiniteDistribution.dirac(classes[0], v2).scaled(sampler.scalar())
        try:
            lhs, rhs = pairing_J(mu, xi2, sigma, datum), pairing_I(xi2, mu, sigma, datum)
        except NotInBigCell:
            rep.tick("skipped")
            continue
        if lhs != rhs:
            rep.fail("adjointness", g=g, u=u, lhs=lhs, rhs=rhs)
            return rep
        rep.tick("adjointness")
        B = _random_invertible(sampler, d)
        if not vec_equal(I_sigma(xi2, u, sigma, datum, basis=B), I_sigma(xi2, u, sigma, datum)):
            rep.fail("basis_independence", g=g, u=u, basis=[[str(x) for x in r] for r in B])
            return rep
        rep.tick("basis_independence")
        if not vec_equal(J_sigma(mu, g, sigma, datum, basis=B), J_sigma(mu, g, sigma, datum)):
            rep.fail("basis_independence_J", g=g, u=u)
            return rep
        rep.tick("basis_independence_J")
        # T(g^-1) phi_{u,v*} evaluated at g' is sigma*(j(g' g^-1, u)) v*
        h = classes[-1]
        try:
            lhs = t_closure(g.inv(), phi_closure(u, w, sigma, datum))(h)
            rhs = phi_function(u, w, h @ g.inv(), sigma, datum)
        except NotInBigCell:
            rep.tick("skipped")
        else:
            if not vec_equal(lhs, rhs):
                rep.fail("right_translation", g=g, h=h, u=u)
                return rep
            rep.tick("right_translation")
    base = FiniteDistribution.dirac(classes[0], sampler.vector(d)) + FiniteDistribution.dirac(
        classes[1 % len(classes)], sampler.vector(d))
    for gen in generators(datum, sampler):
        verify_equivariance(gen, base, points, sigma, datum, rep)
        if not rep.ok:
            return rep
    return rep


def lift_independence(g: GroupElement, u_minus: GroupElement, v, u: GroupElement,
                      sigma: RationalRep, datum: ParabolicDatum) -> bool:
    """g and u_minus g lift the same class of U- \\ G and give the same psi and Dirac pairing."""
    if not vec_equal(psi_function(g, v, u, sigma, datum), psi_function(u_minus @ g, v, u, sigma, datum)):
        return False
    a = I_sigma(FiniteDistribution.dirac(g, v), u, sigma, datum)
    b = I_sigma(FiniteDistribution.dirac(u_minus @ g, v), u, sigma, datum)
    return vec_equal(a, b)
