"""Rational representations of the Levi and the two actions built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import linalg
from .exactfield import ExactScalar
from .groups import GroupElement, ParabolicDatum
from .report import Report
from .symmspace import star_and_factor


def _monomials(nvars: int, k: int) -> list:
    """Exponent tuples of total degree k, in lexicographic order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), k):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(set(out), reverse=True)


def _poly_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out[key] + ca * cb if key in out else ca * cb
    return out


def sym_power_matrix(A, k: int) -> tuple:
    """Matrix of Sym^k(A) on the monomial basis x^alpha, with A x_j = sum_i A_ij x_i."""
    b = len(A)
    one = A[0][0] * 0 + 1
    basis = _monomials(b, k)
    index = {m: i for i, m in enumerate(basis)}
    images = []
    for j in range(b):
        images.append({tuple(1 if t == i else 0 for t in range(b)): A[i][j]
                       for i in range(b) if not A[i][j].is_zero()})
    nil = one * 0
    cols = []
    for mono in basis:
        poly = {(0,) * b: one}
        for j, power in enumerate(mono):
            for _ in range(power):
                poly = _poly_mul(poly, images[j])
        col = [nil] * len(basis)
        for ex, c in poly.items():
            col[index[ex]] = c
        cols.append(col)
    return linalg.transpose(cols)


@dataclass(frozen=True)
class RationalRep:
    """A representation of the Levi, extended to P+ and P- through the Levi part.

    kind "det_power": l -> prod_b det(l_bb)^weights[b] (one-dimensional).
    kind "sym": Sym^k of the standard representation of block ``block``.
    kind "custom": ``evaluator`` maps a Levi element to a d x d matrix.
    """

    datum: ParabolicDatum
    kind: str
    weights: tuple = ()
    k: int = 0
    block: int = 0
    evaluator: Callable | None = field(default=None, compare=False)
    custom_dim: int = 0

    def __post_init__(self):
        nb = len(self.datum.blocks)
        if self.kind == "det_power":
            if len(self.weights) != nb:
                raise ValueError(f"det_power needs {nb} weights")
        elif self.kind == "sym":
            if not 0 <= self.block < nb or self.k < 0:
                raise ValueError("sym needs 0 <= block < #blocks and k >= 0")
        elif self.kind == "custom":
            if self.evaluator is None or self.custom_dim <= 0:
                raise ValueError("custom reps need an evaluator and a dimension")
        else:
            raise ValueError(f"unknown representation kind {self.kind!r}")

    @property
    def dim(self) -> int:
        if self.kind == "det_power":
            return 1
        if self.kind == "sym":
            b = self.datum.blocks[self.block]
            return len(_monomials(b, self.k))
        return self.custom_dim

    def describe(self) -> dict:
        if self.kind == "det_power":
            return {"type": "det_power", "weights": list(self.weights)}
        if self.kind == "sym":
            return {"type": "sym", "k": self.k, "block": self.block}
        return {"type": "custom", "dim": self.custom_dim}

    def __call__(self, g: GroupElement) -> tuple:
        l = self.datum.levi_part(g)
        if self.kind == "custom":
            return self.evaluator(l)
        blocks = self.datum.levi_blocks(l)
        if self.kind == "det_power":
            acc = l.entries[0][0] * 0 + 1
            for B, s in zip(blocks, self.weights):
                if s:
                    acc = acc * linalg.det(B) ** s
            return ((acc,),)
        return sym_power_matrix(blocks[self.block], self.k)

    def inverse_at(self, g: GroupElement) -> tuple:
        return linalg.inverse(self(g))

    def dual(self, g: GroupElement) -> tuple:
        """sigma*(g) = transpose of sigma(g^-1)."""
        return linalg.transpose(self.inverse_at(g))


def sigma_s(datum: ParabolicDatum, s: int) -> RationalRep:
    """sigma_s(diag(a, d)) = d^s on a two-block Levi."""
    weights = (0,) * (len(datum.blocks) - 1) + (s,)
    return RationalRep(datum, "det_power", weights=weights)


def character_rep(datum: ParabolicDatum) -> RationalRep:
    """f restricted to P+, as a one-dimensional representation."""
    from .cell import f_value

    return RationalRep(datum, "custom", evaluator=lambda l: ((f_value(l, datum),),), custom_dim=1)


def parse_rep(datum: ParabolicDatum, desc: dict) -> RationalRep:
    if not isinstance(desc, dict) or "type" not in desc:
        raise ValueError("representation descriptor must be an object with a 'type'")
    t = desc["type"]
    if t == "det_power":
        return RationalRep(datum, "det_power", weights=tuple(int(x) for x in desc.get("weights", [])))
    if t == "sym":
        return RationalRep(datum, "sym", k=int(desc["k"]), block=int(desc.get("block", 0)))
    if t == "sigma_s":
        return sigma_s(datum, int(desc["s"]))
    raise ValueError(f"unknown representation type {t!r}")


# -- vectors -----------------------------------------------------------------


def apply(M, v) -> list:
    return [sum((a * x for a, x in zip(row, v)), v[0] * 0) for row in M]


def pair(v, vstar) -> ExactScalar:
    acc = v[0] * 0
    for a, b in zip(v, vstar):
        acc = acc + a * b
    return acc


def vec_equal(a, b) -> bool:
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


# -- the two families of functions -------------------------------------------


def psi_function(g: GroupElement, v, u: GroupElement, sigma: RationalRep, datum: ParabolicDatum) -> list:
    """psi_{g^, v}(u) = sigma(j(g^, u))^-1 v."""
    _, j = star_and_factor(g, u, datum)
    return apply(sigma.inverse_at(j), v)


def phi_function(u: GroupElement, vstar, g: GroupElement, sigma: RationalRep, datum: ParabolicDatum) -> list:
    """phi_{u, v*}(g^) = sigma*(j(g^, u)) v*."""
    _, j = star_and_factor(g, u, datum)
    return apply(sigma.dual(j), vstar)


def psi_closure(g, v, sigma, datum) -> Callable:
    return lambda u: psi_function(g, v, u, sigma, datum)


def phi_closure(u, vstar, sigma, datum) -> Callable:
    return lambda g: phi_function(u, vstar, g, sigma, datum)


def constant_closure(v) -> Callable:
    return lambda u: list(v)


def pi_action(g: GroupElement, psi: Callable, u: GroupElement, sigma: RationalRep, datum: ParabolicDatum) -> list:
    """(pi(g) psi)(u) = sigma(j(g^-1, u))^-1 psi(g^-1 * u)."""
    gi = g.inv()
    s, j = star_and_factor(gi, u, datum)
    return apply(sigma.inverse_at(j), psi(s))


def pi_closure(g, psi, sigma, datum) -> Callable:
    return lambda u: pi_action(g, psi, u, sigma, datum)


def t_action(g: GroupElement, phi: Callable, g_prime: GroupElement) -> list:
    """(T(g) phi)(g') = phi(g' g)."""
    return phi(g_prime @ g)


def t_closure(g, phi) -> Callable:
    return lambda gp: t_action(g, phi, gp)


def verify_rep(sigma: RationalRep, sampler, trials: int = 50) -> Report:
    """Homomorphism on the Levi, triviality on the radicals, and the dual pairing."""
    datum = sigma.datum
    rep = Report(f"{datum.name} {sigma.describe()}")
    for _ in range(trials):
        a, b = sampler.levi(datum), sampler.levi(datum)
        if not linalg.equal(sigma(a @ b), linalg.matmul(sigma(a), sigma(b))):
            rep.fail("homomorphism", l1=a, l2=b)
            return rep
        rep.tick("homomorphism")
        if not linalg.equal(sigma.dual(a @ b), linalg.matmul(sigma.dual(a), sigma.dual(b))):
            rep.fail("dual_homomorphism", l1=a, l2=b)
            return rep
        rep.tick("dual_homomorphism")
        up, um = sampler.u_plus(datum), sampler.u_minus(datum)
        if not (linalg.equal(sigma(up @ a), sigma(a)) and linalg.equal(sigma(a @ um), sigma(a))):
            rep.fail("extension", l=a, u_plus=up, u_minus=um)
            return rep
        rep.tick("extension")
        v, w = sampler.vector(sigma.dim), sampler.vector(sigma.dim)
        if pair(apply(sigma(a), v), apply(sigma.dual(a), w)) != pair(v, w):
            rep.fail("dual_pairing", l=a, v=v, vstar=w)
            return rep
        rep.tick("dual_pairing")
    return rep
