"""Acceptance criteria, each checked in exact arithmetic with a wall-clock budget.

Every test prints one PASS/FAIL line (visible with ``pytest -s``)."""

import time


from bigcell.cell import NotInBigCell, big_cell_factor, f_closed_form, f_minor, verify_lemma_f
from bigcell.duality import duality_suite
from bigcell.groups import GroupElement, levi_weyl_group, weyl_group
from bigcell.reps import RationalRep, sigma_s
from bigcell.sampling import Sampler
from bigcell.symmspace import (
    check_translate_bound,
    covering_constants,
    enumerate_reps,
    in_omega_m,
    in_omega_m_hat,
    verify_cocycle,
)

from conftest import datum
from oracles import interpolated_degree, scaled_values


class Outcome:
    def __init__(self, label, budget):
        self.label, self.budget = label, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.budget
        print(f"\n[{'PASS' if ok else 'FAIL'}] {self.label} ({dt:.2f}s, budget {self.budget}s)")
        if exc_type is None:
            assert dt < self.budget, f"{self.label}: {dt:.2f}s exceeds {self.budget}s"
        return False


DATA = ["sl2-borel", "sl3-21", "gl4-22", "sp4-siegel"]


def test_criterion_1_closed_form_agreement():
    with Outcome("1 closed form = minor on 100 elements per datum", 10):
        for key in DATA:
            d = datum(key)
            s = Sampler(3, 1, seed=101)
            for _ in range(100):
                g = s.generic(d)
                assert f_minor(g, d) == f_closed_form(g, d), key


def test_criterion_2_lemma_suite():
    with Outcome("2 Lemma-f items (1),(2),(3),(5), all w, 50 samples per w", 60):
        for key in ("sl2-borel", "sl3-21", "sp4-siegel"):
            d = datum(key)
            rep = verify_lemma_f(d, Sampler(3, 1, seed=202), per_w=50, pairs=50)
            assert rep.ok, rep.counterexample
            nw = len(weyl_group(d, 3))
            assert rep.checks["bruhat_value"] + rep.checks["vanishing"] == 50 * nw
            assert rep.checks["bruhat_value"] == 50 * len(levi_weyl_group(d, 3))


def test_criterion_3_cocycle_identities():
    with Outcome("3 cocycle, L-equivariance, f(j)=f, multiplicativity, twist: 200 triples per datum", 30):
        for key in DATA:
            rep = verify_cocycle(datum(key), Sampler(3, 2, seed=303), trials=200)
            assert rep.ok, rep.counterexample
            assert rep.checks["cocycle"] == 200


def test_criterion_4_factorization():
    with Outcome("4 factorization round trip on 500 elements, NotInBigCell iff f = 0", 10):
        done = 0
        for key in DATA:
            d = datum(key)
            s = Sampler(3, 1, seed=404)
            while done < 125 * (DATA.index(key) + 1):
                g = s.u_minus(d) @ s.levi(d) @ s.u_plus(d)
                F = big_cell_factor(g, d)
                assert F.product() == g
                assert f_minor(g, d) == f_minor(F.levi, d)
                done += 1
            for w in weyl_group(d, 3):
                g = s.u_minus(d) @ w.element @ s.torus(d) @ s.u_plus(d)
                zero = f_minor(g, d).is_zero()
                try:
                    big_cell_factor(g, d)
                    raised = False
                except NotInBigCell:
                    raised = True
                assert raised == zero
        assert done == 500


def test_criterion_5a_congruence_invariance():
    with Outcome("5a congruent lifts give identical Omega(0; g^) verdicts on 100 points", 60):
        d = datum("sl2-borel")
        s = Sampler(3, 2, seed=505)
        reps = enumerate_reps(d, 0, 3, 2)
        l = GroupElement.from_rows("SL", [[2, 0], [0, "1/2"]], 3, 2)
        k = GroupElement.from_rows("SL", [[-2, 3], [3, -5]], 3, 2)  # k = 1 mod 3
        lifts = [l @ g @ k for g in reps]
        for _ in range(100):
            u = s.omega_point(d)
            assert [in_omega_m_hat(u, 0, g, d) for g in reps] == [in_omega_m_hat(u, 0, g, d) for g in lifts]


def test_criterion_5b_fractional_point_in_omega_zero():
    with Outcome("5b z = t accepted by Omega(0) with the full rep set; z = 1 rejected", 60):
        d = datum("sl2-borel")
        reps = enumerate_reps(d, 0, 3, 2)
        one = GroupElement.from_rows("SL", [[1, 1], [0, 1]], 3, 2)
        assert not in_omega_m(one, 0, reps, d)
        z_t = GroupElement.from_rows("SL", [[1, "t"], [0, 1]], 3, 2)
        assert in_omega_m(z_t, 0, reps, d)


def test_criterion_5c_translate_bound():
    with Outcome("5c g * Omega(1) inside Omega(m') on 1000 trials", 60):
        d = datum("sl2-borel")
        rep = check_translate_bound(1, d, Sampler(3, 2, seed=606), trials=1000)
        assert rep.ok, rep.counterexample
        assert rep.checks["inclusion"] == 1000


def test_criterion_6_duality():
    with Outcome("6 duality identities, sigma_s on SL(2) and det^s on Sp(4), 20 points", 60):
        sl2, sp4 = datum("sl2-borel"), datum("sp4-siegel")
        cases = [(sl2, sigma_s(sl2, s)) for s in (1, 2, 3)]
        cases += [(sp4, RationalRep(sp4, "det_power", weights=(0, s))) for s in (1, 2, 3)]
        for d, sig in cases:
            rep = duality_suite(d, sig, Sampler(3, 2, seed=707), samples=20)
            assert rep.ok, rep.counterexample
            for name in ("dirac", "adjointness", "round_trip", "basis_independence", "equivariance"):
                assert rep.checks.get(name, 0) > 0, name


def test_criterion_7_homogeneity_and_constants():
    with Outcome("7 det(lg)^r f(lg) = l^N det(g)^r f(g) at 5 integers, N from oracle, M = 0", 5):
        for key in DATA:
            d = datum(key)
            c = covering_constants(d)
            g = Sampler(3, 1, seed=808).integral_element(d)
            vals = scaled_values(d, g, 5)
            assert all(vals[k - 1] == vals[0] * k ** c.N for k in range(1, 6))
            assert interpolated_degree(d, g) == c.N
            assert c.M == 0
