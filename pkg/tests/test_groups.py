import itertools

import pytest
import sympy

from bigcell import linalg
from bigcell.groups import (
    BrokenWeylRepresentative,
    GroupElement,
    adjoint_matrix,
    build_parabolic,
    is_b_minus,
    iwasawa_factor,
    levi_weyl_group,
    root_value,
    weyl_constant,
    weyl_group,
    weyl_root_image,
)
from bigcell.sampling import Sampler

from conftest import datum


def M(family, rows, p=3, e=1):
    return GroupElement.from_rows(family, rows, p, e)


@pytest.mark.parametrize("fam,n,sel,r", [("SL", 2, (1, 1), 1), ("Sp", 4, "siegel", 3), ("GL", 4, (2, 2), 4),
                                         ("SL", 3, (2, 1), 2), ("GL", 5, (2, 3), 6), ("Sp", 6, "siegel", 6),
                                         ("SL", 4, "borel", 6)])
def test_r_matches_block_shape(fam, n, sel, r):
    assert build_parabolic(fam, n, sel).r == r


@pytest.mark.parametrize("args", [("GL", 4, (2, 1)), ("GL", 3, (0, 3)), ("Sp", 5, "siegel"), ("SL", 3, "siegel"),
                                  ("XX", 2, "borel"), ("Sp", 4, "borel")])
def test_invalid_parabolics(args):
    with pytest.raises(ValueError):
        build_parabolic(*args)


def test_root_data_counts():
    d = build_parabolic("Sp", 4, "siegel")
    assert len(d.roots) == 8 and len(d.positive_roots) == 4 and len(d.simple_roots) == 2
    assert len(d.levi_simple_roots) == 1
    assert [r.pivot for r in d.r_plus] == sorted(r.pivot for r in d.r_plus)
    sl3 = build_parabolic("SL", 3, (2, 1))
    assert len(sl3.simple_roots) == 2 and len(sl3.levi_simple_roots) == 1


def test_membership():
    assert M("SL", [[1, 2], [1, 3]]).is_member()
    assert not GroupElement.from_rows("SL", [[2, 0], [0, 1]], 3, check=False).is_member()
    d = datum("sp4-siegel")
    s = Sampler(3, 1, seed=5)
    for _ in range(20):
        assert s.generic(d).is_member()
    with pytest.raises(ValueError):
        M("Sp", [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


# -- adjoint matrix -----------------------------------------------------------


def _sympy_adjoint(g, d):
    """Independent oracle: conjugate in sympy and solve for coordinates."""
    n = g.n
    G = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in g.entries])
    basis = [sympy.Matrix(n, n, lambda i, j, b=b: dict(b.entries).get((i, j), 0)) for b in d.basis]
    A = sympy.Matrix([[B[k] for B in basis] for k in range(n * n)])
    cols = []
    for B in basis:
        Y = G * B * G.inv()
        sol = A.solve_least_squares(sympy.Matrix(list(Y)))
        assert A * sol == sympy.Matrix(list(Y))
        cols.append(list(sol))
    return sympy.Matrix(cols).T


@pytest.mark.parametrize("key", ["sl2-borel", "sl3-21", "sp4-siegel"])
def test_adjoint_matches_sympy_oracle(key):
    d = datum(key)
    s = Sampler(3, 1, seed=2)
    for _ in range(3):
        g = s.generic(d)
        ours = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in adjoint_matrix(g, d)])
        assert ours == _sympy_adjoint(g, d)


def test_sl2_unipotent_adjoint_frozen():
    d = datum("sl2-borel")
    g = M("SL", [[1, 1], [0, 1]])
    A = [[str(x) for x in row] for row in adjoint_matrix(g, d)]
    # basis order: E01, E10, H0
    assert A == [["1", "-1", "-2"], ["0", "1", "0"], ["0", "1", "1"]]


def test_adjoint_identity_and_torus():
    d = datum("sl3-21")
    I = GroupElement.identity("SL", 3, 3)
    assert linalg.equal(adjoint_matrix(I, d), linalg.identity(d.dimension, 3))
    t = M("SL", [[2, 0, 0], [0, "1/6", 0], [0, 0, 3]])
    A = adjoint_matrix(t, d)
    for i, b in enumerate(d.basis):
        for j in range(d.dimension):
            if i != j:
                assert A[i][j].is_zero()
        expect = root_value(b, t, "SL") if b.is_root else 1
        assert A[i][i] == expect


@pytest.mark.parametrize("key", ["sl2-borel", "gl4-22", "sp4-siegel"])
def test_adjoint_is_homomorphism(key):
    d = datum(key)
    s = Sampler(3, 1, seed=4)
    for _ in range(4):
        a, b = s.generic(d), s.generic(d)
        assert linalg.equal(adjoint_matrix(a @ b, d), linalg.matmul(adjoint_matrix(a, d), adjoint_matrix(b, d)))


def test_root_covariance_under_random_torus():
    for key in ("gl4-22", "sp4-siegel"):
        d = datum(key)
        s = Sampler(5, 1, seed=9)
        for _ in range(5):
            t = s.torus(d)
            A = adjoint_matrix(t, d)
            for i, b in enumerate(d.roots):
                assert A[i][i] == root_value(b, t, d.family)
                assert all(A[i][j].is_zero() for j in range(d.dimension) if j != i)


# -- Weyl group ---------------------------------------------------------------


def test_trivial_weyl_constants():
    d = datum("sp4-siegel")
    w = weyl_group(d, 3)[0]
    assert w.element.is_identity()
    assert all(weyl_constant(w, a, d) == 1 for a in d.roots)


def test_sl2_weyl_constant():
    d = datum("sl2-borel")
    w = next(w for w in weyl_group(d, 3) if not w.element.is_identity())
    assert w.element == M("SL", [[0, -1], [1, 0]])
    assert weyl_constant(w, d.positive_roots[0], d) == -1


@pytest.mark.parametrize("fam,n,sel", [("SL", 2, "borel"), ("SL", 3, "borel"), ("GL", 3, "borel"),
                                       ("SL", 4, (2, 2)), ("GL", 4, (1, 3)), ("Sp", 4, "siegel")])
def test_weyl_constants_are_signs_exhaustive(fam, n, sel):
    d = build_parabolic(fam, n, sel)
    ws = weyl_group(d, 3)
    assert len(ws) == (8 if fam == "Sp" else len(list(itertools.permutations(range(n)))))
    for w in ws:
        assert w.element.is_member()
        for a in d.roots:
            beta, c = weyl_root_image(w, a, d)
            assert c == 1 or c == -1


def test_levi_weyl_group_sizes():
    assert len(levi_weyl_group(datum("sp4-siegel"), 3)) == 2
    assert len(levi_weyl_group(datum("sl3-21"), 3)) == 2
    assert len(levi_weyl_group(datum("gl4-22"), 3)) == 4
    assert len(levi_weyl_group(datum("sl2-borel"), 3)) == 1


def test_broken_representative_detected():
    d = datum("sl2-borel")
    from bigcell.groups import WeylElement

    fake = WeylElement((0, 1), (), M("SL", [[1, 1], [0, 1]]))
    with pytest.raises(BrokenWeylRepresentative):
        weyl_constant(fake, d.positive_roots[0], d)


# -- Iwasawa ------------------------------------------------------------------


def test_iwasawa_integral_input():
    g = M("SL", [[1, 2], [4, 9]])
    b, k = iwasawa_factor(g)
    assert b.is_identity() and k == g


def test_iwasawa_torus():
    g = M("SL", [["1/3", 0], [0, 3]])
    b, k = iwasawa_factor(g)
    assert b == g and k.is_identity()


def test_iwasawa_unipotent():
    g = M("SL", [[1, "1/3"], [0, 1]])
    b, k = iwasawa_factor(g)
    assert b @ k == g and k.in_G_o() and k.is_member() and is_b_minus(b)


def test_iwasawa_rejects_extension():
    with pytest.raises(ValueError):
        iwasawa_factor(GroupElement.identity("SL", 2, 3, 2))


@pytest.mark.parametrize("fam,n,sel,count", [("SL", 2, "borel", 400), ("GL", 3, "borel", 200),
                                             ("SL", 3, "borel", 200), ("Sp", 4, "siegel", 200)])
def test_iwasawa_random(fam, n, sel, count):
    d = build_parabolic(fam, n, sel)
    s = Sampler(3, 1, seed=17)
    for _ in range(count):
        g = s.generic(d)
        b, k = iwasawa_factor(g)
        assert b @ k == g
        assert k.in_G_o() and k.is_member() and b.is_member()
        assert is_b_minus(b)
