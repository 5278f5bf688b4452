"""Matrix realisations of GL(n), SL(n), Sp(2m): root data, parabolics, Weyl groups.

Conventions.  The torus is diagonal and the positive roots are the ones whose
root vector has its pivot strictly below the diagonal, so B+ (and P+) are
lower (block) triangular and U- is upper block unipotent.  For Sp(2m) the form
is J = [[0, I], [-I, 0]], the torus is diag(t, 1/t) and the Siegel Levi is
diag(D^-T, D).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import linalg
from .exactfield import ExactScalar

FAMILIES = ("GL", "SL", "Sp")


@dataclass(frozen=True, eq=False)
class GroupElement:
    family: str
    n: int
    entries: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError(f"entries must be {self.n}x{self.n}")
        if self.family == "Sp" and self.n % 2:
            raise ValueError("Sp needs an even matrix size")

    @classmethod
    def from_rows(cls, family: str, rows, p: int, e: int = 1, check: bool = True) -> "GroupElement":
        g = cls(family, len(rows), linalg.from_rows(rows, p, e))
        if check:
            g.validate()
        return g

    @classmethod
    def identity(cls, family: str, n: int, p: int, e: int = 1) -> "GroupElement":
        return cls(family, n, linalg.identity(n, p, e))

    @property
    def p(self) -> int:
        return self.entries[0][0].p

    @property
    def e(self) -> int:
        return max(x.e for row in self.entries for x in row)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.family, self.n, linalg.matmul(self.entries, other.entries))

    def inv(self) -> "GroupElement":
        return GroupElement(self.family, self.n, linalg.inverse(self.entries))

    def det(self) -> ExactScalar:
        return linalg.det(self.entries)

    def transpose(self) -> "GroupElement":
        return GroupElement(self.family, self.n, linalg.transpose(self.entries))

    def scaled(self, c) -> "GroupElement":
        """c * g as a GL(n) element (leaves the group for SL/Sp)."""
        return GroupElement("GL", self.n, linalg.scale(self.entries, c))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.n == other.n and linalg.equal(self.entries, other.entries)

    def __hash__(self):
        return hash(tuple(str(x) for row in self.entries for x in row))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_identity(self) -> bool:
        return all((x == 1) if i == j else x.is_zero()
                   for i, row in enumerate(self.entries) for j, x in enumerate(row))

    def is_member(self) -> bool:
        if self.family == "GL":
            return not self.det().is_zero()
        if self.family == "SL":
            return self.det() == 1
        m = self.n // 2
        J = symplectic_form(m, self.p, self.e)
        return linalg.equal(linalg.matmul(linalg.transpose(self.entries), linalg.matmul(J, self.entries)), J)

    def validate(self) -> "GroupElement":
        if not self.is_member():
            raise ValueError(f"matrix is not an element of {self.family}({self.n})")
        return self

    def is_integral(self) -> bool:
        return all(x.is_integral() for row in self.entries for x in row)

    def in_G_o(self) -> bool:
        """Integral with unit determinant."""
        return self.is_integral() and self.det().is_unit()

    def to_strings(self) -> list:
        return linalg.to_strings(self.entries)

    def __repr__(self):
        return f"GroupElement({self.family}, {self.to_strings()})"


def symplectic_form(m: int, p: int, e: int = 1) -> tuple:
    one, nil = ExactScalar(1, p, e), ExactScalar(0, p, e)
    rows = []
    for i in range(2 * m):
        row = []
        for j in range(2 * m):
            if j == i + m:
                row.append(one)
            elif i == j + m:
                row.append(-one)
            else:
                row.append(nil)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class BasisVector:
    """A sparse integral matrix in the Lie algebra together with its coordinate
    functional (a sparse linear form on matrix entries)."""

    name: str
    entries: tuple  # ((i, j), int) pairs
    coordinate: tuple  # ((i, j), int) pairs
    pivot: tuple | None = None
    weight: tuple | None = None

    def matrix(self, n: int, p: int, e: int = 1) -> tuple:
        nil = ExactScalar(0, p, e)
        rows = [[nil] * n for _ in range(n)]
        for (i, j), c in self.entries:
            rows[i][j] = ExactScalar(c, p, e)
        return tuple(tuple(r) for r in rows)

    def coord(self, X) -> ExactScalar:
        acc = None
        for (i, j), c in self.coordinate:
            term = X[i][j] * c
            acc = term if acc is None else acc + term
        return acc

    @property
    def is_root(self) -> bool:
        return self.pivot is not None


def _root(name, entries, pivot, weight) -> BasisVector:
    ((pi, pj),) = [ij for ij, _ in entries if ij == pivot]
    coef = dict(entries)[pivot]
    assert coef == 1
    return BasisVector(name, tuple(entries), ((pivot, 1),), pivot, tuple(weight))


@lru_cache(maxsize=None)
def lie_basis(family: str, n: int) -> tuple[tuple[BasisVector, ...], tuple[BasisVector, ...]]:
    """(root vectors sorted by pivot, Cartan basis) for the given matrix group."""
    roots, cartan = [], []
    if family in ("GL", "SL"):
        for a, b in itertools.permutations(range(n), 2):
            w = [0] * n
            w[a] += 1
            w[b] -= 1
            roots.append(_root(f"E{a}{b}", (((a, b), 1),), (a, b), w))
        if family == "GL":
            for a in range(n):
                cartan.append(BasisVector(f"E{a}{a}", (((a, a), 1),), (((a, a), 1),)))
        else:
            for a in range(n - 1):
                cartan.append(BasisVector(
                    f"H{a}", (((a, a), 1), ((a + 1, a + 1), -1)),
                    tuple(((k, k), 1) for k in range(a + 1)),
                ))
    elif family == "Sp":
        m = n // 2

        def eps(i, sign):
            w = [0] * m
            w[i] += sign
            return w

        for i, j in itertools.permutations(range(m), 2):
            w = [x - y for x, y in zip(eps(i, 1), eps(j, 1))]
            roots.append(_root(f"A{i}{j}", (((i, j), 1), ((m + j, m + i), -1)), (i, j), w))
        for i in range(m):
            for j in range(i, m):
                w = [x + y for x, y in zip(eps(i, 1), eps(j, 1))]
                ent = (((i, m + j), 1),) if i == j else (((i, m + j), 1), ((j, m + i), 1))
                roots.append(_root(f"B{i}{j}", ent, (i, m + j), w))
                w = [-x for x in w]
                ent = (((m + j, i), 1),) if i == j else (((m + j, i), 1), ((m + i, j), 1))
                roots.append(_root(f"C{j}{i}", ent, (m + j, i), w))
        for i in range(m):
            cartan.append(BasisVector(f"H{i}", (((i, i), 1), ((m + i, m + i), -1)), (((i, i), 1),)))
    else:
        raise ValueError(f"unknown family {family!r}")
    roots.sort(key=lambda r: r.pivot)
    return tuple(roots), tuple(cartan)


def torus_coordinates(family: str, t: GroupElement) -> list:
    """The diagonal entries on which root characters are evaluated."""
    k = t.n // 2 if family == "Sp" else t.n
    return [t.entries[i][i] for i in range(k)]


def root_value(root: BasisVector, t: GroupElement, family: str) -> ExactScalar:
    """alpha(t) for a diagonal t."""
    coords = torus_coordinates(family, t)
    acc = coords[0] * 0 + 1
    for x, k in zip(coords, root.weight):
        if k:
            acc = acc * x ** k
    return acc


@dataclass(frozen=True)
class WeylElement:
    perm: tuple
    flips: tuple
    element: GroupElement

    def __repr__(self):
        return f"WeylElement(perm={self.perm}, flips={self.flips})"


@dataclass(frozen=True)
class ParabolicDatum:
    """A group family together with a standard parabolic P+ (block lower triangular).

    ``blocks`` is the block composition of the matrix size; for the Siegel
    parabolic of Sp(2m) it is (m, m).
    """

    family: str
    n: int
    blocks: tuple
    selector: str = "composition"

    @property
    def name(self) -> str:
        sel = "siegel" if self.selector == "siegel" else ",".join(map(str, self.blocks))
        return f"{self.family}({self.n})[{sel}]"

    @cached_property
    def _block_index(self) -> tuple:
        out = []
        for b, size in enumerate(self.blocks):
            out.extend([b] * size)
        return tuple(out)

    def block_of(self, i: int) -> int:
        return self._block_index[i]

    @cached_property
    def block_ranges(self) -> tuple:
        out, start = [], 0
        for size in self.blocks:
            out.append(range(start, start + size))
            start += size
        return tuple(out)

    @property
    def is_borel(self) -> bool:
        return self.family != "Sp" and all(b == 1 for b in self.blocks)

    @cached_property
    def roots(self) -> tuple:
        return lie_basis(self.family, self.n)[0]

    @cached_property
    def cartan(self) -> tuple:
        return lie_basis(self.family, self.n)[1]

    @cached_property
    def basis(self) -> tuple:
        """(X_alpha)_{alpha in R} followed by the Cartan basis."""
        return self.roots + self.cartan

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(r for r in self.roots if r.pivot[0] > r.pivot[1])

    def is_levi_root(self, root: BasisVector) -> bool:
        return all(self.block_of(i) == self.block_of(j) for (i, j), _ in root.entries)

    @cached_property
    def levi_roots(self) -> tuple:
        return tuple(r for r in self.roots if self.is_levi_root(r))

    @cached_property
    def r_plus(self) -> tuple:
        """R_I^+ in lexicographic pivot order; fixes the sign of Y."""
        return tuple(r for r in self.positive_roots if not self.is_levi_root(r))

    @cached_property
    def u_minus_roots(self) -> tuple:
        return tuple(r for r in self.roots if r.pivot[0] < r.pivot[1] and not self.is_levi_root(r))

    @property
    def r(self) -> int:
        return len(self.r_plus)

    @cached_property
    def simple_roots(self) -> tuple:
        pos = self.positive_roots
        sums = {tuple(a + b for a, b in zip(x.weight, y.weight)) for x in pos for y in pos}
        return tuple(r for r in pos if r.weight not in sums)

    @cached_property
    def levi_simple_roots(self) -> tuple:
        """The subset I of S."""
        return tuple(r for r in self.simple_roots if self.is_levi_root(r))

    @cached_property
    def dimension(self) -> int:
        return len(self.basis)

    def root_index(self, root: BasisVector) -> int:
        return self.roots.index(root)

    # -- shape predicates -------------------------------------------------

    def _shape(self, g: GroupElement, allowed) -> bool:
        for i, row in enumerate(g.entries):
            for j, x in enumerate(row):
                bi, bj = self.block_of(i), self.block_of(j)
                if bi == bj:
                    if not allowed(bi, bj, i, j, x):
                        return False
                elif not x.is_zero() and not allowed(bi, bj, i, j, x):
                    return False
        return True

    def in_levi(self, g: GroupElement) -> bool:
        return self._shape(g, lambda bi, bj, i, j, x: bi == bj)

    def in_p_plus(self, g: GroupElement) -> bool:
        return self._shape(g, lambda bi, bj, i, j, x: bi >= bj)

    def in_u_minus(self, g: GroupElement) -> bool:
        return self._shape(g, lambda bi, bj, i, j, x: (bi < bj) or (x == 1 if i == j else x.is_zero()))

    def in_u_plus(self, g: GroupElement) -> bool:
        return self._shape(g, lambda bi, bj, i, j, x: (bi > bj) or (x == 1 if i == j else x.is_zero()))

    def levi_part(self, g: GroupElement) -> GroupElement:
        """Block-diagonal part (the Levi component of an element of P+ or P-)."""
        nil = g.entries[0][0] * 0
        rows = tuple(
            tuple(x if self.block_of(i) == self.block_of(j) else nil for j, x in enumerate(row))
            for i, row in enumerate(g.entries)
        )
        return GroupElement(g.family, g.n, rows)

    def levi_blocks(self, g: GroupElement) -> list:
        return [linalg.block(g.entries, rg, rg) for rg in self.block_ranges]


def build_parabolic(family: str, n: int, selector="composition") -> ParabolicDatum:
    """Build the standard parabolic datum.

    For GL/SL ``selector`` is a composition of ``n`` (a sequence of positive
    block sizes); ``"borel"`` is shorthand for (1, ..., 1).  For Sp the only
    supported selector is ``"siegel"`` and ``n`` is the matrix size 2m.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("matrix size must be positive")
    if family == "Sp":
        if selector not in ("siegel", "composition"):
            raise ValueError("Sp only supports the Siegel parabolic")
        if n % 2:
            raise ValueError("Sp needs an even matrix size")
        return ParabolicDatum("Sp", n, (n // 2, n // 2), "siegel")
    if selector == "borel":
        blocks = (1,) * n
    elif selector == "siegel":
        raise ValueError("the Siegel selector is only available for Sp")
    elif selector == "composition":
        blocks = (n - 1, 1) if n > 1 else (1,)
    else:
        blocks = tuple(int(b) for b in selector)
    if any(b <= 0 for b in blocks) or sum(blocks) != n:
        raise ValueError(f"{blocks} is not a composition of {n}")
    if family == "SL" and n < 2:
        raise ValueError("SL(1) is trivial")
    return ParabolicDatum(family, n, blocks)


# -- adjoint action -------------------------------------------------------

def conjugate(g: GroupElement, X, g_inv: GroupElement | None = None) -> tuple:
    gi = g_inv if g_inv is not None else g.inv()
    return linalg.matmul(g.entries, linalg.matmul(X, gi.entries))


def adjoint_matrix(g: GroupElement, datum: ParabolicDatum) -> tuple:
    """Matrix of Ad(g) in the basis (X_alpha)_{alpha in R} + Cartan basis."""
    p, e = g.p, g.e
    gi = g.inv()
    cols = []
    for b in datum.basis:
        Y = conjugate(g, b.matrix(g.n, p, e), gi)
        cols.append([c.coord(Y) for c in datum.basis])
    return linalg.transpose(cols)


# -- Weyl group -----------------------------------------------------------

def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, k = 0, start
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def weyl_group(datum: ParabolicDatum, p: int, e: int = 1) -> tuple:
    """Signed-permutation representatives of W = N(T)/T."""
    fam, n = datum.family, datum.n
    one, nil = ExactScalar(1, p, e), ExactScalar(0, p, e)
    out = []
    if fam in ("GL", "SL"):
        for perm in itertools.permutations(range(n)):
            rows = [[nil] * n for _ in range(n)]
            for j in range(n):
                rows[perm[j]][j] = one
            if fam == "SL" and _perm_sign(perm) < 0:
                rows[perm[-1]][n - 1] = -one
            g = GroupElement(fam, n, tuple(tuple(r) for r in rows))
            out.append(WeylElement(perm, (), g))
    else:
        m = n // 2
        for perm in itertools.permutations(range(m)):
            P = [[nil] * n for _ in range(n)]
            for j in range(m):
                P[perm[j]][j] = one
                P[m + perm[j]][m + j] = one
            base = GroupElement("Sp", n, tuple(tuple(r) for r in P))
            for k in range(m + 1):
                for flips in itertools.combinations(range(m), k):
                    g = base
                    for i in flips:
                        g = g @ _flip(m, i, p, e)
                    out.append(WeylElement(perm, flips, g))
    return tuple(out)


def _flip(m: int, i: int, p: int, e: int) -> GroupElement:
    rows = [list(r) for r in linalg.identity(2 * m, p, e)]
    one, nil = ExactScalar(1, p, e), ExactScalar(0, p, e)
    rows[i][i] = nil
    rows[m + i][m + i] = nil
    rows[i][m + i] = -one
    rows[m + i][i] = one
    return GroupElement("Sp", 2 * m, tuple(tuple(r) for r in rows))


class BrokenWeylRepresentative(RuntimeError):
    pass


def weyl_root_image(w: WeylElement, alpha: BasisVector, datum: ParabolicDatum):
    """(w.alpha, c_{w,alpha}) with Ad(w) X_alpha = c X_{w alpha}."""
    g = w.element
    Y = conjugate(g, alpha.matrix(g.n, g.p, g.e))
    hits = []
    for b in datum.basis:
        c = b.coord(Y)
        if not c.is_zero():
            hits.append((b, c))
    if len(hits) != 1 or not hits[0][0].is_root:
        raise BrokenWeylRepresentative(f"Ad({w}) X_{alpha.name} is not a root vector multiple")
    beta, c = hits[0]
    check = conjugate(g, alpha.matrix(g.n, g.p, g.e))
    if not linalg.equal(check, linalg.scale(beta.matrix(g.n, g.p, g.e), c)):
        raise BrokenWeylRepresentative(f"Ad({w}) X_{alpha.name} is not proportional to X_{beta.name}")
    return beta, c


def weyl_constant(w: WeylElement, alpha: BasisVector, datum: ParabolicDatum) -> ExactScalar:
    return weyl_root_image(w, alpha, datum)[1]


def preserves_r_plus(w: WeylElement, datum: ParabolicDatum) -> bool:
    rp = set(r.name for r in datum.r_plus)
    return all(weyl_root_image(w, a, datum)[0].name in rp for a in datum.r_plus)


@lru_cache(maxsize=None)
def levi_weyl_group(datum: ParabolicDatum, p: int, e: int = 1) -> tuple:
    """W_I: the elements of W preserving R_I^+."""
    return tuple(w for w in weyl_group(datum, p, e) if preserves_r_plus(w, datum))


def weyl_sign(w: WeylElement, datum: ParabolicDatum) -> int:
    """Sign of the permutation that w induces on the ordered set R_I^+."""
    names = [r.name for r in datum.r_plus]
    perm = [names.index(weyl_root_image(w, a, datum)[0].name) for a in datum.r_plus]
    return _perm_sign(perm)


# -- Iwasawa decomposition ------------------------------------------------

def iwasawa_factor(g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """g = b * k with b in B- (upper triangular; for Sp, of the form
    [[A, B], [0, A^-T]] with A upper triangular) and k in G_o."""
    if g.e != 1:
        raise ValueError("Iwasawa factorisation is over the base field only (e = 1)")
    if g.in_G_o():
        return GroupElement.identity(g.family, g.n, g.p), g
    work = [list(r) for r in g.entries]
    K = [list(r) for r in linalg.identity(g.n, g.p)]
    if g.family == "Sp":
        _iwasawa_sp(work, K, g.n // 2)
    else:
        _iwasawa_gl(work, K, g.family == "SL")
    b = GroupElement(g.family, g.n, tuple(tuple(r) for r in work))
    Kel = GroupElement(g.family, g.n, tuple(tuple(r) for r in K))
    return b, Kel.inv()


def _colop(mats, j, i, c):
    """column j += c * column i, on every matrix in ``mats``."""
    for M in mats:
        for row in M:
            row[j] = row[j] + c * row[i]


def _colswap(mats, i, j, negate=False):
    for M in mats:
        for row in M:
            row[i], row[j] = (row[j], -row[i]) if negate else (row[j], row[i])


def _argmin_val(row, cols):
    best, where = None, None
    for j in cols:
        v = row[j].valuation()
        if best is None or v < best:
            best, where = v, j
    if best is None or best == float("inf"):
        raise ZeroDivisionError("singular matrix in Iwasawa reduction")
    return where


def _iwasawa_gl(work, K, special):
    n = len(work)
    for R in range(n - 1, -1, -1):
        q = _argmin_val(work[R], range(R + 1))
        if q != R:
            _colswap((work, K), q, R, negate=special)
        piv = work[R][R]
        for j in range(R):
            if not work[R][j].is_zero():
                _colop((work, K), j, R, -(work[R][j] / piv))


def _iwasawa_sp(work, K, m):
    mats = (work, K)
    for s in range(m):
        R = m + s
        active = list(range(s, m)) + list(range(m + s, 2 * m))
        q = _argmin_val(work[R], active)
        if q < m:
            # rotate (x_q, y_q) -> (-y_q, x_q): the pivot moves into y_q
            for M in mats:
                for row in M:
                    row[q], row[m + q] = -row[m + q], row[q]
            q += m
        i = q - m
        if i != s:
            _colswap(mats, s, i)
            _colswap(mats, m + s, m + i)
        piv = work[R][m + s]
        for j in range(s + 1, m):
            c = work[R][m + j] / piv
            if not c.is_zero():
                # a = I + c E_{j s}:  x_s += c x_j,  y_j -= c y_s
                _colop(mats, s, j, c)
                _colop(mats, m + j, m + s, -c)
        for j in range(s + 1, m):
            c = -(work[R][j] / piv)
            if not c.is_zero():
                # lower symmetric S = c(E_sj + E_js): x_j += c y_s, x_s += c y_j
                _colop(mats, j, m + s, c)
                _colop(mats, s, m + j, c)
        c = -(work[R][s] / piv)
        if not c.is_zero():
            _colop(mats, s, m + s, c)


def is_b_minus(g: GroupElement) -> bool:
    """Membership in the Borel B- opposite to the lower-triangular B+."""
    n = g.n
    if g.family != "Sp":
        return all(g.entries[i][j].is_zero() for i in range(n) for j in range(i))
    m = n // 2
    order = list(range(m)) + list(range(2 * m - 1, m - 1, -1))
    pos = {a: k for k, a in enumerate(order)}
    return all(g.entries[i][j].is_zero() for i in range(n) for j in range(n) if pos[i] > pos[j])
