"""Finite-dimensional algebras and coalgebras given by structure constants.

Conventions
-----------
* ``A.mul[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.
* ``C.comul[k, i, j]`` is the coefficient of ``e_i (x) e_j`` in ``Delta(e_k)``.
* Vectors are tuples of coordinates, linear forms are tuples of values on
  the basis, endomorphisms are :class:`Matrix` objects whose column ``j`` is
  the image of ``e_j``.

The four "harpoon" actions::

    (x -> f)(y) = f(y x)        act_h_on_dual_left
    (f <- x)(y) = f(x y)        act_h_on_dual_right
    f -> x = sum x1 f(x2)       act_dual_on_h_left
    x <- f = sum f(x1) x2       act_dual_on_h_right
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from .exactlinalg import FieldSpec, Matrix, Tensor3, solve
from .report import VerificationReport, Witness, first_mismatch

log = logging.getLogger(__name__)


def _default_names(n):
    return tuple(f"e{i}" for i in range(n))


@dataclass(frozen=True)
class FinDimAlgebra:
    field: FieldSpec
    dim: int
    basis_names: tuple
    mul: Tensor3
    unit: tuple

    def __post_init__(self):
        n = self.dim
        if self.mul.dims != (n, n, n):
            raise ValueError(f"mul has dims {self.mul.dims}, expected {(n, n, n)}")
        if len(self.unit) != n:
            raise ValueError(f"unit has length {len(self.unit)}, expected {n}")
        if len(self.basis_names) != n:
            raise ValueError("basis_names length differs from dim")

    @classmethod
    def from_table(cls, field: FieldSpec, table, unit, names=None) -> "FinDimAlgebra":
        """``table[i][j]`` is the coordinate vector of ``e_i e_j``."""
        n = len(unit)
        nested = [[[field(table[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        return cls(field, n, tuple(names or _default_names(n)),
                   Tensor3.from_nested(nested), field.vector(unit))

    def basis(self, i: int) -> tuple:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    @cached_property
    def _sparse(self):
        # _sparse[i][j] = [(k, mul[i, j, k]) for nonzero entries]
        n = self.dim
        table = [[[] for _ in range(n)] for _ in range(n)]
        for (i, j, k), c in self.mul.nonzero():
            table[i][j].append((k, c))
        return table

    def product(self, u, v) -> tuple:
        n, sp = self.dim, self._sparse
        out = [self.field.zero] * n
        vnz = [(j, vj) for j, vj in enumerate(v) if vj != 0]
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = sp[i]
            for j, vj in vnz:
                c = ui * vj
                for k, mk in row[j]:
                    out[k] = out[k] + c * mk
        return tuple(out)

    def left_matrix(self, u) -> Matrix:
        """Matrix of y -> u y."""
        return Matrix.from_columns([self.product(u, self.basis(j)) for j in range(self.dim)])

    def right_matrix(self, u) -> Matrix:
        """Matrix of y -> y u."""
        return Matrix.from_columns([self.product(self.basis(j), u) for j in range(self.dim)])


@dataclass(frozen=True)
class FinDimCoalgebra:
    field: FieldSpec
    dim: int
    basis_names: tuple
    comul: Tensor3
    counit: tuple

    def __post_init__(self):
        n = self.dim
        if self.comul.dims != (n, n, n):
            raise ValueError(f"comul has dims {self.comul.dims}, expected {(n, n, n)}")
        if len(self.counit) != n:
            raise ValueError(f"counit has length {len(self.counit)}, expected {n}")
        if len(self.basis_names) != n:
            raise ValueError("basis_names length differs from dim")

    @classmethod
    def from_table(cls, field: FieldSpec, table, counit, names=None) -> "FinDimCoalgebra":
        """``table[k]`` is the n x n coefficient matrix of ``Delta(e_k)``."""
        n = len(counit)
        nested = [[[field(table[k][i][j]) for j in range(n)] for i in range(n)] for k in range(n)]
        return cls(field, n, tuple(names or _default_names(n)),
                   Tensor3.from_nested(nested), field.vector(counit))

    def basis(self, i: int) -> tuple:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    @cached_property
    def _sparse(self):
        # _sparse[k] = [(i, j, comul[k, i, j]) for nonzero entries]
        table = [[] for _ in range(self.dim)]
        for (k, i, j), c in self.comul.nonzero():
            table[k].append((i, j, c))
        return table

    def coproduct(self, u) -> Matrix:
        """``D[i, j]`` = coefficient of ``e_i (x) e_j`` in ``Delta(u)``."""
        n, F = self.dim, self.field
        D = [[F.zero] * n for _ in range(n)]
        for k, uk in enumerate(u):
            if uk == 0:
                continue
            for i, j, c in self._sparse[k]:
                D[i][j] = D[i][j] + uk * c
        return Matrix(D, cols=n)

    def counit_of(self, u):
        return apply_form(self.counit, u)


# -- evaluation -------------------------------------------------------------

def mul(A: FinDimAlgebra, u, v) -> tuple:
    return A.product(u, v)


def comul(C: FinDimCoalgebra, u) -> Matrix:
    return C.coproduct(u)


def apply_form(f, u):
    s = 0
    for a, b in zip(f, u):
        s = s + a * b
    return s


def _check_same_space(A: FinDimAlgebra, C: FinDimCoalgebra):
    if A.dim != C.dim or A.field != C.field:
        raise ValueError("algebra and coalgebra live on different spaces")


# -- axioms -------------------------------------------------------------------

def check_algebra(A: FinDimAlgebra) -> VerificationReport:
    n = A.dim
    names = A.basis_names
    e = [A.basis(i) for i in range(n)]
    P = [[A.product(e[i], e[j]) for j in range(n)] for i in range(n)]

    # witness indices (i, j, k): (e_i e_j) e_k vs e_i (e_j e_k), as vectors
    rep = VerificationReport()
    rep.compare("associativity", (n, n, n),
                lambda i, j, k: A.product(P[i][j], e[k]),
                lambda i, j, k: A.product(e[i], P[j][k]), names)
    rep.compare("left_unit", n, lambda i: A.product(A.unit, e[i]), A.basis, names)
    rep.compare("right_unit", n, lambda i: A.product(e[i], A.unit), A.basis, names)
    return rep


def _iterated_coproducts(C, k):
    """(Delta (x) id) Delta(e_k) and (id (x) Delta) Delta(e_k) as coefficient dicts."""
    left, right = {}, {}
    for r, d, c in C._sparse[k]:
        for a, b, c2 in C._sparse[r]:
            left[a, b, d] = left.get((a, b, d), 0) + c * c2
    for a, r, c in C._sparse[k]:
        for b, d, c2 in C._sparse[r]:
            right[a, b, d] = right.get((a, b, d), 0) + c * c2
    return ({key: v for key, v in left.items() if v != 0},
            {key: v for key, v in right.items() if v != 0})


def check_coalgebra(C: FinDimCoalgebra) -> VerificationReport:
    n, c, F = C.dim, C.comul, C.field
    names = C.basis_names
    iterated = [_iterated_coproducts(C, k) for k in range(n)]

    # witness indices (k, a, b, d): coefficient of e_a (x) e_b (x) e_d
    def coassoc(k, a, b, d, side):
        return F(iterated[k][side].get((a, b, d), 0))

    def left_counit(k):
        return tuple(sum((C.counit[i] * c[k, i, j] for i in range(n)), F.zero) for j in range(n))

    def right_counit(k):
        return tuple(sum((c[k, i, j] * C.counit[j] for j in range(n)), F.zero) for i in range(n))

    rep = VerificationReport()
    rep.compare("coassociativity", (n, n, n, n),
                lambda *idx: coassoc(*idx, 0), lambda *idx: coassoc(*idx, 1), names)
    rep.compare("left_counit", n, left_counit, C.basis, names)
    rep.compare("right_counit", n, right_counit, C.basis, names)
    return rep


# -- duals ------------------------------------------------------------------

def dual_algebra(C: FinDimCoalgebra) -> FinDimAlgebra:
    """H* with the convolution product of forms; unit is the counit."""
    n = C.dim
    entries = [C.comul[k, i, j] for i in range(n) for j in range(n) for k in range(n)]
    names = tuple(f"{b}*" for b in C.basis_names)
    return FinDimAlgebra(C.field, n, names, Tensor3((n, n, n), entries), tuple(C.counit))


def dual_coalgebra(A: FinDimAlgebra) -> FinDimCoalgebra:
    """H* with Delta(f)(x (x) y) = f(xy); counit is evaluation at 1."""
    n = A.dim
    entries = [A.mul[i, j, k] for k in range(n) for i in range(n) for j in range(n)]
    names = tuple(f"{b}*" for b in A.basis_names)
    return FinDimCoalgebra(A.field, n, names, Tensor3((n, n, n), entries), tuple(A.unit))


# -- harpoon actions --------------------------------------------------------

def act_h_on_dual_left(A: FinDimAlgebra, x, f) -> tuple:
    """(x -> f)(y) = f(y x)."""
    return tuple(apply_form(f, A.product(A.basis(i), x)) for i in range(A.dim))


def act_h_on_dual_right(A: FinDimAlgebra, f, x) -> tuple:
    """(f <- x)(y) = f(x y)."""
    return tuple(apply_form(f, A.product(x, A.basis(i))) for i in range(A.dim))


def act_dual_on_h_left(C: FinDimCoalgebra, f, x) -> tuple:
    """f -> x = sum x1 f(x2)."""
    return C.coproduct(x) @ tuple(f)


def act_dual_on_h_right(C: FinDimCoalgebra, x, f) -> tuple:
    """x <- f = sum f(x1) x2."""
    return C.coproduct(x).T @ tuple(f)


# -- convolution ------------------------------------------------------------

def conv_unit(C: FinDimCoalgebra, A: FinDimAlgebra) -> Matrix:
    """The map x -> eps(x) 1."""
    _check_same_space(A, C)
    return Matrix.from_columns([tuple(C.counit[j] * u for u in A.unit) for j in range(A.dim)])


def convolve(C: FinDimCoalgebra, A: FinDimAlgebra, F: Matrix, G: Matrix) -> Matrix:
    """(F * G)(x) = sum F(x1) G(x2)."""
    _check_same_space(A, C)
    n, Z = A.dim, A.field.zero
    Fc, Gc = F.columns(), G.columns()
    cols = []
    for k in range(n):
        acc = [Z] * n
        for i in range(n):
            for j in range(n):
                c = C.comul[k, i, j]
                if c == 0:
                    continue
                p = A.product(Fc[i], Gc[j])
                acc = [a + c * b for a, b in zip(acc, p)]
        cols.append(tuple(acc))
    return Matrix.from_columns(cols)


def _convolution_equations(C, A, F, side):
    """Linear system in the n*n entries of G (row-major) for F*G = u eps
    (side='right') or G*F = u eps (side='left')."""
    n, Z = A.dim, A.field.zero
    m, c = A.mul, C.comul
    rows, rhs = [], []
    target = conv_unit(C, A)
    for k in range(n):
        for out in range(n):
            row = [Z] * (n * n)
            for i in range(n):
                for j in range(n):
                    cij = c[k, i, j]
                    if cij == 0:
                        continue
                    if side == "right":
                        # sum_p F[p, i] G[q, j] m[p, q, out]
                        for q in range(n):
                            coef = sum((F[p, i] * m[p, q, out] for p in range(n)), Z)
                            if coef != 0:
                                row[q * n + j] = row[q * n + j] + cij * coef
                    else:
                        # sum_p G[q, i] F[p, j] m[q, p, out]
                        for q in range(n):
                            coef = sum((F[p, j] * m[q, p, out] for p in range(n)), Z)
                            if coef != 0:
                                row[q * n + i] = row[q * n + i] + cij * coef
            rows.append(row)
            rhs.append(target[out, k])
    return rows, rhs


def _unflatten(x, n) -> Matrix:
    return Matrix([x[r * n:(r + 1) * n] for r in range(n)], cols=n)


def one_sided_convolution_inverses(C, A, F) -> tuple[Matrix | None, Matrix | None]:
    """Some (left inverse, right inverse) of F under convolution, or None for each."""
    _check_same_space(A, C)
    n = A.dim
    out = []
    for side in ("left", "right"):
        rows, rhs = _convolution_equations(C, A, F, side)
        x = solve(Matrix(rows, cols=n * n), rhs)
        out.append(None if x is None else _unflatten(x, n))
    return out[0], out[1]


def convolution_inverse(C: FinDimCoalgebra, A: FinDimAlgebra, F: Matrix) -> Matrix | None:
    """The two-sided convolution inverse of F, or None.

    A one-sided-only inverse is logged as a warning and None is returned.
    """
    _check_same_space(A, C)
    n = A.dim
    lrows, lrhs = _convolution_equations(C, A, F, "left")
    rrows, rrhs = _convolution_equations(C, A, F, "right")
    x = solve(Matrix(lrows + rrows, cols=n * n), lrhs + rrhs)
    if x is not None:
        return _unflatten(x, n)
    left, right = one_sided_convolution_inverses(C, A, F)
    if left is not None or right is not None:
        log.warning("convolution inverse is one-sided only (left=%s, right=%s)",
                    left is not None, right is not None)
    return None


def convolution_inverse_diagnostics(C, A, F) -> dict:
    left, right = one_sided_convolution_inverses(C, A, F)
    two = convolution_inverse(C, A, F)
    return {
        "two_sided": two is not None,
        "left_exists": left is not None,
        "right_exists": right is not None,
        "one_sided_only": two is None and (left is not None or right is not None),
    }


# -- inverses inside the algebra and its dual ---------------------------------

def algebra_inverse(A: FinDimAlgebra, u) -> tuple | None:
    """Two-sided inverse of u in A, or None."""
    L, R = A.left_matrix(u), A.right_matrix(u)
    x = solve(Matrix(L.tolist() + R.tolist(), cols=A.dim), tuple(A.unit) * 2)
    return x


def form_inverse(C: FinDimCoalgebra, f) -> tuple | None:
    """Inverse of a linear form in the convolution algebra H*."""
    return algebra_inverse(dual_algebra(C), f)


def form_product(C: FinDimCoalgebra, f, g) -> tuple:
    """(f g)(x) = sum f(x1) g(x2)."""
    return dual_algebra(C).product(f, g)


# -- morphism predicates (witness versions first) -----------------------------

def grouplike_witness(C: FinDimCoalgebra, g) -> Witness | None:
    n = C.dim
    D = C.coproduct(g)
    w = first_mismatch((n, n), lambda i, j: D[i, j], lambda i, j: g[i] * g[j], C.basis_names)
    if w is not None:
        return w
    e = C.counit_of(g)
    if e != 1:
        return Witness((), e, C.field.one)
    return None


def is_grouplike(C: FinDimCoalgebra, g) -> bool:
    return grouplike_witness(C, g) is None


def algebra_morphism_witness(A: FinDimAlgebra, f) -> Witness | None:
    n = A.dim
    w = first_mismatch(
        (n, n),
        lambda i, j: apply_form(f, A.product(A.basis(i), A.basis(j))),
        lambda i, j: f[i] * f[j], A.basis_names)
    if w is not None:
        return w
    v = apply_form(f, A.unit)
    if v != 1:
        return Witness((), v, A.field.one)
    return None


def is_algebra_morphism(A: FinDimAlgebra, f) -> bool:
    return algebra_morphism_witness(A, f) is None


def algebra_antimorphism_witness(A: FinDimAlgebra, T: Matrix) -> Witness | None:
    n = A.dim
    w = first_mismatch(
        (n, n),
        lambda i, j: T @ A.product(A.basis(i), A.basis(j)),
        lambda i, j: A.product(T.column(j), T.column(i)), A.basis_names)
    if w is not None:
        return w
    Tu = T @ A.unit
    if Tu != tuple(A.unit):
        return Witness((), Tu, tuple(A.unit))
    return None


def is_antimorphism_of_algebras(A: FinDimAlgebra, T: Matrix) -> bool:
    return algebra_antimorphism_witness(A, T) is None


def algebra_endomorphism_witness(A: FinDimAlgebra, T: Matrix) -> Witness | None:
    n = A.dim
    w = first_mismatch(
        (n, n),
        lambda i, j: T @ A.product(A.basis(i), A.basis(j)),
        lambda i, j: A.product(T.column(i), T.column(j)), A.basis_names)
    if w is not None:
        return w
    Tu = T @ A.unit
    if Tu != tuple(A.unit):
        return Witness((), Tu, tuple(A.unit))
    return None


def coalgebra_antimorphism_witness(C: FinDimCoalgebra, T: Matrix) -> Witness | None:
    """Delta T = (T (x) T) swap Delta and eps T = eps, checked on basis vectors."""
    n = C.dim
    for k in range(n):
        lhs = C.coproduct(T.column(k))
        D = C.coproduct(C.basis(k))
        # swap: sum D[i,j] e_j (x) e_i, then T (x) T
        rhs = T @ D.T @ T.T
        if lhs != rhs:
            return Witness((k,), lhs, rhs, (C.basis_names[k],))
    return _counit_preserved(C, T)


def coalgebra_endomorphism_witness(C: FinDimCoalgebra, T: Matrix) -> Witness | None:
    n = C.dim
    for k in range(n):
        lhs = C.coproduct(T.column(k))
        rhs = T @ C.coproduct(C.basis(k)) @ T.T
        if lhs != rhs:
            return Witness((k,), lhs, rhs, (C.basis_names[k],))
    return _counit_preserved(C, T)


def _counit_preserved(C, T):
    eT = tuple(C.counit_of(T.column(j)) for j in range(C.dim))
    if eT != tuple(C.counit):
        return Witness((), eT, tuple(C.counit))
    return None


def is_antimorphism_of_coalgebras(C: FinDimCoalgebra, T: Matrix) -> bool:
    return coalgebra_antimorphism_witness(C, T) is None
