"""biFrobenius algebras: integrals, antipode, modular data and identity checks.

A biFrobenius algebra is an algebra and a coalgebra on the same space with a
right integral ``t`` and a right cointegral ``phi`` such that the map
``S(x) = sum phi(t1 x) t2`` is an antiautomorphism of both structures.
:func:`build_bifrobenius` checks all of that and derives the rest of the
apparatus; the ``*_report`` functions re-verify the identities that are
supposed to hold in any such algebra, exhaustively over the basis.

Naming: ``unimodular`` means the modular function ``alpha`` equals the
counit, ``counimodular`` means the modular element ``a`` equals 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import algcoalg as ac
from .algcoalg import FinDimAlgebra, FinDimCoalgebra, apply_form
from .exactlinalg import Matrix, inverse, kernel_basis, rank, trace
from .report import VerificationReport, Witness, first_mismatch


class BuildError(ValueError):
    """Construction failed; ``step`` names the violated requirement."""

    def __init__(self, step: str, message: str, witness: Witness | None = None):
        super().__init__(f"{step}: {message}")
        self.step = step
        self.message = message
        self.witness = witness


@dataclass(frozen=True)
class BiFrobeniusAlgebra:
    algebra: FinDimAlgebra
    coalgebra: FinDimCoalgebra
    t: tuple
    phi: tuple
    S: Matrix
    Sbar: Matrix
    a: tuple
    a_inv: tuple
    alpha: tuple
    alpha_inv: tuple
    s: tuple
    lam: tuple
    N: Matrix
    cN: Matrix

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def names(self) -> tuple:
        return self.algebra.basis_names

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.dim, self.field)

    @property
    def one(self) -> tuple:
        return tuple(self.algebra.unit)

    @property
    def eps(self) -> tuple:
        return tuple(self.coalgebra.counit)

    def mul(self, u, v) -> tuple:
        return self.algebra.product(u, v)

    def delta(self, u) -> Matrix:
        return self.coalgebra.coproduct(u)

    def basis(self, i) -> tuple:
        return self.algebra.basis(i)

    def conv(self, F: Matrix, G: Matrix) -> Matrix:
        return ac.convolve(self.coalgebra, self.algebra, F, G)


# -- integrals ----------------------------------------------------------------

def _integral_system(A, C, side):
    n, m, Z = A.dim, A.mul, A.field.zero
    rows = []
    for x in range(n):
        for k in range(n):
            row = [Z] * n
            for i in range(n):
                prod = m[i, x, k] if side == "right" else m[x, i, k]
                row[i] = prod - (C.counit[x] if i == k else Z)
            rows.append(row)
    return Matrix(rows, cols=n)


def _cointegral_system(A, C, side):
    n, c, Z = A.dim, C.comul, A.field.zero
    rows = []
    for k in range(n):
        for j in range(n):
            row = [Z] * n
            for i in range(n):
                # right: sum_i phi_i c[k,i,j] = phi_k 1_j ; left: sum_i lam_i c[k,j,i] = lam_k 1_j
                coef = c[k, i, j] if side == "right" else c[k, j, i]
                row[i] = coef - (A.unit[j] if i == k else Z)
            rows.append(row)
    return Matrix(rows, cols=n)


def right_integral_space(A: FinDimAlgebra, C: FinDimCoalgebra) -> list[tuple]:
    """Basis of {t : t x = eps(x) t for all x}."""
    return kernel_basis(_integral_system(A, C, "right"))


def left_integral_space(A: FinDimAlgebra, C: FinDimCoalgebra) -> list[tuple]:
    return kernel_basis(_integral_system(A, C, "left"))


def right_cointegral_space(A: FinDimAlgebra, C: FinDimCoalgebra) -> list[tuple]:
    """Basis of {phi : phi(x) 1 = sum phi(x1) x2 for all x}."""
    return kernel_basis(_cointegral_system(A, C, "right"))


def left_cointegral_space(A: FinDimAlgebra, C: FinDimCoalgebra) -> list[tuple]:
    return kernel_basis(_cointegral_system(A, C, "left"))


def _in_span(basis, v) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    return rank(Matrix(list(basis) + [v])) == rank(Matrix(list(basis)))


# -- Frobenius / coFrobenius maps -------------------------------------------

def frobenius_map(A: FinDimAlgebra, phi) -> Matrix:
    """x -> (x -> phi), as a matrix from H to H*."""
    return Matrix.from_columns([ac.act_h_on_dual_left(A, A.basis(j), phi) for j in range(A.dim)])


def cofrobenius_map(C: FinDimCoalgebra, t) -> Matrix:
    """f -> (t <- f), as a matrix from H* to H."""
    return Matrix.from_columns([ac.act_dual_on_h_right(C, t, C.basis(j)) for j in range(C.dim)])


def _antipode(A, C, t, phi) -> Matrix:
    # S(e_m) = sum_{i,j} Delta(t)[i,j] phi(e_i e_m) e_j
    n, Z = A.dim, A.field.zero
    D = C.coproduct(t)
    cols = []
    for mcol in range(n):
        g = [apply_form(phi, A.product(A.basis(i), A.basis(mcol))) for i in range(n)]
        cols.append(tuple(sum((D[i, j] * g[i] for i in range(n)), Z) for j in range(n)))
    return Matrix.from_columns(cols)


def _gram(A, phi) -> Matrix:
    n = A.dim
    return Matrix([[apply_form(phi, A.product(A.basis(i), A.basis(j))) for j in range(n)]
                   for i in range(n)], cols=n)


# -- construction ------------------------------------------------------------

def _pick(space, given, what, check):
    if given is not None:
        w = check(given)
        if w is not None:
            raise BuildError(f"{what} invalid", f"supplied vector is not a {what}", w)
        if all(x == 0 for x in given):
            raise BuildError(f"{what} invalid", f"supplied {what} is zero")
        return tuple(given)
    basis = space()
    if len(basis) == 0:
        raise BuildError(f"no {what}", f"no nonzero {what} exists")
    if len(basis) > 1:
        raise BuildError("integral not unique",
                         f"{what} space has dimension {len(basis)}; supply one explicitly")
    return basis[0]


def build_bifrobenius(A: FinDimAlgebra, C: FinDimCoalgebra, t=None, phi=None,
                      normalize: bool = True, *, axioms_checked: bool = False) -> BiFrobeniusAlgebra:
    """Validate the data and derive S, Sbar, a, alpha, s, lambda, N and cN.

    If ``t`` or ``phi`` is omitted its space must be one-dimensional.  ``phi``
    is rescaled so that phi(t) = 1.  Raises :class:`BuildError` naming the
    first violated requirement.
    """
    if A.dim != C.dim or A.field != C.field:
        raise BuildError("shape", "algebra and coalgebra live on different spaces")
    F, n = A.field, A.dim

    if not axioms_checked:
        _raise_on_axioms(ac.check_algebra(A), ac.check_coalgebra(C))

    w = ac.grouplike_witness(C, A.unit)
    if w is not None:
        raise BuildError("unit not group-like", "Delta(1) != 1 (x) 1 or eps(1) != 1", w)
    w = ac.algebra_morphism_witness(A, C.counit)
    if w is not None:
        raise BuildError("counit not multiplicative", "eps(xy) != eps(x) eps(y)", w)

    def right_integral_witness(v):
        return first_mismatch((n,), lambda x: A.product(v, A.basis(x)),
                              lambda x: tuple(C.counit[x] * c for c in v), A.basis_names)

    def right_cointegral_witness(f):
        return first_mismatch((n,), lambda x: ac.act_dual_on_h_right(C, A.basis(x), f),
                              lambda x: tuple(f[x] * u for u in A.unit), A.basis_names)

    t = _pick(lambda: right_integral_space(A, C), None if t is None else F.vector(t),
              "right integral", right_integral_witness)
    phi = _pick(lambda: right_cointegral_space(A, C), None if phi is None else F.vector(phi),
                "right cointegral", right_cointegral_witness)

    pt = apply_form(phi, t)
    if pt == 0:
        raise BuildError("normalization impossible", "phi(t) = 0",
                         Witness((), pt, F.one))
    if normalize and pt != 1:
        phi = tuple(x / pt for x in phi)

    G = _gram(A, phi)
    if rank(G) < n:
        raise BuildError("not Frobenius", "x -> (x -> phi) is not bijective")
    if rank(C.coproduct(t)) < n:
        raise BuildError("not coFrobenius", "f -> (t <- f) is not bijective")

    S = _antipode(A, C, t, phi)
    Sbar = inverse(S)
    if Sbar is None:
        raise BuildError("not Frobenius/coFrobenius", "antipode is not bijective")

    w = ac.algebra_antimorphism_witness(A, S)
    if w is not None:
        raise BuildError("not biFrobenius", "S is not an antimorphism of algebras", w)
    w = ac.coalgebra_antimorphism_witness(C, S)
    if w is not None:
        raise BuildError("not biFrobenius", "S is not an antimorphism of coalgebras", w)

    a = ac.act_dual_on_h_left(C, phi, t)
    alpha = ac.act_h_on_dual_left(A, t, phi)
    a_inv = ac.algebra_inverse(A, a)
    if a_inv is None:
        raise BuildError("modular element", "a = phi -> t is not invertible")
    alpha_inv = ac.form_inverse(C, alpha)
    if alpha_inv is None:
        raise BuildError("modular function", "alpha = t -> phi is not convolution invertible")
    s = S @ t
    lam = tuple(apply_form(phi, S.column(j)) for j in range(n))

    N = nakayama_matrix(A, phi)
    cN = conakayama_matrix(C, t)
    if N is None:
        raise BuildError("not Frobenius", "Gram matrix of phi is singular")
    if cN is None:
        raise BuildError("not coFrobenius", "Delta(t) matrix is singular")

    return BiFrobeniusAlgebra(A, C, t, phi, S, Sbar, a, a_inv, alpha, alpha_inv,
                              s, lam, N, cN)


def _raise_on_axioms(alg_rep, coalg_rep):
    for rep, what in ((alg_rep, "algebra axioms"), (coalg_rep, "coalgebra axioms")):
        if not rep.ok:
            bad = rep.failures[0]
            raise BuildError(what, f"{bad.id} fails", bad.witness)


def nakayama_matrix(A: FinDimAlgebra, phi) -> Matrix | None:
    # phi(e_i e_j) = phi(e_j N(e_i))  <=>  G N = G^T
    G = _gram(A, phi)
    Gi = inverse(G)
    return None if Gi is None else Gi @ G.T


def conakayama_matrix(C: FinDimCoalgebra, t) -> Matrix | None:
    # sum cN(t2) (x) t1 = sum t1 (x) t2  <=>  cN D^T = D
    D = C.coproduct(t)
    DTi = inverse(D.T)
    return None if DTi is None else D @ DTi


def nakayama(B: BiFrobeniusAlgebra) -> Matrix:
    return B.N


def conakayama(B: BiFrobeniusAlgebra) -> Matrix:
    return B.cN


# -- small helpers over B ------------------------------------------------------

def _act_left(B, f, x):
    """f -> x"""
    return ac.act_dual_on_h_left(B.coalgebra, f, x)


def _act_right(B, x, f):
    """x <- f"""
    return ac.act_dual_on_h_right(B.coalgebra, x, f)


def _phi(B, u):
    return apply_form(B.phi, u)


def _sweedler(B, x, term):
    """sum over Delta(x) = sum D[i,j] e_i (x) e_j of D[i,j] * term(i, j) (a vector)."""
    D = B.delta(x)
    n, Z = B.dim, B.field.zero
    acc = [Z] * n
    for i in range(n):
        for j in range(n):
            c = D[i, j]
            if c == 0:
                continue
            acc = [a + c * b for a, b in zip(acc, term(i, j))]
    return tuple(acc)


def _scale(c, v):
    return tuple(c * x for x in v)


def _matrix_of(B, fn) -> Matrix:
    return Matrix.from_columns([fn(B.basis(j)) for j in range(B.dim)])


def _conv_at_t(B, F, G) -> tuple:
    return B.conv(F, G) @ B.t


# -- identity suites ---------------------------------------------------------

def structure_report(B: BiFrobeniusAlgebra) -> VerificationReport:
    """Integral, normalisation, Frobenius and bF-axiom conditions on built data."""
    A, C, n = B.algebra, B.coalgebra, B.dim
    names, one, eps, F = B.names, B.one, B.eps, B.field
    rep = VerificationReport()
    rep.compare("right_integral", n, lambda x: B.mul(B.t, B.basis(x)),
                lambda x: _scale(eps[x], B.t), names)
    rep.compare("right_cointegral", n, lambda x: _act_right(B, B.basis(x), B.phi),
                lambda x: _scale(B.phi[x], one), names)
    rep.compare("phi_of_t", (), lambda: _phi(B, B.t), lambda: F.one)
    rep.compare("t_harpoon_phi_is_one", (), lambda: _act_right(B, B.t, B.phi), lambda: one)
    rep.compare("phi_harpoon_t_is_counit", (),
                lambda: ac.act_h_on_dual_right(A, B.phi, B.t), lambda: eps)
    rep.expect("unit_grouplike", (w := ac.grouplike_witness(C, one)) is None, w)
    rep.expect("counit_multiplicative", (w := ac.algebra_morphism_witness(A, eps)) is None, w)
    rep.compare("frobenius_bijective", (), lambda: rank(frobenius_map(A, B.phi)), lambda: n)
    rep.compare("cofrobenius_bijective", (), lambda: rank(cofrobenius_map(C, B.t)), lambda: n)
    rep.compare("antipode_is_cofrobenius_after_frobenius", (),
                lambda: cofrobenius_map(C, B.t) @ frobenius_map(A, B.phi), lambda: B.S)
    rep.compare("antipode_times_inverse", (), lambda: B.S @ B.Sbar, lambda: B.identity)
    rep.compare("inverse_times_antipode", (), lambda: B.Sbar @ B.S, lambda: B.identity)
    rep.expect("antipode_algebra_antimorphism",
               (w := ac.algebra_antimorphism_witness(A, B.S)) is None, w)
    rep.expect("antipode_coalgebra_antimorphism",
               (w := ac.coalgebra_antimorphism_witness(C, B.S)) is None, w)
    rep.compare("antipode_fixes_one", (), lambda: B.S @ one, lambda: one)
    rep.compare("counit_after_antipode", (),
                lambda: tuple(apply_form(eps, c) for c in B.S.columns()), lambda: eps)
    return rep


def verify_core_identities(B: BiFrobeniusAlgebra) -> VerificationReport:
    """Identities valid in every biFrobenius algebra, checked on all basis elements/pairs."""
    A, C, n = B.algebra, B.coalgebra, B.dim
    names, one, eps, F = B.names, B.one, B.eps, B.field
    S, Sbar, a, a_inv, alpha, alpha_inv = B.S, B.Sbar, B.a, B.a_inv, B.alpha, B.alpha_inv
    e = B.basis
    mul = B.mul
    phi = lambda u: _phi(B, u)  # noqa: E731
    rep = VerificationReport()

    rep.compare("phi_normalized", (), lambda: phi(B.t), lambda: F.one)

    # x = sum phi(t1 x) Sbar(t2)
    rep.compare("sbar_expansion", n, e,
                lambda x: _sweedler(B, B.t, lambda i, j: _scale(phi(mul(e(i), e(x))), Sbar.column(j))),
                names)
    # sum phi(y1 x) y2 = sum phi(y x1) S(x2)
    rep.compare("phi_coproduct_exchange", (n, n),
                lambda x, y: _sweedler(B, e(y), lambda i, j: _scale(phi(mul(e(i), e(x))), e(j))),
                lambda x, y: _sweedler(B, e(x), lambda i, j: _scale(phi(mul(e(y), e(i))), S.column(j))),
                names)
    # sum phi(x y2) y1 = sum phi(x2 y) S(x1) a
    rep.compare("phi_coproduct_exchange_modular", (n, n),
                lambda x, y: _sweedler(B, e(y), lambda i, j: _scale(phi(mul(e(x), e(j))), e(i))),
                lambda x, y: _sweedler(B, e(x), lambda i, j: _scale(phi(mul(e(j), e(y))),
                                                                    mul(S.column(i), a))),
                names)
    # S(alpha -> x) a = sum phi(x t2) t1
    rep.compare("antipode_modular_expansion", n,
                lambda x: mul(S @ _act_left(B, alpha, e(x)), a),
                lambda x: _sweedler(B, B.t, lambda i, j: _scale(phi(mul(e(x), e(j))), e(i))),
                names)
    # a Sbar(x) = sum phi(t2 x) t1
    rep.compare("sbar_modular_expansion", n,
                lambda x: mul(a, Sbar.column(x)),
                lambda x: _sweedler(B, B.t, lambda i, j: _scale(phi(mul(e(j), e(x))), e(i))),
                names)
    # sum phi(S(t1) x) t2 = Sbar^2(alpha^-1 -> x) a^-1
    Sbar2 = Sbar @ Sbar
    rep.compare("sbar_squared_expansion", n,
                lambda x: _sweedler(B, B.t, lambda i, j: _scale(phi(mul(S.column(i), e(x))), e(j))),
                lambda x: mul(Sbar2 @ _act_left(B, alpha_inv, e(x)), a_inv),
                names)

    La, Ra = A.left_matrix(a), A.right_matrix(a)
    rep.compare("left_mult_by_a_coalgebra_map", n,
                lambda x: B.delta(mul(a, e(x))), lambda x: La @ B.delta(e(x)) @ La.T, names)
    rep.compare("right_mult_by_a_coalgebra_map", n,
                lambda x: B.delta(mul(e(x), a)), lambda x: Ra @ B.delta(e(x)) @ Ra.T, names)
    rep.compare("right_alpha_action_multiplicative", (n, n),
                lambda x, y: _act_right(B, mul(e(x), e(y)), alpha),
                lambda x, y: mul(_act_right(B, e(x), alpha), _act_right(B, e(y), alpha)), names)
    rep.compare("left_alpha_action_multiplicative", (n, n),
                lambda x, y: _act_left(B, alpha, mul(e(x), e(y))),
                lambda x, y: mul(_act_left(B, alpha, e(x)), _act_left(B, alpha, e(y))), names)

    # (c_phi o _tc)(gamma)(x) = gamma(S(alpha -> x) a)
    def composite(g, x):
        tc_gamma = ac.act_dual_on_h_right(C, B.t, C.basis(g))
        return apply_form(ac.act_h_on_dual_left(A, tc_gamma, B.phi), e(x))

    rep.compare("frobenius_cofrobenius_composite", (n, n), composite,
                lambda g, x: mul(S @ _act_left(B, alpha, e(x)), a)[g], names)

    rep.expect("a_grouplike", (w := ac.grouplike_witness(C, a)) is None, w)
    rep.expect("alpha_algebra_morphism", (w := ac.algebra_morphism_witness(A, alpha)) is None, w)
    rep.compare("a_times_a_inverse", (), lambda: mul(a, a_inv), lambda: one)
    rep.compare("alpha_times_alpha_inverse", (),
                lambda: ac.form_product(C, alpha, alpha_inv), lambda: eps)
    rep.compare("antipode_of_a", (), lambda: S @ a, lambda: a_inv)
    rep.compare("alpha_after_antipode", (),
                lambda: tuple(apply_form(alpha, c) for c in S.columns()), lambda: alpha_inv)
    rep.compare("s_is_antipode_of_t", (), lambda: B.s, lambda: S @ B.t)
    rep.compare("lambda_is_phi_after_antipode", (), lambda: B.lam,
                lambda: tuple(phi(c) for c in S.columns()))
    rep.compare("s_left_integral", n, lambda x: mul(e(x), B.s), lambda x: _scale(eps[x], B.s), names)
    rep.compare("s_right_modular", n, lambda x: mul(B.s, e(x)),
                lambda x: _scale(alpha_inv[x], B.s), names)
    rep.compare("lambda_left_cointegral", n, lambda x: _act_left(B, B.lam, e(x)),
                lambda x: _scale(B.lam[x], one), names)
    rep.compare("lambda_right_modular", n, lambda x: _act_right(B, e(x), B.lam),
                lambda x: _scale(B.lam[x], a_inv), names)
    rep.compare("a_harpoon_phi_is_lambda", (), lambda: ac.act_h_on_dual_left(A, a, B.phi),
                lambda: B.lam)
    rep.compare("s_spans_left_integrals", (),
                lambda: _in_span(left_integral_space(A, C), B.s) and any(x != 0 for x in B.s),
                lambda: True)
    rep.compare("lambda_spans_left_cointegrals", (),
                lambda: _in_span(left_cointegral_space(A, C), B.lam) and any(x != 0 for x in B.lam),
                lambda: True)
    rep.compare("phi_of_s_t", (), lambda: phi(S @ B.t), lambda: F.one)
    rep.compare("lambda_of_t", (), lambda: apply_form(B.lam, B.t), lambda: F.one)
    rep.compare("phi_of_s", (), lambda: phi(B.s), lambda: F.one)
    rep.compare("alpha_of_a", (), lambda: apply_form(alpha, a), lambda: F.one)
    return rep


def nakayama_report(B: BiFrobeniusAlgebra) -> VerificationReport:
    A, C, n, names = B.algebra, B.coalgebra, B.dim, B.names
    e, mul, N, cN = B.basis, B.mul, B.N, B.cN
    D = B.delta(B.t)
    rep = VerificationReport()
    rep.compare("nakayama_defining", (n, n),
                lambda i, j: _phi(B, mul(e(i), e(j))),
                lambda i, j: _phi(B, mul(e(j), N.column(i))), names)
    rep.compare("nakayama_harpoon_form", n,
                lambda x: ac.act_h_on_dual_right(A, B.phi, e(x)),
                lambda x: ac.act_h_on_dual_left(A, N.column(x), B.phi), names)
    rep.compare("conakayama_defining", (), lambda: cN @ D.T, lambda: D)
    rep.compare("conakayama_harpoon_form", n,
                lambda f: _act_right(B, B.t, C.basis(f)),
                lambda f: _act_left(B, cN.T @ C.basis(f), B.t), names)
    rep.expect("nakayama_algebra_automorphism",
               (w := ac.algebra_endomorphism_witness(A, N)) is None and inverse(N) is not None,
               w or Witness((), rank(N), n))
    rep.expect("conakayama_coalgebra_automorphism",
               (w := ac.coalgebra_endomorphism_witness(C, cN)) is None and inverse(cN) is not None,
               w or Witness((), rank(cN), n))
    Sbar2 = B.Sbar @ B.Sbar
    S2 = B.S @ B.S
    rep.compare("conakayama_formula", n, lambda x: cN.column(x),
                lambda x: mul(B.a, Sbar2.column(x)), names)
    rep.compare("nakayama_formula", n, lambda x: N.column(x),
                lambda x: mul(mul(B.a_inv, S2 @ _act_left(B, B.alpha, e(x))), B.a), names)
    rep.compare("nakayama_fixes_a", (), lambda: N @ B.a, lambda: B.a)
    rep.compare("conakayama_of_a", (), lambda: cN @ B.a, lambda: mul(B.a, B.a))
    return rep


class TraceS2(NamedTuple):
    tr_value: object
    phi_conv: object
    eps_t_phi_1: object


class TraceNakayama(NamedTuple):
    tr_N: object
    tr_cN: object
    dim_check: object
    tr_N_formula: object
    tr_cN_formula: object


def trace_s2(B: BiFrobeniusAlgebra) -> TraceS2:
    """tr(S^2), phi((S * id)(t)) and eps(t) phi(1)."""
    tr = trace(B.S @ B.S)
    conv = _phi(B, _conv_at_t(B, B.S, B.identity))
    return TraceS2(tr, conv, apply_form(B.eps, B.t) * _phi(B, B.one))


def trace_nakayama(B: BiFrobeniusAlgebra) -> TraceNakayama:
    I = B.identity
    phi_sbar = lambda u: _phi(B, B.Sbar @ u)  # noqa: E731
    return TraceNakayama(
        tr_N=trace(B.N),
        tr_cN=trace(B.cN),
        dim_check=_phi(B, _conv_at_t(B, I, B.Sbar)),
        tr_N_formula=phi_sbar(_conv_at_t(B, B.S, I)),
        tr_cN_formula=phi_sbar(_conv_at_t(B, I, B.S)),
    )


def is_sbf(B: BiFrobeniusAlgebra) -> bool:
    """S * id = id * S = u eps."""
    u = ac.conv_unit(B.coalgebra, B.algebra)
    return B.conv(B.S, B.identity) == u and B.conv(B.identity, B.S) == u


def trace_report(B: BiFrobeniusAlgebra) -> VerificationReport:
    F, n = B.field, B.dim
    ts = trace_s2(B)
    tn = trace_nakayama(B)
    sbf = is_sbf(B)
    rep = VerificationReport()
    rep.compare("trace_s2_convolution", (), lambda: ts.tr_value, lambda: ts.phi_conv)
    if sbf:
        rep.compare("trace_s2_sbf", (), lambda: ts.tr_value, lambda: ts.eps_t_phi_1)
    else:
        rep.skip("trace_s2_sbf", "not applicable: S is not the convolution inverse of id")
    rep.compare("trace_conakayama", (), lambda: tn.tr_cN, lambda: tn.tr_cN_formula)
    rep.compare("trace_nakayama", (), lambda: tn.tr_N, lambda: tn.tr_N_formula)
    rep.compare("dimension_trace", (), lambda: tn.dim_check, lambda: F(n))
    rep.values.update({
        "tr_S2": ts.tr_value, "phi_S_conv_id_t": ts.phi_conv, "eps_t_phi_1": ts.eps_t_phi_1,
        "tr_N": tn.tr_N, "tr_cN": tn.tr_cN, "phi_id_conv_Sbar_t": tn.dim_check,
        "dim": n, "dim_in_field": F(n),
    })
    return rep


def radford_check(B: BiFrobeniusAlgebra) -> VerificationReport:
    """S^4(x) = a (alpha^-1 -> x <- alpha) a^-1 on every basis vector."""
    S4 = B.S ** 4
    rep = VerificationReport()

    def rhs(j):
        inner = _act_right(B, _act_left(B, B.alpha_inv, B.basis(j)), B.alpha)
        return B.mul(B.mul(B.a, inner), B.a_inv)

    rep.compare("radford_formula", B.dim, lambda j: S4.column(j), rhs, B.names)
    uni, couni = modularity(B)
    if uni and couni:
        rep.compare("s4_identity", (), lambda: S4, lambda: B.identity)
    else:
        rep.skip("s4_identity", "not applicable: requires unimodular and counimodular")
    return rep


def modularity(B: BiFrobeniusAlgebra) -> tuple[bool, bool]:
    """(unimodular, counimodular) = (alpha == eps, a == 1)."""
    return tuple(B.alpha) == B.eps, tuple(B.a) == B.one


def _integral_product_chain(B):
    t, S, Sbar, I = B.t, B.S, B.Sbar, B.identity
    e, mul = B.basis, B.mul
    return [
        ("(id*Sbar)(t)", _conv_at_t(B, I, Sbar)),
        ("(Sbar*id)(t)", _conv_at_t(B, Sbar, I)),
        ("sum S(t2) t1", _sweedler(B, t, lambda i, j: mul(S.column(j), e(i)))),
        ("sum t2 S(t1)", _sweedler(B, t, lambda i, j: mul(e(j), S.column(i)))),
        ("sum Sbar(t1) t2", _sweedler(B, t, lambda i, j: mul(Sbar.column(i), e(j)))),
        ("sum t1 Sbar(t2)", _sweedler(B, t, lambda i, j: mul(e(i), Sbar.column(j)))),
    ]


def collapse_report(B: BiFrobeniusAlgebra) -> VerificationReport:
    """Equalities forced when the algebra is both unimodular and counimodular."""
    rep = VerificationReport()
    ids = ["nakayama_equals_conakayama", "conakayama_equals_s2", "s2_equals_sbar2",
           "nakayama_involution", "antipode_fixes_t", "phi_antipode_invariant",
           "swapped_antipode_coproduct_of_t", "t2_St1_equals_Sbar_t1_t2",
           "nakayama_swaps_coproduct_of_t", "St2_t1_equals_Sbar_t1_t2", "integral_product_chain"]
    uni, couni = modularity(B)
    if not (uni and couni):
        for i in ids:
            rep.skip(i, "not applicable: requires unimodular and counimodular")
        return rep
    S, Sbar, N, cN, I = B.S, B.Sbar, B.N, B.cN, B.identity
    D = B.delta(B.t)
    rep.compare("nakayama_equals_conakayama", (), lambda: N, lambda: cN)
    rep.compare("conakayama_equals_s2", (), lambda: cN, lambda: S @ S)
    rep.compare("s2_equals_sbar2", (), lambda: S @ S, lambda: Sbar @ Sbar)
    rep.compare("nakayama_involution", (), lambda: N @ N, lambda: I)
    rep.compare("antipode_fixes_t", (), lambda: S @ B.t, lambda: tuple(B.t))
    rep.compare("phi_antipode_invariant", (),
                lambda: tuple(_phi(B, c) for c in S.columns()), lambda: tuple(B.phi))
    rep.compare("swapped_antipode_coproduct_of_t", (), lambda: S @ D.T @ S.T, lambda: D)
    rep.compare("t2_St1_equals_Sbar_t1_t2", (), lambda: D.T @ S.T, lambda: Sbar @ D)
    rep.compare("nakayama_swaps_coproduct_of_t", (), lambda: N @ D.T, lambda: D)
    rep.compare("St2_t1_equals_Sbar_t1_t2", (), lambda: S @ D.T, lambda: Sbar @ D)
    chain = _integral_product_chain(B)
    first = chain[0][1]
    rep.compare("integral_product_chain", len(chain), lambda k: chain[k][1], lambda k: first,
                tuple(name for name, _ in chain))
    rep.values["integral_product_value"] = first
    return rep


def obs3_condition(B: BiFrobeniusAlgebra) -> tuple[bool, tuple]:
    """Whether sum S(t2) t1 equals eps(t) 1, and the left-hand value."""
    value = _sweedler(B, B.t, lambda i, j: B.mul(B.S.column(j), B.basis(i)))
    target = _scale(apply_form(B.eps, B.t), B.one)
    return value == target, value


# -- semisimplicity ---------------------------------------------------------

def trace_form(A: FinDimAlgebra) -> Matrix:
    """T[i][j] = tr(L_{e_i} L_{e_j})."""
    L = [A.left_matrix(A.basis(i)) for i in range(A.dim)]
    return Matrix([[trace(Li @ Lj) for Lj in L] for Li in L], cols=A.dim)


def is_semisimple(A: FinDimAlgebra) -> bool | None:
    """Trace-form criterion; None (inconclusive) outside characteristic zero."""
    if A.field.characteristic != 0:
        return None
    return rank(trace_form(A)) == A.dim


def semisimplicity_report(B: BiFrobeniusAlgebra) -> VerificationReport:
    F = B.field
    char0 = F.characteristic == 0
    eps_t = apply_form(B.eps, B.t)
    phi_1 = _phi(B, B.one)
    ss = is_semisimple(B.algebra)
    coss = is_semisimple(ac.dual_algebra(B.coalgebra))
    sbf = is_sbf(B)
    uni, couni = modularity(B)
    S2 = B.S @ B.S
    s2_id = S2 == B.identity
    held, obs3_value = obs3_condition(B)
    rep = VerificationReport()
    rep.values.update({
        "eps_t": eps_t, "phi_1": phi_1, "semisimple": ss, "cosemisimple": coss,
        "s2_is_identity": s2_id, "is_sbf": sbf, "unimodular": uni, "counimodular": couni,
        "obs3_holds": held, "obs3_value": obs3_value,
        "s2_identity_without_semisimplicity": bool(s2_id and ss is False),
    })
    need0 = "requires characteristic zero"

    def implication(check_id, premise, premise_text, conclusion, witness):
        if not char0:
            rep.skip(check_id, need0)
        elif not premise:
            rep.skip(check_id, f"not applicable: {premise_text}")
        else:
            rep.expect(check_id, conclusion, witness)

    implication("semisimple_implies_eps_t_nonzero", ss, "algebra not semisimple",
                eps_t != 0, Witness((), eps_t, "nonzero"))
    implication("semisimple_implies_unimodular", ss, "algebra not semisimple",
                uni, Witness((), tuple(B.alpha), B.eps))
    implication("cosemisimple_implies_phi_1_nonzero", coss, "coalgebra not cosemisimple",
                phi_1 != 0, Witness((), phi_1, "nonzero"))
    implication("cosemisimple_implies_counimodular", coss, "coalgebra not cosemisimple",
                couni, Witness((), tuple(B.a), B.one))
    implication("nonzero_eps_t_phi_1_implies_semisimple_cosemisimple",
                eps_t != 0 and phi_1 != 0, "eps(t) or phi(1) is zero",
                bool(ss and coss), Witness((), (ss, coss), (True, True)))
    implication("sbf_s2_identity_implies_semisimple_cosemisimple",
                sbf and s2_id, "requires SbF and S^2 = id",
                bool(ss and coss), Witness((), (ss, coss), (True, True)))
    if not char0:
        rep.skip("trace_nakayama_equals_phi_1_eps_t", need0)
    elif uni and couni and sbf:
        rep.compare("trace_nakayama_equals_phi_1_eps_t", (), lambda: trace(B.N),
                    lambda: phi_1 * eps_t)
    else:
        rep.skip("trace_nakayama_equals_phi_1_eps_t",
                 "not applicable: requires unimodular, counimodular and SbF")
    balanced = _conv_at_t(B, B.identity, B.Sbar) == _scale(eps_t, B.one)
    implication("balanced_integral_forces_trivial_nakayama",
                uni and couni and sbf and balanced,
                "requires unimodular, counimodular, SbF and (id*Sbar)(t) = eps(t) 1",
                B.N == B.identity and S2 == B.identity and B.cN == B.identity,
                Witness((), (B.N, S2, B.cN), (B.identity,) * 3))
    implication("semisimple_cosemisimple_balanced_implies_s2_identity",
                sbf and ss and coss and held,
                "requires SbF, semisimple, cosemisimple and sum S(t2) t1 = eps(t) 1",
                s2_id, Witness((), S2, B.identity))
    return rep


# -- whole pipeline ------------------------------------------------------------

SECTIONS = (
    ("structure", structure_report),
    ("core", verify_core_identities),
    ("nakayama", nakayama_report),
    ("traces", trace_report),
    ("radford", radford_check),
    ("collapse", collapse_report),
    ("semisimplicity", semisimplicity_report),
)


def verify_all(B: BiFrobeniusAlgebra) -> VerificationReport:
    """Every section in fixed order; check ids are prefixed by section."""
    rep = VerificationReport()
    for name, fn in SECTIONS:
        rep.extend(fn(B), prefix=f"{name}.")
    uni, couni = modularity(B)
    rep.values.update({"is_bf": True, "is_sbf": is_sbf(B),
                       "unimodular": uni, "counimodular": couni})
    return rep


def run_pipeline(A: FinDimAlgebra, C: FinDimCoalgebra, t=None, phi=None):
    """Axiom checks, build, then :func:`verify_all`.

    Returns ``(B or None, report)``.  A build failure becomes a failed
    ``build`` entry carrying the error's witness.
    """
    rep = VerificationReport()
    alg_rep, coalg_rep = ac.check_algebra(A), ac.check_coalgebra(C)
    rep.extend(alg_rep, prefix="algebra.")
    rep.extend(coalg_rep, prefix="coalgebra.")
    try:
        _raise_on_axioms(alg_rep, coalg_rep)
        B = build_bifrobenius(A, C, t, phi, axioms_checked=True)
    except BuildError as err:
        w = err.witness or Witness((), err.step, "satisfied")
        rep.add("build", w, str(err))
        rep.values.update({"is_bf": False, "build_error": str(err), "build_step": err.step})
        return None, rep
    rep.add("build")
    rep.extend(verify_all(B))
    return B, rep


def rescaled(B: BiFrobeniusAlgebra, c) -> BiFrobeniusAlgebra:
    """Rebuild with t -> c t and phi -> phi / c."""
    c = B.field(c)
    return build_bifrobenius(B.algebra, B.coalgebra, _scale(c, B.t), _scale(1 / c, B.phi))
