"""Built-in example structures.

Each constructor returns ``(algebra, coalgebra, t, phi)`` (plus expected
maps for ``obs1_grouplike``).  :data:`REGISTRY` names the shipped fixtures
for the command line; emission is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Callable

from .algcoalg import FinDimAlgebra, FinDimCoalgebra, dual_algebra, dual_coalgebra
from .exactlinalg import QQ, FieldSpec, Matrix, Tensor3

half = Fraction(1, 2)


def b4(field: FieldSpec = QQ):
    """k[X]/(X^4); 1 group-like, x and x^2 primitive, t = x^3, phi = (x^3)*."""
    n = 4
    names = ("1", "x", "x^2", "x^3")
    mul = Tensor3.zeros((n, n, n), field)
    for i, j in product(range(n), repeat=2):
        if i + j < n:
            mul = mul.with_entry((i, j, i + j), field.one)
    comul = Tensor3.zeros((n, n, n), field)
    # Delta(1) = 1(x)1 ; Delta(x^k) = 1(x)x^k + x^k(x)1 for k=1,2 ;
    # Delta(x^3) = 1(x)x^3 + x(x)x^2 + x^2(x)x + x^3(x)1
    comul = comul.with_entry((0, 0, 0), field.one)
    for k in (1, 2):
        comul = comul.with_entry((k, 0, k), field.one).with_entry((k, k, 0), field.one)
    for i in range(4):
        comul = comul.with_entry((3, i, 3 - i), field.one)
    A = FinDimAlgebra(field, n, names, mul, field.vector((1, 0, 0, 0)))
    C = FinDimCoalgebra(field, n, names, comul, field.vector((1, 0, 0, 0)))
    t = field.vector((0, 0, 0, 1))
    phi = field.vector((0, 0, 0, 1))
    return A, C, t, phi


def obs1_grouplike(field: FieldSpec = QQ):
    """Three-dimensional bF algebra <1, x, y> whose antipode is not the
    convolution inverse of the identity.

    Needs characteristic other than 2 and 3 (the inverse has thirds).
    Returns ``(A, C, t, phi, S_expected, Sigma_expected)``.
    """
    if field.characteristic in (2, 3):
        raise ValueError(f"obs1 fixture needs characteristic not in {{2, 3}}, got {field.characteristic}")
    F = field
    names = ("1", "x", "y")
    h, th = F(half), F(Fraction(3, 2))
    z, o = F.zero, F.one
    one, x, y = (o, z, z), (z, o, z), (z, z, o)
    table = [
        [one, x, y],
        [x, (z, h, th), (F(2), h, h)],
        [y, (F(2), h, h), (z, th, h)],
    ]
    A = FinDimAlgebra.from_table(F, table, one, names)
    zero2 = [[z] * 3 for _ in range(3)]

    def single(i, c):
        m = [row[:] for row in zero2]
        m[i][i] = c
        return m

    C = FinDimCoalgebra.from_table(F, [single(0, o), single(1, h), single(2, h)],
                                   (o, F(2), F(2)), names)
    t = (o, o, o)
    phi = (o, z, z)
    S = Matrix.from_columns([one, y, x])
    m23 = F(Fraction(-2, 3))
    Sigma = Matrix.from_columns([one, (m23, m23, F(2)), (m23, F(2), m23)])
    return A, C, t, phi, S, Sigma


def _check_group(table):
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise ValueError("cayley table must be a non-empty square")
    if any(not (isinstance(v, int) and 0 <= v < n) for r in table for v in r):
        raise ValueError("closure: cayley table entries must be element indices")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValueError(f"associativity fails at ({a}, {b}, {c})")
    ids = [e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))]
    if not ids:
        raise ValueError("identity: no two-sided identity element")
    e = ids[0]
    for g in range(n):
        if not any(table[g][h] == e == table[h][g] for h in range(n)):
            raise ValueError(f"inverses: element {g} has no inverse")
    return e


def group_algebra(cayley_table, field: FieldSpec = QQ, names=None):
    """k[G] with Delta(g) = g (x) g; t = sum of all g, phi = indicator of e."""
    e = _check_group(cayley_table)
    n = len(cayley_table)
    names = tuple(names) if names else tuple(f"g{i}" for i in range(n))
    mul = Tensor3.zeros((n, n, n), field)
    comul = Tensor3.zeros((n, n, n), field)
    for g, h in product(range(n), repeat=2):
        mul = mul.with_entry((g, h, cayley_table[g][h]), field.one)
    for g in range(n):
        comul = comul.with_entry((g, g, g), field.one)
    unit = tuple(field.one if g == e else field.zero for g in range(n))
    A = FinDimAlgebra(field, n, names, mul, unit)
    C = FinDimCoalgebra(field, n, names, comul, tuple(field.one for _ in range(n)))
    t = tuple(field.one for _ in range(n))
    phi = unit
    return A, C, t, phi


def dual_fixture(B):
    """H* with algebra and coalgebra dualised; t and phi trade places."""
    return (dual_algebra(B.coalgebra), dual_coalgebra(B.algebra), tuple(B.phi), tuple(B.t))


# -- Cayley tables ------------------------------------------------------------

def cyclic_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def klein_table():
    return [[i ^ j for j in range(4)] for i in range(4)]


def s3_table():
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(k) = p(q(k))
    return [[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]


S3_NAMES = tuple("".join(map(str, p)) for p in sorted(permutations(range(3))))


# -- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class FixtureDescriptor:
    name: str
    field: FieldSpec
    notes: str


def _group(table, names=None):
    return lambda field: group_algebra(table, field, names)


def _obs1(field):
    return obs1_grouplike(field)[:4]


def _dual_of(builder):
    def make(field):
        from .bifrob import build_bifrobenius

        return dual_fixture(build_bifrobenius(*builder(field)))
    return make


_BASE: dict[str, tuple[Callable, str]] = {
    "b4": (b4, "k[X]/(X^4) with x, x^2 primitive; bF but not SbF, not semisimple, S = id"),
    "obs1": (_obs1, "3-dim group-like algebra <1,x,y>; bF, id convolution invertible, not SbF"),
    "c2": (_group(cyclic_table(2)), "group algebra of the cyclic group of order 2"),
    "c3": (_group(cyclic_table(3)), "group algebra of the cyclic group of order 3"),
    "c4": (_group(cyclic_table(4)), "group algebra of the cyclic group of order 4"),
    "c2xc2": (_group(klein_table()), "group algebra of the Klein four-group"),
    "s3": (_group(s3_table(), S3_NAMES), "group algebra of S3 (non-commutative)"),
}

REGISTRY: dict[str, tuple[FixtureDescriptor, Callable]] = {}
for _name, (_builder, _notes) in _BASE.items():
    REGISTRY[_name] = (FixtureDescriptor(_name, QQ, _notes), _builder)
for _name, (_builder, _notes) in _BASE.items():
    REGISTRY[f"{_name}-dual"] = (
        FixtureDescriptor(f"{_name}-dual", QQ, f"dual of {_name}: t and phi swapped"),
        _dual_of(_builder))


def fixture_names() -> list[str]:
    return list(REGISTRY)


def load(name: str, field: FieldSpec | None = None):
    """``(A, C, t, phi)`` for a registered fixture over ``field`` (default QQ)."""
    try:
        desc, builder = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(REGISTRY)}") from None
    return builder(field or desc.field)
