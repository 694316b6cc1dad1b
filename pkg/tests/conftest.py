from itertools import product

import pytest

from bifrobenius.algcoalg import FinDimAlgebra, FinDimCoalgebra
from bifrobenius.exactlinalg import QQ, Tensor3


def sweedler(field=QQ):
    """Sweedler's 4-dim Hopf algebra: g^2 = 1, x^2 = 0, xg = -gx.

    Basis g^a x^b at index 2b + a.  Not a shipped fixture; used because its
    modular data is nontrivial (a = g, alpha(g) = -1, S^2 != id).
    """
    idx = {(a, b): 2 * b + a for a in (0, 1) for b in (0, 1)}
    names = ("1", "g", "x", "gx")
    mul = Tensor3.zeros((4, 4, 4), field)
    for (a, b), (c, d) in product(idx, repeat=2):
        if b + d < 2:
            sign = -1 if b * c % 2 else 1
            mul = mul.with_entry((idx[a, b], idx[c, d], idx[(a + c) % 2, b + d]), field(sign))
    comul = Tensor3.zeros((4, 4, 4), field)
    for a in (0, 1):
        comul = comul.with_entry((idx[a, 0], idx[a, 0], idx[a, 0]), field.one)
        comul = comul.with_entry((idx[a, 1], idx[a, 1], idx[a, 0]), field.one)
        comul = comul.with_entry((idx[a, 1], idx[(a + 1) % 2, 0], idx[a, 1]), field.one)
    A = FinDimAlgebra(field, 4, names, mul, field.vector((1, 0, 0, 0)))
    C = FinDimCoalgebra(field, 4, names, comul, field.vector((1, 1, 0, 0)))
    return A, C


@pytest.fixture
def sweedler_data():
    return sweedler()


ACCEPTANCE = {}


def record(criterion: int, ok: bool, what: str):
    ACCEPTANCE[criterion] = (ok, what)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {what}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, what = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {what}")
