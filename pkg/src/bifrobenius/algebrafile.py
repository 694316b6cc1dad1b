"""The JSON algebra file: strict parsing and canonical rendering.

Example::

    {
      "name": "c2",
      "characteristic": 0,
      "dim": 2,
      "basis": ["e", "g"],
      "unit": ["1", "0"],
      "mul": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]],
      "counit": ["1", "1"],
      "comul": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
      "integral": ["1", "1"],
      "cointegral": ["1", "0"]
    }

``mul`` holds ``[i, j, k, c]``: e_i e_j has coefficient c on e_k.
``comul`` holds ``[k, i, j, c]``: Delta(e_k) has coefficient c on e_i (x) e_j.
Omitted triples are zero.  Scalars are strings, ``"n"`` or ``"n/d"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algcoalg import FinDimAlgebra, FinDimCoalgebra
from .exactlinalg import FieldSpec, Tensor3

REQUIRED = ("name", "characteristic", "dim", "basis", "unit", "mul", "counit", "comul")
OPTIONAL = ("integral", "cointegral")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraFile:
    name: str
    characteristic: int
    dim: int
    basis: tuple
    unit: tuple
    mul: tuple
    counit: tuple
    comul: tuple
    integral: tuple | None = None
    cointegral: tuple | None = None


def _int(value, where):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _scalar(field, value, where):
    if not isinstance(value, str):
        raise ParseError(f"{where}: scalars must be strings like \"3/2\", got {value!r}")
    try:
        return field.fmt(field.parse(value))
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError(f"{where}: {err}") from None


def _vector(field, value, dim, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of {dim} scalars")
    if len(value) != dim:
        raise ParseError(f"{where}: expected {dim} entries, got {len(value)}")
    return tuple(_scalar(field, v, f"{where}[{i}]") for i, v in enumerate(value))


def _triples(field, value, dim, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of [i, j, k, scalar] entries")
    seen = {}
    out = []
    for n, entry in enumerate(value):
        loc = f"{where}[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError(f"{loc}: expected [i, j, k, scalar], got {entry!r}")
        idx = tuple(_int(v, loc) for v in entry[:3])
        for v in idx:
            if not 0 <= v < dim:
                raise ParseError(f"{loc}: index {v} out of range [0, {dim})")
        if idx in seen:
            raise ParseError(f"{loc}: duplicate entry {list(idx)} (first at {where}[{seen[idx]}])")
        seen[idx] = n
        out.append(idx + (_scalar(field, entry[3], loc),))
    return tuple(out)


def parse(data: bytes | str) -> AlgebraFile:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as err:
            raise ParseError(f"input is not UTF-8: {err}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as err:
        raise ParseError(f"line {err.lineno} column {err.colno}: {err.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(unknown)}")
    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")

    name = doc["name"]
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    char = _int(doc["characteristic"], "characteristic")
    try:
        field = FieldSpec(char)
    except ValueError as err:
        raise ParseError(f"characteristic: {err}") from None
    dim = _int(doc["dim"], "dim")
    if dim <= 0:
        raise ParseError("dim: must be positive")
    basis = doc["basis"]
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis)):
        raise ParseError(f"basis: expected {dim} string labels")
    if len(set(basis)) != dim:
        raise ParseError("basis: labels must be distinct")

    opt = {}
    for key in OPTIONAL:
        v = doc.get(key)
        opt[key] = None if v is None else _vector(field, v, dim, key)
    return AlgebraFile(
        name=name, characteristic=char, dim=dim, basis=tuple(basis),
        unit=_vector(field, doc["unit"], dim, "unit"),
        mul=_triples(field, doc["mul"], dim, "mul"),
        counit=_vector(field, doc["counit"], dim, "counit"),
        comul=_triples(field, doc["comul"], dim, "comul"),
        **opt,
    )


def render(af: AlgebraFile) -> bytes:
    """Canonical rendering: sorted keys, one triple per line, trailing newline."""
    def vec(v):
        return json.dumps(list(v))

    def triples(ts):
        if not ts:
            return "[]"
        body = ",\n".join("    " + json.dumps(list(t)) for t in sorted(ts, key=lambda t: t[:3]))
        return "[\n" + body + "\n  ]"

    fields = {
        "basis": vec(af.basis),
        "characteristic": json.dumps(af.characteristic),
        "cointegral": "null" if af.cointegral is None else vec(af.cointegral),
        "comul": triples(af.comul),
        "counit": vec(af.counit),
        "dim": json.dumps(af.dim),
        "integral": "null" if af.integral is None else vec(af.integral),
        "mul": triples(af.mul),
        "name": json.dumps(af.name, ensure_ascii=False),
        "unit": vec(af.unit),
    }
    lines = [f'  "{k}": {v}' for k, v in sorted(fields.items())]
    return ("{\n" + ",\n".join(lines) + "\n}\n").encode("utf-8")


def to_structures(af: AlgebraFile, field_override: int | None = None):
    """``(A, C, t, phi)`` from a parsed file, optionally reduced mod a prime."""
    if field_override is not None:
        if af.characteristic != 0:
            raise ParseError("--field-override only applies to characteristic-0 files")
        try:
            field = FieldSpec(field_override)
        except ValueError as err:
            raise ParseError(f"--field-override: {err}") from None
    else:
        field = FieldSpec(af.characteristic)

    def conv(s, where):
        try:
            return field.parse(s)
        except ZeroDivisionError as err:
            raise ParseError(f"{where}: {err}") from None

    n = af.dim
    mul = Tensor3.zeros((n, n, n), field)
    for m, (i, j, k, c) in enumerate(af.mul):
        mul = mul.with_entry((i, j, k), conv(c, f"mul[{m}]"))
    comul = Tensor3.zeros((n, n, n), field)
    for m, (k, i, j, c) in enumerate(af.comul):
        comul = comul.with_entry((k, i, j), conv(c, f"comul[{m}]"))

    def vec(v, where):
        return None if v is None else tuple(conv(x, f"{where}[{i}]") for i, x in enumerate(v))

    A = FinDimAlgebra(field, n, af.basis, mul, vec(af.unit, "unit"))
    C = FinDimCoalgebra(field, n, af.basis, comul, vec(af.counit, "counit"))
    return A, C, vec(af.integral, "integral"), vec(af.cointegral, "cointegral")


def from_structures(name: str, A: FinDimAlgebra, C: FinDimCoalgebra, t=None, phi=None) -> AlgebraFile:
    F = A.field
    fmt = F.fmt

    def vec(v):
        return None if v is None else tuple(fmt(x) for x in v)

    return AlgebraFile(
        name=name, characteristic=F.characteristic, dim=A.dim, basis=tuple(A.basis_names),
        unit=vec(A.unit),
        mul=tuple(idx + (fmt(c),) for idx, c in A.mul.nonzero()),
        counit=vec(C.counit),
        comul=tuple(idx + (fmt(c),) for idx, c in C.comul.nonzero()),
        integral=vec(t), cointegral=vec(phi),
    )
