"""Report documents: run the pipeline on a file and render text or canonical JSON."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from . import __version__
from .algcoalg import convolution_inverse, convolution_inverse_diagnostics
from .algebrafile import AlgebraFile, to_structures
from .bifrob import run_pipeline
from .exactlinalg import FieldSpec, Matrix, Residue
from .report import Check, Witness

SUMMARY_KEYS = {
    "is_bf": "is_bf",
    "is_sbf": "is_sbf",
    "unimodular": "unimodular",
    "counimodular": "counimodular",
    "semisimple": "semisimplicity.semisimple",
    "cosemisimple": "semisimplicity.cosemisimple",
    "obs3_holds": "semisimplicity.obs3_holds",
    "s2_is_identity": "semisimplicity.s2_is_identity",
}

TRACE_KEYS = ("tr_S2", "phi_S_conv_id_t", "eps_t_phi_1", "tr_N", "tr_cN",
              "phi_id_conv_Sbar_t", "dim", "dim_in_field")


def jsonable(value, field: FieldSpec):
    """Exact values to JSON: scalars as canonical strings, matrices as row lists."""
    if isinstance(value, (Fraction, Residue)):
        return field.fmt(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Matrix):
        return [[field.fmt(x) for x in r] for r in value.tolist()]
    if isinstance(value, Witness):
        return {"indices": list(value.indices), "labels": list(value.labels),
                "lhs": jsonable(value.lhs, field), "rhs": jsonable(value.rhs, field)}
    if isinstance(value, (tuple, list)):
        return [jsonable(v, field) for v in value]
    return str(value)


def _check_dict(c: Check, field):
    d = {"id": c.id, "status": c.status}
    if c.witness is not None:
        d["witness"] = jsonable(c.witness, field)
    if c.detail:
        d["detail"] = c.detail
    return d


def build_document(af: AlgebraFile, raw: bytes, field_override: int | None = None) -> dict:
    A, C, t, phi = to_structures(af, field_override)
    F = A.field
    B, rep = run_pipeline(A, C, t, phi)
    v = rep.values
    doc = {
        "tool": {"name": "bifrob", "version": __version__},
        "input": {"name": af.name, "sha256": hashlib.sha256(raw).hexdigest()},
        "field": {"name": F.name, "characteristic": F.characteristic},
        "dim": A.dim,
        "basis": list(A.basis_names),
        "integral": None if B is None else jsonable(B.t, F),
        "cointegral": None if B is None else jsonable(B.phi, F),
        "derived": None,
        "build_error": v.get("build_error"),
        "checks": [_check_dict(c, F) for c in rep],
        "summary": {k: v.get(key, False if k == "is_bf" else None) for k, key in SUMMARY_KEYS.items()},
        "traces": None,
    }
    doc["summary"]["all_checks_pass"] = rep.ok
    if B is not None:
        doc["derived"] = {
            "S": jsonable(B.S, F), "Sbar": jsonable(B.Sbar, F),
            "a": jsonable(B.a, F), "a_inv": jsonable(B.a_inv, F),
            "alpha": jsonable(B.alpha, F), "alpha_inv": jsonable(B.alpha_inv, F),
            "s": jsonable(B.s, F), "lambda": jsonable(B.lam, F),
            "N": jsonable(B.N, F), "cN": jsonable(B.cN, F),
        }
        doc["traces"] = {k: jsonable(v[f"traces.{k}"], F) for k in TRACE_KEYS}
        doc["semisimplicity"] = {
            "eps_t": jsonable(v["semisimplicity.eps_t"], F),
            "phi_1": jsonable(v["semisimplicity.phi_1"], F),
            "obs3_value": jsonable(v["semisimplicity.obs3_value"], F),
            "s2_identity_without_semisimplicity":
                v["semisimplicity.s2_identity_without_semisimplicity"],
        }
        if "collapse.integral_product_value" in v:
            doc["integral_product_value"] = jsonable(v["collapse.integral_product_value"], F)
    return doc


def check_exit_code(doc: dict) -> int:
    return 0 if doc["summary"]["is_bf"] and doc["summary"]["all_checks_pass"] else 2


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt_vec(v, basis):
    terms = [f"{c}*{b}" for c, b in zip(v, basis) if c != "0"]
    return " + ".join(terms) if terms else "0"


def _fmt_matrix(rows, basis, label):
    cols = list(zip(*rows))
    return [f"  {label}({b}) = {_fmt_vec(col, basis)}" for b, col in zip(basis, cols)]


def to_text(doc: dict) -> str:
    basis = doc["basis"]
    out = [
        f"bifrob {doc['tool']['version']} report for {doc['input']['name']}",
        f"input sha256: {doc['input']['sha256']}",
        f"field: {doc['field']['name']}   dim: {doc['dim']}   basis: {', '.join(basis)}",
    ]
    if doc["build_error"]:
        out.append(f"build error: {doc['build_error']}")
    if doc["derived"]:
        d = doc["derived"]
        out.append(f"t = {_fmt_vec(doc['integral'], basis)}")
        out.append(f"phi = {_fmt_vec(doc['cointegral'], [b + '*' for b in basis])}")
        out.append("antipode:")
        out += _fmt_matrix(d["S"], basis, "S")
        out.append(f"a = {_fmt_vec(d['a'], basis)}")
        out.append(f"alpha = {_fmt_vec(d['alpha'], [b + '*' for b in basis])}")
        out.append("Nakayama:")
        out += _fmt_matrix(d["N"], basis, "N")
        out.append("coNakayama:")
        out += _fmt_matrix(d["cN"], basis, "cN")
        out.append("traces: " + ", ".join(f"{k}={v}" for k, v in sorted(doc["traces"].items())))
    out.append("summary: " + ", ".join(f"{k}={v}" for k, v in sorted(doc["summary"].items())))
    out.append("checks:")
    for c in doc["checks"]:
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[c["status"]]
        line = f"  {tag} {c['id']}"
        if "witness" in c:
            w = c["witness"]
            at = ", ".join(w["labels"] or map(str, w["indices"]))
            line += f"  at ({at}): lhs={w['lhs']} rhs={w['rhs']}"
        if c.get("detail"):
            line += f"  [{c['detail']}]"
        out.append(line)
    return "\n".join(out) + "\n"


def conv_inverse_document(af: AlgebraFile, field_override: int | None = None) -> dict:
    """Convolution inverse of the identity (ignores integrals entirely)."""
    A, C, _, _ = to_structures(af, field_override)
    F = A.field
    I = Matrix.identity(A.dim, F)
    inv = convolution_inverse(C, A, I)
    return {
        "name": af.name,
        "field": F.name,
        "basis": list(A.basis_names),
        "convolution_inverse": None if inv is None else jsonable(inv, F),
        "diagnostics": convolution_inverse_diagnostics(C, A, I),
    }


def conv_inverse_text(doc: dict) -> str:
    if doc["convolution_inverse"] is None:
        d = doc["diagnostics"]
        extra = " (one-sided inverse only)" if d["one_sided_only"] else ""
        return f"none{extra}\n"
    return "\n".join(_fmt_matrix(doc["convolution_inverse"], doc["basis"], "Sigma")) + "\n"
