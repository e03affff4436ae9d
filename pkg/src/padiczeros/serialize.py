"""JSON schemas for fields, forms, pencils and lift inputs.

Field literals are {"p": int, "e": int}; elements travel as integer reprs.
A form is {"n": int, "coeffs": [[i, j, repr], ...]} with 1-based i <= j.
A pencil file wraps a field, the variable count and a list of forms.  Lift
inputs carry integer coefficients as decimal strings so arbitrary precision
survives JSON.
"""

from __future__ import annotations

import json

from .fields import FieldSpec, field
from .forms import QuadraticForm
from .hensel import IntegerQuadraticSystem
from .pencils import Pencil


def _require(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


def field_from_dict(d) -> FieldSpec:
    _require(isinstance(d, dict), "field literal must be an object")
    _require("p" in d, "field literal needs 'p'")
    p = d["p"]
    e = d.get("e", 1)
    _require(isinstance(p, int) and isinstance(e, int), "field p and e must be integers")
    return field(p, e)


def field_to_dict(spec: FieldSpec) -> dict:
    return {"p": spec.p, "e": spec.e}


def _coeffs_from_list(entries, n: int, q: int) -> dict:
    _require(isinstance(entries, list), "'coeffs' must be a list of [i, j, repr]")
    coeffs = {}
    for k, entry in enumerate(entries):
        _require(
            isinstance(entry, list) and len(entry) == 3,
            f"coeffs[{k}] must be [i, j, repr]",
        )
        i, j, v = entry
        _require(all(isinstance(x, int) for x in entry), f"coeffs[{k}] must be integers")
        _require(1 <= i <= j <= n, f"coeffs[{k}]: need 1 <= i <= j <= n, got ({i},{j})")
        _require(0 <= v < q, f"coeffs[{k}]: repr {v} outside [0, {q})")
        coeffs[(i, j)] = v
    return coeffs


def form_from_dict(spec: FieldSpec, d) -> QuadraticForm:
    _require(isinstance(d, dict), "form must be an object")
    _require("n" in d and isinstance(d["n"], int), "form needs integer 'n'")
    n = d["n"]
    return QuadraticForm(spec, n, _coeffs_from_list(d.get("coeffs", []), n, spec.q))


def form_to_dict(form: QuadraticForm) -> dict:
    return {
        "n": form.n,
        "coeffs": [[i, j, v] for (i, j), v in sorted(form.coeffs.items())],
    }


def form_file_from_dict(d) -> QuadraticForm:
    """A standalone form file: field literal plus the form fields."""
    _require(isinstance(d, dict), "form file must be an object")
    _require("field" in d, "form file needs a 'field' literal")
    spec = field_from_dict(d["field"])
    return form_from_dict(spec, d)


def pencil_from_dict(d) -> Pencil:
    _require(isinstance(d, dict), "pencil must be an object")
    for key in ("field", "n", "forms"):
        _require(key in d, f"pencil needs '{key}'")
    spec = field_from_dict(d["field"])
    n = d["n"]
    _require(isinstance(n, int), "'n' must be an integer")
    _require(isinstance(d["forms"], list) and d["forms"], "'forms' must be a nonempty list")
    forms = []
    for k, fd in enumerate(d["forms"]):
        form = form_from_dict(spec, fd)
        _require(form.n == n, f"forms[{k}] has n={form.n}, pencil has n={n}")
        forms.append(form)
    return Pencil(forms)


def pencil_to_dict(pencil: Pencil) -> dict:
    return {
        "field": field_to_dict(pencil.field),
        "n": pencil.n,
        "forms": [form_to_dict(f) for f in pencil.forms],
    }


def system_from_dict(d) -> tuple[IntegerQuadraticSystem, list[int], int]:
    """Lift input: returns (system, base zero, target precision)."""
    _require(isinstance(d, dict), "lift input must be an object")
    for key in ("p", "n", "forms", "zero", "precision"):
        _require(key in d, f"lift input needs '{key}'")
    p, n, k = d["p"], d["n"], d["precision"]
    _require(isinstance(p, int) and isinstance(n, int) and isinstance(k, int),
             "'p', 'n' and 'precision' must be integers")
    _require(k >= 1, "'precision' must be >= 1")
    forms = []
    for fi, entries in enumerate(d["forms"]):
        _require(isinstance(entries, list), f"forms[{fi}] must be a coefficient list")
        coeffs = {}
        for k2, entry in enumerate(entries):
            _require(isinstance(entry, list) and len(entry) == 3,
                     f"forms[{fi}][{k2}] must be [i, j, coefficient]")
            i, j, v = entry
            _require(isinstance(i, int) and isinstance(j, int),
                     f"forms[{fi}][{k2}]: indices must be integers")
            _require(1 <= i <= j <= n,
                     f"forms[{fi}][{k2}]: need 1 <= i <= j <= n, got ({i},{j})")
            if isinstance(v, str):
                try:
                    v = int(v)
                except ValueError:
                    raise ValueError(f"forms[{fi}][{k2}]: coefficient {v!r} is not an integer")
            _require(isinstance(v, int), f"forms[{fi}][{k2}]: coefficient must be an integer")
            coeffs[(i, j)] = v
        forms.append(coeffs)
    zero = d["zero"]
    _require(isinstance(zero, list) and len(zero) == n and all(isinstance(c, int) for c in zero),
             f"'zero' must be a list of {n} integers")
    return IntegerQuadraticSystem(p, n, forms), zero, k


def system_to_dict(system: IntegerQuadraticSystem, zero: list[int], precision: int) -> dict:
    return {
        "p": system.p,
        "n": system.n,
        "forms": [
            [[i, j, str(v)] for (i, j), v in sorted(coeffs.items())]
            for coeffs in system.forms
        ],
        "zero": list(zero),
        "precision": precision,
    }


def load_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
