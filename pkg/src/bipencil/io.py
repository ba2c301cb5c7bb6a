"""Pencil and report file formats.

One file holds one pencil; analysis points travel on the command line, so
fixtures stay point-independent.  Rationals are serialized as strings to
avoid float corruption; report JSON is canonical (sorted keys, fixed indent),
hence byte-stable for identical inputs and seeds in exact mode.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .catalog import CatalogEntry
from .errors import InputFormatError
from .poly import Poly
from .scalars import format_scalar, parse_rational
from .tensorfield import PoissonTensorField

FORMAT_VERSION = 1


def field_to_entries(f: PoissonTensorField) -> list:
    out = []
    for (i, j) in sorted(f.upper_entries()):
        poly = f.entry(i, j)
        monos = []
        for mono, c in sorted(poly.terms.items()):
            monos.append({"c": str(c), "m": list(mono)})
        out.append({"i": i + 1, "j": j + 1, "poly": monos})
    return out


def entries_to_field(dim: int, varnames, data, label: str) -> PoissonTensorField:
    f = PoissonTensorField(dim, varnames)
    seen = set()
    for pos, ent in enumerate(data):
        where = f"{label}[{pos}]"
        try:
            i, j = int(ent["i"]), int(ent["j"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad indices at {where}: {exc}", position=where)
        if not (1 <= i < j <= dim):
            raise InputFormatError(
                f"entry indices must satisfy 1 <= i < j <= dim at {where}", position=where)
        if (i, j) in seen:
            raise InputFormatError(f"duplicate entry ({i}, {j}) at {where}", position=where)
        seen.add((i, j))
        poly = Poly.zero(dim)
        for mpos, term in enumerate(ent.get("poly", [])):
            mwhere = f"{where}.poly[{mpos}]"
            try:
                c = parse_rational(term["c"])
                m = [int(x) for x in term["m"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise InputFormatError(f"bad monomial at {mwhere}: {exc}", position=mwhere)
            if len(m) != dim or any(e < 0 for e in m):
                raise InputFormatError(
                    f"exponent vector must have length dim and be non-negative at {mwhere}",
                    position=mwhere)
            poly = poly + Poly.monomial(dim, m, c)
        f.set_entry(i - 1, j - 1, poly)
    return f


def pencil_to_json_dict(field0: PoissonTensorField, field_inf: PoissonTensorField,
                        declared_rank: int | None = None, meta: dict | None = None) -> dict:
    doc = {
        "format": FORMAT_VERSION,
        "dim": field0.dim,
        "vars": list(field0.vars),
        "P0": field_to_entries(field0),
        "Pinf": field_to_entries(field_inf),
    }
    if declared_rank is not None:
        doc["declared_rank"] = declared_rank
    if meta:
        doc["meta"] = meta
    return doc


def pencil_from_json_dict(doc: dict):
    """Returns (field0, field_inf, declared_rank, meta)."""
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"missing or bad 'dim': {exc}", position="dim")
    varnames = doc.get("vars")
    if varnames is not None and len(varnames) != dim:
        raise InputFormatError("'vars' length must equal dim", position="vars")
    if "P0" not in doc or "Pinf" not in doc:
        raise InputFormatError("both 'P0' and 'Pinf' blocks are required")
    f0 = entries_to_field(dim, varnames, doc["P0"], "P0")
    finf = entries_to_field(dim, varnames, doc["Pinf"], "Pinf")
    declared = doc.get("declared_rank")
    if declared is not None:
        declared = int(declared)
        if declared < 0 or declared > dim or declared % 2 != 0:
            raise InputFormatError("declared_rank must be an even integer in [0, dim]",
                                   position="declared_rank")
    return f0, finf, declared, doc.get("meta", {})


def dump_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_pencil_file(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read pencil file: {exc}")
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}", position=f"line {exc.lineno}")
    return pencil_from_json_dict(doc)


def catalog_entry_to_json_dict(entry: CatalogEntry) -> dict:
    return pencil_to_json_dict(
        entry.field0, entry.field_inf, entry.declared_rank,
        meta={"name": entry.name, "description": entry.description})


def report_document(report, provenance: dict) -> dict:
    return {"report": report.to_json_dict(), "provenance": provenance}


def parse_point_csv(text: str, dim: int):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != dim:
        raise InputFormatError(
            f"point has {len(parts)} coordinates, pencil dimension is {dim}",
            position="--point")
    try:
        return [parse_rational(p) for p in parts]
    except ValueError as exc:
        raise InputFormatError(f"bad point coordinate: {exc}", position="--point")
