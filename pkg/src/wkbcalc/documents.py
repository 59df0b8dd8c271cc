"""Nerve / gluing-data / cochain documents (JSON, version 1).

::

    {
      "version": 1,
      "vertices": 4,
      "simplices": {"edges": [[0, 1], ...], "triangles": [[0, 1, 2], ...], "tetrahedra": [...]},
      "f": {"0,1": [["1/1", "0/1"], ["0/1", "1/1"]], ...},
      "a": {"0,1,2": [[...], [...]], ...},
      "cochain": {"degree": 2, "modulus": 0, "values": {"0,1,2": 1}}
    }

``f`` and ``a`` are optional as a pair; ``cochain`` is optional. Matrix
entries are rationals written ``"p/q"`` (``"p"`` is accepted on input).
The nerve must be listed face-closed. Keys name strictly increasing
simplices. Output of :func:`dump_document` is canonical: sorted keys,
fixed indentation, reduced fractions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .descent import Cochain, DescentError, MatrixGluingData, Nerve

VERSION = 1


@dataclass
class Document:
    nerve: Nerve
    gluing: Optional[MatrixGluingData] = None
    cochain: Optional[Cochain] = None


def _key(text, where):
    try:
        return tuple(int(p) for p in str(text).split(","))
    except ValueError:
        raise DescentError(f"bad simplex key {text!r} in {where}") from None


def _rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DescentError(f"matrix entry {x!r} in {where} must be a 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise DescentError(f"bad rational {x!r} in {where}") from None


def _matrix(m, where):
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise DescentError(f"matrix for {where} must be a list of rows")
    return [[_rational(x, where) for x in row] for row in m]


def parse_document(obj) -> Document:
    if not isinstance(obj, dict):
        raise DescentError("document must be a JSON object")
    if obj.get("version") != VERSION:
        raise DescentError(f"unsupported document version {obj.get('version')!r}; expected {VERSION}")
    verts = obj.get("vertices")
    if not isinstance(verts, int) or verts < 0:
        raise DescentError("'vertices' must be a non-negative integer")
    simp = obj.get("simplices", {})
    if not isinstance(simp, dict):
        raise DescentError("'simplices' must be an object")
    unknown = set(simp) - {"edges", "triangles", "tetrahedra"}
    if unknown:
        raise DescentError(f"unknown simplex kinds: {sorted(unknown)}")
    try:
        nerve = Nerve(verts, *(tuple(tuple(s) for s in simp.get(kind, [])) for kind in ("edges", "triangles", "tetrahedra")))
    except TypeError:
        raise DescentError("simplices must be lists of vertex lists") from None
    gluing = None
    if "f" in obj or "a" in obj:
        f = {_key(k, "f"): _matrix(m, f"f[{k}]") for k, m in obj.get("f", {}).items()}
        a = {_key(k, "a"): _matrix(m, f"a[{k}]") for k, m in obj.get("a", {}).items()}
        sizes = {len(m) for m in list(f.values()) + list(a.values())}
        if len(sizes) > 1:
            raise DescentError("gluing matrices have different sizes")
        k = sizes.pop() if sizes else 1
        gluing = MatrixGluingData(nerve, k, f, a)
    cochain = None
    if "cochain" in obj:
        c = obj["cochain"]
        if not isinstance(c, dict):
            raise DescentError("'cochain' must be an object")
        try:
            values = {_key(k, "cochain"): int(v) for k, v in c.get("values", {}).items()}
            cochain = Cochain(int(c["degree"]), int(c.get("modulus", 0)), values)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DescentError):
                raise
            raise DescentError(f"malformed cochain: {exc}") from None
        cochain.vector(nerve)
    return Document(nerve, gluing, cochain)


def load_document(path) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DescentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescentError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return parse_document(obj)


def _fmt(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _skey(s) -> str:
    return ",".join(map(str, s))


def document_to_json(doc: Document) -> dict:
    n = doc.nerve
    out = {
        "version": VERSION,
        "vertices": n.vertex_count,
        "simplices": {
            "edges": [list(s) for s in n.edges],
            "triangles": [list(s) for s in n.triangles],
            "tetrahedra": [list(s) for s in n.tetrahedra],
        },
    }
    if doc.gluing is not None:
        out["f"] = {_skey(s): [[_fmt(x) for x in row] for row in m] for s, m in sorted(doc.gluing.f.items())}
        out["a"] = {_skey(s): [[_fmt(x) for x in row] for row in m] for s, m in sorted(doc.gluing.a.items())}
    if doc.cochain is not None:
        c = doc.cochain
        out["cochain"] = {"degree": c.degree, "modulus": c.modulus, "values": {_skey(s): v for s, v in c.values.items()}}
    return out


def dump_document(doc: Document) -> str:
    return json.dumps(document_to_json(doc), sort_keys=True, indent=2) + "\n"
