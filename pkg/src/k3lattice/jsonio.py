"""JSON encodings. Integers travel as decimal strings and rationals as
``"p/q"`` strings so that 64-bit consumers never truncate them."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .k3 import K3SurfaceData
from .koszul import GradedAlgebra
from .lattice import IntegralLattice, Isometry
from .mukai import KunnethClass, MukaiLattice, MukaiVector, SheafData


def num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_int(s) -> int:
    if isinstance(s, bool):
        raise ValueError("boolean where an integer was expected")
    if isinstance(s, int):
        return s
    if isinstance(s, str):
        return int(s.strip())
    raise ValueError(f"expected an integer or integer string, got {s!r}")


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("boolean where a number was expected")
    if isinstance(s, (int, str)):
        return Fraction(s)
    raise ValueError(f"expected a rational string, got {s!r}")


def vector_to_json(v) -> list[str]:
    return [num(x) for x in v]


def vector_from_json(data) -> list[int]:
    return [parse_int(x) for x in data]


def matrix_to_json(M) -> list[list[str]]:
    return [[num(x) for x in row] for row in M]


def matrix_from_json(data) -> list[list[int]]:
    if isinstance(data, dict):
        data = data["matrix"]
    return [[parse_int(x) for x in row] for row in data]


def rat_matrix_from_json(data) -> list[list[Fraction]]:
    if isinstance(data, dict):
        data = data["matrix"]
    return [[parse_rational(x) for x in row] for row in data]


def lattice_to_json(L: IntegralLattice) -> dict:
    return {"gram": matrix_to_json(L.gram)}


def lattice_from_json(data) -> IntegralLattice:
    """Accepts a bare matrix, ``{"gram": ...}``, ``{"matrix": ...}`` or a
    surface document (its ``t_gram``)."""
    if isinstance(data, list):
        return IntegralLattice(matrix_from_json(data))
    if "gram" in data:
        return IntegralLattice(matrix_from_json(data["gram"]))
    if data.get("t_gram") is not None:
        return IntegralLattice(matrix_from_json(data["t_gram"]))
    if "matrix" in data:
        return IntegralLattice(matrix_from_json(data["matrix"]))
    raise ValueError("lattice JSON needs a 'gram' entry")


def isometry_to_json(f: Isometry) -> dict:
    return {
        "matrix": matrix_to_json(f.matrix),
        "source": lattice_to_json(f.source),
        "target": lattice_to_json(f.target),
    }


def isometry_from_json(data) -> Isometry:
    return Isometry(
        lattice_from_json(data["source"]),
        lattice_from_json(data["target"]),
        matrix_from_json(data["matrix"]),
    )


def mukai_vector_to_json(v: MukaiVector) -> dict:
    out = {"r": num(v.r), "l": vector_to_json(v.l), "s": num(v.s)}
    if v.t:
        out["t"] = vector_to_json(v.t)
    return out


def mukai_vector_from_json(data) -> MukaiVector:
    return MukaiVector(
        parse_int(data["r"]),
        tuple(vector_from_json(data.get("l", []))),
        parse_int(data["s"]),
        tuple(vector_from_json(data.get("t", []))),
    )


def sheaf_from_json(data) -> SheafData:
    return SheafData(parse_int(data["r"]), tuple(vector_from_json(data["c1"])), parse_int(data["c2"]))


def surface_to_json(S: K3SurfaceData) -> dict:
    out = {"name": S.name, "ns_gram": matrix_to_json(S.ns_gram)}
    if S.t_gram is not None:
        out["t_gram"] = matrix_to_json(S.t_gram)
    if S.orientation is not None:
        out["orientation"] = list(S.orientation)
    return out


def surface_from_json(data) -> K3SurfaceData:
    t = data.get("t_gram")
    o = data.get("orientation")
    return K3SurfaceData(
        str(data.get("name", "")),
        matrix_from_json(data["ns_gram"]),
        matrix_from_json(t) if t is not None else None,
        tuple(parse_int(i) for i in o) if o is not None else None,
    )


def kunneth_to_json(Z: KunnethClass) -> dict:
    return {"matrix": matrix_to_json(Z.matrix)}


def kunneth_from_json(data, source: MukaiLattice, target: MukaiLattice) -> KunnethClass:
    return KunnethClass(source, target, rat_matrix_from_json(data))


def algebra_from_json(data) -> GradedAlgebra:
    """``{"dims": [...], "mult": {"i,j": [[...]]}}``; see :mod:`k3lattice.koszul`
    for the tensor-basis convention."""
    dims = [parse_int(d) for d in data["dims"]]
    mult = {}
    for key, M in data.get("mult", {}).items():
        i, j = (int(x) for x in key.split(","))
        mult[i, j] = rat_matrix_from_json(M)
    return GradedAlgebra(tuple(dims), mult)


def algebra_to_json(A: GradedAlgebra) -> dict:
    return {
        "dims": [num(d) for d in A.dims],
        "mult": {f"{i},{j}": matrix_to_json(M) for (i, j), M in sorted(A.mult.items()) if i and j},
    }


def load(path) -> object:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
