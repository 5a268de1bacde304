"""JSON wire formats: complexes, cochains, l-assignments, face functions.

Rationals serialize as "numerator/denominator" strings so reports stay
exact and byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complex_core import SimplicialComplex, build_complex
from .errors import InvalidParams
from .group_cochains import Cochain
from .groups import F2, SymmetricGroup
from .list_agreement import LAssignment
from .direct_sum import FaceFunction


def fraction_str(x) -> str:
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_fraction(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def jsonable(obj):
    """Recursively convert report values into JSON-encodable data."""
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [jsonable(v) for v in items]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    return repr(obj)


def _key(k):
    if isinstance(k, (tuple, frozenset)):
        return repr(tuple(sorted(k)) if isinstance(k, frozenset) else k)
    return str(k)


def complex_to_json(X: SimplicialComplex) -> dict:
    return {
        "d": X.d,
        "maximal_faces": [list(f) for f in sorted(X.maximal_faces)],
    }


def complex_from_json(data: dict) -> SimplicialComplex:
    X = build_complex(data["maximal_faces"])
    if "d" in data and X.d != data["d"]:
        raise InvalidParams(
            "declared d=%r does not match the maximal faces" % (data["d"],)
        )
    return X


def cochain_to_json(f: Cochain) -> dict:
    coeff = "F2" if f.group == F2 else "S_l"
    out = {
        "dim": f.dim,
        "coefficients": coeff,
        "l": getattr(f.group, "l", 2),
        "values": [
            [list(face), (g if coeff == "F2" else list(g))]
            for face, g in sorted(f.values.items())
        ],
    }
    return out


def cochain_from_json(data: dict, base) -> Cochain:
    if data["coefficients"] == "F2":
        group = F2

        def elem(x):
            return int(x)

    elif data["coefficients"] == "S_l":
        group = SymmetricGroup(int(data["l"]))

        def elem(x):
            return tuple(int(v) for v in x)

    else:
        raise InvalidParams("unknown coefficients %r" % (data["coefficients"],))
    values = {}
    for face, g in data["values"]:
        if face and isinstance(face[0], list):
            # faces given as tuples of base k-faces: translate through the
            # representation vertex table
            if not hasattr(base, "id_of"):
                raise InvalidParams("nested faces need a representation complex")
            key = tuple(sorted(base.id_of[tuple(sorted(kf))] for kf in face))
        else:
            key = tuple(face)
        values[key] = elem(g)
    return Cochain(base, int(data["dim"]), group, values)


def lassignment_to_json(lass: LAssignment) -> dict:
    return {
        "k": lass.k,
        "l": lass.l,
        "faces": [
            {"face": list(f), "lists": [list(bits) for bits in lass.lists[f]]}
            for f in sorted(lass.lists)
        ],
    }


def lassignment_from_json(data: dict, base: SimplicialComplex) -> LAssignment:
    lists = {
        tuple(sorted(entry["face"])): tuple(
            tuple(int(b) for b in bits) for bits in entry["lists"]
        )
        for entry in data["faces"]
    }
    return LAssignment(base, int(data["k"]), int(data["l"]), lists)


def facefunction_to_json(F: FaceFunction) -> dict:
    faces = sorted(F.values)
    return {
        "k_minus_1_faces": [list(f) for f in faces],
        "values": [F.values[f] for f in faces],
    }


def facefunction_from_json(data: dict, base: SimplicialComplex) -> FaceFunction:
    faces = [tuple(sorted(f)) for f in data["k_minus_1_faces"]]
    if not faces:
        raise InvalidParams("face function needs at least one face")
    k = len(faces[0])
    values = dict(zip(faces, (int(b) for b in data["values"])))
    return FaceFunction(base, k, values)


def dump_json(data, path=None) -> str:
    text = json.dumps(jsonable(data), sort_keys=True, indent=2) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
