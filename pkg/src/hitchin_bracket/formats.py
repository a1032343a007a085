"""JSON file formats for matrices, representations and diagrams.

matrix          {"n": 2, "rows": [[2.0, 0.0], [0.0, 0.5]]}
representation  {"n": 2, "generators": [matrix, ...],
                 "relators": [[[0, 1], [1, 1], [0, -1], [1, -1]], ...]}
diagram         {"n": 2, "labels": ["a", "b"],
                 "points": [{"epsilon": 1, "A": matrix, "B": matrix, "phi": 1.047}]}

Relator letters are ``[generator index, exponent]``. Floats are written
with ``repr`` (shortest round-tripping form), so a reload is exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .diagram import IntersectionDiagram, IntersectionPoint
from .fuchsian import GroupRep, Word
from .linalg import as_matrix


class FormatError(ValueError):
    """Input file does not follow the expected JSON layout."""


def matrix_to_json(A) -> dict:
    A = np.asarray(A, dtype=float)
    return {"n": int(A.shape[0]), "rows": [[float(x) for x in row] for row in A]}


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows = obj["rows"]
        M = as_matrix(rows)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix: {exc}") from exc
    if "n" in obj and obj["n"] != M.shape[0]:
        raise FormatError(f"declared n = {obj['n']} but rows give {M.shape[0]}")
    return M


def rep_to_json(rep: GroupRep) -> dict:
    return {
        "n": rep.n,
        "generators": [matrix_to_json(g) for g in rep.generators],
        "relators": [[list(letter) for letter in r.letters] for r in rep.relators],
        "relation_residual": rep.relation_residual,
    }


def rep_from_json(obj) -> GroupRep:
    try:
        gens = [matrix_from_json(g) for g in obj["generators"]]
        relators = [Word(tuple(tuple(x) for x in r)) for r in obj.get("relators", [])]
        rep = GroupRep(tuple(gens), tuple(relators))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad representation: {exc}") from exc
    if "n" in obj and obj["n"] != rep.n:
        raise FormatError(f"declared n = {obj['n']} but generators are {rep.n}x{rep.n}")
    return rep


def diagram_to_json(diagram: IntersectionDiagram) -> dict:
    points = []
    for p in diagram.points:
        item = {"epsilon": p.epsilon, "A": matrix_to_json(p.A), "B": matrix_to_json(p.B)}
        if p.phi is not None:
            item["phi"] = p.phi
        points.append(item)
    return {"n": diagram.n, "labels": list(diagram.labels), "points": points}


def diagram_from_json(obj) -> IntersectionDiagram:
    try:
        n = int(obj["n"])
        points = [
            IntersectionPoint(int(p["epsilon"]), matrix_from_json(p["A"]),
                              matrix_from_json(p["B"]), p.get("phi"))
            for p in obj.get("points", [])
        ]
        labels = tuple(obj.get("labels", ("alpha", "beta")))
        return IntersectionDiagram(n, points, labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad diagram: {exc}") from exc


def dumps(obj, pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False, allow_nan=False)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj, pretty=True) + "\n", encoding="utf-8")
