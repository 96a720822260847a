"""JSON codecs. Rationals travel as strings so no float ever appears."""

from __future__ import annotations

import json
from fractions import Fraction

from .chow import ChowSubspace, GoursatCoefficients, TangencyReport
from .errors import BadPayload, BadShape, NotSquare, NotSymmetric
from .exact import format_rational, to_rational
from .lag_grassmann import PluckerVector, SymMatrix, minor_indices
from .linalg import Matrix
from .pde_analysis import MaCoefficients, PointClass
from .symplectic import SpAlgebraElement, SymplecticMatrix, generator


def dumps(obj) -> str:
    """Canonical encoding: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=None, separators=(", ", ": ")) + "\n"


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise BadPayload(f"floats are not accepted, write {x!r} as a string fraction")
    return to_rational(x)


def read_matrix(obj) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise BadPayload("a matrix is a nonempty list of rows")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise BadShape("matrix rows must be nonempty and of equal length")
    return Matrix([[_rational(x) for x in r] for r in obj], width)


def read_square(obj) -> Matrix:
    m = read_matrix(obj)
    if not m.is_square:
        raise NotSquare(f"expected a square matrix, got {m.rows}x{m.cols}")
    return m


def read_sym(obj) -> SymMatrix:
    m = read_square(obj)
    if not m.is_symmetric():
        raise NotSymmetric("the matrix is not symmetric")
    return SymMatrix.from_matrix(m)


def write_matrix(m) -> list[list[str]]:
    if isinstance(m, SymMatrix):
        m = m.to_matrix()
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def _blocks(obj, names: tuple[str, ...]) -> list[Matrix]:
    if not isinstance(obj, dict):
        raise BadPayload(f"expected an object with keys {', '.join(names)}")
    if set(obj) != set(names):
        raise BadPayload(f"expected exactly the keys {sorted(names)}, got {sorted(obj)}")
    return [read_square(obj[k]) for k in names]


def _read_word(word) -> SymplecticMatrix:
    if not isinstance(word, list) or not word:
        raise BadPayload('"generators" is a nonempty list')
    total = None
    for g in word:
        if not isinstance(g, dict) or set(g) != {"kind", "param"}:
            raise BadPayload('each generator needs exactly "kind" and "param"')
        if g["kind"] not in ("gl", "translate", "shear"):
            raise BadPayload(f"unknown generator kind {g['kind']!r}")
        m = generator(g["kind"], read_square(g["param"]))
        total = m if total is None else total @ m
    return total


def read_symplectic(obj) -> SymplecticMatrix:
    """Blocks ``{"A","B","C","D"}``, the full ``2n x 2n`` matrix as rows, or a
    product ``{"generators": [{"kind": "gl"|"translate"|"shear", "param": matrix}, ...]}``."""
    if isinstance(obj, dict) and "generators" in obj:
        if set(obj) != {"generators"}:
            raise BadPayload('"generators" cannot be mixed with other keys')
        return _read_word(obj["generators"])
    if isinstance(obj, list):
        m = read_square(obj)
        if m.rows % 2:
            raise BadShape("a symplectic matrix has even size")
        return SymplecticMatrix.from_matrix(m)
    return SymplecticMatrix(*_blocks(obj, ("A", "B", "C", "D")))


def write_symplectic(m: SymplecticMatrix) -> dict:
    return {k: write_matrix(getattr(m, k)) for k in ("A", "B", "C", "D")}


def read_sp_algebra(obj) -> SpAlgebraElement:
    return SpAlgebraElement(*_blocks(obj, ("Bdot", "Cdot", "Ddot")))


def write_sp_algebra(x: SpAlgebraElement) -> dict:
    return {k: write_matrix(getattr(x, k)) for k in ("Bdot", "Cdot", "Ddot")}


def read_chow(obj) -> ChowSubspace:
    """``{"D": matrix}`` or the bare matrix."""
    if isinstance(obj, dict):
        if set(obj) != {"D"}:
            raise BadPayload('expected exactly the key "D"')
        obj = obj["D"]
    return ChowSubspace(read_square(obj))


def read_covector(obj, n: int) -> list[Fraction]:
    if not isinstance(obj, list):
        raise BadPayload("a covector is a list of rationals")
    if len(obj) != n:
        raise BadShape(f"covector has length {len(obj)}, expected {n}")
    return [_rational(x) for x in obj]


def _minor_entries(obj, n: int) -> dict:
    """Entries ``{"rows", "cols", "value"}`` with 1-based indices, or a flat list in canonical order."""
    if not isinstance(obj, list):
        raise BadPayload("expected a list")
    if all(not isinstance(e, dict) for e in obj):
        idx = minor_indices(n)
        if len(obj) != len(idx):
            raise BadShape(f"expected {len(idx)} values for n={n}, got {len(obj)}")
        return {k: _rational(v) for k, v in zip(idx, obj)}
    out = {}
    for e in obj:
        if not isinstance(e, dict) or set(e) != {"rows", "cols", "value"}:
            raise BadPayload('each entry needs exactly "rows", "cols" and "value"')
        rows, cols = e["rows"], e["cols"]
        if not isinstance(rows, list) or not isinstance(cols, list):
            raise BadPayload('"rows" and "cols" are lists of indices')
        if any(isinstance(i, bool) or not isinstance(i, int) for i in rows + cols):
            raise BadPayload("indices must be integers")
        key = (tuple(rows), tuple(cols))
        if key in out:
            raise BadShape(f"entry {key} given twice")
        out[key] = _rational(e["value"])
    return out


def read_plucker(obj, n: int) -> PluckerVector:
    return PluckerVector(n, _minor_entries(obj, n))


def read_coefficients(obj, n: int) -> MaCoefficients:
    return MaCoefficients(n, _minor_entries(obj, n))


def write_minor_entries(items) -> list[dict]:
    return [{"rows": list(i), "cols": list(j), "value": format_rational(v)} for (i, j), v in items]


def write_point_class(c: PointClass) -> dict:
    pos, neg, zero = c.signature
    return {
        "rank": c.rank,
        "signature": {"positive": pos, "negative": neg, "zero": zero},
        "label": c.label,
    }


def write_goursat(k: GoursatCoefficients) -> dict:
    return {name: format_rational(v) for name, v in k._asdict().items()}


def write_tangency(r: TangencyReport) -> dict:
    return {"value": format_rational(r.value), "symbol_zero": r.symbol_zero}
