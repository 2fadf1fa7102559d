"""JSON interchange for module specifications.

The on-disk format is tagged "quadmod-spec-v1". Every scalar is stored as
a four-integer list [reNum, reDen, imNum, imDen] so the files stay exact;
matrices are row-major lists of such entries, vectors are flat lists, and
the three inner products are lists of coordinate Gram matrices.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebras import AlgebraHom, CommAlgebra
from .linalg import ExactMatrix, GramStack
from .quadmodule import QuadModuleSpec
from .scalars import GaussianRational

FORMAT_TAG = "quadmod-spec-v1"

_MATRIX_LIST_FIELDS = ("right_B1", "right_B2", "left_B1", "left_B2")
_STACK_FIELDS = ("inner_A", "inner_B1", "inner_B2")
_HOM_FIELDS = ("left_embed_1", "left_embed_2", "right_embed_1", "right_embed_2")
_VECTOR_FIELDS = ("basis_U", "basis_V")


class SpecFormatError(ValueError):
    """The JSON document does not describe a well-formed specification."""


def scalar_to_entry(value: GaussianRational) -> list[int]:
    return [
        value.re.numerator,
        value.re.denominator,
        value.im.numerator,
        value.im.denominator,
    ]


def entry_to_scalar(entry) -> GaussianRational:
    if (
        not isinstance(entry, (list, tuple))
        or len(entry) != 4
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)
    ):
        raise SpecFormatError(f"scalar entry must be four integers, got {entry!r}")
    if entry[1] == 0 or entry[3] == 0:
        raise SpecFormatError("scalar entry has a zero denominator")
    return GaussianRational(Fraction(entry[0], entry[1]), Fraction(entry[2], entry[3]))


def matrix_to_json(m: ExactMatrix) -> list:
    return [
        [scalar_to_entry(m[i, j]) for j in range(m.ncols)] for i in range(m.nrows)
    ]


def matrix_from_json(data, nrows: int, ncols: int, where: str) -> ExactMatrix:
    if not isinstance(data, list) or len(data) != nrows:
        raise SpecFormatError(f"{where}: expected {nrows} rows")
    rows = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != ncols:
            raise SpecFormatError(f"{where}: row {r} must have {ncols} entries")
        rows.append([entry_to_scalar(e) for e in row])
    return ExactMatrix.from_rows(rows)


def vector_to_json(v: ExactMatrix) -> list:
    return [scalar_to_entry(v[i, 0]) for i in range(v.nrows)]


def vector_from_json(data, dim: int, where: str) -> ExactMatrix:
    if not isinstance(data, list) or len(data) != dim:
        raise SpecFormatError(f"{where}: expected {dim} entries")
    return ExactMatrix.column([entry_to_scalar(e) for e in data])


def spec_to_dict(spec: QuadModuleSpec) -> dict:
    out = {
        "format": FORMAT_TAG,
        "name": spec.name,
        "dims": {
            "A": spec.algebra_A.dim,
            "B1": spec.algebra_B1.dim,
            "B2": spec.algebra_B2.dim,
            "H": spec.dim,
        },
    }
    for field in _MATRIX_LIST_FIELDS:
        out[field] = [matrix_to_json(m) for m in getattr(spec, field)]
    for field in _STACK_FIELDS:
        out[field] = [matrix_to_json(g) for g in getattr(spec, field).coords]
    for field in _HOM_FIELDS:
        out[field] = matrix_to_json(getattr(spec, field).matrix)
    for field in _VECTOR_FIELDS:
        out[field] = [vector_to_json(v) for v in getattr(spec, field)]
    return out


def spec_from_dict(data) -> QuadModuleSpec:
    if not isinstance(data, dict):
        raise SpecFormatError("top level must be a JSON object")
    tag = data.get("format")
    if tag != FORMAT_TAG:
        raise SpecFormatError(f"unsupported format tag {tag!r}, expected {FORMAT_TAG!r}")
    dims = data.get("dims")
    if not isinstance(dims, dict):
        raise SpecFormatError("missing dims object")
    sizes = {}
    for key in ("A", "B1", "B2", "H"):
        val = dims.get(key)
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise SpecFormatError(f"dims.{key} must be a positive integer")
        sizes[key] = val
    for field in ("name",) + _MATRIX_LIST_FIELDS + _STACK_FIELDS + _HOM_FIELDS + _VECTOR_FIELDS:
        if field not in data:
            raise SpecFormatError(f"missing field {field!r}")
    name = data["name"]
    if not isinstance(name, str):
        raise SpecFormatError("name must be a string")

    alg_A = CommAlgebra(sizes["A"])
    alg_B1 = CommAlgebra(sizes["B1"])
    alg_B2 = CommAlgebra(sizes["B2"])
    dim = sizes["H"]

    def matrix_list(field, count):
        raw = data[field]
        if not isinstance(raw, list) or len(raw) != count:
            raise SpecFormatError(f"{field}: expected {count} matrices")
        return [
            matrix_from_json(m, dim, dim, f"{field}[{i}]") for i, m in enumerate(raw)
        ]

    right_B1 = matrix_list("right_B1", sizes["B1"])
    right_B2 = matrix_list("right_B2", sizes["B2"])
    left_B1 = matrix_list("left_B1", sizes["B1"])
    left_B2 = matrix_list("left_B2", sizes["B2"])

    stacks = {}
    for field, count in (
        ("inner_A", sizes["A"]),
        ("inner_B1", sizes["B1"]),
        ("inner_B2", sizes["B2"]),
    ):
        stacks[field] = GramStack(matrix_list(field, count))

    homs = {}
    for field in _HOM_FIELDS:
        target = alg_B1 if field.endswith("1") else alg_B2
        homs[field] = AlgebraHom(
            alg_A,
            target,
            matrix_from_json(data[field], target.dim, alg_A.dim, field),
        )

    def vector_list(field):
        raw = data[field]
        if not isinstance(raw, list) or not raw:
            raise SpecFormatError(f"{field}: expected a nonempty list of vectors")
        return [
            vector_from_json(v, dim, f"{field}[{i}]") for i, v in enumerate(raw)
        ]

    try:
        return QuadModuleSpec(
            algebra_A=alg_A,
            algebra_B1=alg_B1,
            algebra_B2=alg_B2,
            dim=dim,
            right_B1=right_B1,
            right_B2=right_B2,
            left_B1=left_B1,
            left_B2=left_B2,
            inner_A=stacks["inner_A"],
            inner_B1=stacks["inner_B1"],
            inner_B2=stacks["inner_B2"],
            left_embed_1=homs["left_embed_1"],
            left_embed_2=homs["left_embed_2"],
            right_embed_1=homs["right_embed_1"],
            right_embed_2=homs["right_embed_2"],
            basis_U=vector_list("basis_U"),
            basis_V=vector_list("basis_V"),
            name=name,
        )
    except ValueError as exc:
        if isinstance(exc, SpecFormatError):
            raise
        raise SpecFormatError(str(exc)) from exc


def dumps(spec: QuadModuleSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=1, sort_keys=True)


def loads(text: str) -> QuadModuleSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"not valid JSON: {exc}") from exc
    return spec_from_dict(data)


def save(spec: QuadModuleSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(spec))
        fh.write("\n")


def load(path) -> QuadModuleSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
