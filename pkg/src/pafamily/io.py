"""Serialization: JSON for matrices, polynomials and reports; CSV for sweeps."""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import math
from fractions import Fraction
from typing import Any, Iterable

from .bounds import BoundsReport, Interval, _float_above, _float_below
from .curves import CurveId
from .linalg import IntMatrix
from .report import GenusRow
from .spectral import IntPolynomial, RootEnclosure

COLUMN_CONVENTION = "column u holds the image of basis curve u"


def matrix_to_json(m: IntMatrix) -> dict:
    return {
        "basis": [str(b) for b in m.labels],
        "convention": COLUMN_CONVENTION,
        "rows": [[str(x) for x in r] for r in m.rows],
    }


def matrix_from_json(obj: dict) -> IntMatrix:
    basis = [CurveId.parse(b) for b in obj["basis"]]
    return IntMatrix.from_rows([[int(x) for x in r] for r in obj["rows"]], basis)


def poly_to_json(p: IntPolynomial) -> dict:
    return {"coefficients_ascending": p.to_strings(), "degree": p.degree, "text": str(p)}


def poly_from_json(obj: dict) -> IntPolynomial:
    return IntPolynomial.from_strings(obj["coefficients_ascending"])


def enclosure_to_json(enc: RootEnclosure) -> dict:
    return {
        "lower": f"{enc.lower.numerator}/{enc.lower.denominator}",
        "upper": f"{enc.upper.numerator}/{enc.upper.denominator}",
        "lower_decimal": _float_below(enc.lower),
        "upper_decimal": _float_above(enc.upper),
        "width": float(enc.width),
    }


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, RootEnclosure):
        return enclosure_to_json(obj)
    if isinstance(obj, IntPolynomial):
        return poly_to_json(obj)
    if isinstance(obj, IntMatrix):
        return matrix_to_json(obj)
    if isinstance(obj, Interval):
        return obj.as_list()
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, CurveId):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        items = sorted(obj, key=str) if isinstance(obj, set) else obj
        return [to_jsonable(x) for x in items]
    return obj


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


SWEEP_COLUMNS = (
    "genus",
    "dimension",
    "trace",
    "det",
    "charpoly_matches_closed_form",
    "lambda_lower",
    "lambda_upper",
    "lambda_width",
    "log_lambda_lower",
    "log_lambda_upper",
    "dil_lower",
    "dil_upper",
    "dil_upper_sharp",
    "in_lemma_range",
    "ellC_lower",
    "filling_floor",
    "mixing_exponent",
    "kappa_lower_lo",
    "kappa_lower_hi",
    "kappa_upper",
    "kappa_lower_log_g",
    "kappa_upper_log_g",
    "max_path_count",
    "row_sum_bound",
    "rotation",
    "orientation",
)


def sweep_record(row: GenusRow) -> dict:
    b: BoundsReport = row.bounds
    lg = math.log(row.genus)
    return {
        "genus": row.genus,
        "dimension": row.dimension,
        "trace": row.trace,
        "det": row.det,
        "charpoly_matches_closed_form": row.charpoly_matches_closed_form,
        "lambda_lower": _float_below(b.dilatation.lower),
        "lambda_upper": _float_above(b.dilatation.upper),
        "lambda_width": float(b.dilatation.width),
        "log_lambda_lower": b.log_dilatation.lo,
        "log_lambda_upper": b.log_dilatation.hi,
        "dil_lower": b.dil_lower,
        "dil_upper": b.dil_upper,
        "dil_upper_sharp": b.dil_upper_sharp,
        "in_lemma_range": b.in_lemma_range,
        "ellC_lower": f"{b.ellC_lower.numerator}/{b.ellC_lower.denominator}",
        "filling_floor": b.filling_floor,
        "mixing_exponent": b.mixing_exponent,
        "kappa_lower_lo": b.kappa_lower.lo,
        "kappa_lower_hi": b.kappa_lower.hi,
        "kappa_upper": b.kappa_upper,
        "kappa_lower_log_g": b.kappa_lower.lo * lg,
        "kappa_upper_log_g": b.kappa_upper * lg,
        "max_path_count": row.max_path_count,
        "row_sum_bound": row.row_sum_bound,
        "rotation": b.conventions["rotation"],
        "orientation": b.conventions["orientation"],
    }


def _cell(x: Any) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return "" if x is None else str(x)


def sweep_csv(records: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in records:
        w.writerow([_cell(r[c]) for c in SWEEP_COLUMNS])
    return buf.getvalue()
