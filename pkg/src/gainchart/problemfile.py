"""Problem files: JSON documents with exact rational entries.

Rationals are integers or strings "p/q" (q > 0 after normalization, "p"
alone allowed). Floats anywhere in the document are rejected so exactness is
preserved end to end. The full grammar is documented in the README.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .canonical import SpectralData
from .errors import ParseError
from .linalg import RatMatrix
from .partitions import Partition

_RATIONAL_RE = re.compile(r"^[+-]?\d+(\s*/\s*[+-]?\d+)?$")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got boolean {value}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"float {value!r} is not an exact rational")
    if isinstance(value, str):
        s = value.strip()
        if not _RATIONAL_RE.match(s):
            raise ParseError(f"malformed rational literal {value!r}")
        if "/" in s:
            num, den = (part.strip() for part in s.split("/"))
            if int(den) == 0:
                raise ParseError(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise ParseError(f"cannot read {value!r} as a rational")


def format_rational(x: Fraction) -> str | int:
    if x.denominator == 1:
        n = x.numerator
        return n if -(2**53) < n < 2**53 else str(n)
    return f"{x.numerator}/{x.denominator}"


def parse_matrix(obj, what: str) -> RatMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError(f"{what} must be a non-empty list of rows")
    width = len(obj[0])
    for row in obj:
        if len(row) != width:
            raise ParseError(f"{what} has rows of different lengths")
    try:
        return RatMatrix([[parse_rational(x) for x in row] for row in obj])
    except ParseError as e:
        raise ParseError(f"in {what}: {e}") from None


def matrix_to_json(m: RatMatrix):
    return [[format_rational(x) for x in m.rowlist(i)] for i in range(m.rows)]


def _parse_partition(obj, what: str) -> Partition:
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise ParseError(f"{what} must be a list of integers")
    try:
        return Partition(obj)
    except ValueError as e:
        raise ParseError(f"in {what}: {e}") from None


def parse_target(obj) -> SpectralData:
    if not isinstance(obj, dict):
        raise ParseError("target must be an object")
    unknown = set(obj) - {"real", "complex"}
    if unknown:
        raise ParseError(f"unknown target fields: {sorted(unknown)}")
    real = []
    for i, entry in enumerate(obj.get("real", [])):
        if not isinstance(entry, dict) or set(entry) != {"eigenvalue", "segre"}:
            raise ParseError(
                f"target.real[{i}] must have exactly the fields eigenvalue, segre"
            )
        real.append(
            (parse_rational(entry["eigenvalue"]), _parse_partition(entry["segre"], f"target.real[{i}].segre"))
        )
    cpx = []
    for i, entry in enumerate(obj.get("complex", [])):
        if not isinstance(entry, dict) or set(entry) != {"a", "b", "segre"}:
            raise ParseError(
                f"target.complex[{i}] must have exactly the fields a, b, segre"
            )
        cpx.append(
            (
                parse_rational(entry["a"]),
                parse_rational(entry["b"]),
                _parse_partition(entry["segre"], f"target.complex[{i}].segre"),
            )
        )
    try:
        return SpectralData(real=real, complex=cpx)
    except (ValueError, TypeError) as e:
        raise ParseError(f"in target: {e}") from None


def target_to_json(sd: SpectralData):
    return {
        "real": [
            {"eigenvalue": format_rational(lam), "segre": list(s.parts)}
            for lam, s in sd.real
        ],
        "complex": [
            {"a": format_rational(a), "b": format_rational(b), "segre": list(s.parts)}
            for a, b, s in sd.complex
        ],
    }


@dataclass
class Problem:
    F: RatMatrix
    G: RatMatrix
    target: SpectralData
    multi_index: list | None = None
    x: list | None = None
    K2: RatMatrix | None = None
    K: RatMatrix | None = None
    raw: dict | None = None


def _reject_floats(s: str):
    raise ParseError(f"float literal {s!r} is not allowed; use \"p/q\" strings")


def parse_problem_text(text: str) -> Problem:
    try:
        doc = json.loads(text, parse_float=_reject_floats)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: line {e.lineno}, column {e.colno}: {e.msg}") from None
    return parse_problem(doc)


def parse_problem(doc) -> Problem:
    if not isinstance(doc, dict):
        raise ParseError("problem document must be a JSON object")
    for field in ("F", "G", "target"):
        if field not in doc:
            raise ParseError(f"missing required field {field!r}")
    unknown = set(doc) - {"F", "G", "target", "options", "result", "command"}
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    F = parse_matrix(doc["F"], "F")
    G = parse_matrix(doc["G"], "G")
    if not F.is_square():
        raise ParseError(f"F must be square, got {F.rows} x {F.cols}")
    if G.rows != F.rows:
        raise ParseError(
            f"G must have {F.rows} rows to match F, got {G.rows}"
        )
    target = parse_target(doc["target"])
    prob = Problem(F=F, G=G, target=target, raw=doc)
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("options must be an object")
    unknown = set(options) - {"multi_index", "x", "K2", "K"}
    if unknown:
        raise ParseError(f"unknown option fields: {sorted(unknown)}")
    if "multi_index" in options:
        prob.multi_index = parse_multi_index_list(options["multi_index"])
    if "x" in options:
        if not isinstance(options["x"], list):
            raise ParseError("options.x must be a list of rationals")
        prob.x = [parse_rational(v) for v in options["x"]]
    if "K2" in options:
        prob.K2 = parse_matrix(options["K2"], "options.K2")
    if "K" in options:
        prob.K = parse_matrix(options["K"], "options.K")
    return prob


def parse_multi_index_list(obj):
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise ParseError("options.multi_index must be a list of index lists")
    out = []
    for b in obj:
        if not all(isinstance(i, int) and not isinstance(i, bool) and i >= 1 for i in b):
            raise ParseError("multi-index entries must be positive integers")
        out.append(list(b))
    return out


def parse_multi_index_spec(spec: str):
    """CLI form: per-block comma lists separated by semicolons, e.g. '2,1;1'."""
    blocks = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            raise ParseError(f"empty block in multi-index spec {spec!r}")
        try:
            blocks.append([int(tok) for tok in part.split(",")])
        except ValueError:
            raise ParseError(f"malformed multi-index spec {spec!r}") from None
        if any(i < 1 for i in blocks[-1]):
            raise ParseError("multi-index entries must be positive integers")
    return blocks


def parse_x_spec(spec: str):
    try:
        return [parse_rational(tok) for tok in spec.split(",")]
    except ParseError as e:
        raise ParseError(f"in --x: {e}") from None


def problem_to_json(prob: Problem) -> dict:
    doc = {
        "F": matrix_to_json(prob.F),
        "G": matrix_to_json(prob.G),
        "target": target_to_json(prob.target),
    }
    options = {}
    if prob.multi_index is not None:
        options["multi_index"] = [list(b) for b in prob.multi_index]
    if prob.x is not None:
        options["x"] = [format_rational(v) for v in prob.x]
    if prob.K2 is not None:
        options["K2"] = matrix_to_json(prob.K2)
    if prob.K is not None:
        options["K"] = matrix_to_json(prob.K)
    if options:
        doc["options"] = options
    return doc
