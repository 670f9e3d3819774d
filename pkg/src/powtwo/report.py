"""Deterministic serialization of results to JSON, CSV or plain text.

Rationals are written as an exact fraction plus a fixed 20-digit decimal;
certified bounds carry their error budget and derivation note.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
from decimal import Decimal
from fractions import Fraction

from .beta import BetaRecord
from .bounds import UpperBound

DECIMALS = 20


def fraction_decimal(q: Fraction, digits: int = DECIMALS) -> str:
    """Round-half-even decimal rendering of an exact rational."""
    scaled = q * 10 ** digits
    n = scaled.numerator // scaled.denominator
    rem = scaled - n
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and n % 2):
        n += 1
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


def to_plain(obj):
    """Convert results into JSON-ready builtins with a stable layout."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Fraction):
        return {"exact": True, "fraction": f"{obj.numerator}/{obj.denominator}",
                "decimal": fraction_decimal(obj)}
    if isinstance(obj, Decimal):
        return str(obj)
    if isinstance(obj, UpperBound):
        return {"upper_bound": str(obj.value), "rounded_up": obj.rounded(8),
                "error_budget": f"{obj.error_budget:.3E}", "note": obj.note}
    if isinstance(obj, BetaRecord):
        return {"f": obj.f, "d": obj.d, "l": obj.l, "rho": obj.rho, "N_l": str(obj.n_count),
                "beta": to_plain(obj.beta), "beta_2dp": fraction_decimal(obj.beta, 2)}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if not f.name.startswith("_")}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return fraction_decimal(v, 8)
    if isinstance(v, UpperBound):
        return v.rounded(8)
    return str(v)


def emit_report(results: dict, fmt: str = "json") -> str:
    """Serialize a report.  `results` may carry a "rows" table used for CSV."""
    if fmt == "json":
        return json.dumps(to_plain(results), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        rows = results.get("rows")
        if not rows:
            raise ValueError("CSV output needs a tabular result")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row[h]) for h in header])
        return buf.getvalue()
    if fmt == "text":
        return _text(to_plain(results)) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if obj.get("exact") is True and "fraction" in obj:
            return f"{obj['fraction']} (~{obj['decimal']})"
        if "upper_bound" in obj:
            return f"<= {obj['rounded_up']}  [{obj['note']}]"
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and not _is_leaf(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_text(v, 0)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        out = []
        for v in obj:
            if _is_leaf(v):
                out.append(f"{pad}- {_text(v, 0)}")
            else:
                out.append(f"{pad}- " + _text(v, indent + 1).lstrip())
        return "\n".join(out)
    return str(obj)


def _is_leaf(v) -> bool:
    if isinstance(v, dict):
        return ("fraction" in v and v.get("exact") is True) or "upper_bound" in v
    return not isinstance(v, list)
