"""Result records and their CSV / JSON / text renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

Number = Fraction | float | int | None


def fmt_float(x: Number) -> str:
    if x is None:
        return ""
    return f"{float(x):.12g}"


def json_value(x: Any) -> Any:
    """Exact rationals become ``{"num": "...", "den": "...", "float": ...}``."""
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}
    if isinstance(x, float) and x != x:
        return None
    if isinstance(x, Mapping):
        return {str(k): json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [json_value(v) for v in x]
    return x


def csv_value(x: Any) -> str:
    if isinstance(x, (Fraction, float)):
        return fmt_float(x)
    if x is None:
        return ""
    return str(x)


def text_value(x: Any) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x} ({fmt_float(x)})"
    return csv_value(x)


@dataclass
class DensityReport:
    sigma: int
    k: int
    w: int
    dr: Number
    dfr: Number
    dev: Number
    method: str
    seconds: float
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_density(cls, sigma: int, k: int, w: int, dr: Number, method: str, seconds: float, **extra) -> DensityReport:
        if dr is None:
            return cls(sigma, k, w, None, None, None, method, seconds, extra)
        dfr = (w + 1) * dr
        dev = (dr - Fraction(2, w + 1)) * sigma ** (w + k) if isinstance(dr, Fraction) else None
        return cls(sigma, k, w, dr, dfr, dev, method, seconds, extra)

    def row(self) -> dict[str, Any]:
        out = {
            "sigma": self.sigma,
            "k": self.k,
            "w": self.w,
            "dr": self.dr,
            "dfr": self.dfr,
            "dev": self.dev,
            "method": self.method,
            "seconds": round(self.seconds, 6),
        }
        out.update(self.extra)
        return out


def render(rows: Iterable[Mapping[str, Any]], fmt: str) -> str:
    rows = list(rows)
    if fmt == "json":
        return "".join(json.dumps(json_value(r)) + "\n" for r in rows)
    if fmt == "csv":
        fields: list[str] = []
        for r in rows:
            fields.extend(k for k in r if k not in fields)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: csv_value(v) for k, v in r.items()})
        return buf.getvalue()
    if fmt == "text":
        blocks = []
        for r in rows:
            width = max((len(str(k)) for k in r), default=0)
            blocks.append("\n".join(f"{str(k):<{width}}  {text_value(v)}" for k, v in r.items()))
        return "\n\n".join(blocks) + ("\n" if blocks else "")
    raise ValueError(f"unknown format {fmt!r}")
