"""Locale-independent CSV rendering of result tables."""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Sequence


def format_sci(x: float, digits: int = 10) -> str:
    """Lowercase scientific notation with a signed, unpadded exponent.

    >>> format_sci(0.0021435)
    '2.1435e-3'
    >>> format_sci(40.0)
    '4.0e+1'
    """
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    mantissa, exp = f"{x:.{digits - 1}e}".split("e")
    if "." in mantissa:
        mantissa = mantissa.rstrip("0")
        if mantissa.endswith("."):
            mantissa += "0"
    return f"{mantissa}e{int(exp):+d}"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_sci(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
