# utils/formatting.py
"""
Deterministic rendering of numbers, algebra elements and reports.

All floating values leave the program through ``format_float`` (12 significant
digits), so identical inputs give byte-identical reports.
"""

import json
import math
from enum import Enum
from fractions import Fraction
from numbers import Number
from typing import Any, Dict, List

from rich.console import Console
from rich.table import Table

SIGNIFICANT_DIGITS = 12


def format_float(x: float) -> str:
    text = format(float(x), f".{SIGNIFICANT_DIGITS}g")
    return "0" if text == "-0" else text


def round_float(x: float):
    """A float rounded to 12 significant digits, or a string for inf/nan."""
    x = float(x)
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return float(format_float(x))


def _parts(value: Number):
    if isinstance(value, (int, Fraction)):
        return float(value), 0.0
    value = complex(value)
    return value.real, value.imag


def format_complex_literal(value: Number) -> str:
    """A constant in the function / Weyl grammar: 2, 0.5i, (0.3+0.1i)."""
    re, im = _parts(value)
    if im == 0:
        return format_float(re)
    if re == 0:
        return f"{format_float(im)}i"
    sign = "+" if im > 0 else "-"
    return f"({format_float(re)}{sign}{format_float(abs(im))}i)"


def format_complex(value: Number) -> str:
    """Human-oriented complex rendering for text tables."""
    re, im = _parts(value)
    if im == 0:
        return format_float(re)
    sign = "+" if im >= 0 else "-"
    return f"{format_float(re)}{sign}{format_float(abs(im))}i"


def _monomial(m: int, n: int) -> str:
    parts = []
    if m == 1:
        parts.append("X")
    elif m > 1:
        parts.append(f"X^{m}")
    elif m == -1:
        parts.append("Xinv")
    elif m < -1:
        parts.append(f"Xinv^{-m}")
    if n == 1:
        parts.append("d")
    elif n > 1:
        parts.append(f"d^{n}")
    return "*".join(parts)


def format_weyl(element) -> str:
    """
    Print a normal-form element, e.g. "X*d + 1", "1 - X + 0.25*X^2".

    Terms are ordered by descending ∂-exponent, then ascending X-exponent.
    """
    pieces: List[str] = []
    for (m, n), coefficient in element.sorted_terms():
        re, im = _parts(coefficient)
        monomial = _monomial(m, n)
        if im == 0:
            negative = re < 0
            magnitude = abs(re)
            if monomial and magnitude == 1:
                body = monomial
            elif monomial:
                body = f"{format_float(magnitude)}*{monomial}"
            else:
                body = format_float(magnitude)
        else:
            negative = False
            literal = format_complex_literal(complex(re, im))
            if re == 0 and im < 0:
                negative, literal = True, format_complex_literal(complex(0, -im))
            body = f"{literal}*{monomial}" if monomial else literal
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def to_jsonable(value: Any) -> Any:
    """Recursively convert numbers (including complex) for JSON output."""
    if isinstance(value, Enum):
        return to_jsonable(value.value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return round_float(float(value))
    if isinstance(value, float):
        return round_float(value)
    if isinstance(value, complex):
        return {"re": round_float(value.real), "im": round_float(value.imag)}
    if hasattr(value, "model_dump"):
        return to_jsonable(value.model_dump(mode="python"))
    if isinstance(value, dict):
        return {(k.value if isinstance(k, Enum) else str(k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, Number):
        return to_jsonable(complex(value))
    return str(value)


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(report), indent=2, ensure_ascii=False)


def _cell(value: Any) -> str:
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return format_complex(complex(float(value["re"]), float(value["im"])))
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False)
    return "" if value is None else str(value)


def render_text(report: Dict[str, Any]) -> str:
    """Plain-text tables of the report sections (rich, fixed width, no colour)."""
    data = to_jsonable(report)
    console = Console(
        width=120,
        color_system=None,
        force_terminal=False,
        markup=False,
        highlight=False,
        record=True,
        file=_NullFile(),
    )
    console.print(f"command: {data.get('command')}")
    for key, value in sorted(data.get("config", {}).items()):
        console.print(f"  {key} = {_cell(value)}")
    results = data.get("results") or []
    if results and all(isinstance(row, dict) for row in results):
        columns: List[str] = []
        for row in results:
            for key in row:
                if key not in columns:
                    columns.append(key)
        table = Table(show_edge=False)
        for column in columns:
            table.add_column(column)
        for row in results:
            table.add_row(*[_cell(row.get(column)) for column in columns])
        console.print(table)
    for section in ("checks", "agreement", "bounds"):
        if data.get(section):
            console.print(f"{section}:")
            for row in data[section]:
                console.print(f"  {_cell(row)}")
    for warning in data.get("warnings") or []:
        console.print(f"warning: {warning}")
    if data.get("verdict"):
        console.print(f"verdict: {data['verdict']}")
    return console.export_text()


class _NullFile:
    def write(self, text: str) -> int:
        return len(text)

    def flush(self) -> None:
        pass
