"""Stable structured report format.

Grammar (version 1)::

    hypharm-report v1
    command <token>
    seed <int>
    tolerance <float-repr>
    <key> <value> [<value> ...]
    ...
    end

Keys are dotted lowercase tokens in emission order.  Values are rendered
deterministically: floats via ``repr`` (shortest round-trip form), exact
rationals as ``p/q``, booleans as ``true``/``false``, sequences
space-separated.  Identical inputs (including the seed) therefore produce
byte-identical documents; golden-file tests diff them directly.
"""

from __future__ import annotations

from fractions import Fraction


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    if isinstance(v, (list, tuple)):
        return " ".join(format_value(x) for x in v)
    try:
        return repr(float(v))
    except (TypeError, ValueError):
        return str(v)


class ReportDoc:
    """Ordered key/value document following the v1 grammar."""

    def __init__(self, command: str, seed: int, tolerance: float):
        self.command = command
        self.seed = seed
        self.tolerance = tolerance
        self.entries: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.entries.append((key, format_value(value)))

    def render(self) -> str:
        lines = [
            "hypharm-report v1",
            f"command {self.command}",
            f"seed {self.seed}",
            f"tolerance {self.tolerance!r}",
        ]
        lines.extend(f"{k} {v}" for k, v in self.entries)
        lines.append("end")
        return "\n".join(lines) + "\n"
