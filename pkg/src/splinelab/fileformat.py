"""JSON reading and writing of complexes with smoothness data.

Layout::

    {
      "type": "planar" | "central_star",
      "vertices": [[x, y], ...] or [[x, y, z], ...],
      "facets": [[i, j, k, ...], ...],
      "alpha": {"interior": r, "boundary": s,
                "overrides": [{"face": [i, j], "alpha": k}, ...]}
    }

Coordinates are integers or strings such as "3/4".
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .complexes import CentralStar, PlanarComplex, SmoothnessAssignment


class FormatError(ValueError):
    """The input document does not follow the expected layout."""


def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise FormatError(f"bad coordinate {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise FormatError(f"bad rational {x!r}") from exc
    raise FormatError(f"coordinates must be integers or 'p/q' strings, got {x!r}")


def _render(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_complex(doc: dict):
    """Build (complex, SmoothnessAssignment) from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    kind = doc.get("type")
    try:
        verts = [tuple(_rational(c) for c in v) for v in doc["vertices"]]
        facets = [tuple(int(i) for i in f) for f in doc["facets"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing or malformed vertices/facets: {exc}") from exc
    alpha_doc = doc.get("alpha", {}) or {}
    try:
        overrides = {tuple(o["face"]): int(o["alpha"]) for o in alpha_doc.get("overrides", [])}
        alpha = SmoothnessAssignment(int(alpha_doc.get("interior", 0)), int(alpha_doc.get("boundary", -1)), overrides)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed alpha block: {exc}") from exc
    try:
        if kind == "planar":
            return PlanarComplex(verts, facets), alpha
        if kind == "central_star":
            return CentralStar(verts, facets), alpha
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown complex type {kind!r}")


def dump_complex(cx, alpha: SmoothnessAssignment | None = None) -> dict:
    alpha = alpha or SmoothnessAssignment()
    return {
        "type": "planar" if isinstance(cx, PlanarComplex) else "central_star",
        "vertices": [[_render(c) for c in v] for v in cx.vertices],
        "facets": [list(f) for f in cx.facets],
        "alpha": {
            "interior": alpha.interior,
            "boundary": alpha.boundary,
            "overrides": [{"face": list(k), "alpha": v} for k, v in sorted(alpha.overrides.items())],
        },
    }


def load_complex(path: str | Path):
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return parse_complex(doc)


def save_complex(path: str | Path, cx, alpha: SmoothnessAssignment | None = None) -> None:
    Path(path).write_text(json.dumps(dump_complex(cx, alpha), indent=2) + "\n")
