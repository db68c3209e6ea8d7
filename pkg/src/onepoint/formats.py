"""Text formats for input triples and finished chains.

Both start with the line ``onepoint-format: 1``.  A triple file continues
with ``key: value`` lines; a chain file continues with one JSON document
(sorted keys, two-space indent).  Writing what was read reproduces the
input byte for byte when the input was itself written by this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .additive import AdditivePoly
from .errors import ParseError
from .field import FieldConfig, format_field_spec, parse_element, parse_field_spec
from .maps import CoordChange, GoodTriple, Step2Result, parse_coordchange, parse_projmap
from .poly import MPoly, format_poly, parse_poly

FORMAT_VERSION = 1
HEADER = f"onepoint-format: {FORMAT_VERSION}"
TRIPLE_KEYS = ("field", "n", "cone", "point")


def _check_header(lines):
    if not lines or lines[0].strip() != HEADER:
        first = lines[0].strip() if lines else ""
        raise ParseError(f"expected {HEADER!r} on the first line, found {first!r}")


# -- triple files -----------------------------------------------------------------

@dataclass(frozen=True)
class TripleSpec:
    """The raw contents of a triple file, before validation."""

    field: FieldConfig
    n: int
    cone: MPoly
    point: tuple

    def to_triple(self) -> GoodTriple:
        from .pipeline import make_triple

        return make_triple(self.n, self.field, self.cone, self.point)


def dumps_triple(spec: TripleSpec) -> str:
    F = spec.field
    point = ", ".join(F.format(v.value if hasattr(v, "value") else v) for v in spec.point)
    return "\n".join([
        HEADER,
        f"field: {format_field_spec(F)}",
        f"n: {spec.n}",
        f"cone: {format_poly(spec.cone)}",
        f"point: {point}",
    ]) + "\n"


def loads_triple(text: str) -> TripleSpec:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    _check_header(lines)
    values = {}
    for ln in lines[1:]:
        key, sep, value = ln.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', found {ln!r}")
        if key not in TRIPLE_KEYS:
            raise ParseError(f"unknown key {key!r}")
        if key in values:
            raise ParseError(f"duplicate key {key!r}")
        values[key] = value.strip()
    missing = [k for k in TRIPLE_KEYS if k not in values]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")
    F = parse_field_spec(values["field"])
    try:
        n = int(values["n"])
    except ValueError:
        raise ParseError(f"n must be an integer, found {values['n']!r}") from None
    if n < 1:
        raise ParseError("n must be at least 1")
    cone = parse_poly(values["cone"], F, nvars=n + 1)
    point = tuple(parse_element(x.strip(), F) for x in values["point"].split(","))
    if len(point) != n + 1:
        raise ParseError(f"point needs {n + 1} coordinates, found {len(point)}")
    return TripleSpec(F, n, cone, point)


def read_triple(path) -> TripleSpec:
    with open(path, encoding="utf-8") as fh:
        return loads_triple(fh.read())


# -- chain files --------------------------------------------------------------------

def _point(F, pt):
    return [F.format(v.value) for v in pt]


def _matrix(c: CoordChange):
    return c.format()


def _triple_dict(t: GoodTriple):
    return {"index": t.i, "cone": format_poly(t.cone), "point": _point(t.field, t.point)}


def _step_dict(s: Step2Result):
    return {
        "coords": _matrix(s.coords),
        "map": s.map.format(),
        "d": s.d,
        "additive": [format_poly(c) for c in s.Q.coeffs] if s.Q is not None else None,
        "r0": format_poly(s.r0) if s.r0 is not None else None,
        "next": _triple_dict(s.next),
        "records": dict(s.records),
        "skipped": s.skipped,
        "trials": s.trials,
    }


def chain_to_dict(chain) -> dict:
    inp = chain.input
    return {
        "field_history": [format_field_spec(F) for F in chain.field_history],
        "seed": chain.seed,
        "n": chain.n,
        "input": {
            "cone": format_poly(inp.cone),
            "point": _point(inp.field, inp.point),
            "origin": _matrix(inp.origin) if inp.origin is not None else None,
        },
        "steps": [_step_dict(s) for s in chain.steps],
        "final_normalization": _matrix(chain.final_normalization),
        "abhyankar": chain.abhyankar.format(),
        "composite": chain.composite.format(),
        "composite_degree": chain.composite.degree,
    }


def dumps_chain(chain) -> str:
    return HEADER + "\n" + json.dumps(chain_to_dict(chain), sort_keys=True, indent=2) + "\n"


def _parse_point(F, items):
    return tuple(parse_element(x, F) for x in items)


def _load_triple(F, n, d):
    cone = parse_poly(d["cone"], F, nvars=n + 1)
    return GoodTriple(n, F, int(d["index"]), cone, _parse_point(F, d["point"]))


def _load_step(F, n, i, d):
    n1 = n + 1
    Q = None
    if d["additive"] is not None:
        Q = AdditivePoly(tuple(parse_poly(c, F, nvars=n1) for c in d["additive"]), F.p, i)
    r0 = parse_poly(d["r0"], F, nvars=n1) if d["r0"] is not None else None
    return Step2Result(
        parse_coordchange(d["coords"], F),
        parse_projmap(d["map"], F),
        Q,
        int(d["d"]),
        r0,
        _load_triple(F, n, d["next"]),
        dict(d["records"]),
        bool(d["skipped"]),
        int(d["trials"]),
    )


def chain_from_dict(data: dict):
    from .pipeline import CoverChain

    try:
        history = [parse_field_spec(s) for s in data["field_history"]]
        F = history[-1]
        n = int(data["n"])
        inp = data["input"]
        origin = parse_coordchange(inp["origin"], F) if inp["origin"] is not None else None
        cone = parse_poly(inp["cone"], F, nvars=n + 1)
        triple = GoodTriple(n, F, 0, cone, _parse_point(F, inp["point"]), origin)
        steps = [_load_step(F, n, i, s) for i, s in enumerate(data["steps"])]
        normal = parse_coordchange(data["final_normalization"], F)
        abh = parse_projmap(data["abhyankar"], F)
        composite = parse_projmap(data["composite"], F)
        chain = CoverChain(triple, steps, normal, abh, composite, history, int(data["seed"]))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed chain file: {type(exc).__name__}: {exc}") from None
    if composite.degree != data.get("composite_degree"):
        raise ParseError("composite_degree does not match the composite")
    return chain


def loads_chain(text: str):
    head, _, body = text.partition("\n")
    _check_header([head])
    try:
        data = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ParseError(f"chain body is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("chain body must be a JSON object")
    return chain_from_dict(data)


def read_chain(path):
    with open(path, encoding="utf-8") as fh:
        return loads_chain(fh.read())


def write_text(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
