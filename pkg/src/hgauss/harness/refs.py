"""Surface references: ``catalog:NAME?k=v&...`` or ``expr:TEXT?k=v&domain=x0,x1,y0,y1``.

``vexpr:TEXT?...`` gives a vertical surface with profile a(t).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..expr import parse
from ..surface import DEFAULT_GRAPH_DOMAIN, DEFAULT_VERTICAL_INTERVAL, GraphSurface, VerticalSurface, catalog


class SurfaceRefError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceRef:
    kind: str  # "catalog", "expr" or "vexpr"
    target: str  # catalog name or expression text
    params: dict[str, float] = field(default_factory=dict)
    domain: tuple[float, ...] | None = None

    def resolve(self):
        try:
            if self.kind == "catalog":
                return catalog(self.target, self.params, self.domain)
            if self.kind == "expr":
                e = parse(self.target, ("x", "y"), tuple(self.params))
                return GraphSurface(e, dict(self.params), self.domain or DEFAULT_GRAPH_DOMAIN, "expr")
            e = parse(self.target, ("t",), tuple(self.params))
            return VerticalSurface(e, dict(self.params), self.domain or DEFAULT_VERTICAL_INTERVAL, "vexpr")
        except ValueError as exc:
            raise SurfaceRefError(str(exc)) from exc


def parse_floats(text: str, n: int | None = None, what: str = "value") -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise SurfaceRefError(f"bad {what} {text!r}: expected comma-separated numbers") from None
    if n is not None and len(vals) != n:
        raise SurfaceRefError(f"bad {what} {text!r}: expected {n} numbers")
    return vals


def parse_ref(text: str) -> SurfaceRef:
    kind, sep, rest = text.partition(":")
    if not sep or kind not in ("catalog", "expr", "vexpr"):
        raise SurfaceRefError(f"surface ref {text!r} must start with catalog:, expr: or vexpr:")
    target, _, query = rest.partition("?")
    if not target.strip():
        raise SurfaceRefError("empty surface ref target")
    params: dict[str, float] = {}
    domain = None
    for item in filter(None, query.split("&")):
        key, eq, val = item.partition("=")
        if not eq:
            raise SurfaceRefError(f"bad query item {item!r}")
        if key == "domain":
            domain = parse_floats(val, None, "domain")
            if len(domain) not in (2, 4):
                raise SurfaceRefError("domain takes 2 (interval) or 4 (rectangle) numbers")
        else:
            params[key] = parse_floats(val, 1, f"parameter {key}")[0]
    return SurfaceRef(kind, target.strip(), params, domain)


def resolve(text: str):
    return parse_ref(text).resolve()
