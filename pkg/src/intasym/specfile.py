"""JSON problem descriptions to :class:`~intasym.expansion.IntegralSpec`.

Rationals may be given as strings ``"p/q"`` to stay exact; bare JSON numbers
are read as the exact binary value they denote. Every rejection names the JSON
path of the offending field.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .appell import AppellFamily, AppellForm, DerivativeForm, Kind
from .bigfloat import DEFAULT_PRECISION
from .errors import DomainError, IntasymError
from .expansion import IntegralSpec
from .registry import REGISTRY, registry_names, registry_spec
from .scalars import Constant, ScalarSyntaxError, parse_scalar

DEFAULT_ORDERS = 8
DEFAULT_GRID = (16, 32, 64)

_TOP_KEYS = {"q", "w", "orders", "precision_bits", "f", "verify", "name"}
_F_KEYS = {
    "appell": {"kind", "family", "d", "b", "c"},
    "derivatives": {"kind", "values_at_1", "scale"},
    "registry": {"kind", "name"},
}


class SpecFileError(IntasymError, ValueError):
    """Schema or domain violation in a problem description."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class VerifyOptions:
    n_grid: tuple = DEFAULT_GRID
    quadrature_tol: Optional[object] = None


@dataclass
class ProblemSpec:
    spec: IntegralSpec
    verify: VerifyOptions = field(default_factory=VerifyOptions)
    f_description: dict = field(default_factory=dict)


def _scalar(value, path, *, rational=False, allow_constant=True):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise SpecFileError(path, f"expected a number or a string, got {type(value).__name__}")
    try:
        x = parse_scalar(value)
    except (ScalarSyntaxError, ValueError, ZeroDivisionError, SyntaxError) as exc:
        raise SpecFileError(path, f"cannot parse {value!r}: {exc}") from None
    if isinstance(x, Constant) and (rational or not allow_constant):
        raise SpecFileError(path, f"must be rational, got {value!r}")
    return x


def _int(value, path, lo=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecFileError(path, f"expected an integer, got {value!r}")
    if lo is not None and value < lo:
        raise SpecFileError(path, f"must be >= {lo}, got {value}")
    return value


def _check_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise SpecFileError(path, f"expected an object, got {type(obj).__name__}")
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SpecFileError(f"{path}.{extra[0]}", f"unknown field (allowed: {', '.join(sorted(allowed))})")


def _require(obj, key, path):
    if key not in obj:
        raise SpecFileError(f"{path}.{key}", "required field missing")
    return obj[key]


def _appell(fobj):
    name = _require(fobj, "family", "$.f")
    try:
        kind = Kind.parse(name)
    except (ValueError, KeyError):
        raise SpecFileError("$.f.family", f"unknown family {name!r}; choose from "
                            + ", ".join(k.value for k in Kind)) from None
    d = Fraction(0)
    if kind not in (Kind.MONOMIAL, Kind.HERMITE):
        d = _scalar(_require(fobj, "d", "$.f"), "$.f.d", rational=True)
    elif "d" in fobj:
        d = _scalar(fobj["d"], "$.f.d", rational=True)
    b = _scalar(_require(fobj, "b", "$.f"), "$.f.b")
    c = _scalar(_require(fobj, "c", "$.f"), "$.f.c", rational=True)
    try:
        family = AppellFamily(kind, d)
    except (DomainError, ValueError) as exc:
        raise SpecFileError("$.f.d", str(exc)) from None
    try:
        return AppellForm(family, b, c), {"kind": "appell", "family": kind.value, "d": str(d),
                                          "b": str(b), "c": str(c)}
    except (DomainError, ValueError) as exc:
        raise SpecFileError("$.f", str(exc)) from None


def _derivatives(fobj):
    vals = _require(fobj, "values_at_1", "$.f")
    if not isinstance(vals, list) or not vals:
        raise SpecFileError("$.f.values_at_1", "expected a non-empty list")
    parsed = tuple(_scalar(v, f"$.f.values_at_1[{i}]", rational=True) for i, v in enumerate(vals))
    scale = _scalar(fobj.get("scale", 1), "$.f.scale")
    desc = {"kind": "derivatives", "values_at_1": [str(v) for v in parsed], "scale": str(scale)}
    return DerivativeForm(parsed, scale=scale), desc


def parse_problem(doc: dict, precision_override: Optional[int] = None,
                  orders_override: Optional[int] = None) -> ProblemSpec:
    """Validate a decoded JSON document and build the spec it describes."""
    _check_keys(doc, _TOP_KEYS, "$")
    fobj = _require(doc, "f", "$")
    if not isinstance(fobj, dict):
        raise SpecFileError("$.f", "expected an object")
    kind = _require(fobj, "kind", "$.f")
    if kind not in _F_KEYS:
        raise SpecFileError("$.f.kind", f"expected one of {', '.join(sorted(_F_KEYS))}, got {kind!r}")
    _check_keys(fobj, _F_KEYS[kind], "$.f")

    orders = _int(doc.get("orders", DEFAULT_ORDERS), "$.orders", lo=2)
    if orders_override is not None:
        orders = _int(orders_override, "--orders", lo=2)
    precision = _int(doc.get("precision_bits", DEFAULT_PRECISION), "$.precision_bits", lo=53)
    if precision_override is not None:
        precision = _int(precision_override, "--precision-bits", lo=53)

    q = _scalar(doc["q"], "$.q", rational=True) if "q" in doc else None
    w = _scalar(doc["w"], "$.w", rational=True) if "w" in doc else None
    name = doc.get("name")

    if kind == "registry":
        reg = _require(fobj, "name", "$.f")
        if reg not in REGISTRY:
            raise SpecFileError("$.f.name", f"unknown registry entry {reg!r}; choose from "
                                + ", ".join(registry_names()))
        try:
            spec = registry_spec(reg, q, w, orders, precision)
        except IntasymError as exc:
            raise SpecFileError("$", str(exc)) from None
        desc = {"kind": "registry", "name": reg}
    else:
        if q is None:
            raise SpecFileError("$.q", "required field missing")
        if w is None:
            raise SpecFileError("$.w", "required field missing")
        f, desc = _appell(fobj) if kind == "appell" else _derivatives(fobj)
        try:
            spec = IntegralSpec(q=q, w=w, f=f, orders=orders, precision=precision, name=name)
        except IntasymError as exc:
            raise SpecFileError("$", str(exc)) from None

    vopt = VerifyOptions()
    if "verify" in doc:
        vobj = doc["verify"]
        _check_keys(vobj, {"n_grid", "quadrature_tol"}, "$.verify")
        if "n_grid" in vobj:
            grid = vobj["n_grid"]
            if not isinstance(grid, list) or len(grid) < 2:
                raise SpecFileError("$.verify.n_grid", "expected a list of at least two integers")
            vopt.n_grid = tuple(_int(n, f"$.verify.n_grid[{i}]", lo=1) for i, n in enumerate(grid))
        if "quadrature_tol" in vobj:
            tol = _scalar(vobj["quadrature_tol"], "$.verify.quadrature_tol", rational=True)
            if tol <= 0:
                raise SpecFileError("$.verify.quadrature_tol", "must be positive")
            vopt.quadrature_tol = tol
    return ProblemSpec(spec, vopt, desc)


def load_problem(path, precision_override=None, orders_override=None) -> ProblemSpec:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError("$", f"invalid JSON: {exc}") from None
    return parse_problem(doc, precision_override, orders_override)
