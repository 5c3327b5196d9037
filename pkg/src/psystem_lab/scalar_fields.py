"""Twice-differentiable scalar fields on the (r, s) half-plane.

A field phi(r, s) carries evaluators for its first and second partials.
The split form phi = theta(s) - psi(r) is tracked explicitly: for split
fields the mixed partial vanishes identically, which is exactly the
property the variation accounting hinges on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .errors import DomainError
from .gas import GasModel, State, invariants

_PARSE_TRANSFORMS = standard_transformations + (convert_xor,)
_ALLOWED_FUNCS = (sympy.exp, sympy.log)


def _fd_step(v: float) -> float:
    return max(1e-6, 1e-6 * abs(v))


@dataclass(frozen=True)
class SmoothFn:
    """Scalar function of one variable with first and second derivatives."""

    fn: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]

    def __call__(self, v: float) -> float:
        return self.fn(v)

    @classmethod
    def from_callable(cls, fn: Callable[[float], float]) -> "SmoothFn":
        """Wrap a plain function; derivatives fall back to central differences."""

        def d1(v: float) -> float:
            h = _fd_step(v)
            return (fn(v + h) - fn(v - h)) / (2.0 * h)

        def d2(v: float) -> float:
            h = _fd_step(v)
            return (fn(v + h) - 2.0 * fn(v) + fn(v - h)) / (h * h)

        return cls(fn=fn, d1=d1, d2=d2)


IDENTITY = SmoothFn(fn=lambda v: v, d1=lambda v: 1.0, d2=lambda v: 0.0)


@dataclass(frozen=True)
class ScalarField:
    """phi(r, s) with partial-derivative evaluators up to second order."""

    value: Callable[[float, float], float]
    d_r: Callable[[float, float], float]
    d_s: Callable[[float, float], float]
    d_rr: Callable[[float, float], float]
    d_rs: Callable[[float, float], float]
    d_ss: Callable[[float, float], float]
    split: tuple[SmoothFn, SmoothFn] | None = None  # (theta, psi) when known

    def at_state(self, model: GasModel, st: State) -> float:
        r, s = invariants(model, st)
        return self.value(r, s)

    @classmethod
    def from_split(cls, theta: SmoothFn, psi: SmoothFn) -> "ScalarField":
        """phi = theta(s) - psi(r); the mixed partial is zero by construction."""
        return cls(
            value=lambda r, s: theta(s) - psi(r),
            d_r=lambda r, s: -psi.d1(r),
            d_s=lambda r, s: theta.d1(s),
            d_rr=lambda r, s: -psi.d2(r),
            d_rs=lambda r, s: 0.0,
            d_ss=lambda r, s: theta.d2(s),
            split=(theta, psi),
        )

    @classmethod
    def from_callable(cls, fn: Callable[[float, float], float]) -> "ScalarField":
        """Wrap phi(r, s); all partials by central finite differences."""

        def d_r(r, s):
            h = _fd_step(r)
            return (fn(r + h, s) - fn(r - h, s)) / (2.0 * h)

        def d_s(r, s):
            h = _fd_step(s)
            return (fn(r, s + h) - fn(r, s - h)) / (2.0 * h)

        def d_rr(r, s):
            h = _fd_step(r)
            return (fn(r + h, s) - 2.0 * fn(r, s) + fn(r - h, s)) / (h * h)

        def d_ss(r, s):
            h = _fd_step(s)
            return (fn(r, s + h) - 2.0 * fn(r, s) + fn(r, s - h)) / (h * h)

        def d_rs(r, s):
            hr, hs = _fd_step(r), _fd_step(s)
            return (
                fn(r + hr, s + hs) - fn(r + hr, s - hs) - fn(r - hr, s + hs) + fn(r - hr, s - hs)
            ) / (4.0 * hr * hs)

        return cls(value=fn, d_r=d_r, d_s=d_s, d_rr=d_rr, d_rs=d_rs, d_ss=d_ss)


LIU_FIELD = ScalarField.from_split(IDENTITY, IDENTITY)  # phi(r, s) = s - r


@dataclass(frozen=True)
class ExpansionCoefficients:
    """First and second partials of a field at one base point.

    In Riemann coordinates with commuting unit eigenfields these are the
    coefficients of the weak-interaction expansion of the variation change;
    phi_rs is the obstruction term.
    """

    phi_s: float
    phi_r: float
    phi_rs: float
    phi_ss: float
    phi_rr: float


def expansion_coefficients(field: ScalarField, at: State, model: GasModel) -> ExpansionCoefficients:
    r, s = invariants(model, at)
    return ExpansionCoefficients(
        phi_s=field.d_s(r, s),
        phi_r=field.d_r(r, s),
        phi_rs=field.d_rs(r, s),
        phi_ss=field.d_ss(r, s),
        phi_rr=field.d_rr(r, s),
    )


_ALLOWED_CHARS = frozenset("0123456789abcdefghijklmnopqrstuvwxyz_+-*/^(). eE")


def _parse_one(text: str, symbols: dict[str, sympy.Symbol]) -> sympy.Expr:
    if not text or not set(text) <= _ALLOWED_CHARS or "__" in text:
        raise DomainError(f"field expression {text!r} contains disallowed characters")
    try:
        expr = parse_expr(
            text, local_dict=dict(symbols), transformations=_PARSE_TRANSFORMS, evaluate=True
        )
    except Exception as exc:
        raise DomainError(f"cannot parse field expression {text!r}: {exc}") from None
    if not isinstance(expr, sympy.Expr):
        raise DomainError(f"field expression {text!r} is not a scalar expression")
    allowed_syms = set(symbols.values())
    if not expr.free_symbols <= allowed_syms:
        extra = expr.free_symbols - allowed_syms
        raise DomainError(f"unknown symbols {sorted(map(str, extra))} in {text!r}")
    for node in expr.atoms(sympy.Function):
        if not isinstance(node, _ALLOWED_FUNCS):
            raise DomainError(f"function {node.func} not allowed in field expressions")
    return expr


def _smooth_from_expr(expr: sympy.Expr, var: sympy.Symbol) -> SmoothFn:
    fns = []
    for order in range(3):
        lam = sympy.lambdify(var, sympy.diff(expr, var, order), modules="math")
        fns.append(lambda v, _lam=lam: float(_lam(v)))
    return SmoothFn(fn=fns[0], d1=fns[1], d2=fns[2])


def parse_field_spec(spec: str) -> ScalarField:
    """Build a field from the CLI mini-language.

    ``split:theta=<expr>;psi=<expr>`` with expressions in the placeholder
    ``id`` (e.g. ``theta=2*id;psi=exp(id)``), or ``raw:<expr in r,s>``.
    Operators: + - * / ^, functions exp and log, numeric constants.
    """
    if spec.startswith("split:"):
        body = spec[len("split:"):]
        parts = dict()
        for chunk in body.split(";"):
            if "=" not in chunk:
                raise DomainError(f"malformed split field spec {spec!r}")
            key, _, val = chunk.partition("=")
            parts[key.strip()] = val.strip()
        if set(parts) != {"theta", "psi"}:
            raise DomainError(f"split field spec needs theta=...;psi=..., got {spec!r}")
        var = sympy.Symbol("v")
        theta = _smooth_from_expr(_parse_one(parts["theta"], {"id": var}), var)
        psi = _smooth_from_expr(_parse_one(parts["psi"], {"id": var}), var)
        return ScalarField.from_split(theta, psi)
    if spec.startswith("raw:"):
        r, s = sympy.symbols("r s")
        expr = _parse_one(spec[len("raw:"):], {"r": r, "s": s, "id": sympy.Symbol("id")})
        if sympy.Symbol("id") in expr.free_symbols:
            raise DomainError("raw field expressions use the symbols r and s, not id")

        def lam(e):
            f = sympy.lambdify((r, s), e, modules="math")
            return lambda rv, sv, _f=f: float(_f(rv, sv))

        return ScalarField(
            value=lam(expr),
            d_r=lam(sympy.diff(expr, r)),
            d_s=lam(sympy.diff(expr, s)),
            d_rr=lam(sympy.diff(expr, r, 2)),
            d_rs=lam(sympy.diff(expr, r, s)),
            d_ss=lam(sympy.diff(expr, s, 2)),
        )
    raise DomainError(f"field spec must start with 'split:' or 'raw:', got {spec!r}")


def parse_smooth_fn(text: str) -> SmoothFn:
    """One-variable expression in ``id`` -> SmoothFn with exact derivatives."""
    var = sympy.Symbol("v")
    return _smooth_from_expr(_parse_one(text, {"id": var}), var)


def smooth_bounds_on(fn: SmoothFn, lo: float, hi: float, samples: int = 129) -> tuple[float, float, float]:
    """(min d1, max d1, max |d2|) of ``fn`` sampled over [lo, hi]."""
    if not lo < hi:
        raise DomainError(f"interval must satisfy lo < hi, got ({lo}, {hi})")
    d1_min = math.inf
    d1_max = -math.inf
    d2_max = 0.0
    for k in range(samples):
        v = lo + (hi - lo) * k / (samples - 1)
        d1 = fn.d1(v)
        d1_min = min(d1_min, d1)
        d1_max = max(d1_max, d1)
        d2_max = max(d2_max, abs(fn.d2(v)))
    return d1_min, d1_max, d2_max
