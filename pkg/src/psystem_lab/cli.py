"""Batch experiment driver.

Thin client over the service handlers: every subcommand builds the
corresponding request model and either calls the handler in-process
(default) or POSTs it to a running service instance (--server URL).

Output goes to stdout (or --output FILE): CSV for `phi`, JSON lines for
`glimm` (first line is the meta object), a single JSON object otherwise.
Floats are printed with 17 significant digits so every double round-trips
bit-exactly. Exit codes: 0 ok, 2 bad arguments, 3 vacuum, 4 convergence
or search failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Any, Callable

from . import __version__
from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    SearchError,
    VacuumError,
)
from .glimm import read_ic_csv
from .service import schemas as sc
from .service.app import (
    counterexample,
    glimm_run,
    interact,
    phi_sweep,
    riemann_solve,
    tvd_expand,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VACUUM = 3
EXIT_NO_CONVERGENCE = 4

_ENDPOINTS: dict[str, tuple[Callable, str]] = {
    "phi": (phi_sweep, "/phi"),
    "riemann": (riemann_solve, "/riemann"),
    "interact": (interact, "/interact"),
    "tvd-expand": (tvd_expand, "/tvd-expand"),
    "counterexample": (counterexample, "/counterexample"),
    "glimm": (glimm_run, "/glimm"),
}


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x}")
    return format(x, ".17g")


def dumps17(obj: Any) -> str:
    """JSON text with floats at 17 significant digits (doubles round-trip)."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{dumps17(str(k))}:{dumps17(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps17(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI or XI,U pair, got {text!r}")
    return float(parts[0]), float(parts[1])


def _state(text: str) -> sc.StateIn:
    xi, u = _pair(text)
    return sc.StateIn(xi=xi, u=u)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psystem-lab",
        description="Isentropic gas dynamics laboratory (exact Riemann solver, "
        "wave interactions, variation functionals, random-choice simulator).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--server", metavar="URL", help="send the request to a running service instead of computing in-process")
    parser.add_argument("--output", "-o", metavar="FILE", help="write the payload to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, help):
        return sub.add_parser(
            name, help=help, formatter_class=argparse.ArgumentDefaultsHelpFormatter
        )

    p = add_parser("phi", help="tabulate the wave-curve velocity factor and its derivative (CSV)")
    p.add_argument("--gamma", type=float, required=True, help="adiabatic exponent, > 1")
    p.add_argument("--family", choices=["b", "f", "backward", "forward"], default="b",
                   help="wave family (b = backward/slow, f = forward/fast)")
    p.add_argument("--from", dest="from_x", type=float, required=True, metavar="X0",
                   help="first xi-ratio of the geometric grid")
    p.add_argument("--to", dest="to_x", type=float, required=True, metavar="X1",
                   help="last xi-ratio of the geometric grid")
    p.add_argument("--points", type=int, required=True, help="number of grid points")

    p = add_parser("riemann", help="solve one Riemann problem")
    p.add_argument("--gamma", type=float, required=True, help="adiabatic exponent, > 1")
    p.add_argument("--left", type=_state, required=True, metavar="XI,U", help="left state")
    p.add_argument("--right", type=_state, required=True, metavar="XI,U", help="right state")

    p = add_parser("interact", help="resolve and classify a pairwise interaction")
    p.add_argument("--gamma", type=float, required=True, help="adiabatic exponent, > 1")
    p.add_argument("--kind", required=True, metavar="Ia..IIc'", help="interaction kind label")
    p.add_argument("--q1", type=float, required=True,
                   help="first incoming ratio (head-on: backward; overtaking: leftmost)")
    p.add_argument("--q2", type=float, required=True,
                   help="second incoming ratio (head-on: forward; overtaking: rightmost)")
    p.add_argument("--far-left", type=_state, default=None, metavar="XI,U",
                   help="also realize the full state diagram from this far-left state")

    p = add_parser("tvd-expand", help="weak-interaction variation change vs its leading term")
    p.add_argument("--gamma", type=float, required=True, help="adiabatic exponent, > 1")
    p.add_argument("--field", required=True, metavar="SPEC",
                   help="field spec: split:theta=E;psi=E or raw:E(r,s)")
    p.add_argument("--dr", type=float, required=True, help="magnitude of the r increment")
    p.add_argument("--ds", type=float, required=True, help="magnitude of the s increment")
    p.add_argument("--case", choices=["iii", "iv"], default="iii",
                   help="sign case of the increments relative to the field gradient")
    p.add_argument("--halvings", type=int, default=4, help="number of strength halvings")
    p.add_argument("--base", type=_state, default=sc.StateIn(xi=1.0, u=0.0), metavar="XI,U",
                   help="base state of the expansion")

    p = add_parser("counterexample", help="search for a variation-increasing interaction")
    p.add_argument("--gamma", type=float, required=True, help="adiabatic exponent, > 1")
    p.add_argument("--case", type=int, choices=[1, 2, 3], required=True,
                   help="1: theta' dominant, 2: psi' dominant, 3: theta = psi + const")
    p.add_argument("--theta", default=None, metavar="EXPR",
                   help="s-part of the split field (default: 2*id / id / id per case)")
    p.add_argument("--psi", default=None, metavar="EXPR",
                   help="r-part of the split field (cases 1-2; default mirrors --theta)")
    p.add_argument("--interval", type=_pair, default=(-1.0, 1.0), metavar="LO,HI",
                   help="invariant interval the realization must stay inside")
    p.add_argument("--margin", type=float, default=None,
                   help="slope separator for cases 1-2 (default 1.95)")
    p.add_argument("--slack", type=float, default=None,
                   help="slope gap below the separator for cases 1-2 (default 0.9)")
    p.add_argument("--slope-min", type=float, default=None,
                   help="lower bound on theta' for case 3 (default 1)")
    p.add_argument("--slope-max", type=float, default=None,
                   help="upper bound on theta' for case 3 (default 1)")
    p.add_argument("--curvature-max", type=float, default=None,
                   help="bound on |theta''| for case 3 (default 0)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="feasibility slack for case 3 (default 0.5)")

    p = add_parser("glimm", help="random-choice simulation with functional tracking (JSON lines)")
    p.add_argument("--gamma", type=float, required=True, help="adiabatic exponent, > 1")
    p.add_argument("--ic", required=True, metavar="FILE.csv",
                   help="initial condition table with header X,tau,u sorted by X")
    p.add_argument("--cells", type=int, required=True, help="number of grid cells")
    p.add_argument("--tmax", type=float, required=True, help="end time")
    p.add_argument("--field", required=True, metavar="SPEC",
                   help="field spec: split:theta=E;psi=E or raw:E(r,s)")
    p.add_argument("--seq", choices=["vdc", "prng"], default="vdc",
                   help="sampling sequence (van der Corput or seeded PRNG)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (prng sequence only)")
    p.add_argument("--domain", type=_pair, default=(0.0, 1.0), metavar="LO,HI",
                   help="spatial domain")
    p.add_argument("--cfl", type=float, default=0.9, help="CFL fraction in (0, 1]")

    p = add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1", help="bind address")
    p.add_argument("--port", type=int, default=8000, help="bind port")
    return parser


def _build_request(args: argparse.Namespace):
    cmd = args.command
    if cmd == "phi":
        family = {"b": "backward", "f": "forward"}.get(args.family, args.family)
        return sc.PhiRequest(
            gamma=args.gamma, family=family, from_x=args.from_x, to_x=args.to_x, points=args.points
        )
    if cmd == "riemann":
        return sc.RiemannRequest(gamma=args.gamma, left=args.left, right=args.right)
    if cmd == "interact":
        return sc.InteractRequest(
            gamma=args.gamma, kind=args.kind, q1=args.q1, q2=args.q2, far_left=args.far_left
        )
    if cmd == "tvd-expand":
        return sc.TvdExpandRequest(
            gamma=args.gamma, field=args.field, dr=args.dr, ds=args.ds,
            sign_case=args.case, halvings=args.halvings, base=args.base,
        )
    if cmd == "counterexample":
        return sc.CounterexampleRequest(
            gamma=args.gamma, case=args.case, theta=args.theta, psi=args.psi,
            interval=args.interval, margin=args.margin, slack=args.slack,
            slope_min=args.slope_min, slope_max=args.slope_max,
            curvature_max=args.curvature_max, epsilon=args.epsilon,
        )
    if cmd == "glimm":
        rows = [sc.IcRow(X=x, tau=tau, u=u) for x, tau, u in read_ic_csv(args.ic)]
        return sc.GlimmRequest(
            gamma=args.gamma, ic=rows, cells=args.cells, domain=args.domain,
            t_max=args.tmax, field=args.field, seq=args.seq, seed=args.seed, cfl=args.cfl,
        )
    raise AssertionError(cmd)


def _call_remote(server: str, path: str, request) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=request.model_dump(), timeout=600.0)
    body = resp.json()
    if resp.status_code != 200:
        err = body.get("error", "")
        detail = body.get("detail", resp.text)
        if err in ("VacuumError", "VacuumEncountered"):
            raise VacuumError(detail)
        if err in ("ConvergenceError", "SearchError"):
            raise ConvergenceError(detail)
        raise DomainError(detail)
    return body


def _render(command: str, payload: dict, out) -> None:
    if command == "phi":
        # CSV table on stdout; the reproducibility meta object goes to stderr
        print(dumps17({"meta": payload["meta"]}), file=sys.stderr)
        out.write("x,phi,phi_deriv\n")
        for row in payload["rows"]:
            out.write(f"{format_float(row['x'])},{format_float(row['phi'])},{format_float(row['phi_deriv'])}\n")
        return
    if command == "glimm":
        out.write(dumps17({"meta": payload["meta"]}) + "\n")
        for rec in payload["records"]:
            out.write(dumps17(rec) + "\n")
        return
    out.write(dumps17(payload) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        request = _build_request(args)
    except (ValueError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    handler, path = _ENDPOINTS[args.command]
    try:
        if args.server:
            payload = _call_remote(args.server, path, request)
        else:
            payload = handler(request).model_dump()
    except VacuumError as exc:
        print(f"vacuum: {exc}", file=sys.stderr)
        return EXIT_VACUUM
    except (ConvergenceError, SearchError) as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (DomainError, DegenerateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _render(args.command, payload, fh)
    else:
        _render(args.command, payload, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
