"""Command-line interface: graphs, coefficient tables, zeta curves, primes, and symmetry tests.

Exit codes: 0 on success, 1 when a separability verdict comes out
entangled (so shell pipelines can branch on it), 2 on input or
validation errors.  All output files are byte-deterministic given the
same invocation and seed.
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .errors import AtSingularity, RhoZetaError
from .graph import (
    enumerate_primes,
    export_dot,
    graph_from_density,
    primes_csv,
)
from .linalg import (
    DensityMatrix,
    kron,
    load_matrix,
    partial_trace,
    random_density,
    trace_powers,
    validate_density,
)
from .quantum import (
    acceptance_probability,
    bell_state,
    ghz_state,
    isotropic_state,
    plus_state,
    sigma_state,
    w_state,
)
from .zeta import (
    is_separable_by_coeffs,
    series_coeffs,
    singularities,
    zeta_eval,
)

#: u-distance below which a curve sample row is flagged as singular.
SINGULAR_ROW_TOL = 1e-6

_MAX_COEFF_ORDER = 64


def _reduced(pure) -> DensityMatrix:
    rho = pure.density()
    return partial_trace(rho, (2, rho.dim // 2), keep="B")


def _maxmixed(dim: int) -> DensityMatrix:
    return validate_density(np.eye(dim) / dim)


def _sigma3() -> DensityMatrix:
    s = sigma_state().matrix
    return validate_density(kron(kron(s, s), s))


BUILTIN_STATES = {
    "plus": lambda cfg: plus_state().density(),
    "bell": lambda cfg: bell_state().density(),
    "bell-reduced": lambda cfg: _reduced(bell_state()),
    "maxmixed2": lambda cfg: _maxmixed(2),
    "maxmixed4": lambda cfg: _maxmixed(4),
    "w": lambda cfg: w_state().density(),
    "w-reduced": lambda cfg: _reduced(w_state()),
    "ghz": lambda cfg: ghz_state().density(),
    "ghz-reduced": lambda cfg: _reduced(ghz_state()),
    "isotropic": lambda cfg: isotropic_state(cfg.p),
    "sigma": lambda cfg: sigma_state(),
    "sigma3": lambda cfg: _sigma3(),
    "random": lambda cfg: random_density(cfg.dim, cfg.seed),
}


def builtin_state(name: str, p: float = 0.5, dim: int = 2, seed: int = 0) -> DensityMatrix:
    """Resolve a built-in state name to a density matrix."""
    cfg = RunConfig(command="library", input=name, p=p, dim=dim, seed=seed)
    try:
        factory = BUILTIN_STATES[name]
    except KeyError:
        raise RhoZetaError(f"unknown state {name!r}; choose from {', '.join(sorted(BUILTIN_STATES))}")
    return factory(cfg)


@dataclass
class RunConfig:
    """Validated parameters of one CLI invocation."""

    command: str
    input: str
    output: str = "-"
    length_cap: int = 8
    order: int = 12
    copies: int = 3
    u_min: float = 0.0
    u_max: float = 0.9
    u_steps: int = 50
    p: float = 0.5
    p_min: float = None
    p_max: float = None
    p_steps: int = None
    separability_tol: float = 1e-6
    validation_tol: float = 1e-9
    zero_tol: float = 1e-12
    dim: int = 2
    seed: int = 0
    pure_bipartite: bool = False
    from_file: bool = False

    def __post_init__(self):
        if self.separability_tol <= 0 or self.validation_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.zero_tol < 0:
            raise ValueError("zero tolerance must be nonnegative")
        if self.u_steps < 2 or not self.u_min < self.u_max:
            raise ValueError("u grid needs min < max and at least 2 steps")
        if self.p_steps is not None:
            if self.p_steps < 2 or not self.p_min < self.p_max:
                raise ValueError("p grid needs min < max and at least 2 steps")


def _load_state(cfg: RunConfig) -> DensityMatrix:
    if cfg.from_file:
        return validate_density(load_matrix(cfg.input), cfg.validation_tol)
    return builtin_state(cfg.input, p=cfg.p, dim=cfg.dim, seed=cfg.seed)


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_graph(cfg: RunConfig) -> int:
    rho = _load_state(cfg)
    g = graph_from_density(rho, cfg.zero_tol)
    _write_output(cfg.output, export_dot(g))
    print(f"vertices: {g.n_vertices} edges: {g.n_edges}", file=sys.stderr)
    return 0


def cmd_coeffs(cfg: RunConfig) -> int:
    if cfg.order > _MAX_COEFF_ORDER:
        raise RhoZetaError(f"coefficient order {cfg.order} exceeds cap {_MAX_COEFF_ORDER}")
    if cfg.order < 1:
        raise RhoZetaError("coefficient order must be at least 1")
    rho = _load_state(cfg)
    series = series_coeffs(trace_powers(rho, cfg.order), cfg.order)
    lines = ["n,c_n"]
    for n in range(1, cfg.order + 1):
        lines.append(f"{n},{series[n]!r}")
    _write_output(cfg.output, "\n".join(lines) + "\n")
    if cfg.order >= 2:
        verdict = is_separable_by_coeffs(
            rho, cfg.order, cfg.separability_tol, pure_bipartite=cfg.pure_bipartite
        )
        print(f"verdict: {verdict}", file=sys.stderr)
        if not verdict.separable:
            return 1
    return 0


def _curve_rows(rho: DensityMatrix, cfg: RunConfig, p_value=None):
    rational = singularities(rho)
    locations = [u for u, _ in rational.singularities]
    rows = []
    for u in np.linspace(cfg.u_min, cfg.u_max, cfg.u_steps):
        u = float(u)
        prefix = [repr(u)] if p_value is None else [repr(u), repr(p_value)]
        near = any(abs(u - loc) <= SINGULAR_ROW_TOL for loc in locations)
        if not near:
            try:
                value = zeta_eval(rational, u)
            except AtSingularity:
                # high-multiplicity poles underflow the evaluation guard
                # slightly outside the flag distance; flag those rows too
                near = True
        if near:
            rows.append(prefix + ["", "", "1"])
        else:
            rows.append(prefix + [repr(value.real), repr(value.imag), "0"])
    return rows


def cmd_curve(cfg: RunConfig) -> int:
    surface = cfg.p_steps is not None
    if surface and (cfg.from_file or cfg.input != "isotropic"):
        raise RhoZetaError("p grid sweeps apply only to the isotropic state")
    if surface:
        header = "u,p,zeta_re,zeta_im,at_singularity"
        rows = []
        for p in np.linspace(cfg.p_min, cfg.p_max, cfg.p_steps):
            rho = isotropic_state(float(p))
            rows.extend(_curve_rows(rho, cfg, p_value=float(p)))
    else:
        header = "u,zeta_re,zeta_im,at_singularity"
        rows = _curve_rows(_load_state(cfg), cfg)
    lines = [header] + [",".join(row) for row in rows]
    _write_output(cfg.output, "\n".join(lines) + "\n")
    return 0


def cmd_primes(cfg: RunConfig) -> int:
    rho = _load_state(cfg)
    g = graph_from_density(rho, cfg.zero_tol)
    primes = enumerate_primes(g, cfg.length_cap)
    _write_output(cfg.output, primes_csv(primes))
    print(f"classes: {len(primes)}", file=sys.stderr)
    return 0


def cmd_bose(cfg: RunConfig) -> int:
    rho = _load_state(cfg)
    series = series_coeffs(trace_powers(rho, cfg.copies), cfg.copies)
    lines = ["k,acceptance,coefficient,abs_diff"]
    for k in range(1, cfg.copies + 1):
        accept = acceptance_probability(rho, k)
        diff = abs(accept - series[k])
        lines.append(f"{k},{accept!r},{series[k]!r},{diff!r}")
    _write_output(cfg.output, "\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "graph": cmd_graph,
    "coeffs": cmd_coeffs,
    "curve": cmd_curve,
    "primes": cmd_primes,
    "bose": cmd_bose,
}


def _add_state_arguments(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--state", help=f"built-in state ({', '.join(sorted(BUILTIN_STATES))})")
    group.add_argument("--file", help="matrix JSON file")
    parser.add_argument("--p", type=float, default=0.5, help="isotropic parameter in [0, 1]")
    parser.add_argument("--dim", type=int, default=2, help="dimension of the random state")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    parser.add_argument("--out", default="-", help="output path ('-' for stdout)")
    parser.add_argument("--validation-tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rhozeta",
        description="Graph zeta functions of density matrices and pure-state separability tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_graph = sub.add_parser("graph", help="export the weighted digraph as DOT")
    _add_state_arguments(p_graph)
    p_graph.add_argument("--zero-tol", type=float, default=1e-12)

    p_coeffs = sub.add_parser("coeffs", help="series coefficients and separability verdict")
    _add_state_arguments(p_coeffs)
    p_coeffs.add_argument("--N", type=int, default=12, help="highest coefficient order (<= 64)")
    p_coeffs.add_argument("--tol", type=float, default=1e-6, help="separability tolerance")
    p_coeffs.add_argument("--pure-bipartite", action="store_true",
                          help="assert the state is a reduced pure bipartite state")

    p_curve = sub.add_parser("curve", help="sample the zeta function over a u grid")
    _add_state_arguments(p_curve)
    p_curve.add_argument("--u-min", type=float, default=0.0)
    p_curve.add_argument("--u-max", type=float, default=0.9)
    p_curve.add_argument("--steps", type=int, default=50)
    p_curve.add_argument("--p-min", type=float)
    p_curve.add_argument("--p-max", type=float)
    p_curve.add_argument("--p-steps", type=int,
                         help="sample an isotropic (u, p) surface with this many p values")

    p_primes = sub.add_parser("primes", help="prime class table as CSV")
    _add_state_arguments(p_primes)
    p_primes.add_argument("--L", type=int, default=8, help="maximum prime length (<= 14)")

    p_bose = sub.add_parser("bose", help="copy-symmetry acceptance vs series coefficients")
    _add_state_arguments(p_bose)
    p_bose.add_argument("--K", type=int, default=3, help="largest copy count")

    return parser


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.file if args.file else args.state,
        from_file=args.file is not None,
        output=args.out,
        length_cap=getattr(args, "L", 8),
        order=getattr(args, "N", 12),
        copies=getattr(args, "K", 3),
        u_min=getattr(args, "u_min", 0.0),
        u_max=getattr(args, "u_max", 0.9),
        u_steps=getattr(args, "steps", 50),
        p=args.p,
        p_min=getattr(args, "p_min", None),
        p_max=getattr(args, "p_max", None),
        p_steps=getattr(args, "p_steps", None),
        separability_tol=getattr(args, "tol", 1e-6),
        validation_tol=args.validation_tol,
        zero_tol=getattr(args, "zero_tol", 1e-12),
        dim=args.dim,
        seed=args.seed,
        pure_bipartite=getattr(args, "pure_bipartite", False),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[args.command](cfg)
    except (RhoZetaError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
