"""Command-line front end: ``chiraltbg <subcommand> [options]``.

Exit status: 0 success, 1 invalid configuration, 2 numerical failure (the error
class is printed), 3 a check suite reported a failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .checks import oracle_suite, theta_suite
from .errors import ChiralTBGError, NumericalError
from .lattice import GAMMA, K, VERTEX
from .potential import resolve_potential

EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_CHECK = 3

DEFAULT_CUTOFFS = {"magic": 16, "table2": 16, "dirac": 14, "track": 14, "bands": 12,
                   "bifurcate": 12, "check": 12}


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


@dataclass
class CommandConfig:
    command: str
    potential: str = "bm"
    cutoff: int = 12
    b_abs: float = 0.0
    b_arg: float = 0.0
    seed: int = 20240917
    options: dict = field(default_factory=dict)

    @property
    def B(self) -> complex:
        return complex(self.b_abs * np.exp(2j * np.pi * self.b_arg))

    def echo(self) -> dict:
        return {"command": self.command, "potential": self.potential, "cutoff": self.cutoff,
                "b_abs": self.b_abs, "b_arg": self.b_arg, "seed": self.seed, **self.options}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--potential", default="bm", help="bm, double, or a JSON mode file")
    common.add_argument("--cutoff", type=int, help="plane-wave cutoff N (>= 4)")
    common.add_argument("--b-abs", type=float, default=0.0, help="field modulus |B|")
    common.add_argument("--b-arg", type=float, default=0.0,
                        help="field phase fraction theta, B = b_abs exp(2 pi i theta)")
    common.add_argument("--seed", type=int, default=20240917)
    common.add_argument("--output", "-o", help="write the result here instead of stdout")

    p = _Parser(prog="chiraltbg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"chiraltbg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("magic", parents=[common], help="magic couplings at B = 0")
    s.add_argument("--count", type=int, default=8)
    s.add_argument("--format", choices=["json", "csv"], default="json")

    s = sub.add_parser("table2", parents=[common], help="|g0|, |g1| and c1 per magic angle")
    s.add_argument("--count", type=int, default=3, help="number of real magic angles")
    s.add_argument("--numeric-c1", action="store_true",
                   help="also compute c1 from the eigenvalue branch (slower)")
    s.add_argument("--format", choices=["json", "csv"], default="csv")

    s = sub.add_parser("dirac", parents=[common], help="Dirac points of D_B(alpha)")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--grid", type=int, default=48)
    s.add_argument("--format", choices=["json", "csv"], default="csv")

    s = sub.add_parser("track", parents=[common], help="continue a Dirac point in alpha")
    s.add_argument("--alpha-min", type=float, required=True)
    s.add_argument("--alpha-max", type=float, required=True)
    s.add_argument("--steps", type=int, default=20)
    s.add_argument("--thetas", type=float, nargs="+",
                   help="several phase fractions (overrides --b-arg; adds a theta column)")
    s.add_argument("--svg", help="also draw the k-plane paths to this SVG file")
    s.add_argument("--color", choices=["alpha", "theta"], default="alpha")

    s = sub.add_parser("bands", parents=[common], help="Bloch energies along a path or on a grid")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--J", type=int, default=4)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--path", default="K,Gamma,vertex,K",
                   help="comma-separated special points (Gamma, K, Kprime, vertex)")
    g.add_argument("--grid", type=int, help="n x n grid over the fundamental cell")
    s.add_argument("--points", type=int, default=24, help="samples per path segment")

    s = sub.add_parser("bifurcate", parents=[common], help="bifurcation report at Gamma or vertex")
    s.add_argument("--site", choices=["gamma", "vertex"], required=True)
    s.add_argument("--alpha-bar", type=float, help="magic coupling (default: first real one)")
    s.add_argument("--fields", type=float, nargs="+", default=[0.025, 0.05, 0.1])
    s.add_argument("--no-geometry", action="store_true")
    s.add_argument("--qbcp", action="store_true", help="fit the quadratic well at the largest field")

    s = sub.add_parser("check", parents=[common], help="run a pass/fail suite")
    s.add_argument("--suite", choices=["theta", "symmetry", "rectangle", "oracle"], required=True)
    s.add_argument("--alpha", type=float, default=0.4)
    s.add_argument("--alphas", type=float, nargs="+", default=[0.1, 0.2, 0.3, 0.4, 0.5])
    return p


def make_config(ns: argparse.Namespace) -> CommandConfig:
    cutoff = ns.cutoff if ns.cutoff is not None else DEFAULT_CUTOFFS[ns.command]
    if cutoff < 4:
        raise ConfigError("--cutoff must be at least 4")
    if ns.b_abs < 0:
        raise ConfigError("--b-abs must be non-negative")
    skip = {"command", "potential", "cutoff", "b_abs", "b_arg", "seed"}
    opts = {k: v for k, v in vars(ns).items() if k not in skip}
    if ns.command == "track":
        if not ns.alpha_min < ns.alpha_max:
            raise ConfigError("--alpha-min must be smaller than --alpha-max")
        if ns.steps < 2:
            raise ConfigError("--steps must be at least 2")
        if ns.color == "theta" and not ns.thetas:
            raise ConfigError("--color theta needs several --thetas")
    if ns.command in ("magic", "table2") and ns.count < 1:
        raise ConfigError("--count must be positive")
    if ns.command == "bifurcate" and any(not 0 < b <= 0.2 for b in ns.fields):
        raise ConfigError("--fields must lie in (0, 0.2]")
    if ns.command == "bands" and ns.grid is not None and ns.grid < 1:
        raise ConfigError("--grid must be positive")
    return CommandConfig(ns.command, ns.potential, cutoff, ns.b_abs, ns.b_arg, ns.seed, opts)


# ---------------------------------------------------------------- writers

def _header(cfg: CommandConfig) -> str:
    return f"# chiraltbg {__version__} config: {json.dumps(cfg.echo(), sort_keys=True)}\n"


def _csv(cfg: CommandConfig, columns: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(_header(cfg))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return x


def _json(cfg: CommandConfig, results: list, **extra) -> str:
    return json.dumps({"config": cfg.echo(), "version": __version__, **extra,
                       "results": results}, indent=2, sort_keys=False, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _cplx(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# --------------------------------------------------------------- commands

def cmd_magic(cfg, U):
    from .spectral import magic_alphas
    count = cfg.options["count"]
    rep = magic_alphas(U, cfg.cutoff)
    # each real value appears with its negative; keep one representative
    angles = [a for a in rep.angles if a.alpha.real > 0 or not a.is_real][:count]
    if cfg.options["format"] == "csv":
        rows = [(a.alpha.real, a.alpha.imag, a.residual, int(a.is_real), a.simplicity_gap)
                for a in angles]
        return _csv(cfg, ["re_alpha", "im_alpha", "residual", "is_real", "simplicity_gap"], rows)
    res = [{"alpha": _cplx(a.alpha), "residual": a.residual, "is_real": a.is_real,
            "simplicity_gap": a.simplicity_gap} for a in angles]
    return _json(cfg, res, real_positive=rep.real_positive()[:count].tolist())


def cmd_table2(cfg, U):
    from .analysis import (c1_closed_form, c1_finite_difference, compute_g0, compute_g1,
                           kernel_u0, zeta_normalized)
    from .spectral import magic_alphas
    alphas = magic_alphas(U, cfg.cutoff).real_positive()[: cfg.options["count"]]
    rows = []
    for a in alphas:
        u = kernel_u0(U, a, cfg.cutoff)
        g0, g1 = compute_g0(u), compute_g1(u, U)
        z0, z1 = zeta_normalized(g0, g1)
        c1 = c1_closed_form(g0, g1)
        num = c1_finite_difference(U, a, cfg.cutoff).real if cfg.options["numeric_c1"] else np.nan
        rows.append((float(a), abs(z0), abs(z1), c1.real, num))
    cols = ["alpha", "abs_g0", "abs_g1", "c1_closed", "c1_numeric"]
    if cfg.options["format"] == "json":
        return _json(cfg, [dict(zip(cols, r)) for r in rows])
    return _csv(cfg, cols, rows)


def cmd_dirac(cfg, U):
    from .spectral import dirac_points
    pts = dirac_points(U, cfg.options["alpha"], cfg.B, cfg.cutoff, grid=cfg.options["grid"])
    rows = [(p.k.real, p.k.imag, p.multiplicity, p.sigma_min) for p in pts.points]
    cols = ["re_k", "im_k", "multiplicity", "sigma_min"]
    if cfg.options["format"] == "json":
        return _json(cfg, [dict(zip(cols, r)) for r in rows])
    return _csv(cfg, cols, rows)


def cmd_track(cfg, U):
    from .spectral import track_dirac
    o = cfg.options
    thetas = o["thetas"] or [cfg.b_arg]
    cols = ["alpha", "re_k_plus", "im_k_plus", "re_k_minus", "im_k_minus", "residual"]
    rows, paths = [], []
    for th in thetas:
        B = cfg.b_abs * np.exp(2j * np.pi * th)
        traj = track_dirac(U, B, o["alpha_min"], o["alpha_max"], o["steps"], cfg.cutoff)
        paths.append((th, traj))
        for r in traj.rows:
            row = (r.alpha, r.k_plus.real, r.k_plus.imag, r.k_minus.real, r.k_minus.imag, r.residual)
            rows.append(((th,) + row) if o["thetas"] else row)
    if o["svg"]:
        from .plotting import track_svg
        track_svg(paths, o["svg"], color=o["color"], title=f"|B| = {cfg.b_abs:g}")
    return _csv(cfg, (["theta"] + cols) if o["thetas"] else cols, rows)


def _path_momenta(spec: str, per_segment: int) -> np.ndarray:
    named = {"gamma": GAMMA, "k": K, "kprime": -K, "vertex": VERTEX}
    try:
        nodes = [named[s.strip().lower()] for s in spec.split(",")]
    except KeyError as e:
        raise ConfigError(f"unknown point {e.args[0]!r} in --path") from None
    if len(nodes) < 2:
        raise ConfigError("--path needs at least two points")
    ks = [a + (b - a) * t for a, b in zip(nodes, nodes[1:])
          for t in np.arange(per_segment) / per_segment]
    return np.array(ks + [nodes[-1]])


def cmd_bands(cfg, U):
    from .spectral import bloch_bands, cell_grid
    o = cfg.options
    if o["grid"]:
        ks = cell_grid(o["grid"]).ravel()
    else:
        ks = _path_momenta(o["path"], o["points"])
    rows = []
    for k in ks:
        s = bloch_bands(U, o["alpha"], cfg.B, k, cfg.cutoff, o["J"])
        rows.append((k.real, k.imag, *s.positive()))
    return _csv(cfg, ["re_k", "im_k"] + [f"E_{j}" for j in range(1, o["J"] + 1)], rows)


def cmd_bifurcate(cfg, U):
    from .analysis import bifurcation_gamma, bifurcation_vertex
    from .spectral import magic_alphas
    o = cfg.options
    alpha_bar = o["alpha_bar"] or magic_alphas(U, cfg.cutoff, count=2).real_positive()[0]
    if o["site"] == "gamma":
        rep = bifurcation_gamma(U, alpha_bar, o["fields"], cfg.cutoff, geometry=not o["no_geometry"],
                                qbcp_field=max(o["fields"]) if o["qbcp"] else None)
    else:
        rep = bifurcation_vertex(U, alpha_bar, o["fields"], cfg.cutoff)
    d = rep.to_dict()
    samples = d.pop("samples")
    return _json(cfg, samples, report=d)


def cmd_check(cfg, U) -> tuple[str, bool]:
    o = cfg.options
    suite = o["suite"]
    if suite == "theta":
        rep = theta_suite(seed=cfg.seed)
    elif suite == "oracle":
        rep = oracle_suite(U, seed=cfg.seed)
    elif suite == "symmetry":
        from .analysis import symmetry_suite
        B = cfg.B if cfg.b_abs > 0 else 0.1 * np.exp(2j * np.pi * 0.13)
        rep = symmetry_suite(U, o["alpha"], B, cfg.cutoff, seed=cfg.seed)
    else:
        from .analysis import rectangle_check
        if cfg.b_abs == 0:
            raise ConfigError("the rectangle suite needs --b-abs > 0")
        rep, _ = rectangle_check(U, cfg.B, o["alphas"], cfg.cutoff)
    text = "\n".join(rep.lines()) + f"\n{'PASS' if rep.passed else 'FAIL'} suite {suite}\n"
    return text, rep.passed


COMMANDS = {"magic": cmd_magic, "table2": cmd_table2, "dirac": cmd_dirac, "track": cmd_track,
            "bands": cmd_bands, "bifurcate": cmd_bifurcate}


def run(cfg: CommandConfig, output: str | None = None) -> int:
    """Execute a validated configuration and return the exit status."""
    try:
        U = resolve_potential(cfg.potential)
    except (OSError, ValueError, ChiralTBGError) as e:
        print(f"error: cannot load potential {cfg.potential!r}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    passed = True
    try:
        if cfg.command == "check":
            text, passed = cmd_check(cfg, U)
        else:
            text = COMMANDS[cfg.command](cfg, U)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, np.linalg.LinAlgError) as e:
        print(f"numerical failure: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else EXIT_CHECK


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    output = ns.output
    del ns.output
    try:
        cfg = make_config(ns)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg, output)


if __name__ == "__main__":
    sys.exit(main())
