"""Command-line surface: measure tables, kernel grids, correlation
queries, and the verification suite.

Subcommands: measure | kernel | correlate | verify.  Output is CSV
(metadata as leading '#' comment lines) or JSON (records plus a
metadata object); complex values are always emitted as paired re/im
fields.  Runs are fully deterministic: identical configuration produces
byte-identical output.

Exit codes: 0 success, 2 configuration error, 3 evaluation failure,
4 oracle/verification discrepancy.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PfapartError
from .kernels import QuadratureSettings, ScalarKernel
from .measures import PlancherelParams, ZMeasureParams, mixed_measure, plancherel_mixed, schur2_determinant_weight
from .oracle import TruncationPolicy, brute_force_rho, identity_suite
from .partitions import enumerate_partitions
from .pfaffian import correlation_pfaffian
from .specializations import load_specialization

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_EVAL = 3
EXIT_MISMATCH = 4

_ROUTE_MAP = {"contour": "contour", "series": "upsilon_series", "closed": "closed_form"}
_FAMILIES = ("z_theta2", "plancherel_theta2", "generic_pi")

_MEASURE_DEFAULT_SIZE = 8
_ORACLE_DEFAULT_CUT = 40
_VERIFY_DEFAULT_CUT = 30


@dataclass
class RunConfig:
    """Effective configuration after merging flags, config file, defaults."""

    command: str
    family: str = "z_theta2"
    z: complex | None = None
    xi: float | None = None
    eta: float | None = None
    pi_file: str | None = None
    route: str = "contour"
    n_cut: int | None = None
    tol: float | None = None
    radius: float | None = None
    format: str = "csv"
    output: str | None = None
    oracle: bool = False

    def validate(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {_FAMILIES}")
        if self.route not in _ROUTE_MAP:
            raise DomainError(f"unknown route {self.route!r}; expected one of {tuple(_ROUTE_MAP)}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}; expected csv or json")
        if self.n_cut is not None and self.n_cut < 1:
            raise DomainError("n-cut must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.command == "verify":
            return
        if self.family == "z_theta2":
            if self.z is None or self.xi is None:
                raise DomainError("family z_theta2 needs --z and --xi")
            if not 0 < self.xi < 1:
                raise DomainError(f"xi must lie in (0,1), got {self.xi}")
        elif self.family == "plancherel_theta2":
            if self.eta is None:
                raise DomainError("family plancherel_theta2 needs --eta")
            if self.eta == 0:
                raise DomainError("eta must be nonzero")
        else:
            if self.pi_file is None:
                raise DomainError("family generic_pi needs --pi-file")
            if self.route == "closed":
                raise DomainError("route closed is not defined for generic_pi")


_CONFIG_COERCERS = {
    "family": str,
    "z": complex,
    "xi": float,
    "eta": float,
    "pi_file": str,
    "route": str,
    "n_cut": int,
    "tol": float,
    "radius": float,
    "format": str,
    "output": str,
    "oracle": lambda s: str(s).strip().lower() in ("1", "true", "yes", "on"),
}


def _read_config_file(path: str) -> dict:
    """Flat key=value lines; '#' starts a comment; dashes and underscores
    in keys are interchangeable."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_COERCERS:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CONFIG_COERCERS[key](val.strip())
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    merged = {}
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config))
    for key in _CONFIG_COERCERS:
        flag_val = getattr(args, key, None)
        if flag_val not in (None, False):
            merged[key] = flag_val
    cfg = RunConfig(command=args.command, **merged)
    cfg.validate()
    return cfg


def _make_params(cfg: RunConfig):
    if cfg.family == "z_theta2":
        return ZMeasureParams(cfg.z if cfg.z.imag else cfg.z.real, (cfg.z - 1) if cfg.z.imag else cfg.z.real - 1, 2, cfg.xi)
    if cfg.family == "plancherel_theta2":
        return PlancherelParams(cfg.eta)
    return load_specialization(cfg.pi_file)


def _make_kernel(cfg: RunConfig):
    quad = QuadratureSettings(radius=cfg.radius, tol=cfg.tol if cfg.tol is not None else 1e-12)
    return ScalarKernel(_make_params(cfg), _ROUTE_MAP[cfg.route], quad)


def _metadata(cfg: RunConfig, **extra) -> dict:
    meta = {"command": cfg.command, "family": cfg.family, "format": cfg.format}
    if cfg.family == "z_theta2" and cfg.z is not None:
        meta["z_re"] = cfg.z.real
        meta["z_im"] = cfg.z.imag
        meta["xi"] = cfg.xi
    elif cfg.family == "plancherel_theta2" and cfg.eta is not None:
        meta["eta"] = cfg.eta
    elif cfg.family == "generic_pi":
        meta["pi_file"] = cfg.pi_file
    if cfg.command in ("kernel", "correlate"):
        meta["route"] = cfg.route
    if cfg.radius is not None:
        meta["radius"] = cfg.radius
    if cfg.n_cut is not None:
        meta["n_cut"] = cfg.n_cut
    if cfg.tol is not None:
        meta["tol"] = cfg.tol
    meta.update(extra)
    return meta


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def _emit(columns, records, metadata, cfg: RunConfig):
    if cfg.format == "json":
        text = json.dumps(
            {"metadata": metadata, "records": records}, sort_keys=True, indent=2
        ) + "\n"
    else:
        lines = [f"# {k}={_fmt_value(metadata[k])}" for k in sorted(metadata)]
        lines.append(",".join(columns))
        for rec in records:
            lines.append(",".join(_fmt_value(rec[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _serialize_partition(lam) -> str:
    return "+".join(str(p) for p in lam.parts) if lam.parts else "-"


def cmd_measure(cfg: RunConfig) -> int:
    bound = cfg.n_cut if cfg.n_cut is not None else _MEASURE_DEFAULT_SIZE
    params = _make_params(cfg)
    if cfg.family == "z_theta2":
        evaluate = lambda lam: complex(mixed_measure(params, lam))
    elif cfg.family == "plancherel_theta2":
        evaluate = lambda lam: complex(plancherel_mixed(params, 2, lam))
    else:
        evaluate = lambda lam: complex(schur2_determinant_weight(params.e, lam))
    records = []
    for n in range(bound + 1):
        for lam in enumerate_partitions(n):
            value = evaluate(lam)
            records.append(
                {
                    "size": n,
                    "partition": _serialize_partition(lam),
                    "m_re": value.real,
                    "m_im": value.imag,
                }
            )
    _emit(
        ["size", "partition", "m_re", "m_im"],
        records,
        _metadata(cfg, max_size=bound, records=len(records)),
        cfg,
    )
    return EXIT_OK


def _parse_range(text: str) -> list:
    try:
        a, _, b = text.partition(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise DomainError(f"expected a range like -6:2, got {text!r}") from None
    if hi < lo:
        raise DomainError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _grid_chunks(xs, size=8):
    return [xs[i : i + size] for i in range(0, len(xs), size)]


def cmd_kernel(cfg: RunConfig, x_range: str, y_range: str, diff_with: str | None) -> int:
    xs = _parse_range(x_range)
    ys = _parse_range(y_range)
    kernel = _make_kernel(cfg)
    chunks = _grid_chunks(xs)
    with ThreadPoolExecutor(max_workers=4) as pool:
        parts = list(pool.map(lambda c: kernel.table_with_error(c, ys), chunks))
    table = np.vstack([p[0] for p in parts])
    err = np.vstack([p[1] for p in parts])

    extra = {}
    columns = ["x", "y", "S_re", "S_im", "route", "est_error"]
    diff = None
    if diff_with:
        if diff_with not in _ROUTE_MAP:
            raise DomainError(f"unknown route {diff_with!r} for --diff-with")
        other = ScalarKernel(
            _make_params(cfg),
            _ROUTE_MAP[diff_with],
            QuadratureSettings(radius=cfg.radius, tol=cfg.tol if cfg.tol is not None else 1e-12),
        )
        diff = np.abs(table - other.table(xs, ys))
        columns.append("route_gap")
        extra = {"diff_with": diff_with, "max_route_gap": float(diff.max())}

    records = []
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            rec = {
                "x": x,
                "y": y,
                "S_re": float(table[i, j].real),
                "S_im": float(table[i, j].imag),
                "route": cfg.route,
                "est_error": float(err[i, j]),
            }
            if diff is not None:
                rec["route_gap"] = float(diff[i, j])
            records.append(rec)
    _emit(columns, records, _metadata(cfg, x_range=x_range, y_range=y_range, **extra), cfg)
    return EXIT_OK


def _parse_points(text: str):
    cleaned = text.replace(",", " ").split()
    pts = [int(tok) for tok in cleaned]
    if len(set(pts)) != len(pts):
        raise DomainError(f"points must be distinct, got {pts}")
    return tuple(sorted(pts))


def cmd_correlate(cfg: RunConfig, points: str) -> int:
    pts = _parse_points(points)
    kernel = _make_kernel(cfg)
    rho = correlation_pfaffian(kernel, pts)
    record = {
        "points": " ".join(str(p) for p in pts) if pts else "-",
        "rho_re": rho.real,
        "rho_im": rho.imag,
    }
    columns = ["points", "rho_re", "rho_im"]
    extra = {}
    status = EXIT_OK
    if cfg.oracle:
        tol = cfg.tol if cfg.tol is not None else 1e-8
        policy = TruncationPolicy(
            cfg.n_cut if cfg.n_cut is not None else _ORACLE_DEFAULT_CUT, tol
        )
        params = _make_params(cfg)
        value, tail = brute_force_rho(params, pts, policy)
        value = complex(value)
        tail = float(tail)
        discrepancy = abs(rho - value)
        bound = max(tol, 3 * tail)
        record.update(
            {
                "oracle_re": value.real,
                "oracle_im": value.imag,
                "discrepancy": discrepancy,
                "tail": tail,
            }
        )
        columns += ["oracle_re", "oracle_im", "discrepancy", "tail"]
        extra = {"bound": bound}
        if discrepancy > bound:
            status = EXIT_MISMATCH
    _emit(columns, [record], _metadata(cfg, **extra), cfg)
    return status


_VERIFY_CASES = (
    ("z_theta2", {"z": 2.5, "xi": 0.2}, (1,)),
    ("z_theta2", {"z": 2.5, "xi": 0.2}, (0, 1)),
    ("z_theta2", {"z": 3.3, "xi": 0.35}, (-3, 0, 2)),
    ("plancherel_theta2", {"eta": 0.8}, (-2,)),
    ("plancherel_theta2", {"eta": 0.8}, (-4, -2)),
)


def cmd_verify(cfg: RunConfig) -> int:
    report = identity_suite(10)
    n_cut = cfg.n_cut if cfg.n_cut is not None else _VERIFY_DEFAULT_CUT
    tol = cfg.tol if cfg.tol is not None else 1e-8
    comparisons = []
    all_ok = report.all_passed
    for family, kw, pts in _VERIFY_CASES:
        if family == "z_theta2":
            params = ZMeasureParams(kw["z"], kw["z"] - 1, 2, kw["xi"])
        else:
            params = PlancherelParams(kw["eta"])
        kernel = ScalarKernel(params, "closed_form")
        rho = correlation_pfaffian(kernel, pts)
        # a loose policy tolerance: the truncation tail is folded into the
        # pass bound below instead of aborting the enumeration
        policy = TruncationPolicy(n_cut, 1.0)
        value, tail = brute_force_rho(params, pts, policy)
        value = complex(value)
        tail = float(tail)
        discrepancy = abs(rho - value)
        bound = max(tol, 3 * tail)
        ok = discrepancy <= bound
        all_ok = all_ok and ok
        entry = {"family": family, "points": list(pts), "passed": ok}
        entry.update({k: float(v) for k, v in kw.items()})
        entry.update(
            {
                "rho_re": rho.real,
                "rho_im": rho.imag,
                "oracle_re": value.real,
                "oracle_im": value.imag,
                "discrepancy": discrepancy,
                "tail": tail,
                "bound": bound,
            }
        )
        comparisons.append(entry)
    payload = {
        "metadata": _metadata(cfg, n_cut_effective=n_cut),
        "identities": report.as_dict(),
        "comparisons": comparisons,
        "all_passed": all_ok,
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all_ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    g = shared.add_argument_group("configuration")
    g.add_argument("--family", choices=_FAMILIES, default=None)
    g.add_argument("--z", type=complex, default=None, help="z parameter (z' = z-1), e.g. 2.5 or 2.5+0.3j")
    g.add_argument("--xi", type=float, default=None, help="mixture parameter in (0,1)")
    g.add_argument("--eta", type=float, default=None, help="Plancherel intensity, nonzero")
    g.add_argument("--pi-file", dest="pi_file", default=None, help="JSON file of e-coefficients for generic_pi")
    g.add_argument("--route", choices=tuple(_ROUTE_MAP), default=None)
    g.add_argument("--n-cut", dest="n_cut", type=int, default=None, help="partition size cutoff")
    g.add_argument("--tol", type=float, default=None)
    g.add_argument("--radius", type=float, default=None, help="contour radius override")
    g.add_argument("--format", choices=("csv", "json"), default=None)
    g.add_argument("--output", default=None, help="output path (default stdout)")
    g.add_argument("--config", default=None, help="key=value config file; flags win")

    parser = argparse.ArgumentParser(
        prog="pfapart",
        description="Measures on partitions and their Pfaffian correlation kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("measure", parents=[shared], help="tabulate measure values for all partitions up to --n-cut")
    pk = sub.add_parser("kernel", parents=[shared], help="tabulate the scalar kernel S on a grid")
    pk.add_argument("--x-range", default="-6:2", help="inclusive integer range a:b")
    pk.add_argument("--y-range", default="-6:2")
    pk.add_argument("--diff-with", default=None, help="second route to compare against")
    pc = sub.add_parser("correlate", parents=[shared], help="correlation function of a point set")
    pc.add_argument("--points", required=True, help="comma/space separated integers; empty string for the empty set")
    pc.add_argument("--oracle", action="store_true", default=False, help="compare against brute-force enumeration")
    sub.add_parser("verify", parents=[shared], help="identity suite plus oracle comparisons (JSON report)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
    except (PfapartError, OSError, ValueError) as exc:
        print(f"pfapart: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "measure":
            return cmd_measure(cfg)
        if args.command == "kernel":
            return cmd_kernel(cfg, args.x_range, args.y_range, args.diff_with)
        if args.command == "correlate":
            return cmd_correlate(cfg, args.points)
        return cmd_verify(cfg)
    except DomainError as exc:
        print(f"pfapart: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PfapartError as exc:
        print(f"pfapart: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
