"""Command-line front end: ``gho catalog | curves | verify | coherent``.

Exit codes: 0 success (including an "excluded" verification verdict),
1 verification FAIL, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .coherent import (
    coherent_wavefunction,
    expectation_mu,
    expectation_pi,
    make_coherent,
    quadrature_moments,
    uncertainties,
)
from .errors import GHOError, InvalidParam
from .mass import CATALOG, MassKind, classify_range, make_mass, mu_map, read_profile_csv
from .oscillator import MAX_DEGREE, effective_potential, eigenfunctions, gho_ordering
from .spectral import VerifyConfig, auto_grid, verify

FLOAT_FMT = "%.17g"


@dataclass
class RunConfig:
    command: str
    mass: str = "constant"
    params: dict = field(default_factory=dict)
    profile: Optional[str] = None
    levels: list = field(default_factory=lambda: [0])
    z: complex = 0j
    grid_n: Optional[int] = None
    x_lo: Optional[float] = None
    x_hi: Optional[float] = None
    out: Optional[str] = None
    tol: Optional[float] = None


def parse_levels(text: str) -> list[int]:
    """``"k"`` means 0..k; ``"1,3,4"`` is taken literally."""
    try:
        parts = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise InvalidParam(f"--n expects an integer or a comma list, got {text!r}") from None
    if not parts:
        raise InvalidParam("--n is empty")
    if any(p < 0 or p > MAX_DEGREE for p in parts):
        raise InvalidParam(f"quantum numbers must lie in 0..{MAX_DEGREE}")
    if len(parts) == 1 and "," not in text:
        return list(range(parts[0] + 1))
    return parts


def parse_z(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise InvalidParam(f"--z expects 're' or 're,im', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gho", description="Generalized harmonic oscillator with position-dependent mass")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", help="list the mass catalog")

    def common(p):
        p.add_argument("--mass", default="constant", help="mass kind, e.g. rational-square")
        p.add_argument("--a", type=float, help="mass parameter a")
        p.add_argument("--q", type=float, help="mass parameter q (lorentz-square)")
        p.add_argument("--profile", help="CSV with x,m columns (custom mass)")
        p.add_argument("--grid-n", type=int, dest="grid_n", help="grid points")
        p.add_argument("--xlo", type=float, dest="x_lo")
        p.add_argument("--xhi", type=float, dest="x_hi")
        p.add_argument("--out", help="output path (stdout if omitted)")

    p = sub.add_parser("curves", help="emit m, mu, V, V_eff and psi_n as CSV")
    common(p)
    p.add_argument("-n", "--n", default="0", dest="levels", help="k (0..k) or comma list of quantum numbers")

    p = sub.add_parser("verify", help="run the spectral verification and write a JSON report")
    common(p)
    p.add_argument("--tol", type=float, help="eigenvalue tolerance override")

    p = sub.add_parser("coherent", help="emit a coherent-state profile (CSV) and moments (JSON)")
    common(p)
    p.add_argument("--z", default="0", help="amplitude 're,im'")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if args.command == "catalog":
        return cfg
    cfg.mass = args.mass
    cfg.params = {k: v for k, v in (("a", args.a), ("q", args.q)) if v is not None}
    cfg.profile = args.profile
    cfg.grid_n, cfg.x_lo, cfg.x_hi, cfg.out = args.grid_n, args.x_lo, args.x_hi, args.out
    if cfg.grid_n is not None and cfg.grid_n < 9:
        raise InvalidParam("--grid-n must be at least 9")
    if args.command == "curves":
        cfg.levels = parse_levels(args.levels)
    elif args.command == "verify":
        cfg.tol = args.tol
        if cfg.tol is not None and not cfg.tol > 0:
            raise InvalidParam("--tol must be positive")
    elif args.command == "coherent":
        cfg.z = parse_z(args.z)
    return cfg


def _spec(cfg: RunConfig):
    kind = MassKind.parse(cfg.mass)
    profile = read_profile_csv(cfg.profile) if cfg.profile else None
    if profile is not None and kind is not MassKind.CUSTOM:
        raise InvalidParam("--profile requires --mass custom")
    return make_mass(kind, cfg.params, custom_profile=profile)


def _setup(cfg: RunConfig):
    spec = _spec(cfg)
    mumap = mu_map(spec)
    rc = classify_range(mumap)
    grid = auto_grid(spec, mumap, cfg.grid_n, x_lo=cfg.x_lo, x_hi=cfg.x_hi)
    return spec, mumap, rc, grid


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], columns: Sequence[np.ndarray]) -> str:
    buf = io.StringIO()
    np.savetxt(buf, np.column_stack(columns), delimiter=",", fmt=FLOAT_FMT,
               header=",".join(header), comments="")
    return buf.getvalue()


def cmd_catalog(cfg: RunConfig) -> int:
    rows = [("kind", "params", "m(x)", "mu(x)", "note")]
    for e in CATALOG:
        rows.append((e.kind.value, ",".join(e.params) or "-", e.mass, e.mu, e.note))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_curves(cfg: RunConfig) -> int:
    spec, mumap, rc, grid = _setup(cfg)
    x = grid.x
    mu = mumap.mu(x)
    v_eff = np.asarray(effective_potential(spec, gho_ordering(), mumap, x), dtype=float)
    states = eigenfunctions(spec, mumap, rc, max(cfg.levels), grid)
    header = ["x", "m", "mu", "V", "V_eff"] + [f"psi_{n}" for n in cfg.levels]
    cols = [x, spec(x), mu, 0.5 * mu * mu, v_eff] + [states[n].values.real for n in cfg.levels]
    _emit(_csv(header, cols), cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    spec = _spec(cfg)
    vc = VerifyConfig(grid_n=cfg.grid_n, x_lo=cfg.x_lo, x_hi=cfg.x_hi)
    if cfg.tol is not None:
        vc = replace(vc, eig_tol=cfg.tol)
    report = verify(spec, vc)
    _emit(report.to_json(), cfg.out)
    print(f"{report.mass_id}: {report.verdict}", file=sys.stderr)
    return 1 if report.verdict == "FAIL" else 0


def _json_path(out: str) -> str:
    p = Path(out)
    return str(p.with_suffix(".json")) if p.suffix != ".json" else str(p) + ".json"


def cmd_coherent(cfg: RunConfig) -> int:
    spec, mumap, rc, grid = _setup(cfg)
    cs = make_coherent(cfg.z)
    wf = coherent_wavefunction(spec, mumap, rc, cs, grid)
    psi = wf.values
    csv_text = _csv(["x", "re", "im", "abs2"], [grid.x, psi.real, psi.imag, np.abs(psi) ** 2])
    mu1, mu2 = expectation_mu(cs)
    pi1, pi2 = expectation_pi(cs)
    dmu, dpi = uncertainties(cs)
    doc = {
        "mass_id": spec.name,
        "z": [cs.z.real, cs.z.imag],
        "n_trunc": cs.n_trunc,
        "grid": grid.summary(),
        "mu": mu1, "mu2": mu2, "pi": pi1, "pi2": pi2,
        "delta_mu": dmu, "delta_pi": dpi,
        "quadrature": quadrature_moments(spec, mumap, wf),
    }
    json_text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        write_atomic(cfg.out, csv_text)
        write_atomic(_json_path(cfg.out), json_text)
    else:
        sys.stdout.write(json_text)
    return 0


COMMANDS = {"catalog": cmd_catalog, "curves": cmd_curves, "verify": cmd_verify, "coherent": cmd_coherent}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (GHOError, ValueError, OSError) as exc:
        print(f"gho {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
