"""Command-line front end.

Subcommands: critical-points, predict, invariant, verify,
export-eigenfunction, group-tables.  Options come from an optional JSON
config file plus command-line overrides; the wave frequency is accepted only
as a rational string "p/q".  Exit codes: 0 success, 2 degenerate-parameter
rejection, 3 internal exactness failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bifurcation import (
    h_fixed_invariant,
    local_invariant,
    predict_branches,
    prediction_report_json,
    symmetry_relations,
)
from .burnside import multiplication_table
from .errors import DegenerateParameterError, ExactnessError
from .groups import dihedral_group, gamma_prime_lattice
from .reps import character_table, cycle_laplacian_eigendata
from .spectrum import (
    ModelParams,
    enumerate_critical_points,
    linear_curve,
    rho,
    sigmoid_curve,
)
from . import verify as verify_mod

SCHEMA_VERSION = "1"

FORMULA_TAGS = {
    "beta0": "beta0 = delta*m / sin(m*tau)",
    "alpha0": "alpha0 = zeta_inv((nu^2 m^2 - n^2 - delta*m*cot(m*tau)) / (z_j + 1))",
    "rho": "rho = sign(-zeta'(alpha0)*(z_j+1)*sin(m*tau))",
    "mu": "mu = (-nu^2 m^2 + n^2 + i*delta*m + zeta(alpha)(z_j+1) + beta*e^{-i m tau}) / xi",
    "xi": "xi = -nu^2 m^2 + n^2 + i*delta*m + 1",
    "z": "z_j = 4 sin^2(pi j / N)",
    "sigma_min": "smallest singular value of the assembled linearization",
}


def _parse_nu(text: str) -> Fraction:
    """Wave frequency must arrive as an exact rational "p/q" (or integer)."""
    text = str(text).strip()
    parts = text.split("/")
    if not all(p.lstrip("+-").isdigit() for p in parts) or len(parts) > 2:
        raise ValueError(f'wave frequency must be a rational "p/q", got {text!r}')
    return Fraction(text)


@dataclasses.dataclass
class RunConfig:
    nu: str = "1/1"
    delta: float = 1.0
    tau: float = 2.0
    N: int = 3
    zeta: str = "sigmoid"
    m_max: int = 5
    n_max: int = 5
    mode: str = "h-fixed"  # "full" | "h-fixed"
    prediction_mode: str = "global"  # "local" | "global"
    m: int | None = None
    n: int | None = None
    j: int | None = None
    kind: str = "H"
    alpha: float | None = None
    beta: float | None = None
    grid_t: int = 128
    grid_x: int = 64
    ring_radius: float = 0.1
    ring_points: int = 8
    characters: bool = False
    mu_zero_tol: float = 1e-9
    symmetry_tol: float = 1e-12
    zeta_table: list | None = None  # [[alpha, value], ...] for the table curve
    eigendata: list | None = None  # [[j, z, multiplicity], ...] override
    out: str | None = None

    def params(self) -> ModelParams:
        frac = _parse_nu(self.nu)
        if self.zeta == "sigmoid":
            curve = sigmoid_curve()
        elif self.zeta == "linear":
            curve = linear_curve()
        elif self.zeta == "table":
            if not self.zeta_table:
                raise ValueError("table coupling curve needs zeta_table points")
            from .spectrum import table_curve

            curve = table_curve([tuple(p) for p in self.zeta_table])
        else:
            raise ValueError(f"unknown coupling curve {self.zeta!r}")
        eig = None
        if self.eigendata:
            from .reps import LaplacianEigendata

            eig = LaplacianEigendata(
                tuple((int(j), float(z), int(mult)) for j, z, mult in self.eigendata)
            )
        return ModelParams(
            nu=frac, delta=self.delta, tau=self.tau, N=self.N, zeta=curve, eigendata=eig
        )


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        data = json.loads(Path(args.config).read_text())
        for key, value in data.items():
            if not hasattr(cfg, key):
                raise ValueError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for field in dataclasses.fields(RunConfig):
        value = getattr(args, field.name.replace("-", "_"), None)
        if value is not None:
            setattr(cfg, field.name, value)
    return cfg


def _emit(payload, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_critical_points(cfg: RunConfig) -> int:
    params = cfg.params()
    pts = enumerate_critical_points(params, cfg.m_max, cfg.n_max, odd_m_only=cfg.mode == "h-fixed")
    rows = [
        {
            "m": p.quad.m,
            "n": p.quad.n,
            "j": p.quad.j,
            "k": p.quad.k,
            "alpha": p.alpha,
            "beta": p.beta,
            "rho": rho(p.quad.m, p.quad.n, p.quad.j, p.quad.k, params, (p.alpha, p.beta)),
        }
        for p in pts
    ]
    _emit(
        {
            "schema": SCHEMA_VERSION,
            "formulas": {k: FORMULA_TAGS[k] for k in ("alpha0", "beta0", "rho")},
            "tolerances": {"mu_zero": cfg.mu_zero_tol},
            "window": {"m_max": cfg.m_max, "n_max": cfg.n_max},
            "tau_near_pi_rational": params.tau_near_pi_rational,
            "critical_points": rows,
        },
        cfg.out,
    )
    return 0


def cmd_predict(cfg: RunConfig) -> int:
    params = cfg.params()
    report = predict_branches(params, cfg.m_max, cfg.n_max, mode=cfg.prediction_mode)
    payload = prediction_report_json(params, cfg.m_max, cfg.n_max, report)
    payload["schema"] = SCHEMA_VERSION
    payload["formulas"] = dict(FORMULA_TAGS)
    _emit(payload, cfg.out)
    return 0


def cmd_invariant(cfg: RunConfig) -> int:
    params = cfg.params()
    if cfg.alpha is None or cfg.beta is None:
        if cfg.m is None or cfg.n is None or cfg.j is None:
            raise ValueError("invariant needs either (alpha, beta) or (m, n, j)")
        from .spectrum import critical_point

        got = critical_point(cfg.m, cfg.n, cfg.j, 1, params)
        if got is None:
            raise DegenerateParameterError(
                "no critical point: required coupling value is out of range"
            )
        point = got
    else:
        point = (cfg.alpha, cfg.beta)
    lattice = gamma_prime_lattice(params.N)
    fn = local_invariant if cfg.mode == "full" else h_fixed_invariant
    inv = fn(point, params, lattice, m_max=cfg.m_max, n_max=cfg.n_max)
    ctx = lattice._twisted_context
    _emit(
        {
            "schema": SCHEMA_VERSION,
            "mode": cfg.mode,
            "alpha": point[0],
            "beta": point[1],
            "value": [
                {"orbit_type": ctx.type_str(t), "coeff": v}
                for t, v in inv.value.coeffs
            ],
            "contributions": [
                {"m": q.m, "n": q.n, "j": q.j, "k": q.k, "rho": s}
                for q, s in inv.contributions
            ],
            "sigma_minus": list(inv.sets.sigma_minus),
            "formulas": {k: FORMULA_TAGS[k] for k in ("mu", "rho")},
            "tolerances": {"mu_zero": cfg.mu_zero_tol},
        },
        cfg.out,
    )
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    params = cfg.params()
    if cfg.alpha is not None and cfg.beta is not None:
        point = (cfg.alpha, cfg.beta)
    else:
        from .spectrum import critical_point

        got = critical_point(cfg.m or 1, cfg.n or 1, cfg.j or 0, 1, params)
        if got is None:
            raise DegenerateParameterError("no critical point at the given indices")
        point = got
    rows = verify_mod.sigma_min_scan(
        params,
        point,
        cfg.ring_radius,
        m_t=cfg.grid_t,
        m_x=cfg.grid_x,
        n_ring=cfg.ring_points,
    )
    center = rows[0][2]
    ring_min = min(r[2] for r in rows[1:])
    spectral = verify_mod.spectral_eigenvalue_deviation(
        verify_mod.assemble(params, point[0], point[1], "spectral", 12, 10), params
    )
    verdict = "singular" if center <= 0.1 * ring_min else "no singularity"
    if cfg.out:
        path = Path(cfg.out)
        with path.with_suffix(".csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["d_alpha", "d_beta", "sigma_min"])
            writer.writerows(rows)
    _emit(
        {
            "schema": SCHEMA_VERSION,
            "alpha": point[0],
            "beta": point[1],
            "grid": [cfg.grid_t, cfg.grid_x],
            "ring_radius": cfg.ring_radius,
            "sigma_min_center": center,
            "sigma_min_ring_min": ring_min,
            "spectral_deviation": spectral,
            "verdict": verdict,
            "formulas": {"sigma_min": FORMULA_TAGS["sigma_min"]},
            "tolerances": {"spectral": 1e-10, "singularity_ratio": 0.1},
        },
        cfg.out,
    )
    return 0


def cmd_export_eigenfunction(cfg: RunConfig) -> int:
    params = cfg.params()
    m, n, j = cfg.m or 1, cfg.n or 1, cfg.j or 0
    grid = verify_mod.eigenfunction(params.N, m, n, j, cfg.kind, cfg.grid_t, cfg.grid_x)
    rels = symmetry_relations(cfg.kind, params.N, m, n, j)
    checks = verify_mod.symmetry_check(grid, rels, tol=cfg.symmetry_tol)
    if not all(r["pass"] for r in checks.values()):
        raise ExactnessError("exported eigenfunction violates its own relations")
    out = cfg.out or f"eigenfunction_{cfg.kind}_{m}_{n}_{j}.csv"
    with Path(out).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "x"] + [f"u{i+1}" for i in range(params.N)])
        for ti, t in enumerate(grid.t_grid):
            for xi_, x in enumerate(grid.x_grid):
                writer.writerow([f"{t:.16g}", f"{x:.16g}"] + [
                    f"{v:.16g}" for v in grid.values[ti, xi_]
                ])
    summary = {
        "schema": SCHEMA_VERSION,
        "kind": cfg.kind,
        "m": m,
        "n": n,
        "j": j,
        "grid": [cfg.grid_t, cfg.grid_x],
        "relations": [r.to_json() for r in rels],
        "max_violation": max(r["violation"] for r in checks.values()),
        "tolerances": {"symmetry": cfg.symmetry_tol},
        "csv": str(out),
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_group_tables(cfg: RunConfig) -> int:
    params = cfg.params()
    lattice = gamma_prime_lattice(params.N)
    outdir = Path(cfg.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    with (outdir / "classes.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["class", "order", "weyl", "representative"])
        for c in range(lattice.n_classes):
            rep = lattice.reps[c]
            writer.writerow([c, rep.order, lattice.weyl[c], " ".join(map(str, rep.elems))])
    with (outdir / "subconjugation.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["H", "K", "n(H,K)"])
        for h in range(lattice.n_classes):
            for k in range(lattice.n_classes):
                if lattice.n_table[h][k]:
                    writer.writerow([h, k, lattice.n_table[h][k]])
    table = multiplication_table(lattice)
    with (outdir / "burnside_products.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["H", "K", "L", "coeff"])
        for (h, k), prod in sorted(table.items()):
            for low, coeff in sorted(prod.items()):
                writer.writerow([h, k, low, coeff])
    if cfg.characters:
        dn = dihedral_group(params.N)
        with (outdir / "characters.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            elems = [dn.elements[i] for i in range(dn.order)]
            writer.writerow(["irrep"] + [str(e) for e in elems])
            for ir in character_table(params.N):
                writer.writerow([ir.label] + [f"{ir.char(e):.12g}" for e in elems])
    eig = cycle_laplacian_eigendata(params.N)
    with (outdir / "laplacian.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["j", "z", "multiplicity"])
        for j, z, mult in eig.entries:
            writer.writerow([j, f"{z:.16g}", mult])
    print(json.dumps({"schema": SCHEMA_VERSION, "outdir": str(outdir)}, sort_keys=True))
    return 0


COMMANDS = {
    "critical-points": cmd_critical_points,
    "predict": cmd_predict,
    "invariant": cmd_invariant,
    "verify": cmd_verify,
    "export-eigenfunction": cmd_export_eigenfunction,
    "group-tables": cmd_group_tables,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringwaves",
        description="Symmetry-certified bifurcation predictions for a ring of "
        "delayed, damped coupled wave equations.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--nu", help='wave frequency as a rational "p/q"')
    parser.add_argument("--delta", type=float, help="damping coefficient")
    parser.add_argument("--tau", type=float, help="feedback delay")
    parser.add_argument("--N", type=int, help="number of strings (>= 3)")
    parser.add_argument(
        "--zeta", choices=["sigmoid", "linear", "table"], help="coupling curve"
    )
    parser.add_argument("--m-max", dest="m_max", type=int)
    parser.add_argument("--n-max", dest="n_max", type=int)
    parser.add_argument("--mode", choices=["full", "h-fixed"])
    parser.add_argument("--prediction-mode", dest="prediction_mode", choices=["local", "global"])
    parser.add_argument("--m", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--j", type=int)
    parser.add_argument("--kind", choices=["H", "S", "T"])
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--grid-t", dest="grid_t", type=int)
    parser.add_argument("--grid-x", dest="grid_x", type=int)
    parser.add_argument("--ring-radius", dest="ring_radius", type=float)
    parser.add_argument("--ring-points", dest="ring_points", type=int)
    parser.add_argument("--characters", action="store_const", const=True)
    parser.add_argument("--mu-zero-tol", dest="mu_zero_tol", type=float)
    parser.add_argument("--symmetry-tol", dest="symmetry_tol", type=float)
    parser.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        return COMMANDS[args.command](cfg)
    except DegenerateParameterError as exc:
        print(f"degenerate parameters: {exc}", file=sys.stderr)
        return 2
    except ExactnessError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
