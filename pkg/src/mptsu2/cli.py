"""Command-line interface: spectra, matrix elements, verification, models.

All output is machine-readable (CSV or JSON), fully deterministic, and uses
17 significant digits so floats round-trip exactly.  Exit codes: 0 success,
1 verification failure, 2 usage or domain error, 3 internal numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any

import numpy as np

from . import __version__
from .checks import SUITES, suite_for
from .errors import DomainError, EvaluationError
from .expansion import (
    interaction_frequency,
    momentum_matrix_expansion,
    position_matrix_expansion,
)
from .ladder import OperatorMatrix, cosh_ddx_matrix, sinh_matrix
from .oracle import (
    COSH_DDX_OVER_ALPHA,
    DDX,
    POSITION_X,
    SINH_ALPHA_X,
    OracleConfig,
    observable_matrix,
)
from .states import PotentialSpec, bound_state_labels, energy, well_numbers
from .vibron import (
    SpectroParams,
    approx_interaction,
    compare_models,
    diagonal_energies,
    exact_interaction,
    pair_basis,
    spectro_from_potential,
    spectrum,
    su2_hamiltonian,
    vibron_params_from_spectro,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _add_well_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, default=None,
                        help="integer well parameter (dimensionless preset)")
    parser.add_argument("--D", type=float, default=None, help="well depth")
    parser.add_argument("--alpha", type=float, default=None, help="range parameter")
    parser.add_argument("--mu", type=float, default=None, help="reduced mass")
    parser.add_argument("--hbar", type=float, default=None, help="action constant")


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default csv)")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--oracle-order", type=int, default=None,
                        help="quadrature rule order for oracle integrals")
    parser.add_argument("--oracle-panels", type=int, default=None,
                        help="quadrature panel count for oracle integrals")
    parser.add_argument("--config", default=None,
                        help="JSON config file; explicit flags override its values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mptsu2",
        description="Modified Poschl-Teller oscillator: spectra, su(2) ladder "
                    "matrix elements, generator expansions, and coupled-model "
                    "comparison.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="bound-state energies and labels")
    _add_well_arguments(p_spec)
    _add_output_arguments(p_spec)

    p_mat = sub.add_parser("matelem", help="matrix elements of one operator")
    _add_well_arguments(p_mat)
    _add_output_arguments(p_mat)
    p_mat.add_argument("--op", choices=("sinh", "coshd", "x", "p"), required=True)
    p_mat.add_argument("--method", choices=("closed", "oracle", "expansion"),
                       required=True)
    p_mat.add_argument("--order", type=int, default=None,
                       help="expansion order (x: 1/3/5, p: 1/3)")

    p_ver = sub.add_parser("verify", help="run invariant suites")
    _add_well_arguments(p_ver)
    _add_output_arguments(p_ver)
    p_ver.add_argument("--suite", choices=SUITES, default="all")
    p_ver.add_argument("--nu", type=int, default=None,
                       help="multiplet dimension for the algebra suite")
    p_ver.add_argument("--lambda", dest="lam", type=float, default=0.05,
                       help="coupling used by the vibron suite")

    p_vib = sub.add_parser("vibron", help="coupled two-oscillator spectra")
    _add_well_arguments(p_vib)
    _add_output_arguments(p_vib)
    p_vib.add_argument("--lambda", dest="lam", type=float, required=True)
    p_vib.add_argument("--model",
                       choices=("su2", "exact", "crude", "zA-zB", "compare"),
                       required=True)

    p_par = sub.add_parser("params", help="well / spectroscopic / algebraic maps")
    _add_well_arguments(p_par)
    _add_output_arguments(p_par)
    p_par.add_argument("--omega-e", dest="omega_e", type=float, default=None)
    p_par.add_argument("--xe-omega-e", dest="xe_omega_e", type=float, default=None)

    return parser


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset options from an optional JSON config file."""
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path, "r", encoding="utf-8") as fh:
        values = json.load(fh)
    if not isinstance(values, dict):
        raise DomainError("config file must hold a JSON object")
    for key, value in values.items():
        attr = key.replace("-", "_")
        if attr == "lambda":
            attr = "lam"
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)


def _resolve_spec(args: argparse.Namespace, required: bool = True) -> PotentialSpec | None:
    q = getattr(args, "q", None)
    depth = getattr(args, "D", None)
    if q is not None and depth is not None:
        raise DomainError("specify the well by exactly one of --q or --D")
    alpha = args.alpha if args.alpha is not None else 1.0
    mu = args.mu if args.mu is not None else 1.0
    hbar = args.hbar if args.hbar is not None else 1.0
    if q is not None:
        return PotentialSpec.for_integer_q(q, alpha=alpha, mu=mu, hbar=hbar)
    if depth is not None:
        return PotentialSpec(D=depth, alpha=alpha, mu=mu, hbar=hbar)
    if required:
        raise DomainError("a well must be specified via --q or --D")
    return None


def _resolve_oracle(args: argparse.Namespace) -> OracleConfig:
    kwargs: dict[str, Any] = {}
    if getattr(args, "oracle_order", None) is not None:
        kwargs["rule_order"] = args.oracle_order
    if getattr(args, "oracle_panels", None) is not None:
        kwargs["panels"] = args.oracle_panels
    return OracleConfig(**kwargs)


def _well_summary(spec: PotentialSpec | None) -> dict[str, float]:
    if spec is None:
        return {}
    wn = well_numbers(spec)
    return {
        "D": spec.D, "alpha": spec.alpha, "mu": spec.mu, "hbar": spec.hbar,
        "q": wn.q, "nu": wn.nu, "n_max": wn.n_max,
    }


def _format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(command: str, well: dict, rows: list[dict], meta: dict,
          args: argparse.Namespace) -> None:
    fmt = args.format if args.format is not None else "csv"
    if fmt == "json":
        payload = {"command": command, "well": well, "rows": rows, "meta": meta}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        columns = list(rows[0].keys()) if rows else []
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in columns])
        text = buffer.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(**tolerances: float) -> dict:
    return {"tolerances": tolerances, "versions": {"mptsu2": __version__}}


def _cmd_spectrum(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    labels = bound_state_labels(spec)
    if not labels:
        sys.stderr.write("error: the well supports no bound states\n")
        return EXIT_USAGE
    rows = [
        {"n": lab.n, "epsilon": lab.epsilon, "m": lab.m,
         "energy": energy(spec, lab.n)}
        for lab in labels
    ]
    _emit("spectrum", _well_summary(spec), rows, _meta(), args)
    return EXIT_OK


def _matrix_rows(matrix: OperatorMatrix,
                 reference: np.ndarray | None = None) -> list[dict]:
    rows = []
    for i in range(matrix.dim):
        for j in range(matrix.dim):
            row = {"row": i, "col": j, "value": float(matrix.entries[i, j])}
            if reference is not None:
                row["deviation"] = float(abs(matrix.entries[i, j] - reference[i, j]))
            rows.append(row)
    return rows


def _cmd_matelem(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    cfg = _resolve_oracle(args)
    wn = well_numbers(spec)
    if not wn.q_is_integer:
        raise DomainError("matrix elements need an integer well parameter q")
    nu = int(round(wn.nu))
    op, method = args.op, args.method
    if method == "closed" and op not in ("sinh", "coshd"):
        sys.stderr.write("error: closed forms exist only for sinh and coshd\n")
        return EXIT_USAGE
    if method == "expansion" and op not in ("x", "p"):
        sys.stderr.write("error: expansions exist only for x and p\n")
        return EXIT_USAGE
    meta = _meta()
    if op == "p":
        meta["momentum_convention"] = "matrix is R; momentum = -i hbar R"
    observables = {"sinh": SINH_ALPHA_X, "coshd": COSH_DDX_OVER_ALPHA,
                   "x": POSITION_X, "p": DDX}
    if method == "closed":
        matrix = sinh_matrix(nu) if op == "sinh" else cosh_ddx_matrix(nu)
        rows = _matrix_rows(matrix)
    elif method == "oracle":
        rows = _matrix_rows(observable_matrix(spec, observables[op], cfg))
    else:
        order = args.order if args.order is not None else 1
        if op == "x":
            matrix = position_matrix_expansion(nu, spec.alpha, order)
        else:
            matrix = momentum_matrix_expansion(nu, spec.alpha, spec.hbar, order)
        reference = observable_matrix(spec, observables[op], cfg).entries
        rows = _matrix_rows(matrix, reference)
        meta["expansion_order"] = order
        if order == 5:
            meta["note"] = ("order 5 extrapolates the series one term past the "
                            "validated truncation")
    _emit("matelem", _well_summary(spec), rows, meta, args)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args, required=False)
    cfg = _resolve_oracle(args)
    results = suite_for(args.suite, spec, args.nu, lam=args.lam, cfg=cfg)
    rows = [
        {"check": r.name, "measured": r.measured, "tolerance": r.tolerance,
         "status": "pass" if r.passed else "fail"}
        for r in results
    ]
    _emit("verify", _well_summary(spec), rows,
          _meta(), args)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def _cmd_vibron(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    cfg = _resolve_oracle(args)
    wn = well_numbers(spec)
    if not wn.q_is_integer:
        raise DomainError("coupled models need an integer well parameter q")
    q = int(round(wn.q))
    nu = int(round(wn.nu))
    lam = args.lam
    if args.model == "compare":
        report = compare_models(spec, lam, cfg)
        rows = []
        for i in range(report.dim):
            rows.append({
                "index": i,
                "polyad": report.polyads[i],
                "e_su2": report.eigenvalues["su2"][i],
                "e_exact": report.eigenvalues["exact"][i],
                "e_crude": report.eigenvalues["crude"][i],
                "e_zazb": report.eigenvalues["zA-zB"][i],
                "dev_su2": report.deviations["su2"][i],
                "dev_crude": report.deviations["crude"][i],
                "dev_zazb": report.deviations["zA-zB"][i],
            })
        meta = _meta()
        meta["max_low_polyad_deviation"] = {
            k: report.max_low_polyad_deviation[k] for k in sorted(
                report.max_low_polyad_deviation)}
        _emit("vibron", _well_summary(spec), rows, meta, args)
        return EXIT_OK
    basis = pair_basis(wn.n_max + 1)
    if args.model == "su2":
        vp = vibron_params_from_spectro(spectro_from_potential(spec), lam=lam,
                                        hbar=spec.hbar)
        matrix = su2_hamiltonian(vp, basis).entries
    else:
        diag = diagonal_energies(spec, basis).entries
        if args.model == "exact":
            if q < 3:
                raise DomainError("the exact coupled model requires q >= 3")
            matrix = diag + exact_interaction(spec, basis, lam, cfg).entries
        else:
            omega = interaction_frequency(spec)
            matrix = diag + approx_interaction(nu, lam, omega, spec.hbar,
                                               args.model).entries
    values = spectrum(matrix)
    polyads = basis.polyads
    rows = [{"index": i, "eigenvalue": v} for i, v in enumerate(values)]
    meta = _meta()
    meta["model"] = args.model
    meta["lambda"] = lam
    meta["basis_polyads"] = list(polyads)
    _emit("vibron", _well_summary(spec), rows, meta, args)
    return EXIT_OK


def _cmd_params(args: argparse.Namespace) -> int:
    from_spectro = args.omega_e is not None or args.xe_omega_e is not None
    if from_spectro:
        if args.omega_e is None or args.xe_omega_e is None:
            raise DomainError("both --omega-e and --xe-omega-e are required together")
        if getattr(args, "q", None) is not None or getattr(args, "D", None) is not None:
            raise DomainError("specify either a well or spectroscopic constants, not both")
        sp = SpectroParams(args.omega_e, args.xe_omega_e)
        hbar = args.hbar if args.hbar is not None else 1.0
        ratio = sp.omega_e / sp.xe_omega_e - 1.0
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            sys.stderr.write(
                f"error: well is not su(2)-compatible, boson number would be {ratio}\n")
            return EXIT_USAGE
        vp = vibron_params_from_spectro(sp, hbar=hbar)
        q = vp.N // 2
        if vp.N % 2 != 0:
            sys.stderr.write(
                f"error: boson number {vp.N} is odd; no integer-q well matches\n")
            return EXIT_USAGE
        alpha = args.alpha if args.alpha is not None else 1.0
        mu = args.mu if args.mu is not None else 1.0
        spec = PotentialSpec.for_integer_q(q, alpha=alpha, mu=mu, hbar=hbar)
    else:
        spec = _resolve_spec(args)
        sp = spectro_from_potential(spec)
        try:
            vp = vibron_params_from_spectro(sp, hbar=spec.hbar)
        except DomainError:
            ratio = sp.omega_e / sp.xe_omega_e - 1.0
            sys.stderr.write(
                f"error: well is not su(2)-compatible, boson number would be {ratio}\n")
            return EXIT_USAGE
    wn = well_numbers(spec)
    rows = [{
        "D": spec.D, "alpha": spec.alpha, "mu": spec.mu, "hbar": spec.hbar,
        "omega_e": sp.omega_e, "xe_omega_e": sp.xe_omega_e,
        "N": vp.N, "hbar_omega0": vp.energy_quantum,
        "q": wn.q, "nu": wn.nu,
    }]
    _emit("params", _well_summary(spec), rows, _meta(), args)
    return EXIT_OK


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "matelem": _cmd_matelem,
    "verify": _cmd_verify,
    "vibron": _cmd_vibron,
    "params": _cmd_params,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return _COMMANDS[args.command](args)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (EvaluationError, ArithmeticError, np.linalg.LinAlgError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_INTERNAL
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
