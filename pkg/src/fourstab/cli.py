"""Command-line surface: builders, spectra, bounds, classification, sweeps.

Subcommands: build, spectral, bounds, classify, verify, experiment.
Torus-valued inputs accept exact fractions ("1/2") as well as decimals so
degenerate rational cases can be expressed without rounding.  Exit codes:
0 success, 1 computation failure (JSON error object on stderr), 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from . import experiments as exp
from . import verify as verify_mod
from .core_matrix import (
    ComplexDense,
    FrequencySet,
    NodeSet,
    build_dft,
    build_figure1,
    build_gamma,
    build_instability_submatrix,
    build_vandermonde,
)
from .exp_systems import ExponentialSystemSpec, classify_system
from .spectral import svd_values

__all__ = ["main", "dispatch", "load_config", "CliConfig"]


def parse_real(text: str) -> float:
    """Parse a real number; fractions "p/q" are evaluated exactly."""
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def parse_scalars(text: str) -> list[float]:
    return [parse_real(tok) for tok in text.split(",") if tok.strip()]


def parse_points(text: str) -> list[list[float]]:
    """Semicolon-separated points with comma-separated components.

    Without semicolons the text is a list of scalars (dimension one).
    """
    if ";" in text:
        return [parse_scalars(part) for part in text.split(";") if part.strip()]
    return [[x] for x in parse_scalars(text)]


def parse_ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


@dataclass
class CliConfig:
    command: str
    experiment: str = ""
    params: dict = field(default_factory=dict)
    seed: int = 0
    format: str = "json"
    output: str | None = None


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"config field {field_name!r}: {message}")
        self.field_name = field_name


_EXPERIMENT_FIELDS = {
    "figure1": ("n_list",),
    "freq_stability": ("m", "ell_grid"),
    "node_stability": ("L", "n", "ell_grid"),
    "wellsep": ("L_grid",),
    "benchmark": ("m",),
    "clump": ("L", "n", "alpha_grid", "lambda"),
}


def load_config(path: str) -> CliConfig:
    """Load and validate an experiment config file with defaults applied."""
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError("path", f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError("json", f"invalid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError("json", "top level must be an object")
    if "command" not in doc:
        raise ConfigError("command", "missing")
    command = doc["command"]
    if command != "experiment":
        raise ConfigError("command", f"unsupported command {command!r}")
    if "experiment" not in doc:
        raise ConfigError("experiment", "missing")
    name = doc["experiment"]
    if name not in _EXPERIMENT_FIELDS:
        raise ConfigError("experiment", f"unknown experiment {name!r} (choices: {sorted(_EXPERIMENT_FIELDS)})")
    for required in _EXPERIMENT_FIELDS[name]:
        if required not in doc:
            raise ConfigError(required, f"missing (required by experiment {name!r})")
    fmt = doc.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError("format", f"must be 'json' or 'csv', got {fmt!r}")
    seed = doc.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed", "must be an integer")
    trials = doc.get("trials", 1)
    if not isinstance(trials, int) or trials < 1:
        raise ConfigError("trials", "must be a positive integer")
    params = {k: v for k, v in doc.items() if k not in ("command", "experiment", "seed", "format", "output")}
    params["trials"] = trials
    return CliConfig(
        command=command,
        experiment=name,
        params=params,
        seed=seed,
        format=fmt,
        output=doc.get("output"),
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourstab",
        description="Generalized Fourier matrices: construction, spectra, stability bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix_source(p: argparse.ArgumentParser) -> None:
        p.add_argument("--m", "--dft", dest="m", help="DFT lattice sides, e.g. 4 or 2,3")
        p.add_argument("--deltas", help="torus offsets (with --p builds the associated matrix)")
        p.add_argument("--p", help="integer vectors, e.g. 0,1 or 0,0;1,1")
        p.add_argument("--nodes", help="Vandermonde nodes (with --L)")
        p.add_argument("--L", type=int, help="Vandermonde row count")
        p.add_argument("--instability", type=int, help="leading submatrix of the (n+1)-DFT, n odd")
        p.add_argument("--figure1", type=int, help="sign-perturbed DFT of odd size n")

    p_build = sub.add_parser("build", help="construct a matrix and emit it")
    add_matrix_source(p_build)
    p_build.add_argument("--out", help="output path (default stdout)")
    p_build.add_argument("--format", choices=("json", "csv"), default="json")

    p_spec = sub.add_parser("spectral", help="singular values and condition number")
    add_matrix_source(p_spec)
    p_spec.add_argument("--input", help="matrix JSON file produced by build")
    p_spec.add_argument("--out", help="output path (default stdout)")

    p_bounds = sub.add_parser("bounds", help="evaluate a closed-form stability bound")
    p_bounds.add_argument(
        "--theorem",
        required=True,
        choices=(
            "kadec",
            "dft-freq",
            "t3",
            "weyl-freq",
            "weyl-node",
            "vandermonde-node",
            "rectangular",
            "wellsep",
            "clump",
            "instability",
        ),
    )
    p_bounds.add_argument("--m", help="DFT lattice sides")
    p_bounds.add_argument("--ell", help="sup-norm perturbation size (fractions ok)")
    p_bounds.add_argument("--rank-one", action="store_true")
    p_bounds.add_argument("--a", help="lower frame constant")
    p_bounds.add_argument("--b", help="upper frame constant")
    p_bounds.add_argument("--d", type=int, default=1, help="dimension")
    p_bounds.add_argument("--sigma-r", help="smallest relevant singular value")
    p_bounds.add_argument("--sigma-1", help="largest singular value")
    p_bounds.add_argument("--L", type=int, help="row count")
    p_bounds.add_argument("--n", type=int, help="column count / matrix size")
    p_bounds.add_argument("--p", help="frequency points (weyl-node) ")
    p_bounds.add_argument("--p-norm", default="inf", help="perturbation norm exponent p")
    p_bounds.add_argument("--eps", help="additive perturbation size")
    p_bounds.add_argument("--sep", help="minimum node separation")
    p_bounds.add_argument("--alpha", help="intra-cluster spacing")
    p_bounds.add_argument("--lambda", dest="lam", type=int, help="cluster size cap")
    p_bounds.add_argument("--c-universal", default="1.0")
    p_bounds.add_argument("--c-small", default="1.0")
    p_bounds.add_argument("--out", help="output path (default stdout)")

    p_cls = sub.add_parser("classify", help="classify an exponential system")
    p_cls.add_argument("--deltas", required=True)
    p_cls.add_argument("--p", required=True)
    p_cls.add_argument("--tol", help="rank tolerance override")
    p_cls.add_argument("--out", help="output path (default stdout)")

    p_ver = sub.add_parser("verify", help="run the invariant suites")
    p_ver.add_argument("--seed", type=int, default=0)

    p_exp = sub.add_parser("experiment", help="run a named sweep from a JSON config")
    p_exp.add_argument("--config", required=True)
    p_exp.add_argument("--seed", type=int, help="override the config seed")
    p_exp.add_argument("--trials", type=int, help="override the config trial count")
    p_exp.add_argument("--out", help="override the config output path")
    p_exp.add_argument("--format", choices=("json", "csv"), help="override the config format")
    return parser


def _matrix_from_args(args) -> ComplexDense:
    if getattr(args, "input", None):
        return ComplexDense.from_json(Path(args.input).read_text())
    if args.m:
        return build_dft(parse_ints(args.m))
    if args.deltas and args.p:
        return build_gamma(NodeSet(parse_points(args.deltas)), FrequencySet(parse_points(args.p)))
    if args.nodes and args.L:
        return build_vandermonde(args.L, [x[0] for x in parse_points(args.nodes)])
    if args.instability:
        return build_instability_submatrix(args.instability)
    if args.figure1:
        return build_figure1(args.figure1)
    raise ValueError(
        "no matrix source given: use --m, --deltas/--p, --L/--nodes, --instability or --figure1"
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_build(args) -> int:
    mat = _matrix_from_args(args)
    _emit(mat.to_csv() if args.format == "csv" else mat.to_json(), args.out)
    return 0


def _cmd_spectral(args) -> int:
    mat = _matrix_from_args(args)
    _emit(svd_values(mat).to_json(), args.out)
    return 0


def _require(args, names: list[str]) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) in (None, "")]
    if missing:
        raise ValueError(f"--theorem {args.theorem} requires flags: {', '.join('--' + n for n in missing)}")


def _cmd_bounds(args) -> int:
    theorem = args.theorem
    if theorem in ("dft-freq", "t3"):
        _require(args, ["m", "ell"])
        report = bnd.dft_freq_bounds(parse_ints(args.m), parse_real(args.ell), args.rank_one)
    elif theorem == "kadec":
        _require(args, ["a", "b", "ell"])
        report = bnd.perturbed_frame_bounds(
            parse_real(args.a), parse_real(args.b), parse_real(args.ell), args.d, args.rank_one
        )
    elif theorem == "weyl-freq":
        _require(args, ["sigma-r", "sigma-1", "L", "n", "eps"])
        report = bnd.weyl_freq_bounds(
            parse_real(args.sigma_r),
            parse_real(args.sigma_1),
            args.L,
            args.n,
            args.d,
            parse_real(args.p_norm),
            parse_real(args.eps),
        )
    elif theorem == "weyl-node":
        _require(args, ["sigma-r", "sigma-1", "p", "n", "eps"])
        report = bnd.weyl_node_bounds(
            parse_real(args.sigma_r),
            parse_real(args.sigma_1),
            FrequencySet(parse_points(args.p)),
            args.n,
            parse_real(args.p_norm),
            parse_real(args.eps),
        )
    elif theorem in ("vandermonde-node", "rectangular"):
        _require(args, ["sigma-r", "sigma-1", "ell"])
        report = bnd.vandermonde_node_bounds(
            parse_real(args.sigma_r), parse_real(args.sigma_1), parse_real(args.ell)
        )
    elif theorem == "wellsep":
        _require(args, ["L", "sep"])
        report = bnd.wellsep_bounds(args.L, parse_real(args.sep))
    elif theorem == "clump":
        _require(args, ["L", "n", "alpha", "lam"])
        report = bnd.clump_bounds(
            args.L,
            args.n,
            parse_real(args.alpha),
            args.lam,
            parse_real(args.c_universal),
            parse_real(args.c_small),
        )
    else:  # instability
        _require(args, ["n"])
        values = bnd.instability_spectrum(args.n)
        _emit(
            json.dumps(
                {
                    "theorem": "instability_spectrum",
                    "singular_values": values,
                    "condition": values[0] / values[-1],
                }
            ),
            args.out,
        )
        return 0
    _emit(report.to_json(), args.out)
    return 0


def _cmd_classify(args) -> int:
    spec = ExponentialSystemSpec(NodeSet(parse_points(args.deltas)), FrequencySet(parse_points(args.p)))
    tol = parse_real(args.tol) if args.tol else None
    _emit(classify_system(spec, tol).to_json(), args.out)
    return 0


def _cmd_verify(args) -> int:
    results = verify_mod.run_all(seed=args.seed)
    failures = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failures += 0 if ok else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def _run_experiment(cfg: CliConfig) -> int:
    params = cfg.params
    sweep_cfg = exp.SweepConfig(
        seed=cfg.seed,
        trials=params.get("trials", 1),
        crossover=params.get("crossover", exp.CROSSOVER_DIM),
        output_path=cfg.output,
    )
    name = cfg.experiment
    if name == "figure1":
        records = exp.figure1_sweep(params["n_list"], sweep_cfg)
    elif name == "freq_stability":
        records = exp.freq_stability_sweep(
            params["m"], params["ell_grid"], params.get("rank_one", False), sweep_cfg
        )
    elif name == "node_stability":
        records = exp.node_stability_sweep(params["L"], params["n"], params["ell_grid"], sweep_cfg)
    elif name == "wellsep":
        records = exp.wellsep_sweep(params["L_grid"], sweep_cfg)
    elif name == "benchmark":
        report = exp.benchmark_comparison(params["m"], sweep_cfg)
        if not cfg.output:
            print(json.dumps(report))
        return 0
    else:  # clump
        constants = params.get("constants", {})
        records = exp.clump_experiment(
            params["L"],
            params["n"],
            params["alpha_grid"],
            params["lambda"],
            (constants.get("c_universal", 1.0), constants.get("c_small", 1.0)),
            sweep_cfg,
        )
    violations = sum(1 for r in records if r.violated)
    if not cfg.output:
        if cfg.format == "csv":
            sys.stdout.write(exp.records_to_csv(records))
        else:
            print(json.dumps({"records": [r.to_dict() for r in records], "violations": violations}))
    return 0 if violations == 0 else 1


def dispatch(argv: list[str]) -> int:
    """Route a command line to its subcommand; returns the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "spectral":
            return _cmd_spectral(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "experiment":
            try:
                cfg = load_config(args.config)
            except ConfigError as exc:
                print(str(exc), file=sys.stderr)
                return 2
            if args.seed is not None:
                cfg.seed = args.seed
            if args.trials is not None:
                cfg.params["trials"] = args.trials
            if args.out is not None:
                cfg.output = args.out
            if args.format is not None:
                cfg.format = args.format
            return _run_experiment(cfg)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, KeyError, OSError, ArithmeticError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
