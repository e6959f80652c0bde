"""Command-line interface: ``qcommunity {partition,compare,phase-sweep,generate}``.

Exit codes: 0 success, 1 user/input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .closeness import MEASURES, regime_label
from .errors import QCommunityError
from .experiments import detect, phase_sweep
from .hermitian import DEFAULT_DEGENERACY_TOL
from .networks import PlantedSpec, ToyConfig, is_connected, perturb, planted_hamiltonian, toy_hamiltonian
from .partition import nmi

log = logging.getLogger("qcommunity")

PLANTED_KEYS = {
    "n": ("n", int),
    "k": ("n_communities", int),
    "deg": ("mean_degree", float),
    "rewire": ("rewire_fraction", float),
    "seed": ("rng_seed", int),
}


class UserError(Exception):
    pass


class StageError(Exception):
    def __init__(self, stage: str, exc: BaseException):
        self.stage = stage
        self.exc = exc
        super().__init__(f"{stage}: {exc}")


@contextlib.contextmanager
def stage(name: str):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (ArithmeticError, np.linalg.LinAlgError)):
        return 2
    if isinstance(exc, (UserError, ValueError, QCommunityError, OSError)):
        return 1
    return 2


def parse_planted(tokens) -> PlantedSpec:
    """Parse ``n=60 k=4 deg=6 rewire=0.05 seed=7`` into a :class:`PlantedSpec`."""
    values = {}
    for tok in tokens:
        key, sep, raw = tok.partition("=")
        if not sep or key not in PLANTED_KEYS:
            raise UserError(f"bad planted parameter {tok!r}; expected key=value with keys {sorted(PLANTED_KEYS)}")
        field, cast = PLANTED_KEYS[key]
        try:
            values[field] = cast(raw)
        except ValueError:
            raise UserError(f"planted parameter {key} has invalid value {raw!r}") from None
    missing = [k for k, (f, _) in PLANTED_KEYS.items() if f not in values and k != "seed"]
    if missing:
        raise UserError(f"planted spec is missing {missing}")
    return PlantedSpec(**values)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UserError(f"expected comma-separated numbers, got {text!r}") from None


def _run_config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def _load_network(args):
    """Hamiltonian, planted partition (or None) and generator seed from the input flags."""
    planted = None
    seed = None
    if args.perturb and args.seed is None:
        raise UserError("--perturb requires an explicit --seed")
    if args.toy in ("e", "h") and args.toy_seed is None:
        raise UserError(f"toy variant {args.toy} has random phases and requires --toy-seed")
    if args.input:
        with stage("load"):
            H = io.load_hamiltonian(args.input)
        if getattr(args, "reference", None):
            with stage("load"):
                planted = io.load_partition(args.reference)
    elif args.toy:
        H = toy_hamiltonian(ToyConfig(args.toy, args.toy_seed))
        seed = args.toy_seed
    else:
        with stage("generate"):
            spec = parse_planted(args.planted)
            H, planted = planted_hamiltonian(spec)
        seed = spec.rng_seed
    if args.perturb:
        with stage("perturb"):
            H = perturb(H, args.perturb, args.seed)
        seed = args.seed
    return H, planted, seed


def _regime(args):
    if args.regime == "finite":
        if args.t is None:
            raise UserError("--regime finite requires --t")
        if not args.t > 0:
            raise UserError(f"t must be positive, got {args.t}")
        return args.t
    if args.t is not None:
        raise UserError(f"--t only applies to --regime finite, not {args.regime}")
    return args.regime


def _phases(args, n):
    if args.phases is None:
        return None
    theta = _parse_floats(args.phases)
    if len(theta) != n:
        raise UserError(f"--phases has {len(theta)} values for a {n}-node network")
    return theta


def cmd_partition(args) -> int:
    regime = _regime(args)
    H, _, seed = _load_network(args)
    phases = _phases(args, H.shape[0])
    meta = _run_config(args)
    with stage("detect"):
        result = detect(H, args.measure, regime, phases, args.degeneracy_tol)
    out = Path(args.out)
    with stage("write"):
        out.mkdir(parents=True, exist_ok=True)
        io.save_matrix_csv(out / "closeness.csv", result.closeness.values, meta)
        io.save_dendrogram(out / "dendrogram.json", result.dendrogram, meta)
        io.save_partition(out / "partition.json", result.partition, result.modularity,
                          args.measure, regime_label(regime), seed, meta)
    print(json.dumps({"labels": list(result.partition.labels), "modularity": result.modularity}))
    return 0


def cmd_compare(args) -> int:
    with stage("load"):
        X = io.load_partition(args.first)
        Y = io.load_partition(args.second)
    with stage("compare"):
        value = nmi(X, Y)
    print(f"{value:.6f}")
    return 0


def cmd_phase_sweep(args) -> int:
    regime = _regime(args)
    if args.samples < 1:
        raise UserError("--samples must be at least 1")
    sigmas = _parse_floats(args.sigmas)
    if any(s < 0 for s in sigmas):
        raise UserError("sigmas must be non-negative")
    H, planted, _ = _load_network(args)
    phases = _phases(args, H.shape[0])
    with stage("sweep"):
        rows = phase_sweep(H, args.measure, regime, sigmas, args.samples, args.sweep_seed,
                           planted, phases, args.degeneracy_tol)
    header = ["sigma", "mean_nmi_vs_zero_phase", "std_nmi_vs_zero_phase",
              "mean_nmi_vs_planted", "std_nmi_vs_planted"]
    table = [[r.sigma, r.mean_nmi_vs_zero_phase, r.std_nmi_vs_zero_phase,
              r.mean_nmi_vs_planted, r.std_nmi_vs_planted] for r in rows]
    out = Path(args.out)
    with stage("write"):
        out.parent.mkdir(parents=True, exist_ok=True)
        io.save_table_csv(out, header, table, _run_config(args))
    for r in rows:
        log.info("sigma=%g mean NMI vs zero phase %.4f", r.sigma, r.mean_nmi_vs_zero_phase)
    return 0


def cmd_generate(args) -> int:
    H, planted, seed = _load_network(args)
    meta = _run_config(args)
    out = Path(args.out)
    with stage("write"):
        out.mkdir(parents=True, exist_ok=True)
        meta["connected"] = is_connected(H)
        io.save_hamiltonian(H, out / "hamiltonian.json", metadata=meta)
        if planted is not None:
            io.save_partition(out / "planted.json", planted, seed=seed, metadata=meta)
    print(f"seed: {seed}")
    return 0


def _add_source(p, with_file=True):
    src = p.add_mutually_exclusive_group(required=True)
    if with_file:
        src.add_argument("--input", help="Hamiltonian JSON file")
    src.add_argument("--toy", choices=list("abcdefghi"), help="six-node toy network variant")
    src.add_argument("--planted", nargs="+", metavar="KEY=VALUE",
                     help="planted partition: n=60 k=4 deg=6 rewire=0.05 seed=7")
    if not with_file:
        p.set_defaults(input=None)
    p.add_argument("--toy-seed", type=int, default=None, help="seed for random bridge phases (variants e, h)")
    p.add_argument("--perturb", type=float, default=0.0, metavar="EPS",
                   help="add a random Hermitian perturbation of modulus <= EPS")
    p.add_argument("--seed", type=int, default=None, help="seed for --perturb")


def _add_method(p):
    p.add_argument("--measure", choices=MEASURES, required=True)
    p.add_argument("--regime", choices=("short", "finite", "infinite"), required=True)
    p.add_argument("--t", type=float, default=None, help="averaging time for --regime finite")
    p.add_argument("--phases", default=None, help="comma-separated initial phases (fidelity, purity)")
    p.add_argument("--degeneracy-tol", type=float, default=DEFAULT_DEGENERACY_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcommunity", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="detect communities and write closeness, dendrogram, partition")
    _add_source(p)
    _add_method(p)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("compare", help="NMI between two partition files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("phase-sweep", help="NMI under random hopping phases")
    _add_source(p)
    _add_method(p)
    p.add_argument("--reference", default=None, help="planted partition file for --input networks")
    p.add_argument("--sigmas", required=True, help="comma-separated phase standard deviations")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--sweep-seed", type=int, default=0, help="sample s uses seed sweep_seed + s")
    p.add_argument("--out", default="phase_sweep.csv", help="output CSV path")
    p.set_defaults(func=cmd_phase_sweep)

    p = sub.add_parser("generate", help="write a generated Hamiltonian (and planted partition)")
    _add_source(p, with_file=False)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except StageError as err:
        print(f"error [{err.stage}]: {err.exc}", file=sys.stderr)
        return _exit_code(err.exc)
    except (UserError, QCommunityError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return _exit_code(err)


if __name__ == "__main__":
    sys.exit(main())
