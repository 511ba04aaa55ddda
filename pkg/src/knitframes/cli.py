"""Command line front end: run sampling experiments, dump their matrices.

Configs are JSON; reports are JSON with key-sorted deterministic layout, so
the same config and seed always produce byte-identical output. Exit code 0
means the scheme reconstructs within tolerance, 2 means it does not, 1
means the input was rejected.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .covariance import build_cross_cov_matrix  # noqa: F401  (re-export for scripts)
from .errors import ConfigParse, KnitFramesError, ValidationFailure
from .group_core import build_dihedral, factor_internal, from_cayley_table
from .representation import build_subspace, left_regular, synthesize
from .sampling_engine import (
    build_scheme,
    check_interpolation,
    reconstruct,
    take_samples,
    verify_frame,
)
from .serialize import complex_matrix_to_json, dumps_canonical, int_array_to_json

__all__ = ["ExperimentConfig", "load_config", "parse_config", "run", "dump_matrices", "main"]

DEFAULT_RECON_TOL = 1e-9


@dataclass(frozen=True)
class ExperimentConfig:
    group: dict
    indexing: str = "N"
    generator: Optional[dict] = None
    channels: Optional[dict] = None
    trials: int = 50
    seed: int = 0
    tol_rank: Optional[float] = None
    tol_recon: float = DEFAULT_RECON_TOL


# ------------------------------------------------------------ config parsing
def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ValidationFailure(f"{path}.{key}" if path else key, "is required")
    return obj[key]


def _as_int(value, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValidationFailure(path, f"must be an integer, got {value!r}")
    return value


def parse_config(obj) -> ExperimentConfig:
    """Validate a decoded JSON object; error paths name the offending field."""
    if not isinstance(obj, dict):
        raise ValidationFailure("<root>", "config must be a JSON object")
    known = {"group", "indexing", "generator", "channels", "trials", "seed",
             "tol_rank", "tol_recon"}
    for key in obj:
        if key not in known:
            raise ValidationFailure(key, "unknown field")

    group = _require(obj, "group", "")
    if not isinstance(group, dict):
        raise ValidationFailure("group", "must be an object")
    gtype = _require(group, "type", "group")
    if gtype == "dihedral":
        n = _as_int(_require(group, "n", "group"), "group.n")
        if n < 1:
            raise ValidationFailure("group.n", "must be >= 1")
    elif gtype == "table":
        for key in ("cayley", "n_subset", "h_subset"):
            val = _require(group, key, "group")
            if not isinstance(val, list):
                raise ValidationFailure(f"group.{key}", "must be a list")
    else:
        raise ValidationFailure("group.type", f"unknown type {gtype!r}")

    indexing = obj.get("indexing", "N")
    if indexing not in ("N", "H"):
        raise ValidationFailure("indexing", f"must be 'N' or 'H', got {indexing!r}")

    generator = obj.get("generator", {"type": "delta", "index": 0})
    _validate_vector_config(generator, "generator", index_keys=("index",))
    channels = obj.get("channels", {"type": "random", "kappa": 1})
    _validate_vector_config(channels, "channels", index_keys=("indices",))

    trials = _as_int(obj.get("trials", 50), "trials")
    if trials < 0:
        raise ValidationFailure("trials", "must be >= 0")
    seed = _as_int(obj.get("seed", 0), "seed")
    tol_rank = obj.get("tol_rank")
    if tol_rank is not None and not isinstance(tol_rank, (int, float)):
        raise ValidationFailure("tol_rank", "must be a number")
    tol_recon = obj.get("tol_recon", DEFAULT_RECON_TOL)
    if not isinstance(tol_recon, (int, float)) or tol_recon <= 0:
        raise ValidationFailure("tol_recon", "must be a positive number")

    return ExperimentConfig(
        group=group, indexing=indexing, generator=generator, channels=channels,
        trials=trials, seed=seed,
        tol_rank=float(tol_rank) if tol_rank is not None else None,
        tol_recon=float(tol_recon),
    )


def _validate_vector_config(spec, path: str, index_keys) -> None:
    if not isinstance(spec, dict):
        raise ValidationFailure(path, "must be an object")
    vtype = _require(spec, "type", path)
    if vtype == "delta":
        if "index" in index_keys:
            _as_int(_require(spec, "index", path), f"{path}.index")
        else:
            indices = _require(spec, "indices", path)
            if not isinstance(indices, list):
                raise ValidationFailure(f"{path}.indices", "must be a list")
            for pos, idx in enumerate(indices):
                _as_int(idx, f"{path}.indices[{pos}]")
    elif vtype == "random":
        if "indices" in index_keys:
            kappa = _as_int(_require(spec, "kappa", path), f"{path}.kappa")
            if kappa < 0:
                raise ValidationFailure(f"{path}.kappa", "must be >= 0")
    else:
        raise ValidationFailure(f"{path}.type", f"unknown type {vtype!r}")


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigParse(path, f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParse(path, f"invalid JSON: {exc}") from exc
    return parse_config(obj)


# ---------------------------------------------------------------- experiment
def _build_instance(config: ExperimentConfig):
    group_cfg = config.group
    if group_cfg["type"] == "dihedral":
        group, fact = build_dihedral(group_cfg["n"])
    else:
        group = from_cayley_table(group_cfg["cayley"])
        fact = factor_internal(group, group_cfg["n_subset"], group_cfg["h_subset"])
    rep = left_regular(group)
    rng = np.random.default_rng(config.seed)

    d = rep.dim
    gen = config.generator
    if gen["type"] == "delta":
        idx = gen["index"]
        if not 0 <= idx < d:
            raise ValidationFailure("generator.index", f"must be in 0..{d - 1}")
        a = np.zeros(d, dtype=complex)
        a[idx] = 1.0
    else:
        a = rng.standard_normal(d) + 1j * rng.standard_normal(d)

    ch = config.channels
    if ch["type"] == "delta":
        for pos, idx in enumerate(ch["indices"]):
            if not 0 <= idx < d:
                raise ValidationFailure(
                    f"channels.indices[{pos}]", f"must be in 0..{d - 1}"
                )
        channels = np.zeros((len(ch["indices"]), d), dtype=complex)
        for k, idx in enumerate(ch["indices"]):
            channels[k, idx] = 1.0
    else:
        kappa = ch["kappa"]
        channels = rng.standard_normal((kappa, d)) + 1j * rng.standard_normal((kappa, d))

    subspace = build_subspace(rep, a)
    scheme = build_scheme(
        subspace, fact, channels, config.indexing, rank_tol=config.tol_rank
    )
    return group, fact, scheme, rng


def run(config: ExperimentConfig) -> tuple[dict, int]:
    """Execute one experiment; returns the report and the exit code."""
    if config.channels["type"] == "delta":
        kappa = len(config.channels["indices"])
    else:
        kappa = config.channels["kappa"]
    if kappa < 1:
        raise ValidationFailure("channels", "run needs at least one channel")

    group, fact, scheme, rng = _build_instance(config)
    frame = verify_frame(scheme)
    R = scheme.cov.stacked

    interpolation = None
    if R.shape[0] == R.shape[1] and scheme.reconstructing:
        interpolation = bool(check_interpolation(scheme).holds)

    max_residual = None
    recon_vectors = 0
    if scheme.reconstructing:
        g = group.order
        worst = 0.0
        for _ in range(config.trials):
            alpha = rng.standard_normal(g) + 1j * rng.standard_normal(g)
            f = synthesize(scheme.subspace, alpha)
            f_hat = reconstruct(scheme, take_samples(scheme, f))
            err = np.linalg.norm(f_hat - f) / max(1.0, np.linalg.norm(f))
            worst = max(worst, float(err))
        max_residual = worst
        recon_vectors = config.trials

    report = {
        "indexing": scheme.indexing,
        "kappa": scheme.kappa,
        "rank": scheme.rank,
        "frame_bounds": [frame.lower, frame.upper],
        "condition": frame.condition if math.isfinite(frame.condition) else None,
        "ill_conditioned": frame.ill_conditioned,
        "reconstructing": scheme.reconstructing,
        "recon_vectors": recon_vectors,
        "interpolation": interpolation,
        "max_residual": max_residual,
        "trials": config.trials,
        "seed": config.seed,
    }
    passed = scheme.reconstructing and (
        max_residual is None or max_residual <= config.tol_recon
    )
    return report, 0 if passed else 2


def dump_matrices(config: ExperimentConfig) -> dict:
    """Export the sample matrix and, when present, its inverses."""
    group, fact, scheme, _ = _build_instance(config)
    payload = {
        "indexing": scheme.indexing,
        "kappa": scheme.kappa,
        "group_order": group.order,
        "n_points": scheme.cov.n_points,
        "inner_order": scheme.cov.inner_order,
        "points": int_array_to_json(scheme.points),
        "column_order": int_array_to_json(scheme.cov.column_order),
        "stacked": complex_matrix_to_json(scheme.cov.stacked),
        "pinv": None,
        "seed_rows": None,
        "compatible_inverse": None,
    }
    if scheme.reconstructing and scheme.inverse is not None:
        payload["pinv"] = complex_matrix_to_json(scheme.family.pinv)
        payload["seed_rows"] = complex_matrix_to_json(scheme.inverse.seed)
        payload["compatible_inverse"] = complex_matrix_to_json(scheme.inverse.matrix)
    return payload


# ----------------------------------------------------------------- CLI shell
def _apply_overrides(config: ExperimentConfig, args) -> ExperimentConfig:
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if getattr(args, "tol_rank", None) is not None:
        updates["tol_rank"] = args.tol_rank
    if getattr(args, "tol_recon", None) is not None:
        updates["tol_recon"] = args.tol_recon
    return dataclasses.replace(config, **updates) if updates else config


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="knitframes",
        description="Sampling and exact reconstruction on knit-product groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment and report the outcome")
    p_run.add_argument("--config", required=True, help="path to a JSON config")
    p_run.add_argument("--out", help="write the report here instead of stdout")
    p_run.add_argument("--seed", type=int, help="override the config seed")
    p_run.add_argument("--tol-rank", type=float, dest="tol_rank",
                       help="singular value cutoff for the rank decision")
    p_run.add_argument("--tol-recon", type=float, dest="tol_recon",
                       help="max relative reconstruction error to count as a pass")

    p_dump = sub.add_parser("dump", help="export the scheme's matrices as JSON")
    p_dump.add_argument("--config", required=True, help="path to a JSON config")
    p_dump.add_argument("--out", help="write the dump here instead of stdout")
    p_dump.add_argument("--seed", type=int, help="override the config seed")

    args = parser.parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.command == "run":
            report, code = run(config)
            _emit(dumps_canonical(report), args.out)
            return code
        payload = dump_matrices(config)
        _emit(dumps_canonical(payload), args.out)
        return 0
    except KnitFramesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
