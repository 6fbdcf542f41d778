"""Seeded verification campaigns over random and structured instances.

A campaign runs ``trials`` random instances of each selected check. Trial
``t`` of check ``c`` draws all of its randomness from the stream
``(seed, CHECK_IDS.index(c), t)``, so the report depends only on the
configuration and never on the worker count or scheduling.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .checks import (
    BlockHermitian,
    CheckOutcome,
    antidiagonal_check,
    commutator_check,
    difference_check,
    equivalence_instance,
    key_inequality_check,
    ritz_conjecture_probe,
    rotation_bound,
    unitary_conjugate_check,
    weak_square_check,
)
from .ensemble import (
    complex_gaussian,
    gaussian_hermitian,
    haar_unitary,
    psd,
    random_isometry,
    rng_for,
    with_spectrum,
)
from .linalg import symmetrize
from .majorization import KyFan, RelTol, Schatten, Spectral, classical_checks, entrywise_leq
from .spread import (
    centered_singular_check,
    compression_check,
    half_spread_vs_singular_check,
    lidskii_spread_check,
    orbit_diameter,
    orbit_distance,
    rayleigh_gap,
    spread_chain_reports,
    spread_kyfan_witness,
)
from .subspaces import angle_spread_check

SCHEMA = 1

# Order is part of the reproducibility contract: the index seeds each check's streams.
CHECK_IDS = (
    "key_inequality",
    "antidiagonal",
    "difference",
    "commutator",
    "unitary_conjugate",
    "weak_square",
    "angle_spread",
    "rotation_bound",
    "lidskii_spread",
    "centered_singular",
    "half_spread_vs_singular",
    "compression",
    "classical",
    "kyfan_witness",
    "orbit_diameter",
    "equivalence",
    "ritz_conjecture_probe",
)
DEFAULT_CHECKS = CHECK_IDS[:13]
PROBES = frozenset({"ritz_conjecture_probe"})


# ------------------------------------------------------------- instance makers


def _hermitian(rng, n, variant):
    if variant == 1:
        return psd(rng, n)
    if variant == 2:
        levels = rng.normal(size=2)
        return with_spectrum(rng, rng.choice(levels, size=n))
    A = gaussian_hermitian(rng, n, float(np.exp(rng.normal())))
    if variant == 3:
        A = A + float(rng.normal(scale=5.0)) * np.eye(n)
    return A


def _block(rng, dim, variant, k=None):
    if k is None:
        k = int(rng.integers(1, dim))
    if variant == 2:
        return BlockHermitian(np.zeros((k, k)), complex_gaussian(rng, (k, dim - k)), np.zeros((dim - k, dim - k)))
    return BlockHermitian.split(_hermitian(rng, dim, variant), k)


def _small_hermitian(rng, n, norm_cap):
    X = gaussian_hermitian(rng, n)
    nrm = np.linalg.norm(X, 2)
    return X * (norm_cap * float(rng.uniform(0.05, 1.0)) / nrm) if nrm > 0 else X


def _trial_key_inequality(rng, dim, tol):
    return key_inequality_check(_block(rng, max(dim, 2), int(rng.integers(4))), tol)


def _trial_antidiagonal(rng, dim, tol):
    return antidiagonal_check(_block(rng, max(dim, 2), int(rng.integers(4))), tol)


def _trial_difference(rng, dim, tol):
    variant = int(rng.integers(4))
    if variant == 2:
        A1 = psd(rng, dim)
        return difference_check(A1, -A1, tol)
    return difference_check(_hermitian(rng, dim, variant), _hermitian(rng, dim, variant), tol)


def _trial_commutator(rng, dim, tol):
    variant = int(rng.integers(4))
    if variant == 0:
        A1, A2, X = gaussian_hermitian(rng, dim), gaussian_hermitian(rng, dim), complex_gaussian(rng, (dim, dim))
    elif variant == 1:
        A1 = A2 = gaussian_hermitian(rng, dim)
        X = gaussian_hermitian(rng, dim)
    elif variant == 2:
        A1 = A2 = gaussian_hermitian(rng, dim)
        X = psd(rng, dim)
    else:
        A1, A2, X = psd(rng, dim), psd(rng, dim), complex_gaussian(rng, (dim, dim))
    return commutator_check(A1, A2, X, tol)


def _trial_unitary_conjugate(rng, dim, tol):
    A = gaussian_hermitian(rng, dim)
    X = gaussian_hermitian(rng, dim, float(rng.uniform(0.05, 3.0)))
    return unitary_conjugate_check(A, X, tol)


def _trial_weak_square(rng, dim, tol):
    k = max(1, dim // 2)
    return weak_square_check(_block(rng, 2 * k, int(rng.integers(4)), k=k), tol)


def _trial_angle_spread(rng, dim, tol):
    dim = max(dim, 2)
    S = random_isometry(rng, dim, int(rng.integers(1, dim)))
    out = CheckOutcome("angle_spread")
    out.reports["angles"] = angle_spread_check(S, _small_hermitian(rng, dim, np.pi / 2), tol)
    return out


def _trial_rotation_bound(rng, dim, tol):
    dim = max(dim, 2)
    S = random_isometry(rng, dim, int(rng.integers(1, dim)))
    return rotation_bound(S, _small_hermitian(rng, dim, np.pi / 2), tol)


def _trial_lidskii_spread(rng, dim, tol):
    out = CheckOutcome("lidskii_spread")
    A, B = _hermitian(rng, dim, int(rng.integers(4))), _hermitian(rng, dim, int(rng.integers(4)))
    out.reports["lower"], out.reports["upper"] = lidskii_spread_check(A, B, tol)
    return out


def _trial_centered_singular(rng, dim, tol):
    dim = max(dim, 2)
    out = CheckOutcome("centered_singular")
    out.reports["centered"] = centered_singular_check(_hermitian(rng, dim, int(rng.integers(4))), tol)
    return out


def _trial_half_spread(rng, dim, tol):
    dim = max(dim, 2)
    A = _hermitian(rng, dim, int(rng.integers(4)))
    out = CheckOutcome("half_spread_vs_singular")
    out.reports["half_spread"] = half_spread_vs_singular_check(A, tol)
    chain = spread_chain_reports(A, tol)
    out.reports["chain_left"], out.reports["chain_right"] = chain["k+1"]
    out.observations["chain_left_center_k"], out.observations["chain_right_center_k"] = chain["k"]
    return out


def _trial_compression(rng, dim, tol):
    A = _hermitian(rng, dim, int(rng.integers(4)))
    Z = random_isometry(rng, dim, int(rng.integers(1, dim + 1)))
    out = CheckOutcome("compression")
    out.reports["submajorized"], out.reports["entrywise"] = compression_check(A, Z, tol)
    return out


def _trial_classical(rng, dim, tol):
    spectral = bool(rng.integers(3))
    if spectral:
        C, D = gaussian_hermitian(rng, dim), gaussian_hermitian(rng, dim)
        U = haar_unitary(rng, dim)
        D = symmetrize(U @ D @ U.conj().T)
    else:
        C, D = complex_gaussian(rng, (dim, dim)), complex_gaussian(rng, (dim, dim))
    cuts = sorted(set(int(c) for c in rng.integers(1, dim, size=int(rng.integers(0, dim)))))
    bounds = [0, *cuts, dim]
    partition = [b - a for a, b in zip(bounds, bounds[1:])]
    out = CheckOutcome("classical")
    out.reports.update(classical_checks(C, D, partition=partition, spectral=spectral, tol=tol))
    return out


def _trial_kyfan_witness(rng, dim, tol, samples=20):
    dim = max(dim, 2)
    A = _hermitian(rng, dim, int(rng.integers(4)))
    r = int(rng.integers(1, dim // 2 + 1))
    w = spread_kyfan_witness(A, r)
    sampled = [rayleigh_gap(A, random_isometry(rng, dim, r), random_isometry(rng, dim, r)) for _ in range(samples)]
    out = CheckOutcome("kyfan_witness")
    out.reports["witness_attains"] = entrywise_leq([abs(rayleigh_gap(A, w.xs, w.ys) - w.value)], [0.0],
                                                   tol=1e-9 * max(1.0, abs(w.value)))
    out.reports["samples_below"] = entrywise_leq(sampled, np.full(samples, w.value), tol=tol)
    return out


def _trial_orbit_diameter(rng, dim, tol, samples=20):
    A = _hermitian(rng, dim, int(rng.integers(4)))
    N = [Spectral(), Schatten(1), Schatten(2), KyFan(max(1, dim // 2))][int(rng.integers(4))]
    value, U = orbit_diameter(A, N)
    sampled = [orbit_distance(A, haar_unitary(rng, dim), N) for _ in range(samples)]
    out = CheckOutcome("orbit_diameter")
    out.reports["witness_attains"] = entrywise_leq([abs(orbit_distance(A, U, N) - value)], [0.0],
                                                   tol=1e-8 * max(1.0, value))
    out.reports["samples_below"] = entrywise_leq(sampled, np.full(samples, value), tol=tol)
    return out


def _trial_equivalence(rng, dim, tol):
    dim = max(dim, 2)
    out = CheckOutcome("equivalence")
    out.reports.update(equivalence_instance(
        gaussian_hermitian(rng, dim), gaussian_hermitian(rng, dim), complex_gaussian(rng, (dim, dim)),
        complex_gaussian(rng, (dim, dim)), gaussian_hermitian(rng, dim),
        random_isometry(rng, dim, int(rng.integers(1, dim))), tol,
    ))
    return out


def _trial_ritz(rng, dim, tol):
    dim = max(dim, 2)
    k = int(rng.integers(1, dim))
    A = _hermitian(rng, dim, int(rng.integers(4)))
    S = random_isometry(rng, dim, k)
    T = S if rng.random() < 0.05 else random_isometry(rng, dim, k)
    return ritz_conjecture_probe(A, S, T, tol)


TRIALS = {
    "key_inequality": _trial_key_inequality,
    "antidiagonal": _trial_antidiagonal,
    "difference": _trial_difference,
    "commutator": _trial_commutator,
    "unitary_conjugate": _trial_unitary_conjugate,
    "weak_square": _trial_weak_square,
    "angle_spread": _trial_angle_spread,
    "rotation_bound": _trial_rotation_bound,
    "lidskii_spread": _trial_lidskii_spread,
    "centered_singular": _trial_centered_singular,
    "half_spread_vs_singular": _trial_half_spread,
    "compression": _trial_compression,
    "classical": _trial_classical,
    "kyfan_witness": _trial_kyfan_witness,
    "orbit_diameter": _trial_orbit_diameter,
    "equivalence": _trial_equivalence,
    "ritz_conjecture_probe": _trial_ritz,
}


# ------------------------------------------------------------------ running


@dataclass
class CampaignConfig:
    checks: list = field(default_factory=lambda: list(DEFAULT_CHECKS))
    trials: int = 1000
    dims: tuple = (2, 12)
    seed: int | None = None
    rtol: float = 1e-9
    tolerances: dict = field(default_factory=dict)  # check_id -> rtol override
    out: str | None = None
    jobs: int = 1

    def validate(self) -> "CampaignConfig":
        unknown = [c for c in self.checks if c not in TRIALS]
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(unknown)}")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        lo, hi = self.dims
        if not 1 <= lo <= hi <= 64:
            raise ValueError(f"dims must satisfy 1 <= lo <= hi <= 64, got {lo}..{hi}")
        if self.seed is None:
            raise ValueError("a seed is required for campaigns")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        for c in self.tolerances:
            if c not in TRIALS:
                raise ValueError(f"tolerance override for unknown check {c!r}")
        return self

    @classmethod
    def from_dict(cls, doc: dict) -> "CampaignConfig":
        known = {"checks", "trials", "dims", "seed", "rtol", "tolerances", "out", "jobs"}
        extra = set(doc) - known
        if extra:
            raise ValueError(f"unknown config fields: {', '.join(sorted(extra))}")
        kw = dict(doc)
        if "dims" in kw:
            kw["dims"] = parse_dims(kw["dims"])
        return cls(**kw)

    def echo(self) -> dict:
        """Configuration fields that determine the results (no output path or job count)."""
        return {
            "checks": list(self.checks),
            "trials": self.trials,
            "dims": list(self.dims),
            "seed": self.seed,
            "rtol": self.rtol,
            "tolerances": dict(sorted(self.tolerances.items())),
        }


def parse_dims(spec) -> tuple:
    if isinstance(spec, str):
        lo, sep, hi = spec.partition("..")
        if not sep:
            return int(lo), int(lo)
        return int(lo), int(hi)
    lo, hi = spec
    return int(lo), int(hi)


def run_trial(check_id: str, seed: int, trial: int, dims=(2, 12), rtol: float = 1e-9) -> tuple[int, CheckOutcome]:
    """Regenerate and evaluate one trial; returns ``(dim, outcome)``."""
    rng = rng_for(seed, CHECK_IDS.index(check_id), trial)
    dim = int(rng.integers(dims[0], dims[1] + 1))
    return dim, TRIALS[check_id](rng, dim, RelTol(rtol))


def _run_chunk(args):
    check_id, seed, start, stop, dims, rtol = args
    rows = []
    for t in range(start, stop):
        dim, oc = run_trial(check_id, seed, t, dims, rtol)
        fail = sorted(oc.observations) if check_id in PROBES and not all(
            r.verdict for r in oc.observations.values()) else oc.failures
        rows.append((t, dim, oc.min_margin, fail))
    return rows


def _summarize(check_id, rows, seed):
    probe = check_id in PROBES
    failing = [{"trial": t, "dim": d, "relations": f} for t, d, _, f in rows if f]
    summary = {
        "kind": "probe" if probe else "assert",
        "trials": len(rows),
        "failures": 0 if probe else len(failing),
        "min_margin": None,
        "worst": None,
    }
    if probe:
        summary["counterexamples"] = len(failing)
    if rows:
        t, d, m, _ = min(rows, key=lambda row: (row[2], row[0]))
        summary["min_margin"] = m
        summary["worst"] = {"seed": seed, "trial": t, "dim": d}
    summary["failing_trials"] = failing[:25]
    return summary


def run_campaign(config: CampaignConfig) -> dict:
    """Execute a campaign and return the report document."""
    config.validate()
    start = time.perf_counter()
    chunk = 100
    tasks = []
    for c in config.checks:
        rtol = config.tolerances.get(c, config.rtol)
        for s in range(0, config.trials, chunk):
            tasks.append((c, config.seed, s, min(s + chunk, config.trials), tuple(config.dims), rtol))
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_chunk, tasks))
    else:
        results = [_run_chunk(t) for t in tasks]
    by_check = {c: [] for c in config.checks}
    for task, rows in zip(tasks, results):
        by_check[task[0]].extend(rows)
    checks = {c: _summarize(c, rows, config.seed) for c, rows in by_check.items()}
    return {
        "schema": SCHEMA,
        "tool": "spectral-spread",
        "version": __version__,
        "config": config.echo(),
        "checks": checks,
        "passed": all(v["failures"] == 0 for v in checks.values()),
        "wall_time_s": round(time.perf_counter() - start, 3),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def default_jobs() -> int:
    return os.cpu_count() or 1
