"""Seeded random matrix generators and the fixed instances used for regression.

Randomness comes from numpy's Philox counter-based generator keyed by a
``SeedSequence`` built from ``(seed, *stream)``. Every trial of a campaign gets
its own stream, so trials can be generated in any order or in parallel and
still produce the same matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SpectralSpreadError
from .linalg import symmetrize

KINDS = ("gaussian_hermitian", "psd", "unitary_haar", "isometry", "block")

STRUCTURED = (
    "hat_witness",
    "negation_pair",
    "scalar",
    "repeated_spectrum",
    "paper_tao_4x4",
    "paper_2x2_pair",
    "paper_conjtru_4x4",
)

PAPER_TAO_4X4 = np.array(
    [[2.0, 1.0, 0.0, 1.0],
     [1.0, 2.0, 1.0, 0.0],
     [0.0, 1.0, 3.0, 1.0],
     [1.0, 0.0, 1.0, 3.0]]
)

PAPER_2X2_PAIR = (np.array([[3.0, 2.0], [2.0, 3.0]]), 3.0 * np.eye(2))

PAPER_CONJTRU_4X4 = np.array(
    [[1.0, 2.0, 1.0, 2.0],
     [2.0, 1.0, 1.0, 0.0],
     [1.0, 1.0, 2.0, 0.0],
     [2.0, 0.0, 0.0, 2.0]]
)


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Independent Philox stream for ``(seed, *stream)``; all parts must be nonnegative ints."""
    if seed < 0 or seed >= 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, stream)])))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian entries (``E|z|^2 = 1``)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def gaussian_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    G = complex_gaussian(rng, (n, n))
    return scale * (G + G.conj().T) / 2


def psd(rng: np.random.Generator, n: int, scale: float = 1.0, rank: int | None = None) -> np.ndarray:
    G = complex_gaussian(rng, (rank or n, n))
    return symmetrize(scale * (G.conj().T @ G) / n)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with the phases of ``diag(R)`` removed."""
    Q, R = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diag(R)
    ph = np.where(d == 0, 1.0, d / np.abs(d))
    return Q * ph


def random_isometry(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    return haar_unitary(rng, n)[:, :k]


def with_spectrum(rng: np.random.Generator, lam) -> np.ndarray:
    U = haar_unitary(rng, len(lam))
    return symmetrize((U * np.asarray(lam, dtype=float)) @ U.conj().T)


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    dim: int
    seed: int
    scale: float = 1.0
    k: int | None = None  # isometry width / first block size
    stream: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def rng(self) -> np.random.Generator:
        return rng_for(self.seed, *self.stream)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "dim": self.dim, "seed": self.seed, "scale": self.scale,
                "k": self.k, "stream": list(self.stream)}


def gen_hermitian(spec: EnsembleSpec) -> np.ndarray:
    if spec.kind == "gaussian_hermitian":
        return gaussian_hermitian(spec.rng(), spec.dim, spec.scale)
    if spec.kind == "psd":
        return psd(spec.rng(), spec.dim, spec.scale)
    raise ValueError(f"gen_hermitian does not handle kind {spec.kind!r}")


def gen_unitary_or_isometry(spec: EnsembleSpec) -> np.ndarray:
    if spec.kind == "unitary_haar":
        return haar_unitary(spec.rng(), spec.dim)
    if spec.kind == "isometry":
        k = spec.k if spec.k is not None else max(1, spec.dim // 2)
        if not 1 <= k <= spec.dim:
            raise ValueError(f"isometry width {k} outside [1, {spec.dim}]")
        return random_isometry(spec.rng(), spec.dim, k)
    raise ValueError(f"gen_unitary_or_isometry does not handle kind {spec.kind!r}")


def gen_block(spec: EnsembleSpec):
    """A random ``BlockHermitian`` with leading block size ``spec.k``."""
    from .checks import BlockHermitian

    if spec.kind != "block":
        raise ValueError(f"gen_block does not handle kind {spec.kind!r}")
    k = spec.k if spec.k is not None else max(1, spec.dim // 2)
    if not 1 <= k < spec.dim:
        raise ValueError(f"block size {k} outside [1, {spec.dim - 1}]")
    return BlockHermitian.split(gaussian_hermitian(spec.rng(), spec.dim, spec.scale), k)


def gen_structured(name: str, dim: int = 4, seed: int = 0):
    """Named fixed or structured instance.

    ``paper_*`` names return the printed matrices; the rest are seeded random
    members of a structured family:

    * ``hat_witness`` -- ``BlockHermitian`` with zero diagonal blocks (``k = dim // 2``)
    * ``negation_pair`` -- ``(A1, -A1)`` with ``A1`` PSD of size ``dim``
    * ``scalar`` -- ``a I``
    * ``repeated_spectrum`` -- Hermitian with a spectrum drawn from three values
    """
    from .checks import BlockHermitian

    rng = rng_for(seed, 7, STRUCTURED.index(name) if name in STRUCTURED else 0)
    if name == "paper_tao_4x4":
        return BlockHermitian.split(PAPER_TAO_4X4.copy(), 2)
    if name == "paper_2x2_pair":
        return PAPER_2X2_PAIR[0].copy(), PAPER_2X2_PAIR[1].copy()
    if name == "paper_conjtru_4x4":
        return BlockHermitian.split(PAPER_CONJTRU_4X4.copy(), 2)
    if name == "hat_witness":
        k = max(1, dim // 2)
        r = max(1, dim - k)
        B = complex_gaussian(rng, (k, r))
        return BlockHermitian(np.zeros((k, k)), B, np.zeros((r, r)))
    if name == "negation_pair":
        A1 = psd(rng, dim)
        return A1, -A1
    if name == "scalar":
        return float(rng.normal()) * np.eye(dim)
    if name == "repeated_spectrum":
        levels = rng.normal(size=3)
        return with_spectrum(rng, np.sort(rng.choice(levels, size=dim))[::-1])
    raise SpectralSpreadError(f"unknown structured instance {name!r}; choose from {', '.join(STRUCTURED)}")
