"""FHRR phasor-hypervector algebra.

Hypervectors are d-dimensional complex vectors. Atomic vectors are phasors
(unit magnitude per component) and are stored as their phase angles only;
superpositions keep explicit real/imaginary parts because component
magnitudes carry information after bundling.

Operations:
    bind / unbind   -- componentwise phase addition / subtraction (mod 2pi)
    superpose       -- componentwise complex sum
    normalize       -- project a bundle back onto the unit phasor manifold
    permute         -- cyclic rotation of components (sequence positions)
    fpe_power       -- fractional power encoding: scale base phases by a
                       real exponent, giving a sinc-shaped similarity kernel
                       over the exponent axis
    cosine_real     -- cosine similarity of the real parts

All operations are pure functions of immutable values; the only stateful
object is the RNG (numpy PCG64), which callers seed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


class DimensionError(ValueError):
    """Invalid or mismatched hypervector dimensionality."""


class UndefinedSimilarityError(ValueError):
    """Cosine similarity requested for a vector with zero-norm real part."""


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic generator (PCG64); identical seeds give identical streams."""
    return np.random.Generator(np.random.PCG64(seed))


def wrap_phase(x: np.ndarray) -> np.ndarray:
    """Reduce angles into [0, 2pi) with floored modulo.

    np.mod can return exactly 2pi for tiny negative inputs; fold that back.
    """
    p = np.mod(x, TWO_PI)
    return np.where(p >= TWO_PI, 0.0, p)


def centered_phases(phases: np.ndarray) -> np.ndarray:
    """Principal-branch representative of each angle, in (-pi, pi]."""
    return np.where(phases > np.pi, phases - TWO_PI, phases)


@dataclass(frozen=True)
class PhasorVector:
    """Unit-magnitude complex hypervector, stored as phase angles in [0, 2pi)."""

    phases: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise DimensionError("phases must be a non-empty 1-D array")
        if not np.all(np.isfinite(p)):
            raise ValueError("phases must be finite")
        if np.any(p < 0.0) or np.any(p >= TWO_PI):
            raise ValueError("phases must lie in [0, 2pi)")
        p = np.ascontiguousarray(p)
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    @property
    def d(self) -> int:
        return self.phases.shape[0]

    def real(self) -> np.ndarray:
        return np.cos(self.phases)

    def imag(self) -> np.ndarray:
        return np.sin(self.phases)


@dataclass(frozen=True)
class BundleVector:
    """Complex hypervector with free per-component magnitude (post-superposition)."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        re = np.ascontiguousarray(np.asarray(self.re, dtype=np.float64))
        im = np.ascontiguousarray(np.asarray(self.im, dtype=np.float64))
        if re.ndim != 1 or re.size == 0 or re.shape != im.shape:
            raise DimensionError("re/im must be non-empty 1-D arrays of equal length")
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise ValueError("components must be finite")
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def d(self) -> int:
        return self.re.shape[0]

    def real(self) -> np.ndarray:
        return self.re

    def imag(self) -> np.ndarray:
        return self.im


Hypervector = PhasorVector | BundleVector


def identity_phasor(d: int) -> PhasorVector:
    """All-zero-phase vector: the identity element of binding."""
    if d < 1:
        raise DimensionError("dimensionality must be >= 1")
    return PhasorVector(np.zeros(d))


def random_phasor(d: int, rng: np.random.Generator) -> PhasorVector:
    """Random phasor with phases i.i.d. uniform on [0, 2pi)."""
    if d < 1:
        raise DimensionError("dimensionality must be >= 1")
    return PhasorVector(rng.uniform(0.0, TWO_PI, size=d))


def _check_same_d(a: Hypervector, b: Hypervector) -> None:
    if a.d != b.d:
        raise DimensionError(f"dimensionality mismatch: {a.d} != {b.d}")


def bind(a: PhasorVector, b: PhasorVector) -> PhasorVector:
    """Bind two phasors: componentwise phase addition mod 2pi.

    The result is quasi-orthogonal to both inputs but binding with a common
    vector preserves the pairwise similarity structure of a set.
    """
    _check_same_d(a, b)
    return PhasorVector(wrap_phase(a.phases + b.phases))


def unbind(key: PhasorVector, composite: Hypervector) -> Hypervector:
    """Invert binding: multiply `composite` by the conjugate phasor of `key`.

    For a phasor composite this is phase subtraction; unbind(v2, bind(v1, v2))
    recovers v1 exactly. For a bundle composite each complex component is
    rotated by -key phase, so the bundle's magnitudes are untouched.
    """
    _check_same_d(key, composite)
    if isinstance(composite, PhasorVector):
        return PhasorVector(wrap_phase(composite.phases - key.phases))
    c, s = np.cos(key.phases), np.sin(key.phases)
    return BundleVector(composite.re * c + composite.im * s,
                        composite.im * c - composite.re * s)


def superpose(vectors: list[Hypervector]) -> BundleVector:
    """Componentwise complex sum; similar to each of its (few) summands."""
    if not vectors:
        raise ValueError("superpose requires at least one vector")
    d = vectors[0].d
    re = np.zeros(d)
    im = np.zeros(d)
    for v in vectors:
        if v.d != d:
            raise DimensionError(f"dimensionality mismatch: {v.d} != {d}")
        re += v.real()
        im += v.imag()
    return BundleVector(re, im)


def normalize(v: Hypervector) -> PhasorVector:
    """Discard magnitudes: phase of each complex component, into [0, 2pi).

    Zero-magnitude components get phase 0 (a measure-zero event for real data).
    """
    if isinstance(v, PhasorVector):
        return v
    return PhasorVector(wrap_phase(np.arctan2(v.im, v.re)))


def permute(v: PhasorVector, k: int) -> PhasorVector:
    """Cyclic rotation of components by k positions; permutes compose additively."""
    return PhasorVector(np.roll(v.phases, k))


def fpe_power(base: PhasorVector, exponent: float) -> PhasorVector:
    """Fractional power of a phasor: principal-branch phases scaled by `exponent`.

    Base phases are taken as their (-pi, pi] representatives before scaling,
    matching complex z**t semantics. For a random base this yields the
    similarity kernel E[cos(t*phi)], phi ~ U(-pi, pi) -- i.e. sinc(t) with
    first zero at |t| = 1 -- which makes nearby exponents similar and distant
    ones quasi-orthogonal.
    """
    if not np.isfinite(exponent):
        raise ValueError("exponent must be finite")
    return PhasorVector(wrap_phase(centered_phases(base.phases) * exponent))


def cosine_real(a: Hypervector, b: Hypervector) -> float:
    """Cosine similarity of the real parts of two hypervectors."""
    _check_same_d(a, b)
    ra, rb = a.real(), b.real()
    na = np.linalg.norm(ra)
    nb = np.linalg.norm(rb)
    if na == 0.0 or nb == 0.0:
        raise UndefinedSimilarityError("zero-norm real part; similarity undefined")
    return float(ra @ rb / (na * nb))
