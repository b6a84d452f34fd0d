"""Input encoders: quantized-feature FPE encoding and positional n-gram
statistics encoding.

Both encoders map raw inputs to phasor hypervectors by superposing
fractional powers (features) or permuted-and-bound atomic vectors
(n-grams), then normalizing the bundle back to unit magnitudes. Encoders
are immutable after fitting; encoding is a pure function of (encoder,
input).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .vsa import (
    BundleVector,
    PhasorVector,
    bind,
    fpe_power,
    normalize,
    permute,
    random_phasor,
    superpose,
    wrap_phase,
)

DEFAULT_ALPHABET = "abcdefghijklmnopqrstuvwxyz "

_GRAM_BLOCK = 2048
_NON_ALPHA = re.compile(r"[^a-z ]+")
_SPACE_RUNS = re.compile(r" {2,}")
_WHITESPACE = re.compile(r"\s")


@dataclass(frozen=True)
class FeatureEncoder:
    """Per-feature fractional-power level encoding fitted on training data."""

    q: int
    epsilon_d: float
    bases: tuple[PhasorVector, ...]
    feature_ranges: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if self.epsilon_d <= 0.0:
            raise ValueError("epsilon_d must be > 0")
        if len(self.bases) != len(self.feature_ranges):
            raise ValueError("one base per feature required")
        if any(lo > hi for lo, hi in self.feature_ranges):
            raise ValueError("feature range must satisfy min <= max")

    @property
    def num_features(self) -> int:
        return len(self.bases)

    @property
    def d(self) -> int:
        return self.bases[0].d


@dataclass(frozen=True)
class NgramEncoder:
    """Position-permuted atomic vectors over a fixed symbol alphabet."""

    alphabet: str
    n: int
    atomics: tuple[PhasorVector, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be distinct")
        if len(self.atomics) != len(self.alphabet):
            raise ValueError("one atomic vector per symbol required")

    @property
    def d(self) -> int:
        return self.atomics[0].d

    def symbol_index(self, sym: str) -> int:
        idx = self.alphabet.find(sym)
        if idx < 0:
            raise ValueError(f"symbol {sym!r} not in alphabet")
        return idx


def fit_feature_encoder(training_samples, q: int, epsilon_d: float, d: int,
                        rng: np.random.Generator) -> FeatureEncoder:
    """Record per-feature min/max and draw one random base per feature."""
    samples = np.asarray(training_samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[0] == 0:
        raise ValueError("training samples must be a non-empty 2-D array")
    if not np.all(np.isfinite(samples)):
        raise ValueError("training samples must be finite")
    num_features = samples.shape[1]
    bases = tuple(random_phasor(d, rng) for _ in range(num_features))
    ranges = tuple((float(lo), float(hi)) for lo, hi
                   in zip(samples.min(axis=0), samples.max(axis=0)))
    return FeatureEncoder(q=q, epsilon_d=epsilon_d, bases=bases,
                          feature_ranges=ranges)


def quantize(enc: FeatureEncoder, sample) -> np.ndarray:
    """Per-feature level indices in [0, q-1].

    Values are min-max normalized with the ranges fitted on training data,
    clipped to [0, 1] (out-of-range test values saturate), then floored
    into q levels with 1.0 mapping to the top level. A constant feature
    always lands on level 0.
    """
    x = np.asarray(sample, dtype=np.float64)
    if x.shape != (enc.num_features,):
        raise ValueError(f"expected {enc.num_features} features, got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample values must be finite")
    lo = np.array([r[0] for r in enc.feature_ranges])
    hi = np.array([r[1] for r in enc.feature_ranges])
    span = hi - lo
    unit = np.where(span > 0.0, (x - lo) / np.where(span > 0.0, span, 1.0), 0.0)
    unit = np.clip(unit, 0.0, 1.0)
    return np.minimum(np.floor(unit * enc.q).astype(np.int64), enc.q - 1)


def encode_features(enc: FeatureEncoder, sample) -> PhasorVector:
    """Superpose per-feature level vectors fpe_power(base_k, eps_d * level_k)."""
    levels = quantize(enc, sample)
    parts = [fpe_power(enc.bases[k], enc.epsilon_d * int(lv))
             for k, lv in enumerate(levels)]
    return normalize(superpose(parts))


def fit_ngram_encoder(n: int, d: int, rng: np.random.Generator,
                      alphabet: str = DEFAULT_ALPHABET) -> NgramEncoder:
    """Draw one random atomic vector per alphabet symbol, in alphabet order."""
    atomics = tuple(random_phasor(d, rng) for _ in alphabet)
    return NgramEncoder(alphabet=alphabet, n=n, atomics=atomics)


def ngram_vector(enc: NgramEncoder, gram: str) -> PhasorVector:
    """bind over positions of permute(atomic[sym], position), positions 1..n."""
    if len(gram) != enc.n:
        raise ValueError(f"expected {enc.n}-gram, got {gram!r}")
    out = permute(enc.atomics[enc.symbol_index(gram[0])], 1)
    for pos in range(1, enc.n):
        out = bind(out, permute(enc.atomics[enc.symbol_index(gram[pos])], pos + 1))
    return out


def _gram_counts(enc: NgramEncoder, text: str) -> Counter:
    if len(text) < enc.n:
        raise ValueError(f"text of length {len(text)} shorter than n={enc.n}")
    bad = set(text) - set(enc.alphabet)
    if bad:
        raise ValueError(f"symbols outside alphabet: {sorted(bad)!r}")
    return Counter(text[i:i + enc.n] for i in range(len(text) - enc.n + 1))


def encode_ngram_stats(enc: NgramEncoder, text: str) -> PhasorVector:
    """Bag of position-bound n-grams: superpose every sliding window with
    multiplicity, normalize to a phasor.

    Distinct grams are summed in sorted order so the result depends only
    on the count profile, not on window order.
    """
    counts = _gram_counts(enc, text)
    re_acc = np.zeros(enc.d)
    im_acc = np.zeros(enc.d)
    for gram in sorted(counts):
        phases = ngram_vector(enc, gram).phases
        re_acc += counts[gram] * np.cos(phases)
        im_acc += counts[gram] * np.sin(phases)
    return normalize(BundleVector(re=re_acc, im=im_acc))


def encode_ngram_corpus(enc: NgramEncoder, texts: list[str]) -> list[PhasorVector]:
    """Encode many texts at once through a shared n-gram vocabulary.

    Equivalent to encode_ngram_stats per text (same sorted-gram summation)
    but computes each distinct gram's phases once across the whole corpus
    and accumulates via a sparse count matrix, which is what makes corpus
    scale runs fit the time budget.
    """
    per_text = [_gram_counts(enc, t) for t in texts]
    vocab = sorted(set().union(*per_text)) if per_text else []
    if not per_text:
        return []
    gram_col = {g: c for c, g in enumerate(vocab)}
    rows, cols, vals = [], [], []
    for r, counts in enumerate(per_text):
        for g, c in counts.items():
            rows.append(r)
            cols.append(gram_col[g])
            vals.append(float(c))
    count_mat = sparse.csr_matrix(
        (vals, (rows, cols)), shape=(len(texts), len(vocab)))

    # roll the whole atomic phase table once per position
    atomic_phases = np.stack([a.phases for a in enc.atomics])
    rolled = [np.roll(atomic_phases, pos + 1, axis=1) for pos in range(enc.n)]
    sym_idx = np.array([[enc.symbol_index(s) for s in g] for g in vocab])

    re_acc = np.zeros((len(texts), enc.d))
    im_acc = np.zeros((len(texts), enc.d))
    for start in range(0, len(vocab), _GRAM_BLOCK):
        stop = min(start + _GRAM_BLOCK, len(vocab))
        phases = rolled[0][sym_idx[start:stop, 0]].copy()
        for pos in range(1, enc.n):
            phases += rolled[pos][sym_idx[start:stop, pos]]
        block = count_mat[:, start:stop]
        re_acc += block @ np.cos(phases)
        im_acc += block @ np.sin(phases)
    return [normalize(BundleVector(re=re_acc[r], im=im_acc[r]))
            for r in range(len(texts))]


def preprocess_text(raw: str) -> str:
    """Lowercase, keep only a-z and space, collapse whitespace runs.

    Whitespace characters become spaces before filtering so line breaks
    separate words; accented and non-Latin letters are dropped, not
    transliterated.
    """
    text = _WHITESPACE.sub(" ", raw.lower())
    text = _NON_ALPHA.sub("", text)
    return _SPACE_RUNS.sub(" ", text).strip()
