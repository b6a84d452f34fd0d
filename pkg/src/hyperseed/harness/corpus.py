"""Language-identification corpora: loading, chunking, and a synthetic
corpus generator.

Training text is cut into fixed-length chunks; test text is split per
sentence (one sentence per line). The generator produces per-language
order-2 Markov chains over the 27-symbol alphabet, giving each language a
distinctive but overlapping n-gram profile; it stands in for real
multilingual corpora, which are not bundled.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..encoders import DEFAULT_ALPHABET, preprocess_text

TRAIN_CHUNK_SYMBOLS = 1000


@dataclass(frozen=True)
class CorpusDataset:
    """Preprocessed, chunked text samples with one label per sample."""

    train_chunks: list[str]
    train_labels: list[str]
    test_sentences: list[str]
    test_labels: list[str]
    languages: tuple[str, ...]
    skipped_sentences: int

    def __post_init__(self):
        if len(self.train_chunks) != len(self.train_labels):
            raise ValueError("one label per training chunk required")
        if len(self.test_sentences) != len(self.test_labels):
            raise ValueError("one label per test sentence required")


def chunk_text(text: str, chunk_symbols: int = TRAIN_CHUNK_SYMBOLS) -> list[str]:
    """Full chunks only; a trailing remainder is dropped."""
    return [text[k:k + chunk_symbols]
            for k in range(0, len(text) - chunk_symbols + 1, chunk_symbols)]


def load_language_corpus(train_dir, test_dir, min_symbols: int = 3,
                         chunk_symbols: int = TRAIN_CHUNK_SYMBOLS) -> CorpusDataset:
    """Directory-per-language layout: <dir>/<language>/*.txt.

    Training files are preprocessed, concatenated per language, and cut
    into fixed-length chunks. Test files are read line by line, one
    sentence per line; sentences shorter than `min_symbols` after
    preprocessing are skipped and counted.
    """
    train_dir, test_dir = Path(train_dir), Path(test_dir)
    languages = sorted(p.name for p in train_dir.iterdir() if p.is_dir())
    if not languages:
        raise ValueError(f"{train_dir}: no language directories")
    train_chunks, train_labels = [], []
    test_sentences, test_labels = [], []
    skipped = 0
    for lang in languages:
        files = sorted((train_dir / lang).glob("*.txt"))
        if not files:
            raise ValueError(f"{train_dir / lang}: no text files")
        text = " ".join(preprocess_text(f.read_text()) for f in files)
        chunks = chunk_text(text, chunk_symbols)
        train_chunks.extend(chunks)
        train_labels.extend([lang] * len(chunks))
        for f in sorted((test_dir / lang).glob("*.txt")):
            for line in f.read_text().splitlines():
                if not line.strip():
                    continue       # blank separator lines are not sentences
                sentence = preprocess_text(line)
                if len(sentence) < min_symbols:
                    skipped += 1
                    continue
                test_sentences.append(sentence)
                test_labels.append(lang)
    return CorpusDataset(train_chunks=train_chunks, train_labels=train_labels,
                         test_sentences=test_sentences, test_labels=test_labels,
                         languages=tuple(languages), skipped_sentences=skipped)


def _markov_tables(rng: np.random.Generator, num_symbols: int,
                   concentration: float) -> np.ndarray:
    """Cumulative transition rows P(next | prev pair), Dirichlet-drawn."""
    gamma = rng.gamma(concentration,
                      size=(num_symbols * num_symbols, num_symbols))
    gamma += 1e-12
    probs = gamma / gamma.sum(axis=1, keepdims=True)
    return np.cumsum(probs, axis=1)


def _markov_text(cum: np.ndarray, length: int, num_symbols: int,
                 alphabet: str, rng: np.random.Generator) -> str:
    state = int(rng.integers(num_symbols * num_symbols))
    draws = rng.random(length)
    out = []
    for r in draws:
        nxt = int(np.searchsorted(cum[state], r))
        if nxt >= num_symbols:
            nxt = num_symbols - 1
        out.append(alphabet[nxt])
        state = (state % num_symbols) * num_symbols + nxt
    return "".join(out)


def generate_language_corpus(num_languages: int, train_chunks_per_language: int,
                             test_sentences_per_language: int,
                             rng: np.random.Generator,
                             sentence_symbols: int = 180,
                             chunk_symbols: int = TRAIN_CHUNK_SYMBOLS,
                             concentration: float = 0.2) -> CorpusDataset:
    """Synthetic corpus: one order-2 Markov chain per language.

    Language names are lang00, lang01, ... Transition tables come from a
    symmetric Dirichlet; smaller `concentration` makes the languages more
    distinctive.
    """
    if num_languages < 2:
        raise ValueError("need at least two languages")
    alphabet = DEFAULT_ALPHABET
    num_symbols = len(alphabet)

    def stable_text(length: int) -> str:
        # Emit preprocessing-stable text (no space runs, non-space ends) so
        # a written corpus loads back into byte-identical samples.
        text = ""
        while len(text) < length + 1:
            raw = _markov_text(cum, length - len(text) + 128,
                               num_symbols, alphabet, rng)
            text = preprocess_text(text + " " + raw)
        if text[length - 1] == " ":
            # splice the space out; the neighbors are non-space, so the
            # result stays run-free
            return text[:length - 1] + text[length]
        return text[:length]

    train_chunks, train_labels = [], []
    test_sentences, test_labels = [], []
    languages = tuple(f"lang{k:02d}" for k in range(num_languages))
    for lang in languages:
        cum = _markov_tables(rng, num_symbols, concentration)
        text = stable_text(train_chunks_per_language * chunk_symbols)
        chunks = chunk_text(text, chunk_symbols)
        train_chunks.extend(chunks)
        train_labels.extend([lang] * len(chunks))
        for _ in range(test_sentences_per_language):
            test_sentences.append(stable_text(sentence_symbols))
            test_labels.append(lang)
    return CorpusDataset(train_chunks=train_chunks, train_labels=train_labels,
                         test_sentences=test_sentences, test_labels=test_labels,
                         languages=languages, skipped_sentences=0)


def write_corpus(corpus: CorpusDataset, train_dir, test_dir) -> None:
    """Write a corpus in the directory-per-language layout read back by
    load_language_corpus (training text joined, one test sentence per line)."""
    train_dir, test_dir = Path(train_dir), Path(test_dir)
    for lang in corpus.languages:
        (train_dir / lang).mkdir(parents=True, exist_ok=True)
        (test_dir / lang).mkdir(parents=True, exist_ok=True)
        chunks = [c for c, lb in zip(corpus.train_chunks, corpus.train_labels)
                  if lb == lang]
        (train_dir / lang / "train.txt").write_text("".join(chunks))
        sentences = [s for s, lb in zip(corpus.test_sentences, corpus.test_labels)
                     if lb == lang]
        (test_dir / lang / "test.txt").write_text("\n".join(sentences) + "\n")
