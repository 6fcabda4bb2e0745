"""Hamming, Lee and Euclidean weights and the three weight enumerators."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from .code_model import Z4Code

Kind = Literal["hamming", "lee", "symmetrized"]
Metric = Literal["hamming", "lee", "euclidean"]
KINDS: tuple[Kind, ...] = ("hamming", "lee", "symmetrized")
METRICS: tuple[Metric, ...] = ("hamming", "lee", "euclidean")

_VARIABLES = {"hamming": "xy", "lee": "xy", "symmetrized": "xyz"}

# per-symbol weights for symbols 0, 1, 2, 3
_SYMBOL_WEIGHTS = {
    "hamming": np.array([0, 1, 1, 1]),
    "lee": np.array([0, 1, 2, 1]),
    "euclidean": np.array([0, 1, 4, 1]),
}


def _symbol_counts(x) -> np.ndarray:
    x = np.asarray(x)
    return np.stack([(x == s).sum(axis=-1) for s in range(4)], axis=-1)


def wt_h(x) -> int:
    return int(_symbol_counts(x) @ _SYMBOL_WEIGHTS["hamming"])


def wt_l(x) -> int:
    return int(_symbol_counts(x) @ _SYMBOL_WEIGHTS["lee"])


def wt_e(x) -> int:
    return int(_symbol_counts(x) @ _SYMBOL_WEIGHTS["euclidean"])


class WeightEnumerator(Mapping):
    """Sparse polynomial: exponent tuple -> number of codewords.

    hamming terms are (n - wt_H, wt_H), lee terms (2n - wt_L, wt_L) and
    symmetrized terms (n0, n1 + n3, n2).
    """

    __slots__ = ("kind", "_terms", "_hash")

    def __init__(self, kind: Kind, terms: Mapping[tuple[int, ...], int]):
        if kind not in KINDS:
            raise ValueError(f"unknown enumerator kind {kind!r}")
        self.kind = kind
        self._terms = {tuple(int(e) for e in k): int(v) for k, v in terms.items() if v}
        self._hash = hash((kind, tuple(sorted(self._terms.items()))))

    def __getitem__(self, key):
        return self._terms[tuple(key)]

    def __iter__(self):
        return iter(sorted(self._terms, reverse=True))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return self.kind == other.kind and self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"WeightEnumerator({self.kind}, {self})"

    @property
    def total(self) -> int:
        return sum(self._terms.values())

    def __str__(self) -> str:
        """Canonical text, highest exponent tuple first: ``x^3 + 2*x*y*z + x^2*z``."""
        names = _VARIABLES[self.kind]
        parts = []
        for exps in self:
            coeff = self._terms[exps]
            monomial = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
            )
            if not monomial:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(monomial)
            else:
                parts.append(f"{coeff}*{monomial}")
        return " + ".join(parts) if parts else "0"


def enumerator(code: Z4Code, kind: Kind) -> WeightEnumerator:
    if kind not in KINDS:
        raise ValueError(f"unknown enumerator kind {kind!r}")
    n = code.n
    c = _symbol_counts(code.codewords)
    if kind == "symmetrized":
        # (n1 + n3, n2) determines n0
        keys = (c[:, 1] + c[:, 3]) * (n + 1) + c[:, 2]
        counts = np.bincount(keys, minlength=(n + 1) ** 2)
        terms = {}
        for key in np.nonzero(counts)[0].tolist():
            units, twos = divmod(key, n + 1)
            terms[(n - units - twos, units, twos)] = counts[key]
        return WeightEnumerator(kind, terms)
    total = n if kind == "hamming" else 2 * n
    counts = np.bincount(c @ _SYMBOL_WEIGHTS[kind], minlength=total + 1)
    return WeightEnumerator(kind, {(total - w, w): counts[w] for w in np.nonzero(counts)[0].tolist()})


def hwe(code: Z4Code) -> WeightEnumerator:
    return enumerator(code, "hamming")


def lwe(code: Z4Code) -> WeightEnumerator:
    return enumerator(code, "lee")


def swe(code: Z4Code) -> WeightEnumerator:
    return enumerator(code, "symmetrized")


def from_swe(s: WeightEnumerator, kind: Kind) -> WeightEnumerator:
    """Collapse a symmetrized enumerator to the Hamming or Lee one.

    A word with (n0, n1+n3, n2) = (a, b, c) has wt_H = b + c and
    wt_L = b + 2c.
    """
    if s.kind != "symmetrized":
        raise ValueError("from_swe needs a symmetrized enumerator")
    out: dict[tuple[int, int], int] = {}
    for (a, b, c), count in s.items():
        n = a + b + c
        if kind == "hamming":
            key = (n - b - c, b + c)
        elif kind == "lee":
            key = (2 * n - b - 2 * c, b + 2 * c)
        else:
            raise ValueError(f"cannot collapse to {kind!r}")
        out[key] = out.get(key, 0) + count
    return WeightEnumerator(kind, out)


@dataclass(frozen=True)
class WeightProfile:
    """Minimum weights over nonzero codewords; None for the zero code."""

    d_h: Optional[int]
    d_l: Optional[int]
    d_e: Optional[int]

    @property
    def defined(self) -> bool:
        return self.d_h is not None

    def get(self, metric: Metric) -> Optional[int]:
        return {"hamming": self.d_h, "lee": self.d_l, "euclidean": self.d_e}[metric]

    def __str__(self):
        if not self.defined:
            return "d_H=undefined d_L=undefined d_E=undefined"
        return f"d_H={self.d_h} d_L={self.d_l} d_E={self.d_e}"


def weight_profile(code: Z4Code) -> WeightProfile:
    words = code.codewords[1:]  # words are sorted, so row 0 is the zero word
    if len(words) == 0:
        return WeightProfile(None, None, None)
    c = _symbol_counts(words)
    return WeightProfile(*(int((c @ _SYMBOL_WEIGHTS[m]).min()) for m in METRICS))


def optimal_codes(family: Iterable[Z4Code], metric: Metric) -> list[Z4Code]:
    """Members of ``family`` attaining the largest minimum weight for ``metric``.

    Order of the input is preserved in the output.
    """
    family = list(family)
    if not family:
        raise ValueError("optimal_codes needs a nonempty family")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    types = {(c.n, c.code_type.k1, c.code_type.k2) for c in family}
    if len(types) != 1:
        raise ValueError(f"family mixes code types {sorted(types)}")
    minima = [weight_profile(c).get(metric) for c in family]
    if all(m is None for m in minima):
        return family
    best = max(m for m in minima if m is not None)
    return [c for c, m in zip(family, minima) if m == best]
