"""Monomial equivalence of Z4-codes: witnesses, invariants and class partitions.

Two codes are equivalent when one is the image of the other under a
coordinate permutation combined with sign changes.  A :class:`Monomial`
acts on x by y[perm[i]] = signs[i] * x[i] (flip first, then move).
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import numpy as np

from .code_model import Z4Code, residue_code
from .weights import WeightEnumerator, enumerator
from .z4_algebra import DTYPE, as_z4, pack


@dataclass(frozen=True)
class Monomial:
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        signs = tuple(int(s) for s in self.signs)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        if len(signs) != len(perm) or any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be a +1/-1 vector matching the permutation")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, n: int) -> "Monomial":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Monomial":
        return cls(tuple(rng.permutation(n).tolist()), tuple(rng.choice([1, -1], size=n).tolist()))

    def __len__(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "Monomial") -> "Monomial":
        """``self * other`` applies ``self`` first, then ``other``."""
        if len(self) != len(other):
            raise ValueError("monomials of different lengths")
        perm = tuple(other.perm[p] for p in self.perm)
        signs = tuple(s * other.signs[p] for s, p in zip(self.signs, self.perm))
        return Monomial(perm, signs)

    def inverse(self) -> "Monomial":
        n = len(self)
        inv = [0] * n
        for i, p in enumerate(self.perm):
            inv[p] = i
        return Monomial(tuple(inv), tuple(self.signs[inv[j]] for j in range(n)))

    def apply(self, x) -> np.ndarray:
        """Act on a vector, or on each row of a matrix."""
        x = np.asarray(x, dtype=np.int64)
        if x.shape[-1] != len(self):
            raise ValueError(f"monomial of length {len(self)} applied to length {x.shape[-1]}")
        out = np.empty_like(x)
        out[..., list(self.perm)] = x * np.asarray(self.signs)
        return as_z4(out)

    def __str__(self) -> str:
        perm = " ".join(str(p + 1) for p in self.perm)
        signs = "".join("+" if s == 1 else "-" for s in self.signs)
        return f"perm={perm}; signs={signs}"

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        m = re.fullmatch(r"\s*perm=([\d\s]*);\s*signs=([+-]*)\s*", text)
        if not m:
            raise ValueError(f"bad witness {text!r}")
        perm = tuple(int(p) - 1 for p in m.group(1).split())
        return cls(perm, tuple(1 if c == "+" else -1 for c in m.group(2)))


def apply_monomial(code: Z4Code, p: Monomial) -> Z4Code:
    if len(p) != code.n:
        raise ValueError(f"monomial of length {len(p)} applied to a length-{code.n} code")
    words = np.sort(pack(p.apply(code.codewords)))
    gens = p.apply(code.generators).astype(DTYPE).reshape(code.generators.shape)
    return Z4Code(code.n, words, gens, code.code_type)


@dataclass(frozen=True)
class Fingerprint:
    hamming_enum: WeightEnumerator
    lee_enum: WeightEnumerator
    column_profile: tuple[tuple[int, int, int], ...]
    residue_distribution: Optional[tuple[int, ...]] = None


def fingerprint(code: Z4Code, residue: bool = False) -> Fingerprint:
    """Monomial-invariant summary used to bucket candidate codes.

    With ``residue=True`` the weight distribution of the residue code is
    included as an extra filter.
    """
    return Fingerprint(
        enumerator(code, "hamming"),
        enumerator(code, "lee"),
        tuple(sorted(code.column_counts)),
        residue_code(code).weight_distribution() if residue else None,
    )


class _Target:
    """Precomputed search data for the code being mapped onto.

    Target coordinates are visited most-constrained first (smallest group of
    coordinates sharing a coordinate invariant).  ``prefix_sets[j]`` holds the
    packed projections of the codewords onto the first j + 1 visited
    coordinates.
    """

    def __init__(self, code: Z4Code):
        self.code = code
        n = code.n
        profile = code.coordinate_invariants
        multiplicity = defaultdict(int)
        for pr in profile:
            multiplicity[pr] += 1
        self.order = sorted(range(n), key=lambda t: (multiplicity[profile[t]], profile[t], t))
        self.profiles = [profile[t] for t in self.order]
        self.sorted_profile = tuple(sorted(profile))
        words = code.codewords[:, self.order].astype(np.int64)
        keys = np.zeros(len(words), dtype=np.int64)
        self.prefix_sets = []
        for j in range(n):
            keys = keys * 4 + words[:, j]
            self.prefix_sets.append(frozenset(np.unique(keys).tolist()))


def _search(target: _Target, source: Z4Code) -> Optional[Monomial]:
    n = source.n
    if n != target.code.n or len(source) != len(target.code):
        return None
    src_profile = source.coordinate_invariants
    if tuple(sorted(src_profile)) != target.sorted_profile:
        return None
    gens = source.generators.astype(np.int64)
    cols = [tuple(gens[:, i].tolist()) for i in range(n)]
    has_unit = [source.column_counts[i][1] > 0 for i in range(n)]
    # one representative per group of identical source columns is enough
    candidates = [
        [i for i in range(n) if src_profile[i] == target.profiles[j]] for j in range(n)
    ]
    used = [False] * n
    perm = [0] * n
    signs = [1] * n
    order = target.order
    prefix_sets = target.prefix_sets

    def extend(j: int, keys: list[int], sign_free: bool) -> bool:
        if j == n:
            return True
        allowed = prefix_sets[j]
        tried = set()
        for i in candidates[j]:
            if used[i] or cols[i] in tried:
                continue
            tried.add(cols[i])
            col = cols[i]
            # the global sign flip fixes every code, so the first unit column keeps sign +1
            options = (1, 3) if (has_unit[i] and sign_free) else (1,)
            for s in options:
                new_keys = [k * 4 + (s * v) % 4 for k, v in zip(keys, col)]
                if all(k in allowed for k in new_keys):
                    used[i] = True
                    perm[i] = order[j]
                    signs[i] = 1 if s == 1 else -1
                    if extend(j + 1, new_keys, sign_free or has_unit[i]):
                        return True
                    used[i] = False
        return False

    if not extend(0, [0] * len(cols[0]) if n else [], False):
        return None
    return Monomial(tuple(perm), tuple(signs))


def are_equivalent(c: Z4Code, c2: Z4Code) -> Optional[Monomial]:
    """Find P with apply_monomial(c2, P) == c, or None if the codes are inequivalent."""
    if c.n != c2.n:
        raise ValueError(f"codes of different lengths {c.n} and {c2.n}")
    witness = _search(_Target(c), c2)
    if witness is not None and apply_monomial(c2, witness) != c:
        raise AssertionError(f"equivalence search produced an invalid witness {witness}")
    return witness


@dataclass
class EquivalenceClass:
    """A class of equivalent codes.

    ``representative`` is the member with the lexicographically smallest
    sorted codeword list; ``payload`` is whatever was attached to it when it
    was added (for instance its generator matrix).
    """

    representative: Z4Code
    payload: Any = None
    size: int = 1
    members: list[Z4Code] = field(default_factory=list)


class ClassReducer:
    """Streaming partition of codes into equivalence classes.

    Codes are bucketed by :func:`fingerprint`; monomial search runs only
    against class representatives in the same bucket.  Only
    representatives are kept unless ``keep_members`` is set, so millions of
    candidates can be reduced in bounded memory.  The final classes and
    representatives do not depend on the order codes are added.
    """

    def __init__(self, residue: bool = False, keep_members: bool = False):
        self.residue = residue
        self.keep_members = keep_members
        self._buckets: dict[Fingerprint, list[list]] = defaultdict(list)
        self.added = 0
        self.searches = 0

    def add(self, code: Z4Code, payload: Any = None) -> bool:
        """Add a code; returns True when it starts a new class."""
        self.added += 1
        bucket = self._buckets[fingerprint(code, self.residue)]
        for entry in bucket:
            target, cls = entry
            if code == cls.representative:
                found = True
            else:
                self.searches += 1
                found = _search(target, code) is not None
            if found:
                cls.size += 1
                if self.keep_members and code not in cls.members:
                    cls.members.append(code)
                if code.sort_key < cls.representative.sort_key:
                    cls.representative = code
                    cls.payload = payload
                    entry[0] = _Target(code)
                return False
        cls = EquivalenceClass(code, payload, 1, [code] if self.keep_members else [])
        bucket.append([_Target(code), cls])
        return True

    def __len__(self) -> int:
        return sum(len(b) for b in self._buckets.values())

    def classes(self) -> list[EquivalenceClass]:
        out = [cls for bucket in self._buckets.values() for _, cls in bucket]
        out.sort(key=lambda cl: (cl.representative.n, len(cl.representative), cl.representative.sort_key))
        for cl in out:
            cl.members.sort(key=lambda c: c.sort_key)
        return out


def partition_classes(codes: Iterable[Z4Code], residue: bool = False) -> list[EquivalenceClass]:
    """Split codes into equivalence classes, sorted by representative.

    Duplicate codes in the input are counted once.
    """
    unique = {code: None for code in codes}
    reducer = ClassReducer(residue=residue, keep_members=True)
    for code in unique:
        reducer.add(code)
    classes = reducer.classes()
    for cl in classes:
        cl.size = len(cl.members)
    return classes
