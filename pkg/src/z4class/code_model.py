"""Z4-codes, standard-form generator matrices, duals and residue codes.

A code of type 4^k1 2^k2 and length n is permutation-equivalent to the row
space of

    [ I_k1   A       B  ]
    [ 0      2I_k2   2D ]

with A (k1 x k2) and D (k2 x l) binary, B (k1 x l) over Z4 and
l = n - k1 - k2.  :class:`StandardGenerator` holds exactly that block
triple.  :class:`Z4Code` is the code itself, stored as its sorted set of
packed codewords, which is the ground truth for code identity.

Trivial extensions and the zero-coordinate test
-----------------------------------------------
A monomial map (coordinate permutation with sign changes) sends a coordinate
that is 0 in every codeword to another such coordinate, because -0 = 0.
Hence C is equivalent to a trivial extension (D, 0) iff C itself has an
identically zero coordinate: one direction is that monomial fact, the other
is the permutation moving that coordinate to the end.  In a standard-form
generator the first k1 + k2 columns carry the identity blocks and are never
zero, so the code has a zero coordinate iff the stacked [B; 2D] has a zero
column.  :func:`has_zero_coordinate` is therefore an exact test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .z4_algebra import DTYPE, as_z4, identity, mat_mul, pack, span_words, unpack


@dataclass(frozen=True, order=True)
class CodeType:
    n: int
    k1: int
    k2: int

    def __post_init__(self):
        if self.n < 0 or self.k1 < 0 or self.k2 < 0 or self.k1 + self.k2 > self.n:
            raise ValueError(f"invalid code type (n, k1, k2) = ({self.n}, {self.k1}, {self.k2})")

    @property
    def ell(self) -> int:
        return self.n - self.k1 - self.k2

    @property
    def size(self) -> int:
        return 4**self.k1 * 2**self.k2

    @property
    def dual(self) -> "CodeType":
        return CodeType(self.n, self.ell, self.k2)

    def __str__(self) -> str:
        return f"n={self.n} 4^{self.k1} 2^{self.k2}"


@dataclass(frozen=True, eq=False)
class StandardGenerator:
    """The (A, B, D) blocks of a standard-form generator matrix."""

    code_type: CodeType
    A: np.ndarray
    B: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        t = self.code_type
        A = np.asarray(self.A, dtype=DTYPE).reshape(t.k1, t.k2)
        B = as_z4(np.asarray(self.B).reshape(t.k1, t.ell))
        D = np.asarray(self.D, dtype=DTYPE).reshape(t.k2, t.ell)
        if A.size and A.max() > 1:
            raise ValueError("A must be a (0,1)-matrix")
        if D.size and D.max() > 1:
            raise ValueError("D must be a (0,1)-matrix")
        for name, arr in (("A", A), ("B", B), ("D", D)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def build(cls, n: int, k1: int, k2: int, A=None, B=None, D=None) -> "StandardGenerator":
        t = CodeType(n, k1, k2)
        A = np.zeros((k1, k2), dtype=DTYPE) if A is None else A
        B = np.zeros((k1, t.ell), dtype=DTYPE) if B is None else B
        D = np.zeros((k2, t.ell), dtype=DTYPE) if D is None else D
        return cls(t, np.asarray(A), np.asarray(B), np.asarray(D))

    @classmethod
    def from_matrix(cls, m, k1: int, k2: int) -> "StandardGenerator":
        """Read the blocks off an assembled matrix, checking the block layout."""
        m = as_z4(m, ndim=2)
        if m.shape[0] != k1 + k2:
            raise ValueError(f"expected {k1 + k2} rows, got {m.shape[0]}")
        n = m.shape[1]
        t = CodeType(n, k1, k2)
        top, bottom = m[:k1], m[k1:]
        s = k1 + k2
        if not np.array_equal(top[:, :k1], identity(k1)):
            raise ValueError("leading k1 x k1 block is not the identity")
        if np.any(bottom[:, :k1]):
            raise ValueError("lower-left block is not zero")
        if not np.array_equal(bottom[:, k1:s], 2 * identity(k2)):
            raise ValueError("middle k2 x k2 block is not 2I")
        if np.any(bottom[:, s:] % 2):
            raise ValueError("lower-right block is not of the form 2D")
        return cls(t, top[:, k1:s], top[:, s:], bottom[:, s:] // 2)

    @property
    def n(self) -> int:
        return self.code_type.n

    @property
    def k1(self) -> int:
        return self.code_type.k1

    @property
    def k2(self) -> int:
        return self.code_type.k2

    @property
    def orders(self) -> tuple[int, ...]:
        return (4,) * self.k1 + (2,) * self.k2

    @property
    def matrix(self) -> np.ndarray:
        t = self.code_type
        top = np.hstack([identity(t.k1), self.A, self.B])
        bottom = np.hstack([np.zeros((t.k2, t.k1), dtype=DTYPE), 2 * identity(t.k2), 2 * self.D])
        return np.vstack([top, bottom]).astype(DTYPE).reshape(t.k1 + t.k2, t.n)

    @property
    def stacked(self) -> np.ndarray:
        """The (k1 + k2) x l matrix [B; 2D]."""
        return np.vstack([self.B, 2 * self.D]).astype(DTYPE).reshape(self.k1 + self.k2, self.code_type.ell)

    def __eq__(self, other):
        if not isinstance(other, StandardGenerator):
            return NotImplemented
        return self.code_type == other.code_type and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.code_type, self.matrix.tobytes()))

    def __repr__(self):
        rows = "; ".join(" ".join(map(str, r)) for r in self.matrix)
        return f"StandardGenerator({self.n}, {self.k1}, {self.k2}: [{rows}])"


@dataclass(frozen=True, eq=False)
class Z4Code:
    """A Z4-code as its sorted packed codeword set plus a generating set.

    ``generators`` are independent with additive orders ``orders`` (4 for
    the first k1 rows, 2 for the rest), so ``code_type`` is exact.
    """

    n: int
    words: np.ndarray
    generators: np.ndarray
    code_type: CodeType

    def __post_init__(self):
        self.words.setflags(write=False)
        self.generators.setflags(write=False)
        if len(self.words) != self.code_type.size:
            raise ValueError(f"{len(self.words)} codewords do not match {self.code_type}")

    @classmethod
    def _from_independent(cls, rows, k1: int, k2: int, n: int) -> "Z4Code":
        rows = np.asarray(rows, dtype=DTYPE).reshape(k1 + k2, n)
        words = np.unique(pack(span_words(rows, (4,) * k1 + (2,) * k2)).reshape(-1))
        return cls(n, words, rows, CodeType(n, k1, k2))

    @classmethod
    def from_standard(cls, g: StandardGenerator) -> "Z4Code":
        return cls._from_independent(g.matrix, g.k1, g.k2, g.n)

    @classmethod
    def from_rows(cls, rows, n: int | None = None) -> "Z4Code":
        """Span of arbitrary generating rows (any number, possibly dependent)."""
        rows = np.asarray(rows)
        if n is None:
            n = rows.shape[1]
        rows = as_z4(rows.reshape(-1, n))
        std, perm = reduce_to_standard(rows, n)
        return cls._from_independent(unpermute_columns(std.matrix, perm), std.k1, std.k2, n)

    @classmethod
    def from_words(cls, words, n: int) -> "Z4Code":
        words = np.unique(np.asarray(words, dtype=np.int64))
        code = cls.from_rows(unpack(words, n), n)
        if not np.array_equal(code.words, words):
            raise ValueError("word set is not closed under Z4-linear combinations")
        return code

    @classmethod
    def zero(cls, n: int) -> "Z4Code":
        return cls(n, np.zeros(1, dtype=np.int64), np.zeros((0, n), dtype=DTYPE), CodeType(n, 0, 0))

    def __len__(self) -> int:
        return len(self.words)

    def __eq__(self, other):
        if not isinstance(other, Z4Code):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.words, other.words)

    def __hash__(self):
        return hash((self.n, self.words.tobytes()))

    def __contains__(self, vec) -> bool:
        return pack(as_z4(vec, ndim=1)) in self.word_set

    def __repr__(self):
        return f"Z4Code({self.code_type}, {len(self)} words)"

    @cached_property
    def codewords(self) -> np.ndarray:
        """Codewords as a |C| x n matrix, in lexicographic order."""
        return unpack(self.words, self.n)

    @cached_property
    def word_set(self) -> frozenset:
        return frozenset(self.words.tolist())

    @cached_property
    def sort_key(self) -> bytes:
        # big-endian bytes compare like the word sequence itself
        return self.words.astype(">i8").tobytes()

    @cached_property
    def column_counts(self) -> tuple[tuple[int, int, int], ...]:
        """Per coordinate: (# words with 0, # with 1 or 3, # with 2)."""
        w = self.codewords
        zeros = (w == 0).sum(axis=0)
        twos = (w == 2).sum(axis=0)
        units = len(w) - zeros - twos
        return tuple(zip(zeros.tolist(), units.tolist(), twos.tolist()))

    @cached_property
    def coordinate_invariants(self) -> tuple[tuple[int, ...], ...]:
        """Per coordinate, a histogram of (symbol class there, wt_H, wt_L) over all words.

        Symbol classes are {0}, {1, 3}, {2}; a monomial map carries each
        coordinate's histogram to its image coordinate unchanged.
        """
        w = self.codewords
        n = self.n
        cls = np.array([0, 1, 2, 1], dtype=np.int64)[w]
        wt_h = (w != 0).sum(axis=1, dtype=np.int64)
        wt_l = cls.sum(axis=1)
        word_key = wt_h * (2 * n + 1) + wt_l
        span_key = (n + 1) * (2 * n + 1)
        keys = cls * span_key + word_key[:, None]
        size = 3 * span_key
        return tuple(tuple(np.bincount(keys[:, i], minlength=size).tolist()) for i in range(n))

    def standard_form(self) -> tuple[StandardGenerator, tuple[int, ...]]:
        return reduce_to_standard(self.generators, self.n)


@dataclass(frozen=True, eq=False)
class BinaryCode:
    n: int
    generator: np.ndarray
    words: np.ndarray = field(repr=False)

    @classmethod
    def from_rows(cls, rows, n: int) -> "BinaryCode":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, n) % 2
        basis = gf2_basis(rows)
        words = span_words(basis, (2,) * len(basis)) % 2 if len(basis) else np.zeros((1, n), dtype=DTYPE)
        place = 2 ** np.arange(n - 1, -1, -1, dtype=np.int64)
        packed = np.unique(words.astype(np.int64) @ place)
        return cls(n, basis.astype(DTYPE), packed)

    @property
    def dimension(self) -> int:
        return len(self.generator)

    def __len__(self) -> int:
        return len(self.words)

    def __eq__(self, other):
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.words, other.words)

    def __hash__(self):
        return hash((self.n, self.words.tobytes()))

    def weight_distribution(self) -> tuple[int, ...]:
        weights = np.array([bin(int(w)).count("1") for w in self.words])
        return tuple(np.bincount(weights, minlength=self.n + 1).tolist())


@dataclass(frozen=True)
class DualGenerator:
    """A standard-form generator of the dual, plus its coordinate reordering.

    Column j of ``generator`` is coordinate ``perm[j]`` of the original code.
    """

    generator: StandardGenerator
    perm: tuple[int, ...]

    def code(self) -> Z4Code:
        """The dual code in the original coordinate order."""
        g = self.generator
        return Z4Code._from_independent(unpermute_columns(g.matrix, self.perm), g.k1, g.k2, g.n)


def unpermute_columns(m, perm: Sequence[int]) -> np.ndarray:
    """Undo a column selection: returns X with X[:, perm[j]] = m[:, j]."""
    m = np.asarray(m)
    out = np.empty_like(m)
    out[:, list(perm)] = m
    return out


def gf2_basis(rows) -> np.ndarray:
    """Reduced row-echelon basis of the GF(2) row space of ``rows``."""
    m = np.asarray(rows, dtype=np.int64) % 2
    m = m.copy()
    r = 0
    for c in range(m.shape[1]):
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + pivots[0]
        m[[r, p]] = m[[p, r]]
        for i in np.nonzero(m[:, c])[0]:
            if i != r:
                m[i] ^= m[r]
        r += 1
        if r == m.shape[0]:
            break
    return m[:r]


def reduce_to_standard(rows, n: int | None = None) -> tuple[StandardGenerator, tuple[int, ...]]:
    """Row-reduce arbitrary generating rows to standard form.

    Unit pivots are taken first, then pivots equal to 2.  Returns the
    standard generator and the column permutation ``perm`` such that its
    column j is column ``perm[j]`` of the input.
    """
    m = np.asarray(rows, dtype=np.int64)
    if n is None:
        n = m.shape[1]
    m = m.reshape(-1, n) % 4
    rows_count = m.shape[0]
    perm = list(range(n))

    def bring_to(r: int, i: int, j: int):
        m[[r, i]] = m[[i, r]]
        m[:, [r, j]] = m[:, [j, r]]
        perm[r], perm[j] = perm[j], perm[r]

    r = 0
    while r < rows_count:
        hits = np.argwhere(m[r:, r:] % 2 == 1)
        if hits.size == 0:
            break
        i, j = hits[0]
        bring_to(r, r + i, r + j)
        if m[r, r] == 3:
            m[r] = (3 * m[r]) % 4
        for i in range(rows_count):
            if i != r and m[i, r]:
                m[i] = (m[i] - m[i, r] * m[r]) % 4
        r += 1
    k1 = r
    while r < rows_count:
        hits = np.argwhere(m[r:, r:] == 2)
        if hits.size == 0:
            break
        i, j = hits[0]
        bring_to(r, r + i, r + j)
        for i in range(rows_count):
            if i != r and m[i, r] >= 2:
                m[i] = (m[i] - m[r]) % 4
        r += 1
    k2 = r - k1
    g = StandardGenerator.from_matrix(m[: k1 + k2], k1, k2) if k1 + k2 else StandardGenerator.build(n, 0, 0)
    return g, tuple(perm)


def span(g: StandardGenerator) -> Z4Code:
    return Z4Code.from_standard(g)


def compute_type(rows, n: int | None = None) -> CodeType:
    return reduce_to_standard(rows, n)[0].code_type


def dual(g: StandardGenerator) -> DualGenerator:
    """Standard-form generator of the dual code.

    The dual is generated by [-B^T - D^T A^T, D^T, I_l; 2A^T, 2I_k2, 0];
    moving its last l coordinates to the front and its first k1 coordinates
    to the back puts it in standard form with A' = D^T,
    B' = -B^T - D^T A^T and D' = A^T.
    """
    t = g.code_type
    At, Bt, Dt = g.A.T, g.B.T, g.D.T
    b_dual = (-(Bt.astype(np.int64)) - mat_mul(Dt, At)) % 4
    out = StandardGenerator(t.dual, Dt, b_dual, At)
    perm = tuple(range(t.k1 + t.k2, t.n)) + tuple(range(t.k1, t.k1 + t.k2)) + tuple(range(t.k1))
    return DualGenerator(out, perm)


def residue(g: StandardGenerator) -> BinaryCode:
    """Binary [n, k1] residue code, generated by [I A B mod 2]."""
    top = np.hstack([identity(g.k1), g.A, g.B % 2]).reshape(g.k1, g.n)
    return BinaryCode.from_rows(top, g.n)


def residue_code(code: Z4Code) -> BinaryCode:
    """Residue code computed directly from the codewords."""
    return BinaryCode.from_rows(code.codewords % 2, code.n)


def trivial_extension(code: Z4Code) -> Z4Code:
    zero_col = np.zeros((len(code.generators), 1), dtype=DTYPE)
    gens = np.hstack([code.generators, zero_col])
    t = code.code_type
    return Z4Code(code.n + 1, code.words * 4, gens, CodeType(code.n + 1, t.k1, t.k2))


def has_zero_coordinate(code: Z4Code) -> bool:
    if code.n == 0:
        return False
    return bool(np.any(np.all(code.generators == 0, axis=0)))


# -- generator text format ------------------------------------------------


@dataclass(frozen=True)
class GeneratorFile:
    """A parsed generator file.

    ``code`` is the span of the rows as written; ``standard`` is its standard
    form, whose column j is column ``perm[j]`` of the file (identity unless
    the file is raw).
    """

    code: Z4Code
    standard: StandardGenerator
    perm: tuple[int, ...]
    raw: bool


def _parse_row(line: str, n: int) -> list[int]:
    tokens = line.split()
    if len(tokens) == 1 and len(tokens[0]) == n and n > 1:
        tokens = list(tokens[0])
    try:
        row = [int(t) for t in tokens]
    except ValueError:
        raise ValueError(f"bad generator row {line!r}") from None
    if len(row) != n or any(v not in (0, 1, 2, 3) for v in row):
        raise ValueError(f"row {line!r} is not {n} digits in 0..3")
    return row


def parse_generator(text: str) -> GeneratorFile:
    """Parse the generator text format.

    The header is ``n k1 k2`` followed by exactly k1 + k2 rows in standard
    form.  A header ``n raw`` or ``n k1 k2 raw`` accepts any generating
    rows, which are normalized by row reduction; a declared type is then
    checked.  Blank lines and lines starting with ``#`` are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty generator file")
    header = lines[0].split()
    raw = header[-1].lower() == "raw"
    if raw:
        header = header[:-1]
    if len(header) not in ((1, 3) if raw else (3,)):
        raise ValueError(f"bad header {lines[0]!r}; expected 'n k1 k2' or 'n raw'")
    nums = [int(h) for h in header]
    n = nums[0]
    rows = [_parse_row(ln, n) for ln in lines[1:]]
    if raw:
        std, perm = reduce_to_standard(np.array(rows, dtype=np.int64).reshape(-1, n), n)
        if len(nums) == 3 and (std.k1, std.k2) != (nums[1], nums[2]):
            raise ValueError(f"declared type 4^{nums[1]} 2^{nums[2]} but rows span 4^{std.k1} 2^{std.k2}")
        code = Z4Code._from_independent(unpermute_columns(std.matrix, perm), std.k1, std.k2, n)
        return GeneratorFile(code, std, perm, True)
    k1, k2 = nums[1], nums[2]
    std = StandardGenerator.from_matrix(np.array(rows, dtype=np.int64).reshape(len(rows), n), k1, k2)
    return GeneratorFile(span(std), std, tuple(range(n)), False)


def read_generator(path) -> GeneratorFile:
    return parse_generator(Path(path).read_text())


def format_generator(g: StandardGenerator, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.k1} {g.k2}")
    lines.extend(" ".join(str(int(v)) for v in row) for row in g.matrix)
    return "\n".join(lines) + "\n"


def write_generator(path, g: StandardGenerator, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_generator(g, comments))


def random_standard_generator(rng: np.random.Generator, n: int, k1: int, k2: int) -> StandardGenerator:
    """A uniformly random element of the full (unfiltered) standard-form set."""
    ell = n - k1 - k2
    return StandardGenerator.build(
        n,
        k1,
        k2,
        A=rng.integers(0, 2, size=(k1, k2)),
        B=rng.integers(0, 4, size=(k1, ell)),
        D=rng.integers(0, 2, size=(k2, ell)),
    )

