"""Domain types for alternating sign matrices and matrix patterns.

Matrices use the convention rows = positions, columns = values: the
permutation ``pi`` has its 1 in row ``i`` at column ``pi(i)``.  All public
indices are 1-based; internal storage is 0-based.

An :class:`Asm` is stored as two bitplanes, one mask of ``+1`` columns and one
mask of ``-1`` columns per row (bit ``j`` is column ``j + 1``).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

Rows = tuple[tuple[int, ...], ...]


class InputShapeError(ValueError):
    """Raised for non-square, ragged, or out-of-alphabet matrix input."""


class InvalidAsmError(ValueError):
    """Raised when a well-formed matrix violates the ASM axioms."""


ALPHABET = (-1, 0, 1)


def _as_rows(matrix: Iterable[Iterable[int]]) -> Rows:
    rows = tuple(tuple(row) for row in matrix)
    if not rows or not rows[0]:
        raise InputShapeError("matrix must be non-empty")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise InputShapeError("ragged matrix: rows have different lengths")
        for x in row:
            if isinstance(x, bool) or x not in ALPHABET or int(x) != x:
                raise InputShapeError(f"entry {x!r} not in {{-1, 0, 1}}")
    return tuple(tuple(int(x) for x in row) for row in rows)


def _check_square(rows: Rows) -> None:
    if len(rows) != len(rows[0]):
        raise InputShapeError(f"matrix is {len(rows)}x{len(rows[0])}, not square")


def _alternates(line: Sequence[int]) -> bool:
    expected = 1
    for x in line:
        if x == 0:
            continue
        if x != expected:
            return False
        expected = -expected
    # ended on +1 iff the next expected sign is -1
    return expected == -1


def validate_asm(matrix: Iterable[Iterable[int]]) -> bool:
    """Return True iff ``matrix`` satisfies the three ASM axioms.

    Raises :class:`InputShapeError` for non-square or out-of-alphabet input.
    """
    rows = _as_rows(matrix)
    _check_square(rows)
    # Alternation starting and ending with +1 forces every line sum to be 1.
    return all(_alternates(r) for r in rows) and all(_alternates(c) for c in zip(*rows))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Asm:
    """An immutable n x n alternating sign matrix."""

    __slots__ = ("n", "pos", "neg", "_rows")

    def __init__(self, matrix: Iterable[Iterable[int]]):
        rows = _as_rows(matrix)
        _check_square(rows)
        if not validate_asm(rows):
            raise InvalidAsmError("matrix violates the ASM axioms")
        pos = tuple(sum(1 << j for j, x in enumerate(r) if x == 1) for r in rows)
        neg = tuple(sum(1 << j for j, x in enumerate(r) if x == -1) for r in rows)
        self._init(pos, neg)
        self._rows = rows

    def _init(self, pos, neg):
        self.n = len(pos)
        self.pos = pos
        self.neg = neg
        self._rows = None

    @classmethod
    def _from_planes(cls, pos: tuple[int, ...], neg: tuple[int, ...]) -> Asm:
        # trusted constructor: the caller guarantees validity
        obj = object.__new__(cls)
        obj._init(pos, neg)
        return obj

    @property
    def rows(self) -> Rows:
        if self._rows is None:
            n = self.n
            self._rows = tuple(
                tuple(((p >> j) & 1) - ((q >> j) & 1) for j in range(n))
                for p, q in zip(self.pos, self.neg)
            )
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry at 1-based ``(row, col)``."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, Asm):
            return NotImplemented
        return self.pos == other.pos and self.neg == other.neg

    def __hash__(self):
        return hash((self.pos, self.neg))

    def __repr__(self):
        return f"Asm({[list(r) for r in self.rows]})"

    def __str__(self):
        return to_grid(self).rstrip("\n")

    def num_negative(self) -> int:
        return sum(q.bit_count() for q in self.neg)

    def one_positions(self) -> list[tuple[int, int]]:
        """1-based positions of the +1 entries, row-major."""
        return [(i + 1, j + 1) for i, p in enumerate(self.pos) for j in _bits(p)]

    def is_permutation(self) -> bool:
        return not any(self.neg)

    def transpose(self) -> Asm:
        return apply_symmetry(self, Symmetry.TRANSPOSE)


def negative_ones(a: Asm) -> tuple[int, list[tuple[int, int]]]:
    """Count and 1-based positions (row-major) of the -1 entries of ``a``."""
    positions = [(i + 1, j + 1) for i, q in enumerate(a.neg) for j in _bits(q)]
    return len(positions), positions


class ContainmentMode(enum.Enum):
    CLASSICAL = "classical"
    ONES = "ones"
    IDENTICAL = "identical"


@dataclass(frozen=True)
class PatternMatrix:
    """A rectangular {-1, 0, 1} matrix used as a pattern."""

    entries: Rows
    mode: ContainmentMode = ContainmentMode.CLASSICAL

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_rows(self.entries))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def q(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.q

    def has_negatives(self) -> bool:
        return any(x == -1 for row in self.entries for x in row)

    def ones_only(self) -> PatternMatrix:
        """This pattern with every -1 replaced by 0."""
        return PatternMatrix(
            tuple(tuple(1 if x == 1 else 0 for x in row) for row in self.entries), self.mode
        )

    def with_mode(self, mode: ContainmentMode) -> PatternMatrix:
        return PatternMatrix(self.entries, mode)

    def as_permutation(self) -> Permutation | None:
        """The permutation this pattern is the matrix of, if any."""
        if self.m != self.q:
            return None
        images = []
        for row in self.entries:
            if sorted(row) != [0] * (self.q - 1) + [1]:
                return None
            images.append(row.index(1) + 1)
        if len(set(images)) != self.q:
            return None
        return Permutation(tuple(images))


def chi(a: Asm) -> PatternMatrix:
    """The 0-1 matrix of ``a`` with every -1 replaced by 0."""
    return PatternMatrix(tuple(tuple(max(x, 0) for x in row) for row in a.rows))


def asm_pattern(a: Asm, mode: ContainmentMode) -> PatternMatrix:
    return PatternMatrix(a.rows, mode)


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on [n]; ``images[i]`` is pi(i + 1)."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """One-line notation, e.g. ``"2143"`` (single digits) or ``"10,2,1,..."``."""
        text = text.strip()
        if "," in text or " " in text:
            parts = [p for p in text.replace(",", " ").split() if p]
            return cls(tuple(int(p) for p in parts))
        if not text.isdigit():
            raise ValueError(f"not a permutation in one-line notation: {text!r}")
        return cls(tuple(int(c) for c in text))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self):
        if len(self) <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def reverse(self) -> Permutation:
        return Permutation(self.images[::-1])

    def complement(self) -> Permutation:
        n = len(self)
        return Permutation(tuple(n + 1 - v for v in self.images))

    def matrix_rows(self) -> Rows:
        n = len(self)
        return tuple(tuple(1 if j == v - 1 else 0 for j in range(n)) for v in self.images)

    def matrix(self) -> Asm:
        pos = tuple(1 << (v - 1) for v in self.images)
        return Asm._from_planes(pos, (0,) * len(pos))

    def pattern(self, mode: ContainmentMode = ContainmentMode.CLASSICAL) -> PatternMatrix:
        if not self.images:
            raise ValueError("the empty permutation is not a pattern")
        return PatternMatrix(self.matrix_rows(), mode)


def word_to_pattern(word: Sequence[int] | str) -> PatternMatrix:
    """|w| x max(w) 0-1 matrix with a 1 at (i, w_i)."""
    letters = [int(c) for c in word] if isinstance(word, str) else [int(c) for c in word]
    if not letters:
        raise ValueError("empty word")
    if min(letters) < 1:
        raise ValueError("word letters must be positive integers")
    width = max(letters)
    return PatternMatrix(tuple(tuple(1 if j == w - 1 else 0 for j in range(width)) for w in letters))


class Symmetry(enum.Enum):
    """The dihedral group of the square acting on matrices.

    ``REVERSE`` reverses the order of the rows, which reverses a permutation
    in one-line notation; ``COMPLEMENT`` reverses the columns.
    """

    IDENTITY = "identity"
    ROT90 = "rot90"
    ROT180 = "rot180"
    ROT270 = "rot270"
    REVERSE = "reverse"
    COMPLEMENT = "complement"
    TRANSPOSE = "transpose"
    ANTITRANSPOSE = "antitranspose"

    def apply_rows(self, rows: Rows) -> Rows:
        """Apply to any rectangular matrix given as row tuples."""
        if self is Symmetry.IDENTITY:
            return rows
        if self is Symmetry.REVERSE:
            return rows[::-1]
        if self is Symmetry.COMPLEMENT:
            return tuple(r[::-1] for r in rows)
        if self is Symmetry.TRANSPOSE:
            return tuple(zip(*rows))
        if self is Symmetry.ROT90:  # clockwise
            return tuple(zip(*rows[::-1]))
        if self is Symmetry.ROT180:
            return tuple(r[::-1] for r in rows[::-1])
        if self is Symmetry.ROT270:
            return tuple(zip(*rows))[::-1]
        # ANTITRANSPOSE: reflection in the anti-diagonal
        return tuple(r[::-1] for r in zip(*rows))[::-1]

    def compose(self, other: Symmetry) -> Symmetry:
        """The element ``self . other`` (apply ``other`` first)."""
        return _COMPOSE[self, other]

    def inverse(self) -> Symmetry:
        return next(s for s in Symmetry if self.compose(s) is Symmetry.IDENTITY)


def _probe(m: int, q: int) -> Rows:
    return tuple(tuple(i * q + j for j in range(q)) for i in range(m))


def _build_compose_table() -> dict:
    probe = _probe(4, 4)
    by_image = {s.apply_rows(probe): s for s in Symmetry}
    return {
        (s, t): by_image[s.apply_rows(t.apply_rows(probe))] for s in Symmetry for t in Symmetry
    }


_COMPOSE = _build_compose_table()


def apply_symmetry(a: Asm, s: Symmetry) -> Asm:
    rows = s.apply_rows(a.rows)
    out = object.__new__(Asm)
    n = len(rows)
    out._init(
        tuple(sum(1 << j for j in range(n) if r[j] == 1) for r in rows),
        tuple(sum(1 << j for j in range(n) if r[j] == -1) for r in rows),
    )
    out._rows = tuple(tuple(r) for r in rows)
    return out


def apply_symmetry_pattern(b: PatternMatrix, s: Symmetry) -> PatternMatrix:
    return PatternMatrix(s.apply_rows(b.entries), b.mode)


# --- text formats -----------------------------------------------------------

_GRID_CHARS = {1: "+", -1: "-", 0: "0"}
_GRID_VALUES = {v: k for k, v in _GRID_CHARS.items()}


def rows_to_grid(rows: Iterable[Iterable[int]]) -> str:
    return "".join("".join(_GRID_CHARS[x] for x in row) + "\n" for row in rows)


def to_grid(a: Asm | PatternMatrix) -> str:
    """Serialise to the asm-grid text format (newline-terminated lines of +,-,0)."""
    rows = a.rows if isinstance(a, Asm) else a.entries
    return rows_to_grid(rows)


def parse_grid_rows(text: str) -> Rows:
    """Parse asm-grid text into row tuples; rectangular shapes are accepted."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InputShapeError("empty grid")
    rows = []
    for line in lines:
        line = line.rstrip("\r")
        try:
            rows.append(tuple(_GRID_VALUES[c] for c in line))
        except KeyError as exc:
            raise InputShapeError(f"bad grid character {exc.args[0]!r}") from None
    return _as_rows(rows)


def parse_grid(text: str) -> Asm:
    return Asm(parse_grid_rows(text))


def to_json(a: Asm) -> str:
    return json.dumps({"n": a.n, "rows": [list(r) for r in a.rows]})


def parse_json(text: str) -> Asm:
    data = json.loads(text)
    try:
        n, rows = data["n"], data["rows"]
    except (KeyError, TypeError):
        raise InputShapeError('expected an object with "n" and "rows"') from None
    a = Asm(rows)
    if a.n != n:
        raise InputShapeError(f'"n" is {n} but the matrix is {a.n}x{a.n}')
    return a


def parse_matrix_text(text: str) -> Asm:
    """Parse either format, detected by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_grid(text)


M = Asm([[0, 1, 0], [1, -1, 1], [0, 1, 0]])
