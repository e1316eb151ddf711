"""Exhaustive generation of ASMs and permutations, plus explicit constructions.

ASMs are walked through their monotone triangles: row ``i`` of the triangle
is the set ``S_i`` of columns whose partial column sum over the first ``i``
matrix rows is 1, so ``A[i][j] = [j in S_i] - [j in S_{i-1}]``.  Sets are
column bitmasks.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .core import Asm, Permutation

DEFAULT_CEILING = 8


class CeilingError(RuntimeError):
    """Raised when a requested size exceeds the generation ceiling."""


def ceiling() -> int:
    value = os.environ.get("ASMPAT_CEILING")
    return int(value) if value else DEFAULT_CEILING


def robbins(n: int) -> int:
    """Number of n x n ASMs, prod_{k<n} (3k+1)! / (n+k)!."""
    num = den = 1
    for k in range(n):
        num *= math.factorial(3 * k + 1)
        den *= math.factorial(n + k)
    return num // den


def check_ceiling(n: int, allow_large: bool = False) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    limit = ceiling()
    if n > limit and not allow_large:
        raise CeilingError(
            f"n={n} exceeds the generation ceiling {limit}: "
            f"{robbins(n)} ASMs would be generated (pass allow_large to override)"
        )


def _elements(mask: int) -> tuple[int, ...]:
    return tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


def _interlaces(lower: tuple[int, ...], upper: tuple[int, ...]) -> bool:
    # upper has one more element: u_0 <= l_0 <= u_1 <= ... <= l_{k-1} <= u_k
    return all(upper[k] <= lower[k] <= upper[k + 1] for k in range(len(lower)))


@lru_cache(maxsize=None)
def _successors(n: int) -> dict[int, tuple[int, ...]]:
    """Map each triangle row mask to its possible next rows, in lex order."""
    by_size = [
        sorted((sum(1 << j for j in c) for c in itertools.combinations(range(n), k)), key=_elements)
        for k in range(n + 1)
    ]
    succ = {}
    for k in range(n):
        for low in by_size[k]:
            le = _elements(low)
            succ[low] = tuple(up for up in by_size[k + 1] if _interlaces(le, _elements(up)))
    return succ


def shard_keys(n: int) -> list[tuple[int, ...]]:
    """Triangle prefixes (first two rows) used to split the stream, in lex order."""
    succ = _successors(n)
    if n == 1:
        return [()]
    return [(s1, s2) for s1 in succ[0] for s2 in succ[s1]]


def parse_shard(spec: str) -> tuple[int, int]:
    """Parse ``"i/m"`` (0 <= i < m)."""
    try:
        i, m = (int(x) for x in spec.split("/"))
    except ValueError:
        raise ValueError(f"shard must look like i/m, got {spec!r}") from None
    if m < 1 or not 0 <= i < m:
        raise ValueError(f"shard index out of range: {spec!r}")
    return i, m


def _prefixes(n: int, shard: tuple[int, int] | None) -> list[tuple[int, ...]]:
    keys = shard_keys(n)
    if shard is None:
        return keys
    i, m = shard
    return keys[i::m]


def iter_planes(
    n: int, shard: tuple[int, int] | None = None
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(pos, neg)`` bitplanes of every n x n ASM in triangle-lex order.

    This is the hot stream; :func:`generate_asms` wraps it into :class:`Asm`.
    """
    succ = _successors(n)
    full = (1 << n) - 1
    for prefix in _prefixes(n, shard):
        rows = [0, *prefix]
        pos = [0] * n
        neg = [0] * n
        prev = 0
        for i, cur in enumerate(prefix):
            pos[i] = cur & ~prev
            neg[i] = prev & ~cur
            prev = cur
        depth = len(prefix)
        if depth == n:
            yield tuple(pos), tuple(neg)
            continue
        yield from _walk(succ, rows, pos, neg, depth, n - 1, full)


def _walk(succ, rows, pos, neg, depth, last, full):
    # rows[depth] is S_depth; fills matrix rows depth .. n-1
    prev = rows[depth]
    if depth == last:
        pos[last] = full & ~prev
        neg[last] = 0
        yield tuple(pos), tuple(neg)
        return
    rows.append(0)
    nxt = depth + 1
    for cur in succ[prev]:
        rows[nxt] = cur
        pos[depth] = cur & ~prev
        neg[depth] = prev & ~cur
        yield from _walk(succ, rows, pos, neg, nxt, last, full)
    rows.pop()


def generate_asms(
    n: int, shard: tuple[int, int] | None = None, allow_large: bool = False
) -> Iterator[Asm]:
    """Stream every n x n ASM exactly once, in monotone-triangle lex order."""
    check_ceiling(n, allow_large)
    from_planes = Asm._from_planes
    for pos, neg in iter_planes(n, shard):
        yield from_planes(pos, neg)


def count_asms(n: int, by_stream: bool | None = None, allow_large: bool = False) -> int:
    """|ASM_n|.  By default streams the generator when n is within the ceiling."""
    if n < 1:
        raise ValueError("n must be positive")
    if by_stream is None:
        by_stream = n <= ceiling()
    if not by_stream:
        return robbins(n)
    check_ceiling(n, allow_large)
    return sum(1 for _ in iter_planes(n))


def monotone_triangle(a: Asm) -> tuple[tuple[int, ...], ...]:
    """The rows S_1..S_n of the monotone triangle of ``a`` (1-based columns)."""
    out = []
    current = 0
    for p, q in zip(a.pos, a.neg):
        current = (current | p) & ~q
        out.append(tuple(j + 1 for j in _elements(current)))
    return tuple(out)


def from_monotone_triangle(triangle: Sequence[Sequence[int]]) -> Asm:
    """Inverse of :func:`monotone_triangle`; validates interlacing."""
    n = len(triangle)
    prev: tuple[int, ...] = ()
    pos, neg = [], []
    prev_mask = 0
    for k, row in enumerate(triangle, start=1):
        row = tuple(row)
        if len(row) != k or list(row) != sorted(set(row)) or not all(1 <= x <= n for x in row):
            raise ValueError(f"triangle row {k} must be {k} increasing values in 1..{n}")
        if not _interlaces(prev, row):
            raise ValueError(f"triangle rows {k - 1} and {k} do not interlace")
        mask = sum(1 << (x - 1) for x in row)
        pos.append(mask & ~prev_mask)
        neg.append(prev_mask & ~mask)
        prev, prev_mask = row, mask
    return Asm._from_planes(tuple(pos), tuple(neg))


def generate_permutations(n: int) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


# --- explicit constructions --------------------------------------------------


class GammaVariant(enum.Enum):
    PLAIN = "plain"
    PRIMED = "primed"


@dataclass(frozen=True)
class GammaSpec:
    n: int
    pi: Permutation
    variant: GammaVariant = GammaVariant.PLAIN


def gamma(spec: GammaSpec) -> Asm:
    """Build the 321-avoiding (PLAIN) or 123-avoiding (PRIMED) block ASM.

    With ``n = 3k + r``: the top and bottom block rows carry an identity (or
    anti-identity) in the middle block column, the middle block row carries
    the same blocks on either side of ``-pi``, and ``r`` extra unit rows and
    columns are appended as trailing columns.
    """
    n, pi = spec.n, spec.pi
    k, r = divmod(n, 3)
    if k < 1:
        raise ValueError(f"n={n} is too small; the construction needs n >= 3")
    if len(pi) != k:
        raise ValueError(f"n={n} needs a permutation of size {k}, got size {len(pi)}")
    primed = spec.variant is GammaVariant.PRIMED

    def unit(i: int) -> int:
        return k - 1 - i if primed else i

    grid = [[0] * n for _ in range(n)]
    extra = [None] * r  # row index of each extra unit row
    if primed:
        # extra rows sit between the top and middle block rows, in reverse order
        top, mid, bottom = 0, k + r, 2 * k + r
        for t in range(r):
            extra[t] = k + (r - 1 - t)
    else:
        top, mid, bottom = 0, k, 2 * k + r
        for t in range(r):
            extra[t] = 2 * k + t
    for i in range(k):
        grid[top + i][k + unit(i)] = 1
        grid[bottom + i][k + unit(i)] = 1
        grid[mid + i][unit(i)] = 1
        grid[mid + i][2 * k + unit(i)] = 1
        grid[mid + i][k + pi.images[i] - 1] = -1
    for t in range(r):
        grid[extra[t]][3 * k + t] = 1
    return Asm(grid)


def block_diagonal(blocks: Sequence[Asm]) -> Asm:
    if not blocks:
        raise ValueError("block_diagonal needs at least one block")
    pos, neg = [], []
    shift = 0
    for b in blocks:
        pos.extend(p << shift for p in b.pos)
        neg.extend(q << shift for q in b.neg)
        shift += b.n
    return Asm._from_planes(tuple(pos), tuple(neg))


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Compositions of n into positive parts, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)


def composition_count(n: int) -> int:
    """Sum over compositions n_1 + ... + n_l = n of prod floor(n_i / 3)!."""
    if n < 1:
        raise ValueError("n must be positive")
    # c[m] = sum over compositions of m; first part ranges over 1..m
    c = [1] + [0] * n
    for m in range(1, n + 1):
        c[m] = sum(math.factorial(p // 3) * c[m - p] for p in range(1, m + 1))
    return c[n]
