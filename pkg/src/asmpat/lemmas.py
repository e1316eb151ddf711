"""Structural predicates on -1 placements, checked exhaustively by the enumerator.

Each ``check_*`` function returns ``None`` when the hypothesis does not apply,
``True`` when the conclusion holds and ``False`` for a counterexample.
"""

from __future__ import annotations

from .core import Asm, Permutation, Symmetry, apply_symmetry, negative_ones
from .matcher import compile_pattern

P2143 = compile_pattern(Permutation.parse("2143").pattern())
P3412 = compile_pattern(Permutation.parse("3412").pattern())


def _has(cp, a: Asm) -> bool:
    return cp.contains(a.pos, a.neg, a.n)


def check_two_negative_ones(a: Asm) -> bool | None:
    """A -1 strictly SW of another forces 3412; strictly NW forces 2143."""
    _, negs = negative_ones(a)
    need_3412 = need_2143 = False
    for x, (i, j) in enumerate(negs):
        for i2, j2 in negs[x + 1:]:
            # i <= i2 by row-major order
            if i2 > i and j2 < j:
                need_3412 = True
            elif i2 > i and j2 > j:
                need_2143 = True
    if not (need_3412 or need_2143):
        return None
    return (not need_3412 or _has(P3412, a)) and (not need_2143 or _has(P2143, a))


def l_paths(ia: int, ja: int, ib: int, jb: int) -> tuple[list, list]:
    """East-then-south and south-then-east cell paths between two cells."""
    east_south = [(ia, j) for j in range(ja, jb + 1)] + [(i, jb) for i in range(ia + 1, ib + 1)]
    south_east = [(i, ja) for i in range(ia, ib + 1)] + [(ib, j) for j in range(ja + 1, jb + 1)]
    return east_south, south_east


def check_path_lemma(a: Asm) -> bool | None:
    """In a 3412-avoider, two -1s in NW/SE position have a 1 on one of the L-paths."""
    _, negs = negative_ones(a)
    pairs = [
        (p, q) for x, p in enumerate(negs) for q in negs[x + 1:] if q[0] > p[0] and q[1] > p[1]
    ]
    if not pairs or _has(P3412, a):
        return None
    for (ia, ja), (ib, jb) in pairs:
        p1, p2 = l_paths(ia, ja, ib, jb)
        if not any(a[c] == 1 for c in p1) and not any(a[c] == 1 for c in p2):
            return False
    return True


class NotAChainError(ValueError):
    pass


def negative_ones_path(a: Asm) -> list[tuple[int, int]]:
    """The path of adjacent entries threading the -1s of a 3412-avoider.

    The -1s must form a chain from north-west to south-east.  The path runs
    along the first -1's row from column 1, between consecutive -1s (east
    then south for a diagonal step), and along the last -1's row to column n.
    Cells are 1-based, in path order.
    """
    _, negs = negative_ones(a)
    if not negs:
        raise NotAChainError("no -1 entries")
    for (i, j), (i2, j2) in zip(negs, negs[1:]):
        if j2 < j:
            raise NotAChainError(f"-1 at {(i2, j2)} is south-west of {(i, j)}")
    n = a.n
    i1, j1 = negs[0]
    path = [(i1, c) for c in range(1, j1 + 1)]
    for (i, j), (i2, j2) in zip(negs, negs[1:]):
        # east along row i to column j2, then south along column j2
        path.extend((i, c) for c in range(j + 1, j2 + 1))
        path.extend((r, j2) for r in range(i + 1, i2 + 1))
    ik, jk = negs[-1]
    path.extend((ik, c) for c in range(jk + 1, n + 1))
    return path


def check_path_construction(a: Asm) -> bool | None:
    """Path facts used for the exponential bound on 3412-avoiders.

    The path is a chain of unit east/south steps from column 1 to column n
    through every -1, has at most 2n cells, and the 1s strictly above or
    strictly below it never share a row or column.
    """
    if not any(a.neg) or _has(P3412, a):
        return None
    path = negative_ones_path(a)
    n = a.n
    steps_ok = all((i2 - i, j2 - j) in ((0, 1), (1, 0)) for (i, j), (i2, j2) in zip(path, path[1:]))
    if not steps_ok or path[0][1] != 1 or path[-1][1] != n or len(path) > 2 * n:
        return False
    _, negs = negative_ones(a)
    cells = set(path)
    if not cells.issuperset(negs):
        return False
    top = {}
    bottom = {}
    for i, j in path:
        top[j] = min(top.get(j, i), i)
        bottom[j] = max(bottom.get(j, i), i)
    for side in ("above", "below"):
        ones = [
            (i, j)
            for i, j in a.one_positions()
            if (i < top[j] if side == "above" else i > bottom[j])
        ]
        if len({i for i, _ in ones}) != len(ones) or len({j for _, j in ones}) != len(ones):
            return False
    return True


def check_all_in_a_row(a: Asm) -> bool | None:
    """All -1s of a {2143, 3412}-avoider share a row or a column."""
    _, negs = negative_ones(a)
    if len(negs) < 2:
        return None
    return len({i for i, _ in negs}) == 1 or len({j for _, j in negs}) == 1


def check_at_most_three(a: Asm) -> bool | None:
    return a.num_negative() <= 3


def _three_in_row_views(a: Asm):
    # yields the matrix (or its transpose) in which the three -1s share row i
    _, negs = negative_ones(a)
    if len(negs) != 3:
        return
    if len({i for i, _ in negs}) == 1:
        yield a, negs[0][0]
    if len({j for _, j in negs}) == 1:
        t = apply_symmetry(a, Symmetry.TRANSPOSE)
        yield t, negs[0][1]


def check_rows_adjacent(a: Asm) -> bool | None:
    """Three -1s in row i: the 1s above and below the middle one are in rows i-1, i+1."""
    views = list(_three_in_row_views(a))
    if not views:
        return None
    for b, i in views:
        rows = b.rows
        d = [j for j, x in enumerate(rows[i - 1]) if x == -1][1]
        if i < 2 or i >= b.n or rows[i - 2][d] != 1 or rows[i][d] != 1:
            return False
    return True


def check_cols_adjacent(a: Asm) -> bool | None:
    """Three -1s in row i: the seven nonzero entries of row i are in adjacent columns."""
    views = list(_three_in_row_views(a))
    if not views:
        return None
    for b, i in views:
        nz = [j for j, x in enumerate(b.rows[i - 1]) if x != 0]
        if nz[-1] - nz[0] != len(nz) - 1:
            return False
    return True
