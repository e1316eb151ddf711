"""Offline reference sequences and the queries that reproduce them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import formulas
from .core import M, ContainmentMode, PatternMatrix
from .enumerator import AvoidanceQuery, Provenance, SequenceRecord, at_most_one_negative_patterns, perm_patterns, word_patterns
from .generator import robbins


@dataclass(frozen=True)
class Golden:
    name: str
    description: str
    query: Callable[[], AvoidanceQuery]
    terms: tuple[int, ...]  # starting at n = 1
    provenance: Provenance

    def record(self) -> SequenceRecord:
        q = self.query()
        return SequenceRecord(
            name=self.name,
            offset=1,
            terms=list(self.terms),
            provenance=self.provenance,
            mode=q.effective_mode.value,
        )


def _formula_terms(f: Callable[[int], int], n_max: int = 12) -> tuple[int, ...]:
    return tuple(f(n) for n in range(1, n_max + 1))


_SINGLE_PATTERN = {
    "132": (1, 2, 6, 22, 90, 394, 1806, 8558),
    "123": (1, 2, 6, 23, 103, 514, 2785, 16132),
    "2143": (1, 2, 7, 40, 320, 3152, 35551, 441280),
    "2413": (1, 2, 7, 41, 364, 4168, 54659, 775528),
    "1243": (1, 2, 7, 41, 360, 4200, 59869, 990930),
    "1432": (1, 2, 7, 41, 361, 4234, 60723, 1009328),
    "1342": (1, 2, 7, 41, 367, 4455, 66403, 1138774),
    "1234": (1, 2, 7, 41, 370, 4638, 74093, 1423231),
    "1324": (1, 2, 7, 41, 376, 4985, 88985, 2024954),
}

_THREE_NEG = (8, 48, 220, 912, 3608, 13952, 53388, 203504, 775496, 2959808, 11323832, 43440672)

GOLDENS: dict[str, Golden] = {}


def _add(g: Golden) -> None:
    GOLDENS[g.name] = g


_add(Golden("asm", "all ASMs (product formula)", AvoidanceQuery, _formula_terms(robbins), Provenance.FORMULA))
for _pat, _terms in _SINGLE_PATTERN.items():
    _add(
        Golden(
            f"avoid-{_pat}",
            f"ASMs classically avoiding {_pat}",
            (lambda p=_pat: AvoidanceQuery(perm_patterns(p))),
            _terms,
            Provenance.PUBLISHED,
        )
    )
_add(
    Golden(
        "skew-pair",
        "ASMs avoiding 2143 and 3412",
        lambda: AvoidanceQuery(perm_patterns("2143", "3412")),
        (1, 2, 7, 38, 228, 1232, 5888),
        Provenance.PUBLISHED,
    )
)
_add(
    Golden(
        "skew-pair-k0",
        "permutations avoiding 2143 and 3412 (skew-merged)",
        lambda: AvoidanceQuery(perm_patterns("2143", "3412"), k=0),
        _formula_terms(formulas.skew_merged),
        Provenance.FORMULA,
    )
)
_add(
    Golden(
        "skew-pair-k3",
        "ASMs avoiding 2143 and 3412 with exactly three -1s",
        lambda: AvoidanceQuery(perm_patterns("2143", "3412"), k=3),
        (0,) * 6 + _THREE_NEG,
        Provenance.PUBLISHED,
    )
)
_add(
    Golden(
        "321-2341",
        "ASMs avoiding 321 and 2341",
        lambda: AvoidanceQuery(perm_patterns("321", "2341")),
        (1, 2, 6, 22, 87, 353, 1445),
        Provenance.PUBLISHED,
    )
)
_add(
    Golden(
        "word-11",
        "ASMs avoiding the word 11 (n!)",
        lambda: AvoidanceQuery(word_patterns(["11"])),
        _formula_terms(math.factorial),
        Provenance.FORMULA,
    )
)
_add(
    Golden(
        "at-most-one-negative",
        "ASMs avoiding 111, 1122, 1212, 1221, 2112, 2121, 2211 and transposed 111",
        lambda: AvoidanceQuery(at_most_one_negative_patterns()),
        _formula_terms(formulas.at_most_one_formula),
        Provenance.FORMULA,
    )
)
_add(
    Golden(
        "one-negative",
        "ASMs with exactly one -1",
        lambda: AvoidanceQuery(k=1),
        (0, 0, 1, 16, 200, 2400, 29400),
        Provenance.PUBLISHED,
    )
)
_add(
    Golden(
        "identical-M",
        "ASMs identically avoiding the 3x3 ASM with one -1",
        lambda: AvoidanceQuery((PatternMatrix(M.rows),), ContainmentMode.IDENTICAL),
        (1, 2, 6, 26, 176, 1886, 29088),
        Provenance.PUBLISHED,
    )
)
