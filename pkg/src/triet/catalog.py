"""Built-in parameter sets: the twelve-case example and the substitutions
used throughout the tests and the command line."""

from __future__ import annotations

from dataclasses import dataclass

from .iet import Interval, ThreeIET
from .qfield import parse_exact

__all__ = [
    "EXAMPLE_ALPHA",
    "EXAMPLE_BETA_PRINTED",
    "EXAMPLE_BETA",
    "example_iet",
    "Table1Row",
    "TABLE1",
    "ETA_EXAMPLE",
    "PHI_EXAMPLE",
    "PSI_EXAMPLE",
    "LABBE_XI",
]

EXAMPLE_ALPHA = "1/5*sqrt(5) - 1/5"
# The printed value is the length of J_C; the discontinuity is 1 minus it.
EXAMPLE_BETA_PRINTED = "2/3 - 1/6*sqrt(5)"
EXAMPLE_BETA = "1/3 + 1/6*sqrt(5)"


def example_iet() -> ThreeIET:
    return ThreeIET(parse_exact(EXAMPLE_ALPHA), parse_exact(EXAMPLE_BETA))


@dataclass(frozen=True)
class Table1Row:
    case: str
    gamma: str
    delta: str
    ordering: str
    lengths: tuple[int, ...]

    def interval(self) -> Interval:
        return Interval(parse_exact(self.gamma), parse_exact(self.delta))


TABLE1: tuple[Table1Row, ...] = (
    Table1Row("i", "6/25", "99/100", "a^ < b^ < d^ < c^", (2, 1, 2, 3, 1)),
    Table1Row("ii", "29/100", "71/100", "d^ < c^ < a^ < b^", (1, 15, 14, 13, 14)),
    Table1Row("iii", "77/100", "4/5", "b^ < a^ < d^ < c^", (88, 89, 88, 109, 21)),
    Table1Row("iv", "7/25", "3/4", "d^ < c^ < b^ < a^", (1, 13, 12, 13, 12)),
    Table1Row("v", "1/100", "3/4", "a^ < d^ < b^ < c^", (2, 1, 2, 3, 1)),
    Table1Row("vi", "1/100", "29/100", "d^ < a^ < c^ < b^", (2, 14, 13, 11, 12)),
    Table1Row("vii", "1/4", "99/100", "b^ < d^ < a^ < c^", (1, 2, 3, 2, 1)),
    Table1Row("viii", "71/100", "99/100", "d^ < b^ < c^ < a^", (2, 13, 14, 12, 11)),
    Table1Row("ix", "1/25", "37/50", "a^ < d^ < c^ < b^", (2, 1, 4, 2, 3)),
    Table1Row("x", "29/100", "99/100", "b^ < d^ < c^ < a^", (1, 2, 4, 3, 2)),
    Table1Row("xi", "1/100", "99/100", "d^ < a^ < b^ < c^", (1, 2, 1, 2, 1)),
    Table1Row("xii", "1/4", "3/4", "d^ < b^ < a^ < c^", (1, 12, 13, 12, 11)),
)

PHI_EXAMPLE = "0=0110101,1=01101"
PSI_EXAMPLE = "0=1010101,1=10101"
ETA_EXAMPLE = "A=BCACAC,B=BCACBBCAC,C=BCAC"
LABBE_XI = "A=ABA,B=C,C=BAC"
