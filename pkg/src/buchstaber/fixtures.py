"""Published values of m_k(b) and s_R(m, p), stored verbatim as evidence.

Cells that the source leaves open are kept open: "31Q+7 or 9" is a set,
"*<=5" an upper bound, "*>=5" a lower bound and "*" unknown.  Nothing here
is regenerated from formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

EXACT, SET, AT_MOST, AT_LEAST, UNKNOWN = "exact", "set", "at-most", "at-least", "unknown"


@dataclass(frozen=True)
class TableFixtureEntry:
    """One published cell.

    For the m_k table ``coords`` is (k, R) and the claim is
    m_k((2^(k-1) - 1) Q + R) = q_coeff * Q + v for some v in ``values``.
    For the s_R table ``coords`` is (m, p).
    """

    table: str
    coords: tuple[int, int]
    kind: str
    values: frozenset[int]
    q_coeff: int | None = None

    def __post_init__(self) -> None:
        if self.kind == EXACT and len(self.values) != 1:
            raise ValueError("an exact cell holds one value")
        if self.kind == SET and len(self.values) < 2:
            raise ValueError("a set cell holds at least two values")
        if self.kind in (AT_MOST, AT_LEAST) and len(self.values) != 1:
            raise ValueError("a bounded cell holds one bound")
        if self.kind == UNKNOWN and self.values:
            raise ValueError("an unknown cell holds no values")

    def admissible(self, Q: int = 0) -> frozenset[int]:
        """Allowed values of the cell (m_k table: at the given Q)."""
        shift = (self.q_coeff or 0) * Q
        return frozenset(v + shift for v in self.values)


# m_k((2^(k-1)-1)Q + R) for k = 2..6; each column lists R = 0, 1, ...
_MK_TABLE = {
    2: ["0"],
    3: ["0", "1", "4"],
    4: ["0", "1", "2", "5", "8", "9", "12"],
    5: ["0", "1", "2", "3", "6", "7|9", "10", "11|13", "16", "17", "18", "21", "24", "25", "28"],
    6: [
        "0", "1", "2", "3", "4", "7", "8|10", "11", "12|14", "13|15|17", "14|16|18",
        "15|17|19", "20|22", "21|23|25", "24|26", "27|29", "32", "33", "34", "35", "38",
        "39|41", "42", "43|45", "48", "49", "50", "53", "56", "57", "60",
    ],
}

# s_R(m, p), row m lists p = 2 .. min(m, 18)
_SRM_TABLE = {
    2: "2",
    3: "2 3",
    4: "1 3 4",
    5: "1 2 4 5",
    6: "1 2 3 5 6",
    7: "1 1 3 4 6 7",
    8: "1 1 2 4 4 7 8",
    9: "1 1 2 2 4 5 8 9",
    10: "1 1 1 2 3 5 6 9 10",
    11: "1 1 1 2 3 4 6 7 10 11",
    12: "1 1 1 2 2 4 *<=5 7 8 11 12",
    13: "1 1 1 1 2 3 * *<=6 8 9 12 13",
    14: "1 1 1 1 2 3 4 * *<=7 9 10 13 14",
    15: "1 1 1 1 2 2 4 5 * *<=8 10 11 14 15",
    16: "1 1 1 1 1 2 2 5 * * *<=9 11 11 15 16",
    17: "1 1 1 1 1 2 2 3 *>=5 * * *<=10 11 12 16 17",
    18: "1 1 1 1 1 2 2 3 3 *>=5 * * * 12 13 17 18",
    19: "1 1 1 1 1 1 2 2 3 4 * * * * 13 14 18",
    20: "1 1 1 1 1 1 2 2 3 4 5 * * * * 14 15",
    21: "1 1 1 1 1 1 2 2 3 3 5 * * * * * 15",
    22: "1 1 1 1 1 1 1 2 2 3 4 * * * * * *",
    23: "1 1 1 1 1 1 1 2 2 2 4 5 * * * * *",
    24: "1 1 1 1 1 1 1 2 2 2 3 5 * * * * *",
    25: "1 1 1 1 1 1 1 1 2 2 3 3 *>=5 * * * *",
    26: "1 1 1 1 1 1 1 1 2 2 2 3 4 * * * *",
    27: "1 1 1 1 1 1 1 1 2 2 2 3 4 * * * *",
    28: "1 1 1 1 1 1 1 1 1 2 2 3 3 *>=5 * * *",
    29: "1 1 1 1 1 1 1 1 1 2 2 2 3 4 * * *",
    30: "1 1 1 1 1 1 1 1 1 2 2 2 2 4 5 * *",
    31: "1 1 1 1 1 1 1 1 1 1 2 2 2 3 5 6 *",
    32: "1 1 1 1 1 1 1 1 1 1 2 2 2 3 3 6 *",
    33: "1 1 1 1 1 1 1 1 1 1 2 2 2 2 3 3 *>=6",
    34: "1 1 1 1 1 1 1 1 1 1 1 2 2 2 3 3 4",
    35: "1 1 1 1 1 1 1 1 1 1 1 2 2 2 3 3 4",
    36: "1 1 1 1 1 1 1 1 1 1 1 2 2 2 2 3 3",
    37: "1 1 1 1 1 1 1 1 1 1 1 1 2 2 2 2 3",
    38: "1 1 1 1 1 1 1 1 1 1 1 1 2 2 2 2 3",
    39: "1 1 1 1 1 1 1 1 1 1 1 1 2 2 2 2 3",
    40: "1 1 1 1 1 1 1 1 1 1 1 1 1 2 2 2 2",
}


def _srm_cell(m: int, p: int, token: str) -> TableFixtureEntry:
    if token == "*":
        return TableFixtureEntry("srm", (m, p), UNKNOWN, frozenset())
    if token.startswith("*<="):
        return TableFixtureEntry("srm", (m, p), AT_MOST, frozenset({int(token[3:])}))
    if token.startswith("*>="):
        return TableFixtureEntry("srm", (m, p), AT_LEAST, frozenset({int(token[3:])}))
    return TableFixtureEntry("srm", (m, p), EXACT, frozenset({int(token)}))


def mk_table() -> list[TableFixtureEntry]:
    out = []
    for k, column in _MK_TABLE.items():
        for R, cell in enumerate(column):
            values = frozenset(int(x) for x in cell.split("|"))
            kind = EXACT if len(values) == 1 else SET
            out.append(TableFixtureEntry("mk", (k, R), kind, values, (1 << k) - 1))
    return out


def srm_table() -> list[TableFixtureEntry]:
    out = []
    for m, row in _SRM_TABLE.items():
        tokens = row.split()
        if len(tokens) != min(m, 18) - 1:
            raise AssertionError(f"row {m} has {len(tokens)} cells")
        out.extend(_srm_cell(m, p, t) for p, t in enumerate(tokens, start=2))
    return out
