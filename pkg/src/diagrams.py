"""
Text rendering of Betti tables and sequence tables.

Betti tables use the Macaulay layout: a "total:" header, a rule, then one
row per regularity-adjusted degree with the column counts of beta0, beta1,
beta2 and dashes for zeros.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from src.typevec import BettiTable

logger = logging.getLogger(__name__)

CELL_WIDTH = 8


def _cell(value: int, width: int) -> str:
    return f"{value if value else '-':>{width}}"


def betti_rows(betti: BettiTable) -> List[Tuple[int, int, int, int]]:
    """(row, beta0, beta1, beta2); a beta1 of degree j sits on row j-1, a beta2 on row j-2."""
    graded = betti.graded()
    last_row = max([j - 1 for j in betti.beta1] + [j - 2 for j in betti.beta2] + [0])
    rows = []
    for row in range(last_row + 1):
        b1 = graded.get(row + 1, (0, 0))[0]
        b2 = graded.get(row + 2, (0, 0))[1]
        rows.append((row, 1 if row == 0 else 0, b1, b2))
    return rows


def betti_diagram(betti: BettiTable, width: int = CELL_WIDTH) -> str:
    label_width = len("total:")
    header = f"{'total:':>{label_width}}" + "".join(
        _cell(v, width) for v in (1, len(betti.beta1), len(betti.beta2))
    )
    lines = [header, "-" * len(header)]
    for row, b0, b1, b2 in betti_rows(betti):
        lines.append(f"{str(row) + ':':>{label_width}}" + "".join(_cell(v, width) for v in (b0, b1, b2)))
    return "\n".join(lines)


def side_by_side(blocks: Sequence[str], titles: Optional[Sequence[str]] = None, gap: int = 6) -> str:
    """Lay text blocks out in one row, padding each to its widest line."""
    if not blocks:
        return ""
    columns = [block.splitlines() for block in blocks]
    if titles:
        columns = [[title] + lines for title, lines in zip(titles, columns)]
    widths = [max((len(line) for line in lines), default=0) for lines in columns]
    height = max(len(lines) for lines in columns)
    out = []
    for i in range(height):
        cells = [
            (lines[i] if i < len(lines) else "").ljust(w)
            for lines, w in zip(columns, widths)
        ]
        out.append((" " * gap).join(cells).rstrip())
    return "\n".join(out)


def sequence_table(rows: Sequence[Tuple[str, Sequence[int]]], start: int = 0) -> str:
    """Labeled integer sequences aligned under a degree header."""
    if not rows:
        return ""
    length = max(len(values) for _, values in rows)
    label_width = max(len("t"), max(len(label) for label, _ in rows))
    width = max(3, max((len(str(v)) for _, values in rows for v in values), default=1) + 1)
    header = f"{'t':<{label_width}} |" + "".join(f"{d:>{width}}" for d in range(start, start + length))
    lines = [header, "-" * len(header)]
    for label, values in rows:
        cells = "".join(f"{v:>{width}}" for v in values)
        lines.append(f"{label:<{label_width}} |{cells}")
    return "\n".join(lines)


def compare_sequences(expected: Sequence[int], observed: Sequence[int], labels=("expected", "observed")) -> str:
    """Two sequences in a table plus a marker row under every differing degree."""
    length = max(len(expected), len(observed))
    pad = lambda values: list(values) + [0] * (length - len(values))
    a, b = pad(expected), pad(observed)
    table = sequence_table([(labels[0], a), (labels[1], b)])
    if a == b:
        return table
    label_width = max(len("t"), len(labels[0]), len(labels[1]))
    width = max(3, max(len(str(v)) for v in a + b) + 1)
    marks = "".join(f"{'^' if x != y else '':>{width}}" for x, y in zip(a, b))
    return table + "\n" + f"{'':<{label_width}} |{marks}"
