"""Dense 0-1 matrices, ordered pattern containment with certificates, and
block partitions.

A matrix M contains a pattern A when strictly increasing row and column
injections map every 1-entry of A onto a 1-entry of M; the pair of injections
is the certificate (an Embedding) and can be checked independently of how it
was found. Rows are stored as integer bitmasks (bit j-1 = column j), which is
an internal representation choice only: the public API and all serialized
formats are 1-based grids.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DivisibilityError, FormatError, InputError


class ZeroOneMatrix:
    """Immutable rectangular 0-1 matrix with cached weight.

    Treat instances as frozen: every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "row_masks", "col_masks", "weight")

    def __init__(self, row_masks: Sequence[int], cols: int):
        row_masks = tuple(int(m) for m in row_masks)
        if not row_masks or cols < 1:
            raise FormatError("matrix needs at least one row and one column")
        full = (1 << cols) - 1
        for m in row_masks:
            if m < 0 or m & ~full:
                raise FormatError("row mask exceeds the declared column count")
        self.rows = len(row_masks)
        self.cols = cols
        self.row_masks = row_masks
        col_masks = [0] * cols
        for i, m in enumerate(row_masks):
            while m:
                low = m & -m
                col_masks[low.bit_length() - 1] |= 1 << i
                m ^= low
        self.col_masks = tuple(col_masks)
        self.weight = sum(m.bit_count() for m in row_masks)

    # ------------------------------------------------------------------
    # Constructors

    @classmethod
    def from_rows(cls, grid: Iterable[Iterable[int]]) -> "ZeroOneMatrix":
        rows = [list(r) for r in grid]
        if not rows:
            raise FormatError("empty grid")
        cols = len(rows[0])
        masks = []
        for r in rows:
            if len(r) != cols:
                raise FormatError("ragged grid")
            mask = 0
            for j, v in enumerate(r):
                if v not in (0, 1):
                    raise FormatError("entries must be 0 or 1")
                if v:
                    mask |= 1 << j
            masks.append(mask)
        return cls(masks, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ZeroOneMatrix":
        return cls([0] * rows, cols)

    @classmethod
    def ones(cls, rows: int, cols: int) -> "ZeroOneMatrix":
        return cls([(1 << cols) - 1] * rows, cols)

    @classmethod
    def parse(cls, text: str) -> "ZeroOneMatrix":
        """Parse the pattern text format: one row of 0/1 characters per line,
        blank lines and lines starting with '#' ignored, whitespace inside a
        line allowed."""
        masks = []
        cols = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            line = "".join(line.split())
            if not line:
                continue
            bad = set(line) - {"0", "1"}
            if bad:
                raise FormatError(f"invalid characters in pattern line: {sorted(bad)}")
            if cols is None:
                cols = len(line)
            elif len(line) != cols:
                raise FormatError("ragged pattern: rows of unequal length")
            mask = 0
            for j, ch in enumerate(line):
                if ch == "1":
                    mask |= 1 << j
            masks.append(mask)
        if cols is None:
            raise FormatError("pattern has no data lines")
        return cls(masks, cols)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ZeroOneMatrix":
        try:
            rows, cols, data = int(doc["rows"]), int(doc["cols"]), list(doc["data"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad matrix document: {exc}") from exc
        if len(data) != rows:
            raise FormatError("matrix document row count mismatch")
        m = cls.parse("\n".join(data))
        if m.rows != rows or m.cols != cols:
            raise FormatError("matrix document dimension mismatch")
        return m

    # ------------------------------------------------------------------
    # Accessors (1-based)

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise InputError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return (self.row_masks[i - 1] >> (j - 1)) & 1

    def row_string(self, i: int) -> str:
        m = self.row_masks[i - 1]
        return "".join("1" if (m >> j) & 1 else "0" for j in range(self.cols))

    def row_strings(self) -> tuple[str, ...]:
        return tuple(self.row_string(i) for i in range(1, self.rows + 1))

    def one_entries(self) -> tuple[tuple[int, int], ...]:
        """All 1-entry positions as 1-based (row, col), row-major order."""
        out = []
        for i, m in enumerate(self.row_masks):
            while m:
                low = m & -m
                out.append((i + 1, low.bit_length()))
                m ^= low
        return tuple(out)

    def row_weight(self, i: int) -> int:
        return self.row_masks[i - 1].bit_count()

    def col_weight(self, j: int) -> int:
        return self.col_masks[j - 1].bit_count()

    # ------------------------------------------------------------------
    # Derived matrices

    def transpose(self) -> "ZeroOneMatrix":
        return ZeroOneMatrix(self.col_masks, self.rows)

    def submatrix(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> "ZeroOneMatrix":
        """Contiguous submatrix, 1-based inclusive bounds."""
        if not (1 <= row_lo <= row_hi <= self.rows and 1 <= col_lo <= col_hi <= self.cols):
            raise InputError("submatrix bounds out of range")
        return self.select(range(row_lo, row_hi + 1), range(col_lo, col_hi + 1))

    def select(self, rows: Iterable[int], cols: Iterable[int]) -> "ZeroOneMatrix":
        """Submatrix from strictly increasing 1-based row/column index lists."""
        rows = list(rows)
        cols = list(cols)
        if not rows or not cols:
            raise InputError("empty selection")
        if any(rows[i] >= rows[i + 1] for i in range(len(rows) - 1)) or any(
            cols[j] >= cols[j + 1] for j in range(len(cols) - 1)
        ):
            raise InputError("selections must be strictly increasing")
        if rows[0] < 1 or rows[-1] > self.rows or cols[0] < 1 or cols[-1] > self.cols:
            raise InputError("selection out of range")
        masks = []
        for i in rows:
            src = self.row_masks[i - 1]
            mask = 0
            for jj, j in enumerate(cols):
                if (src >> (j - 1)) & 1:
                    mask |= 1 << jj
            masks.append(mask)
        return ZeroOneMatrix(masks, len(cols))

    def with_entry(self, i: int, j: int, value: int) -> "ZeroOneMatrix":
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise InputError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        masks = list(self.row_masks)
        if value:
            masks[i - 1] |= 1 << (j - 1)
        else:
            masks[i - 1] &= ~(1 << (j - 1))
        return ZeroOneMatrix(masks, self.cols)

    # ------------------------------------------------------------------
    # Serialization

    def to_text(self) -> str:
        return "\n".join(self.row_strings())

    def to_json_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": list(self.row_strings())}

    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ZeroOneMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.row_masks == other.row_masks
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_masks))

    def __repr__(self) -> str:
        return f"ZeroOneMatrix({self.rows}x{self.cols}, weight={self.weight})"


def parse_pattern(text: str) -> ZeroOneMatrix:
    return ZeroOneMatrix.parse(text)


def canonical_key(a: ZeroOneMatrix) -> str:
    """Stable digest keyed on the exact entries: equal matrices share a key,
    any single-entry change produces a different serialization (and hence a
    different digest)."""
    payload = f"{a.rows}x{a.cols}|" + "|".join(a.row_strings())
    digest = hashlib.sha256(payload.encode("ascii")).hexdigest()
    return f"{a.rows}x{a.cols}-{digest[:40]}"


def from_ordered_bigraph(
    edges: Iterable[tuple[int, int]], left_size: int, right_size: int
) -> ZeroOneMatrix:
    """Bi-adjacency matrix of an ordered bipartite graph: rows are the left
    vertex class, columns the right one, entry (x, y) = 1 iff xy is an edge."""
    if left_size < 1 or right_size < 1:
        raise InputError("vertex classes must be nonempty")
    masks = [0] * left_size
    for (x, y) in edges:
        if not (1 <= x <= left_size and 1 <= y <= right_size):
            raise InputError(f"edge ({x},{y}) outside declared sizes")
        masks[x - 1] |= 1 << (y - 1)
    return ZeroOneMatrix(masks, right_size)


# ----------------------------------------------------------------------
# Containment


@dataclass(frozen=True)
class Embedding:
    """Certificate of containment: strictly increasing injections from the
    pattern's rows and columns into the host's (1-based)."""

    row_map: tuple[int, ...]
    col_map: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"rowMap": list(self.row_map), "colMap": list(self.col_map)}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Embedding":
        try:
            return cls(tuple(int(x) for x in doc["rowMap"]), tuple(int(x) for x in doc["colMap"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad embedding document: {exc}") from exc

    def shifted(self, row_offset: int, col_offset: int) -> "Embedding":
        return Embedding(
            tuple(r + row_offset for r in self.row_map),
            tuple(c + col_offset for c in self.col_map),
        )


def _greedy_sdr(masks: Sequence[int]) -> Optional[list[int]]:
    """Leftmost strictly increasing system of representatives: position c_j
    is the least set bit of masks[j] above c_{j-1}. Greedy is optimal here:
    taking the smallest feasible column never hurts later choices."""
    c = -1
    out = []
    for m in masks:
        m &= -1 << (c + 1)
        if not m:
            return None
        c = (m & -m).bit_length() - 1
        out.append(c)
    return out


def _search_masks(
    host_masks: Sequence[int],
    host_cols: int,
    pat_masks: Sequence[int],
    pat_cols: int,
    pin_last: bool = False,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Backtracking kernel over pattern rows, top-down; per pattern column it
    keeps the bitmask of still-feasible host columns and prunes with the
    greedy increasing-SDR test. Exhaustive: returns the lexicographically
    least (row_map, col_map) in 0-based indices, or None.

    With pin_last the last pattern row must map to the last host row (used
    for incremental containment checks while hosts grow row by row).
    """
    r = len(pat_masks)
    h = len(host_masks)
    if r > h or pat_cols > host_cols:
        return None
    bits_per_row = [
        tuple(j for j in range(pat_cols) if (m >> j) & 1) for m in pat_masks
    ]
    full = (1 << host_cols) - 1
    row_map = [0] * r

    def rec(p: int, h_start: int, col_masks: list[int]):
        if p == r:
            cols = _greedy_sdr(col_masks)
            return tuple(row_map), tuple(cols)
        last = h - (r - p)
        lo = h - 1 if (pin_last and p == r - 1) else h_start
        for hr in range(lo, last + 1):
            hm = host_masks[hr]
            updated = col_masks
            ok = True
            touched = bits_per_row[p]
            if touched:
                updated = list(col_masks)
                for j in touched:
                    v = updated[j] & hm
                    if not v:
                        ok = False
                        break
                    updated[j] = v
            if not ok:
                continue
            if _greedy_sdr(updated) is None:
                continue
            row_map[p] = hr
            res = rec(p + 1, hr + 1, updated)
            if res is not None:
                return res
        return None

    return rec(0, 0, [full] * pat_cols)


def find_embedding(m: ZeroOneMatrix, a: ZeroOneMatrix) -> Optional[Embedding]:
    """Exhaustive containment search; returns the lexicographically least
    certificate (row map first, then column map) or None when M does not
    contain A."""
    res = _search_masks(m.row_masks, m.cols, a.row_masks, a.cols)
    if res is None:
        return None
    rmap, cmap = res
    return Embedding(tuple(x + 1 for x in rmap), tuple(x + 1 for x in cmap))


def embedding_violation(m: ZeroOneMatrix, a: ZeroOneMatrix, e: Embedding) -> Optional[str]:
    """First violated certificate condition as a diagnostic, or None."""
    if len(e.row_map) != a.rows:
        return f"row map has {len(e.row_map)} entries, pattern has {a.rows} rows"
    if len(e.col_map) != a.cols:
        return f"col map has {len(e.col_map)} entries, pattern has {a.cols} columns"
    for name, mapping, hi in (("row", e.row_map, m.rows), ("col", e.col_map, m.cols)):
        prev = 0
        for v in mapping:
            if not (1 <= v <= hi):
                return f"{name} map value {v} outside 1..{hi}"
            if v <= prev:
                return f"{name} map not strictly increasing at value {v}"
            prev = v
    for (i, j) in a.one_entries():
        if not m.entry(e.row_map[i - 1], e.col_map[j - 1]):
            return (
                f"pattern 1-entry ({i},{j}) lands on 0-entry "
                f"({e.row_map[i - 1]},{e.col_map[j - 1]})"
            )
    return None


def verify_embedding(m: ZeroOneMatrix, a: ZeroOneMatrix, e: Embedding) -> bool:
    return embedding_violation(m, a, e) is None


# ----------------------------------------------------------------------
# Block partitions


@dataclass(frozen=True)
class BlockPartition:
    """Equal slicing of a matrix into k horizontal or vertical blocks, or the
    k*k grid of their intersections. Bounds are 1-based inclusive; for the
    grid, bounds[i] = ((row_lo, row_hi), (col_lo, col_hi)) in row-major block
    order."""

    k: int
    mode: str
    bounds: tuple
    blocks: tuple[ZeroOneMatrix, ...]

    def block(self, p: int, q: Optional[int] = None) -> ZeroOneMatrix:
        if self.mode == "grid":
            if q is None:
                raise InputError("grid blocks are addressed by (p, q)")
            return self.blocks[(p - 1) * self.k + (q - 1)]
        if q is not None:
            raise InputError(f"{self.mode} blocks take a single index")
        return self.blocks[p - 1]


def partition(m: ZeroOneMatrix, k: int, mode: str) -> BlockPartition:
    if mode not in ("horizontal", "vertical", "grid"):
        raise InputError(f"unknown partition mode {mode!r}")
    if k < 1:
        raise InputError("block count must be positive")
    if mode in ("horizontal", "grid") and m.rows % k:
        raise DivisibilityError(f"{k} does not divide row count {m.rows}")
    if mode in ("vertical", "grid") and m.cols % k:
        raise DivisibilityError(f"{k} does not divide column count {m.cols}")
    if mode == "horizontal":
        step = m.rows // k
        bounds = tuple(((p - 1) * step + 1, p * step) for p in range(1, k + 1))
        blocks = tuple(m.submatrix(lo, hi, 1, m.cols) for (lo, hi) in bounds)
    elif mode == "vertical":
        step = m.cols // k
        bounds = tuple(((p - 1) * step + 1, p * step) for p in range(1, k + 1))
        blocks = tuple(m.submatrix(1, m.rows, lo, hi) for (lo, hi) in bounds)
    else:
        rstep, cstep = m.rows // k, m.cols // k
        bounds = []
        blocks = []
        for p in range(1, k + 1):
            for q in range(1, k + 1):
                rb = ((p - 1) * rstep + 1, p * rstep)
                cb = ((q - 1) * cstep + 1, q * cstep)
                bounds.append((rb, cb))
                blocks.append(m.submatrix(rb[0], rb[1], cb[0], cb[1]))
        bounds = tuple(bounds)
        blocks = tuple(blocks)
    return BlockPartition(k=k, mode=mode, bounds=bounds, blocks=blocks)
