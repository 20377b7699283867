"""Cycle-pattern machinery: r-balanced hosts, proper embeddings of x-monotone
cycles, the dense-or-balanced dichotomy, its weight-doubling driver, and
exhaustive enumeration of cycle patterns.

A host is r-balanced when its rows split into r equal bands and every column
has the same number of 1-entries in each band; a proper copy of an r-row
pattern sends row j into band j. The embedder follows the structural
recursion (repeated-pair scan for two-column cycles, then peeling the first
column against a 2-column rectangle) with an exhaustive proper-copy search
as fallback, so it has no false negatives at desk scale. All-zero rows and
columns of the pattern are legal: zero columns are stripped before the
search and re-inserted by column-slack accounting, zero rows only consume a
slot in their band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice, product
from typing import Iterator, Optional

from .classify import _cycle_tour, _x_monotone_core, is_cycle
from .errors import DivisibilityError, DomainError, PreconditionError
from .increment import IncrementTrace, TraceLevel
from .matrix import Embedding, ZeroOneMatrix, verify_embedding

_RECURSION_COPY_CAP = 2000


# ----------------------------------------------------------------------
# Balance


@dataclass(frozen=True)
class BalancedCertificate:
    """Per column, the r per-band 1-counts (all equal by definition)."""

    r: int
    column_profiles: tuple[tuple[int, ...], ...]


def _band_counts(m: ZeroOneMatrix, r: int, j: int) -> tuple[int, ...]:
    band = m.rows // r
    mask = m.col_masks[j - 1]
    window = (1 << band) - 1
    return tuple(((mask >> (i * band)) & window).bit_count() for i in range(r))


def balance_violation(m: ZeroOneMatrix, r: int) -> Optional[str]:
    """Diagnostic for why the host is not r-balanced, or None if it is."""
    if r < 1:
        return f"band count {r} is not positive"
    if m.rows % r:
        return f"{r} does not divide row count {m.rows}"
    for j in range(1, m.cols + 1):
        counts = _band_counts(m, r, j)
        if len(set(counts)) > 1:
            return f"column {j} has unequal band counts {counts}"
    return None


def is_r_balanced(m: ZeroOneMatrix, r: int) -> Optional[BalancedCertificate]:
    if balance_violation(m, r) is not None:
        return None
    profiles = tuple(_band_counts(m, r, j) for j in range(1, m.cols + 1))
    return BalancedCertificate(r=r, column_profiles=profiles)


# ----------------------------------------------------------------------
# Proper embedding of x-monotone cycles


@dataclass(frozen=True)
class _StrippedCycle:
    """Zero columns removed: per surviving column its two pattern rows, the
    original column index, and the slack vector (leading zeros, zeros
    between consecutive survivors, trailing zeros)."""

    col_rows: tuple[tuple[int, int], ...]
    col_index: tuple[int, ...]
    gaps: tuple[int, ...]


def _strip(a: ZeroOneMatrix) -> _StrippedCycle:
    nonempty = [j for j in range(1, a.cols + 1) if a.col_masks[j - 1]]
    col_rows = []
    for j in nonempty:
        mask = a.col_masks[j - 1]
        lo = (mask & -mask).bit_length()
        hi = mask.bit_length()
        col_rows.append((lo, hi))
    gaps = [nonempty[0] - 1]
    for x, y in zip(nonempty, nonempty[1:]):
        gaps.append(y - x - 1)
    gaps.append(a.cols - nonempty[-1])
    return _StrippedCycle(
        col_rows=tuple(col_rows), col_index=tuple(nonempty), gaps=tuple(gaps)
    )


def _proper_copies(
    m: ZeroOneMatrix,
    band: int,
    col_rows: tuple[tuple[int, int], ...],
    gaps: tuple[int, ...],
) -> Iterator[tuple[dict, list[int]]]:
    """All proper copies of a stripped cycle, one leftmost column assignment
    per row assignment: rows range over their bands, columns are matched by a
    greedy slack-aware sweep (smallest feasible column never hurts later
    choices, so the sweep is complete per row assignment)."""
    s1 = len(col_rows)
    rows_used = sorted({x for pair in col_rows for x in pair})
    n_cols = m.cols
    col_masks = m.col_masks
    # largest admissible host column per stripped position, from the suffix
    # slack requirement
    limit = [0] * s1
    tail = gaps[s1]
    for i in range(s1 - 1, -1, -1):
        limit[i] = n_cols - tail
        tail += gaps[i] + 1 if i > 0 else 0
    for combo in product(*[range((a - 1) * band + 1, a * band + 1) for a in rows_used]):
        rho = dict(zip(rows_used, combo))
        needs = [
            (1 << (rho[u] - 1)) | (1 << (rho[v] - 1)) for (u, v) in col_rows
        ]
        cmap = []
        prev = gaps[0]  # first column must exceed the leading slack
        ok = True
        for i, need in enumerate(needs):
            lo = prev + 1 if i == 0 else prev + gaps[i] + 1
            c = None
            for cand in range(lo, limit[i] + 1):
                if col_masks[cand - 1] & need == need:
                    c = cand
                    break
            if c is None:
                ok = False
                break
            cmap.append(c)
            prev = c
        if ok:
            yield rho, cmap


def _embed_base(m: ZeroOneMatrix, band: int, sc: _StrippedCycle):
    """Two surviving columns: scan for a row pair carrying 1s in two distinct
    slack-compatible columns (the repeated-pair criterion)."""
    (u, v) = sc.col_rows[0]
    if sc.col_rows[1] != (u, v):
        return None
    g0, g1, g2 = sc.gaps
    n_cols = m.cols
    lo_u, hi_u = (u - 1) * band, u * band
    lo_v, hi_v = (v - 1) * band, v * band
    first_seen: dict = {}
    for c in range(1, n_cols + 1):
        mask = m.col_masks[c - 1]
        bu = [i + 1 for i in range(lo_u, hi_u) if (mask >> i) & 1]
        if not bu:
            continue
        bv = [i + 1 for i in range(lo_v, hi_v) if (mask >> i) & 1]
        if not bv:
            continue
        for ra in bu:
            for rb in bv:
                prev = first_seen.get((ra, rb))
                if prev is not None and c - prev >= g1 + 1 and n_cols - c >= g2:
                    return {u: ra, v: rb}, [prev, c]
                if prev is None and c >= g0 + 1 and c <= n_cols - (1 + g1 + g2):
                    first_seen[(ra, rb)] = c
    return None


def _embed_recursive(m: ZeroOneMatrix, band: int, sc: _StrippedCycle):
    """Peel the first column: the cycle decomposes into a 2-column rectangle
    on its first two columns' shared rows and a shorter x-monotone cycle.
    Enumerate proper copies of the shorter cycle and try to extend each pivot
    (the image of its first-column 1-entry in row b) by the rectangle."""
    (p, q) = sc.col_rows[0]
    (x, y) = sc.col_rows[1]
    if p in (x, y):
        a_row, b_row = p, q
    elif q in (x, y):
        a_row, b_row = q, p
    else:
        return None
    w_row = x if y == a_row else y
    if w_row == b_row:
        return None
    reduced_cols = (tuple(sorted((b_row, w_row))),) + sc.col_rows[2:]
    reduced_gaps = (sc.gaps[0] + 1 + sc.gaps[1],) + sc.gaps[2:]
    g0, g1 = sc.gaps[0], sc.gaps[1]
    lo_a, hi_a = (a_row - 1) * band, a_row * band
    for rho1, cmap1 in islice(
        _proper_copies(m, band, reduced_cols, reduced_gaps), _RECURSION_COPY_CAP
    ):
        c1 = cmap1[0]
        rb = rho1[b_row]
        mask_c1 = m.col_masks[c1 - 1]
        for i in range(lo_a, hi_a):
            if not (mask_c1 >> i) & 1:
                continue
            ra = i + 1
            need = (1 << (ra - 1)) | (1 << (rb - 1))
            for c0 in range(g0 + 1, c1 - g1):
                if m.col_masks[c0 - 1] & need == need:
                    rho = dict(rho1)
                    rho[a_row] = ra
                    return rho, [c0] + cmap1
    return None


def embed_xmonotone_balanced(m: ZeroOneMatrix, a: ZeroOneMatrix) -> Optional[Embedding]:
    """Proper embedding of an x-monotone cycle pattern into an r-balanced
    host (r = pattern rows): row j of the pattern lands in band j. Returns a
    verified certificate or None; the exhaustive fallback guarantees no
    false negatives, and above weight r*s*sqrt(m)*n a copy always exists."""
    r, s = a.rows, a.cols
    if _cycle_tour(a) is None:
        raise PreconditionError("pattern is not a cycle")
    if not _x_monotone_core(a):
        raise PreconditionError("pattern is not x-monotone")
    if m.rows % r:
        raise PreconditionError(
            f"host rows {m.rows} are not divisible by pattern rows {r}"
        )
    if is_r_balanced(m, r) is None:
        raise PreconditionError("host is not r-balanced")
    band = m.rows // r
    sc = _strip(a)
    s1 = len(sc.col_rows)
    if s1 == 2:
        found = _embed_base(m, band, sc)
    else:
        found = _embed_recursive(m, band, sc)
        if found is None:
            found = next(iter(_proper_copies(m, band, sc.col_rows, sc.gaps)), None)
    if found is None:
        return None
    rho, cmap = found
    row_map = tuple(rho.get(j, (j - 1) * band + 1) for j in range(1, r + 1))
    col_map = [0] * s
    for idx, j in enumerate(sc.col_index):
        col_map[j - 1] = cmap[idx]
    # re-insert stripped zero columns into the guaranteed slack
    lead = sc.col_index[0] - 1
    for offset in range(lead):
        col_map[offset] = cmap[0] - lead + offset
    for idx in range(s1 - 1):
        base_col = sc.col_index[idx]
        for step in range(1, sc.col_index[idx + 1] - base_col):
            col_map[base_col + step - 1] = cmap[idx] + step
    for step in range(1, s - sc.col_index[-1] + 1):
        col_map[sc.col_index[-1] + step - 1] = cmap[-1] + step
    emb = Embedding(row_map=row_map, col_map=tuple(col_map))
    if not verify_embedding(m, a, emb):
        raise AssertionError("proper embedding failed verification")
    return emb


# ----------------------------------------------------------------------
# Dense-or-balanced dichotomy


@dataclass
class DichotomyResult:
    """Either an (n/k) x (n/k) submatrix assembled from heavy column-blocks
    of one band ("dense"), or an (nr/k) x m r-balanced matrix obtained by
    stacking r bands and truncating every column to its minimum band count
    ("balanced"). Index lists are absolute 1-based positions in the input;
    the balanced branch may additionally zero entries, so its matrix is
    dominated by (not equal to) the input restriction."""

    branch: str
    matrix: ZeroOneMatrix
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    weight: int
    r: int
    weight_precondition_held: bool
    invariant_holds: bool
    details: dict


def dense_or_balanced(
    m: ZeroOneMatrix, r_meta: int, s_meta: int, k: int, c: float
) -> DichotomyResult:
    """Constructive case split on an n x n host of weight >= c*n^(3/2):
    delete light columns (< c*sqrt(n)/2 ones), classify column-blocks sparse
    or dense with alpha = 1/(2k), columns imbalanced (fewer than r dense
    blocks) or balanced, and extract the branch carrying at least half the
    surviving weight. Runs for any (k, c); flags record whether the weight
    precondition and the branch invariant actually held."""
    if m.rows != m.cols:
        raise PreconditionError("dichotomy needs a square host")
    n = m.rows
    if k < 1 or n % k:
        raise DivisibilityError(f"{k} does not divide {n}")
    if r_meta < 1 or s_meta < 1:
        raise DomainError("pattern dimensions must be positive")
    w = m.weight
    precondition = w >= c * n**1.5 - 1e-9
    band = n // k
    light_threshold = c * math.sqrt(n) / 2.0
    heavy_cols = [j for j in range(1, n + 1) if m.col_weight(j) >= light_threshold]
    details: dict = {
        "alpha": 1.0 / (2 * k),
        "lightThreshold": light_threshold,
        "survivingColumns": len(heavy_cols),
    }
    if not heavy_cols:
        sub = m.submatrix(1, band, 1, band)
        return DichotomyResult(
            branch="dense",
            matrix=sub,
            row_indices=tuple(range(1, band + 1)),
            col_indices=tuple(range(1, band + 1)),
            weight=sub.weight,
            r=r_meta,
            weight_precondition_held=precondition,
            invariant_holds=sub.weight >= 2 * c * (n / k) ** 1.5 - 1e-9,
            details={**details, "case": 1, "degenerate": True},
        )

    counts = {j: _band_counts(m, k, j) for j in heavy_cols}
    weights = {j: m.col_weight(j) for j in heavy_cols}
    surviving_weight = sum(weights.values())
    # dense block test: count >= s_c / (2k), exact in integers
    dense_idx = {
        j: [i for i in range(k) if counts[j][i] * 2 * k >= weights[j]]
        for j in heavy_cols
    }
    imbalanced = [j for j in heavy_cols if len(dense_idx[j]) < r_meta]
    balanced = [j for j in heavy_cols if len(dense_idx[j]) >= r_meta]
    imb_weight = sum(weights[j] for j in imbalanced)
    bal_weight = surviving_weight - imb_weight
    details["imbalancedWeight"] = imb_weight
    details["balancedWeight"] = bal_weight

    if imb_weight * 2 >= surviving_weight:
        # dense case: per imbalanced column its heaviest dense block, then
        # the band covering the most of that weight
        heavy_block = {}
        for j in imbalanced:
            cand = dense_idx[j] if dense_idx[j] else list(range(k))
            heavy_block[j] = max(cand, key=lambda i: (counts[j][i], -i))
        score = [0] * k
        for j, i in heavy_block.items():
            score[i] += counts[j][i]
        i_star = max(range(k), key=lambda i: (score[i], -i))
        group = sorted(
            (j for j in imbalanced if heavy_block[j] == i_star),
            key=lambda j: (-counts[j][i_star], j),
        )
        chosen = group[:band]
        if len(chosen) < band:
            pool = [j for j in heavy_cols if j not in set(chosen)]
            pool += [j for j in range(1, n + 1) if j not in set(heavy_cols)]
            for j in pool:
                if len(chosen) >= band:
                    break
                if j not in chosen:
                    chosen.append(j)
        chosen = sorted(chosen[:band])
        rows = tuple(range(i_star * band + 1, (i_star + 1) * band + 1))
        sub = m.select(rows, chosen)
        return DichotomyResult(
            branch="dense",
            matrix=sub,
            row_indices=rows,
            col_indices=tuple(chosen),
            weight=sub.weight,
            r=r_meta,
            weight_precondition_held=precondition,
            invariant_holds=sub.weight >= 2 * c * (n / k) ** 1.5 - 1e-9,
            details={**details, "case": 1, "band": i_star + 1},
        )

    # balanced case: group columns by their r strongest dense blocks and keep
    # the heaviest group
    groups: dict = {}
    for j in balanced:
        picked = sorted(
            sorted(dense_idx[j], key=lambda i: (-counts[j][i], i))[:r_meta]
        )
        groups.setdefault(tuple(picked), []).append(j)
    best_set = max(groups, key=lambda key: (sum(weights[j] for j in groups[key]), tuple(-x for x in key)))
    rows = []
    for i in best_set:
        rows.extend(range(i * band + 1, (i + 1) * band + 1))
    rows = tuple(rows)
    cols = tuple(sorted(heavy_cols))
    sub = m.select(rows, cols)
    # truncate every column to its minimum band count (top-down within each
    # band) so the result is exactly r-balanced
    local_band = band
    masks = list(sub.row_masks)
    for jj in range(sub.cols):
        col_rows = [i for i in range(sub.rows) if (masks[i] >> jj) & 1]
        per_band = [[i for i in col_rows if b * local_band <= i < (b + 1) * local_band] for b in range(r_meta)]
        mn = min(len(x) for x in per_band)
        for block_rows in per_band:
            for i in block_rows[mn:]:
                masks[i] &= ~(1 << jj)
    result = ZeroOneMatrix(masks, sub.cols)
    m_cols = result.cols
    target = r_meta * s_meta * math.sqrt(m_cols) * (n * r_meta / k)
    ok = (
        is_r_balanced(result, r_meta) is not None
        and result.weight >= target - 1e-9
    )
    return DichotomyResult(
        branch="balanced",
        matrix=result,
        row_indices=rows,
        col_indices=cols,
        weight=result.weight,
        r=r_meta,
        weight_precondition_held=precondition,
        invariant_holds=ok,
        details={**details, "case": 2, "bands": [i + 1 for i in best_set], "weightTarget": target},
    )


# ----------------------------------------------------------------------
# Driver


def cycle_driver(
    m: ZeroOneMatrix,
    a: ZeroOneMatrix,
    k: int,
    c: float,
    depth: Optional[int] = None,
) -> IncrementTrace:
    """Alternate the dichotomy and the balanced embedder: a dense branch
    descends into the extracted (n/k) x (n/k) matrix with the weight target
    doubled, a balanced branch attempts the proper embedding. Returns a
    trace whose final level is an embedding, a failed balanced attempt, or
    exhaustion; the embedding, when found, is verified against the original
    host."""
    if _cycle_tour(a) is None:
        raise PreconditionError("pattern is not a cycle")
    if not _x_monotone_core(a):
        raise PreconditionError("pattern is not x-monotone")
    if m.rows != m.cols:
        raise PreconditionError("driver needs a square host")
    r, s = a.rows, a.cols
    n0 = m.rows
    rows_abs = list(range(1, m.rows + 1))
    cols_abs = list(range(1, m.cols + 1))
    cur = m
    levels: list[TraceLevel] = []
    embedding = None
    stop_reason = "exhausted"
    i = 0
    while True:
        threshold = (2**i) * c * (n0 / k**i) ** 1.5
        checks = {
            "weightThreshold": threshold,
            "weightHolds": cur.weight >= threshold - 1e-9,
            "rowIndices": list(rows_abs),
            "colIndices": list(cols_abs),
        }
        base = dict(
            level=i,
            row_range=(rows_abs[0], rows_abs[-1]),
            col_range=(cols_abs[0], cols_abs[-1]),
            weight=cur.weight,
            u=None,
            count=None,
            checks=checks,
        )
        if depth is not None and i >= depth:
            levels.append(TraceLevel(branch="exhausted", **base))
            stop_reason = "depth-reached"
            break
        if cur.rows % k:
            levels.append(TraceLevel(branch="exhausted", **base))
            stop_reason = "divisibility"
            break
        if cur.rows < k * max(1, r):
            levels.append(TraceLevel(branch="exhausted", **base))
            stop_reason = "host-too-small"
            break
        res = dense_or_balanced(cur, r, s, k, (2**i) * c)
        checks["preconditionHeld"] = res.weight_precondition_held
        checks["invariantHolds"] = res.invariant_holds
        checks["branchWeight"] = res.weight
        if res.branch == "balanced":
            emb_local = embed_xmonotone_balanced(res.matrix, a)
            if emb_local is not None:
                embedding = Embedding(
                    row_map=tuple(rows_abs[res.row_indices[v - 1] - 1] for v in emb_local.row_map),
                    col_map=tuple(cols_abs[res.col_indices[v - 1] - 1] for v in emb_local.col_map),
                )
                if not verify_embedding(m, a, embedding):
                    raise AssertionError("cycle driver certificate failed on the host")
                levels.append(TraceLevel(branch="balanced", **base))
                stop_reason = "embedded"
                break
            levels.append(TraceLevel(branch="balanced", **base))
            stop_reason = "balanced-embed-failed"
            break
        levels.append(TraceLevel(branch="dense", **base))
        rows_abs = [rows_abs[v - 1] for v in res.row_indices]
        cols_abs = [cols_abs[v - 1] for v in res.col_indices]
        cur = res.matrix
        i += 1
    return IncrementTrace(
        mode="cycle",
        params={"k": k, "c": c, "depth": depth},
        levels=levels,
        embedding=embedding,
        stop_reason=stop_reason,
    )


# ----------------------------------------------------------------------
# Enumeration


def enumerate_cycles(length: int) -> list[ZeroOneMatrix]:
    """All L x L patterns (L = length/2) with exactly two 1-entries per row
    and per column whose bipartite graph is a single cycle of the given even
    length, in lexicographic order of their row strings."""
    if length < 4 or length % 2:
        raise DomainError("cycle length must be an even number >= 4")
    side = length // 2
    out: list[ZeroOneMatrix] = []
    col_counts = [0] * side
    masks: list[int] = []

    def rec(i: int):
        if i == side:
            mat = ZeroOneMatrix(list(masks), side)
            if is_cycle(mat):
                out.append(mat)
            return
        for (x, y) in combinations(range(side), 2):
            if col_counts[x] >= 2 or col_counts[y] >= 2:
                continue
            col_counts[x] += 1
            col_counts[y] += 1
            masks.append((1 << x) | (1 << y))
            rec(i + 1)
            masks.pop()
            col_counts[x] -= 1
            col_counts[y] -= 1

    rec(0)
    out.sort(key=lambda mat: mat.row_strings())
    return out
