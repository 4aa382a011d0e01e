"""Development of difference families into 2-designs and exact profiles.

The development of a family with b base blocks over a group of order v is an
indexed collection of exactly v*b blocks (translates counted with
multiplicity); a flag reports whether any orbit collapsed into duplicates.
Block-intersection profiles come from two independent routes:

  * profile_direct: quadratic scan over all unordered pairs of distinct
    block indices (bit-packed intersection counting);
  * profile_via_differences: per ordered base pair (i, j), the multiplicity
    N_d of each group element d in the multiset of ordered element
    differences D_i - D_j determines |(D_i + a) & (D_j + b)| for the v
    ordered translate pairs with b - a = d; the (i, i, 0) cell is the
    excluded self-pair.  Ordered totals are halved at the end.

Profile multiplicities are exact Python integers; the kernels return int64
cell counts whose magnitude is bounded by b^2 * v, far inside int64 range.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field as dfield

import numpy as np

from . import _kernels
from .errors import BudgetError
from .families import DifferenceFamily

PROFILE_DIRECT_BLOCK_BUDGET = 5000
VERIFY_POINT_BUDGET = 1500


@dataclass(frozen=True)
class Design:
    """An indexed block collection on points {0, ..., v-1}."""

    v: int
    k: int
    blocks: np.ndarray = dfield(repr=False)  # (B, k) int64, rows sorted
    provenance: tuple = dfield(repr=False, default=())  # (base index, translate)
    has_duplicate_blocks: bool = False

    @property
    def block_count(self) -> int:
        return int(self.blocks.shape[0])


class IntersectionProfile:
    """Exact map {intersection number N -> count of unordered block pairs}."""

    def __init__(self, counts):
        self.counts = {int(n): int(m) for n, m in counts.items() if m}

    def numbers(self) -> list[int]:
        return sorted(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def __eq__(self, other):
        if isinstance(other, IntersectionProfile):
            return self.counts == other.counts
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{n}: {self.counts[n]}" for n in self.numbers())
        return f"IntersectionProfile({{{inner}}})"

    def to_json(self) -> str:
        """Compact JSON with ascending keys and decimal-string multiplicities."""
        ordered = {str(n): str(self.counts[n]) for n in self.numbers()}
        return json.dumps(ordered, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "IntersectionProfile":
        raw = json.loads(text)
        return cls({int(n): int(m) for n, m in raw.items()})


def develop(fam: DifferenceFamily) -> Design:
    """All v*b translates D_i + g, ordered by base index then translate."""
    g = fam.group
    v = g.order
    base = fam.block_array()
    b, k = base.shape
    out = np.empty((v * b, k), dtype=np.int64)
    translates = np.arange(v, dtype=np.int64)
    for i in range(b):
        rows = g.add_arrays(base[i][None, :], translates[:, None])
        rows.sort(axis=1)
        out[i * v : (i + 1) * v] = rows
    provenance = tuple((i, t) for i in range(b) for t in range(v))
    unique = np.unique(out, axis=0)
    return Design(v=v, k=k, blocks=out, provenance=provenance,
                  has_duplicate_blocks=unique.shape[0] < out.shape[0])


def verify_2design(design: Design, lam: int):
    """Exhaustively check that every point pair lies in exactly lam blocks.

    Returns (True, None) or (False, witness_pair).
    """
    v = design.v
    if v > VERIFY_POINT_BUDGET:
        raise BudgetError(f"exhaustive pair counting capped at v <= {VERIFY_POINT_BUDGET}")
    cnt = _kernels.pair_coverage(design.blocks, v).reshape(v, v)
    iu, ju = np.triu_indices(v, 1)
    vals = cnt[iu, ju]
    bad = np.nonzero(vals != lam)[0]
    if bad.size == 0:
        return True, None
    w = int(bad[0])
    return False, (int(iu[w]), int(ju[w]))


def profile_direct(design: Design, budget: int = PROFILE_DIRECT_BLOCK_BUDGET) -> IntersectionProfile:
    """Pairwise scan over all C(B, 2) distinct-index block pairs."""
    B = design.block_count
    if B > budget:
        raise BudgetError(f"direct profile capped at {budget} blocks, got {B}")
    hist = _kernels.block_intersection_hist(design.blocks, design.v)
    return IntersectionProfile({n: int(m) for n, m in enumerate(hist)})


def resolve_threads(threads=None) -> int:
    if threads is None:
        env = os.environ.get("DDF_THREADS", "").strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return threads


def profile_via_differences(fam: DifferenceFamily, threads=None) -> IntersectionProfile:
    """Difference-multiset route; scales past the direct scan's budget."""
    g = fam.group
    hist = _kernels.diff_pair_hist(fam.block_array(), g.base, g.digits, g.order,
                                   threads=resolve_threads(threads))
    counts = {}
    for n, cells in enumerate(hist):
        cells = int(cells)
        if cells == 0:
            continue
        ordered = g.order * cells  # each cell stands for v ordered block pairs
        if ordered % 2:
            raise AssertionError("ordered pair total must be even")
        counts[n] = ordered // 2
    return IntersectionProfile(counts)


def intersection_numbers(profile: IntersectionProfile) -> list[int]:
    """Keys with nonzero multiplicity, ascending."""
    return profile.numbers()


# ---------------------------------------------------------------------------
# point-map isomorphism search (toy scale)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoResult:
    status: str  # "mapping" | "nonexistent" | "unknown"
    mapping: tuple | None = None
    nodes: int = 0


def iso_oracle(a: Design, b: Design, node_budget: int = 200_000) -> IsoResult:
    """Backtracking point-map search with block-compatibility pruning.

    A profile mismatch short-circuits to "nonexistent"; exhausting the node
    budget yields "unknown".  A returned mapping is verified to transport
    the block multiset of `a` exactly onto that of `b`.
    """
    if (a.v, a.block_count, a.k) != (b.v, b.block_count, b.k):
        raise ValueError("designs must share (v, b, k)")
    if profile_direct(a) != profile_direct(b):
        return IsoResult(status="nonexistent")

    v = a.v
    blocks_a = [frozenset(int(x) for x in row) for row in a.blocks]
    blocks_b = [frozenset(int(x) for x in row) for row in b.blocks]
    by_point_a = [[] for _ in range(v)]
    for idx, blk in enumerate(blocks_a):
        for x in blk:
            by_point_a[x].append(idx)
    multiset_b = Counter(blocks_b)

    mapping = [-1] * v
    used = [False] * v
    nodes = 0

    def compatible(x):
        # every block through x must still embed into some block of b
        for idx in by_point_a[x]:
            image = frozenset(mapping[u] for u in blocks_a[idx] if mapping[u] >= 0)
            if not any(image <= blk for blk in multiset_b):
                return False
        return True

    def extend(x):
        nonlocal nodes
        if x == v:
            return True
        for y in range(v):
            if used[y]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise _BudgetStop
            mapping[x] = y
            used[y] = True
            if compatible(x) and extend(x + 1):
                return True
            mapping[x] = -1
            used[y] = False
        return False

    try:
        found = extend(0)
    except _BudgetStop:
        return IsoResult(status="unknown", nodes=nodes)
    if not found:
        return IsoResult(status="nonexistent", nodes=nodes)

    transported = Counter(frozenset(mapping[u] for u in blk) for blk in blocks_a)
    if transported != multiset_b:
        raise AssertionError("search returned a mapping that fails verification")
    return IsoResult(status="mapping", mapping=tuple(mapping), nodes=nodes)


class _BudgetStop(Exception):
    pass


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def design_to_text(design: Design) -> str:
    lines = [f"{design.v} {design.block_count} {design.k}"]
    for row in design.blocks:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def save_design(design: Design, path) -> None:
    with open(path, "w") as fh:
        fh.write(design_to_text(design))


def load_design(path) -> Design:
    with open(path) as fh:
        tokens = fh.read().split("\n")
    v, count, k = (int(x) for x in tokens[0].split())
    rows = [line.split() for line in tokens[1:] if line.strip()]
    if len(rows) != count:
        raise ValueError(f"expected {count} blocks, found {len(rows)}")
    blocks = np.array([[int(x) for x in row] for row in rows], dtype=np.int64)
    if blocks.shape != (count, k):
        raise ValueError("ragged block lines")
    if blocks.min(initial=0) < 0 or blocks.max(initial=0) >= v:
        raise ValueError("block entry out of range")
    unique = np.unique(blocks, axis=0)
    return Design(v=v, k=k, blocks=blocks, provenance=(),
                  has_duplicate_blocks=unique.shape[0] < count)


def save_profile(profile: IntersectionProfile, path) -> None:
    with open(path, "w") as fh:
        fh.write(profile.to_json() + "\n")
