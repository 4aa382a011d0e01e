"""Disjoint difference family constructions and brute-force validation.

All constructions fix a documented base-block order so that developed
designs, profiles and exported files are deterministic:

  * cyclotomic families: cosets C_0, ..., C_{e-1} by index;
  * Teichmüller-coset families: (1+p*alpha)T* for alpha in Teichmüller-power
    order (0, 1, xi, xi^2, ...) followed by p*T*;
  * split families: square cosets in that alpha order, then p*T_S*, then the
    non-square cosets, then p*T_N*.

Blocks are stored as sorted encoding tuples; set semantics are enforced at
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Field
from .galois_ring import GaloisRing
from .groups import AdditiveGroup

FENG_INDEX_SETS = (
    (0, 2, 4, 6, 8, 10, 12),
    (0, 1, 2, 3, 4, 5, 6),
    (0, 1, 3, 4, 5, 6, 9),
)


@dataclass(frozen=True)
class DifferenceFamily:
    """Base blocks over an additive group, with declared (v, k, lambda)."""

    group: AdditiveGroup
    blocks: tuple[tuple[int, ...], ...]
    v: int
    k: int
    lam: int
    disjoint: bool
    near_complete: bool
    name: str = ""

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_array(self) -> np.ndarray:
        return np.array(self.blocks, dtype=np.int64)


@dataclass(frozen=True)
class ValidationReport:
    is_difference_family: bool
    observed_lambda: int | None  # None when the difference counts are not constant
    disjoint: bool
    near_complete: bool
    offending_element: int | None = None


def _structure_flags(blocks, v):
    total = sum(len(b) for b in blocks)
    union = set()
    for b in blocks:
        union.update(b)
    disjoint = len(union) == total
    near_complete = disjoint and 0 not in union and total == v - 1
    return disjoint, near_complete


def _make_family(group, blocks, k, lam, name):
    blocks = tuple(tuple(sorted(set(b))) for b in blocks)
    for b in blocks:
        if len(b) != k:
            raise AssertionError("constructed block has the wrong size")
    disjoint, near_complete = _structure_flags(blocks, group.order)
    return DifferenceFamily(group=group, blocks=blocks, v=group.order, k=k,
                            lam=lam, disjoint=disjoint,
                            near_complete=near_complete, name=name)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def wilson_family(field: Field, e: int, name: str = "") -> DifferenceFamily:
    """Cyclotomic-coset family: the e cosets of the e-th powers in F_q^*.

    A near-complete (q, f, f-1) disjoint difference family for ef = q-1
    with e, f >= 2.
    """
    if e < 2:
        raise ValueError("require e >= 2")
    if (field.q - 1) % e != 0:
        raise ValueError(f"e={e} does not divide q-1={field.q - 1}")
    f = (field.q - 1) // e
    if f < 2:
        raise ValueError("require f = (q-1)/e >= 2")
    blocks = field.cyclotomic_classes(e)
    return _make_family(field.group, blocks, f, f - 1, name or f"cyclotomic-e{e}")


def davis_family(ring: GaloisRing, name: str = "gr-teichmuller") -> DifferenceFamily:
    """Teichmüller-coset family in GR(p^2, r).

    Blocks (1+p*alpha)T* for alpha in T, plus p*T*: a near-complete
    (p^2r, p^r - 1, p^r - 2) disjoint difference family.
    """
    size = ring.teich_size
    if size < 3:
        raise ValueError("require p^r >= 3")
    t_star = ring.teichmuller[1:]
    blocks = []
    for alpha in ring.teichmuller:
        u = ring.add(1, ring.scalar_p(alpha))
        blocks.append([ring.mul(u, t) for t in t_star])
    blocks.append([ring.scalar_p(t) for t in t_star])
    return _make_family(ring.group, blocks, size - 1, size - 2, name)


def squares_family(ring: GaloisRing, name: str = "gr-squares") -> DifferenceFamily:
    """Teichmüller-square-coset family in GR(p^2, r), for odd p with p^r >= 5.

    The 2(p^r + 1) cosets of the subgroup of Teichmüller squares: a
    near-complete (p^2r, (p^r-1)/2, (p^r-3)/2) disjoint difference family.
    """
    squares, non_squares = ring.square_split()
    k = len(squares)
    blocks = []
    for part in (squares, non_squares):
        for alpha in ring.teichmuller:
            u = ring.add(1, ring.scalar_p(alpha))
            blocks.append([ring.mul(u, t) for t in part])
        blocks.append([ring.scalar_p(t) for t in part])
    return _make_family(ring.group, blocks, k, (ring.teich_size - 3) // 2, name)


def furino_family(ring: GaloisRing, subgroup, name: str = "furino") -> DifferenceFamily:
    """Coset family of an arbitrary unit subgroup B with unit internal differences.

    Representatives are found by a deterministic sweep over element encodings
    in increasing order, marking covered elements; the resulting cosets
    partition the nonzero elements and form a (v, |B|, |B|-1) disjoint
    difference family.
    """
    sub = sorted(set(subgroup))
    if 1 not in sub:
        raise ValueError("subgroup must contain 1")
    for a in sub:
        for b in sub:
            if ring.mul(a, b) not in sub:
                raise ValueError("given set is not multiplicatively closed")
            if a != b and not ring.is_unit(ring.sub(a, b)):
                raise ValueError(
                    f"difference of subgroup elements {a} - {b} is not a unit")
    k = len(sub)
    covered = bytearray(ring.order)
    covered[0] = 1
    blocks = []
    for s in range(1, ring.order):
        if covered[s]:
            continue
        block = sorted(ring.mul(s, b) for b in sub)
        if len(block) != k:
            raise AssertionError("coset collapsed; unit-difference check was violated")
        for x in block:
            if covered[x]:
                raise AssertionError("coset sweep produced overlapping blocks")
            covered[x] = 1
        blocks.append(block)
    return _make_family(ring.group, blocks, k, k - 1, name)


def feng_families(field: Field) -> tuple[DifferenceFamily, ...]:
    """The three two-block partition families of F_{11^3}.

    Each family splits the 14 cyclotomic cosets of order 14 into two unions
    of seven (even indices vs odd; first seven vs last seven; the index set
    {0,1,3,4,5,6,9} vs its complement).  Negation maps each block onto the
    other, which forces lambda = 664 by counting; validity is checked by the
    test suite for the documented modulus choice.
    """
    if field.q != 1331:
        raise ValueError("the partition families are defined over F_{11^3}")
    classes = field.cyclotomic_classes(14)
    out = []
    for fam_idx, idx in enumerate(FENG_INDEX_SETS, start=1):
        first = sorted(x for i in idx for x in classes[i])
        second = sorted(x for i in range(14) if i not in idx for x in classes[i])
        out.append(_make_family(field.group, [first, second], 665, 664,
                                f"feng-{fam_idx}"))
    return tuple(out)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_ddf(fam: DifferenceFamily) -> ValidationReport:
    """Brute-force check of the difference-family property.

    Counts every ordered within-block difference and checks the count map is
    constant on the nonzero elements; also recomputes disjointness and
    near-completeness from scratch.
    """
    g = fam.group
    counts = np.zeros(g.order, dtype=np.int64)
    seen = np.zeros(g.order, dtype=np.int64)
    for block in fam.blocks:
        arr = np.asarray(block, dtype=np.int64)
        d = g.sub_arrays(arr[:, None], arr[None, :]).ravel()
        counts += np.bincount(d[d != 0], minlength=g.order)
        seen += np.bincount(arr, minlength=g.order)

    nonzero = counts[1:]
    constant = bool(nonzero.size) and int(nonzero.min()) == int(nonzero.max())
    observed = int(nonzero[0]) if constant else None

    disjoint = bool(seen.max(initial=0) <= 1)
    near_complete = disjoint and seen[0] == 0 and int(seen.sum()) == g.order - 1

    offending = None
    if not disjoint:
        offending = int(np.nonzero(seen > 1)[0][0])
    elif not constant:
        mode = int(np.bincount(nonzero).argmax())
        offending = int(np.nonzero(nonzero != mode)[0][0]) + 1

    return ValidationReport(is_difference_family=constant,
                            observed_lambda=observed,
                            disjoint=disjoint,
                            near_complete=near_complete,
                            offending_element=offending)


# ---------------------------------------------------------------------------
# file format: header "v k lambda b", one base block per line
# ---------------------------------------------------------------------------

def family_to_text(fam: DifferenceFamily) -> str:
    lines = [f"{fam.v} {fam.k} {fam.lam} {fam.b}"]
    for block in fam.blocks:
        lines.append(" ".join(str(x) for x in block))
    return "\n".join(lines) + "\n"


def save_family(fam: DifferenceFamily, path) -> None:
    with open(path, "w") as fh:
        fh.write(family_to_text(fam))


def load_family(path, group: AdditiveGroup, name: str = "") -> DifferenceFamily:
    """Read a family file and validate its declared invariants on load."""
    with open(path) as fh:
        tokens = fh.read().split("\n")
    header = tokens[0].split()
    if len(header) != 4:
        raise ValueError("family header must be 'v k lambda b'")
    v, k, lam, b = (int(x) for x in header)
    if group.order != v:
        raise ValueError(f"group order {group.order} does not match header v={v}")
    rows = [line.split() for line in tokens[1:] if line.strip()]
    if len(rows) != b:
        raise ValueError(f"expected {b} base blocks, found {len(rows)}")
    blocks = []
    for row in rows:
        block = tuple(int(x) for x in row)
        if len(block) != k or len(set(block)) != k:
            raise ValueError("every base block must have k distinct elements")
        if any(x < 0 or x >= v for x in block):
            raise ValueError("block entry out of range")
        if list(block) != sorted(block):
            raise ValueError("block entries must be sorted")
        blocks.append(block)
    if lam * (v - 1) != b * k * (k - 1):
        raise ValueError("declared parameters violate lambda*(v-1) = b*k*(k-1)")
    disjoint, near_complete = _structure_flags(blocks, v)
    return DifferenceFamily(group=group, blocks=tuple(blocks), v=v, k=k, lam=lam,
                            disjoint=disjoint, near_complete=near_complete,
                            name=name or "imported")
