"""Closed-form profile evaluators, applicability gate, and design comparison.

The comparison verdict is deliberately one-sided: equal profiles yield
"inconclusive", never "isomorphic", because intersection profiles are not a
complete invariant (the three partition families of F_{11^3} share one
profile yet lie in distinct isomorphism classes).  Closed-form evaluators
merge coinciding keys by summing multiplicities, since the published tables
implicitly assume the four key polynomials are pairwise distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime, primes_below
from .designs import IntersectionProfile, profile_via_differences
from .families import DifferenceFamily
from .galois_ring import GaloisRing


# ---------------------------------------------------------------------------
# closed-form profiles for the developed cyclotomic families of F_{p^2r}
# ---------------------------------------------------------------------------

def _merge(profile: dict, key: int, mult: int) -> None:
    profile[key] = profile.get(key, 0) + mult


def wilson_profile_closed_form(p: int, r: int) -> IntersectionProfile:
    """Profile of the developed e = p^r + 1 cyclotomic family, in closed form."""
    t = p ** r
    if t < 3:
        raise ValueError("require p^r >= 3")
    prof: dict[int, int] = {}
    _merge(prof, 0, (3 * t ** 5 + t ** 4 - 2 * t ** 3) // 2)
    _merge(prof, 1, (t ** 6 - t ** 5 - t ** 4 + t ** 3) // 2)
    _merge(prof, t - 2, (t ** 4 - t ** 2) // 2)
    return IntersectionProfile(prof)


def wilson_half_profile_closed_form(p: int, r: int) -> IntersectionProfile:
    """Profile of the developed e = 2(p^r + 1) cyclotomic family, in closed form.

    The two nontrivial keys depend on p^r mod 4; keys that collide (e.g. the
    value 1 at p^r = 7 or 9) merge by adding multiplicities.
    """
    if p == 2:
        raise ValueError("require odd p")
    t = p ** r
    if t < 5:
        raise ValueError("require p^r >= 5")
    prof: dict[int, int] = {}
    _merge(prof, 0, (3 * t ** 6 + 9 * t ** 5 + t ** 4 - 3 * t ** 3 + 2 * t ** 2) // 2)
    _merge(prof, 1, (t ** 6 - t ** 5 - t ** 4 + t ** 3) // 2)
    single = (t ** 4 - t ** 2) // 2
    if t % 4 == 1:
        _merge(prof, (t - 5) // 4, single)
        _merge(prof, (t - 1) // 4, 3 * single)
    else:
        _merge(prof, (t - 3) // 4, 3 * single)
        _merge(prof, (t + 1) // 4, single)
    return IntersectionProfile(prof)


# ---------------------------------------------------------------------------
# Wieferich test and applicability gate
# ---------------------------------------------------------------------------

def wieferich(p: int) -> bool:
    """Exact test of 2^(p-1) = 1 (mod p^2); requires prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return pow(2, p - 1, p * p) == 1


def wieferich_below(limit: int) -> list[int]:
    return [p for p in primes_below(limit) if p > 2 and pow(2, p - 1, p * p) == 1]


@dataclass(frozen=True)
class GateReport:
    p: int
    r: int
    p_odd: bool
    mod24: int  # residue of p^r - 1 mod 24
    wieferich: bool
    applies: bool
    reasons: tuple[str, ...]


def gate(p: int, r: int) -> GateReport:
    """Does the profile-separation guarantee cover GR(p^2, r) vs F_{p^2r}?

    Applies exactly when p is odd, p is not Wieferich, and 24 divides
    p^r - 1; the reasons list names each failed clause.
    """
    p_odd = p % 2 == 1
    mod24 = (p ** r - 1) % 24
    wf = wieferich(p)
    reasons = []
    if not p_odd:
        reasons.append("p is even")
    if wf:
        reasons.append("p is a Wieferich prime")
    if mod24 != 0:
        reasons.append(f"p^r - 1 = {mod24} (mod 24), not 0")
    applies = p_odd and not wf and mod24 == 0
    return GateReport(p=p, r=r, p_odd=p_odd, mod24=mod24, wieferich=wf,
                      applies=applies, reasons=tuple(reasons))


# ---------------------------------------------------------------------------
# coset tallies and multiplicity bounds in GR(p^2, r)
# ---------------------------------------------------------------------------

def _difference_counter(ring: GaloisRing, left, right) -> dict[int, int]:
    """Multiplicity of each d in the multiset {u - w : u in left, w in right, u != w}."""
    counts: dict[int, int] = {}
    for u in left:
        for w in right:
            if u == w:
                continue
            d = ring.sub(u, w)
            counts[d] = counts.get(d, 0) + 1
    return counts


@dataclass(frozen=True)
class CosetCountReport:
    delta_squares: tuple[int, int]  # (square cosets, non-square cosets) in ΔT_S*
    squares_minus_nonsquares: tuple[int, int]  # same tallies for T_S* - T_N*
    expected_delta: tuple[int, int]
    expected_cross: tuple[int, int]
    matches: bool


def sn_coset_counts(ring: GaloisRing) -> CosetCountReport:
    """Tally square vs non-square cosets making up ΔT_S* and T_S* - T_N*.

    Both multisets are unions of full cosets of T_S*; the tally divides each
    side's element count by the coset size and checks the closed forms for
    the two congruence classes of p^r mod 4.
    """
    squares, non_squares = ring.square_split()
    size = len(squares)

    def tally(counts: dict[int, int]) -> tuple[int, int]:
        by_parity = [0, 0]
        for d, n in counts.items():
            by_parity[ring.coset_parity(d)] += n
        if any(c % size for c in by_parity):
            raise AssertionError("difference multiset is not a union of cosets")
        return by_parity[0] // size, by_parity[1] // size

    delta = tally(_difference_counter(ring, squares, squares))
    cross = tally(_difference_counter(ring, squares, non_squares))
    t = ring.teich_size
    if t % 4 == 1:
        expected_delta = ((t - 5) // 4, (t - 1) // 4)
        expected_cross = ((t - 1) // 4, (t - 1) // 4)
    else:
        expected_delta = ((t - 3) // 4, (t - 3) // 4)
        expected_cross = ((t - 3) // 4, (t + 1) // 4)
    return CosetCountReport(delta_squares=delta, squares_minus_nonsquares=cross,
                            expected_delta=expected_delta, expected_cross=expected_cross,
                            matches=delta == expected_delta and cross == expected_cross)


@dataclass(frozen=True)
class BoundReport:
    """Exact multiplicities of the in-scope differences, against strict bounds.

    The scope follows p^r mod 4: for residue 1 the square differences of
    ΔT_S* outside 2T_S*, for residue 3 the differences of T_S* - T_N*
    outside 2T_S*.  The verdict asserts 1 < N_d < upper for every in-scope
    d; the upper bound only binds when the matching mod-24 condition holds.
    """

    multiset: str
    residue4: int
    upper_bound: int
    upper_applicable: bool
    multiplicities: dict  # in-scope d -> N_d
    min_over_scope: int | None
    max_over_scope: int | None
    lemma_lower_ok: bool  # N_d > 1 for every d outside 2T_S*, any parity
    verdict: bool


def bound_report(ring: GaloisRing) -> BoundReport:
    p, t = ring.p, ring.teich_size
    if p == 2:
        raise ValueError("bounds require odd p")
    if wieferich(p):
        raise ValueError("bounds require a non-Wieferich prime")
    squares, non_squares = ring.square_split()
    two_coset = {ring.add(s, s) for s in squares}  # 2 * T_S*
    residue4 = t % 4
    if residue4 == 1:
        counts = _difference_counter(ring, squares, squares)
        upper = (t - 5) // 4
        upper_applicable = (t - 1) % 24 == 0
        name = "delta-squares"
        in_scope = {d: n for d, n in counts.items()
                    if d not in two_coset and ring.coset_parity(d) == 0}
    else:
        counts = _difference_counter(ring, squares, non_squares)
        upper = (t + 1) // 4
        upper_applicable = (t - 1) % 24 == 18
        name = "squares-minus-nonsquares"
        in_scope = {d: n for d, n in counts.items() if d not in two_coset}

    lemma_lower_ok = all(n > 1 for d, n in counts.items() if d not in two_coset)
    lo = min(in_scope.values()) if in_scope else None
    hi = max(in_scope.values()) if in_scope else None
    verdict = lemma_lower_ok and all(
        1 < n and (not upper_applicable or n < upper) for n in in_scope.values())
    return BoundReport(multiset=name, residue4=residue4, upper_bound=upper,
                       upper_applicable=upper_applicable, multiplicities=in_scope,
                       min_over_scope=lo, max_over_scope=hi,
                       lemma_lower_ok=lemma_lower_ok, verdict=verdict)


# ---------------------------------------------------------------------------
# comparison verdict and certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonResult:
    status: str  # "nonisomorphic" | "inconclusive"
    witness: int | None
    profile_a: IntersectionProfile
    profile_b: IntersectionProfile


def compare_designs(fam_a: DifferenceFamily, fam_b: DifferenceFamily,
                    threads=None) -> ComparisonResult:
    """Compare developed designs by their exact intersection profiles.

    Any key-set or multiplicity difference certifies nonisomorphism with the
    smallest differing key as witness; equal profiles are inconclusive
    (profiles are not a complete invariant).
    """
    if (fam_a.v, fam_a.b, fam_a.k) != (fam_b.v, fam_b.b, fam_b.k):
        raise ValueError("families must share (v, b, k)")
    pa = profile_via_differences(fam_a, threads=threads)
    pb = profile_via_differences(fam_b, threads=threads)
    keys_a, keys_b = set(pa.counts), set(pb.counts)
    sym = keys_a ^ keys_b
    if sym:
        return ComparisonResult("nonisomorphic", min(sym), pa, pb)
    diff = [n for n in sorted(keys_a) if pa.counts[n] != pb.counts[n]]
    if diff:
        return ComparisonResult("nonisomorphic", diff[0], pa, pb)
    return ComparisonResult("inconclusive", None, pa, pb)


def certificate(p: int, r: int, fam_a: DifferenceFamily, fam_b: DifferenceFamily,
                result: ComparisonResult, gate_report: GateReport,
                tool_version: str) -> dict:
    """JSON-ready nonisomorphism certificate with a fixed field order."""
    def profile_obj(prof):
        return {str(n): str(prof.counts[n]) for n in prof.numbers()}

    return {
        "parameters": {
            "p": p,
            "r": r,
            "v": fam_a.v,
            "b": fam_a.b,
            "k": fam_a.k,
            "lambda": fam_a.lam,
            "family_a": fam_a.name,
            "family_b": fam_b.name,
        },
        "gate": {
            "p_odd": gate_report.p_odd,
            "mod24": gate_report.mod24,
            "wieferich": gate_report.wieferich,
            "applies": gate_report.applies,
            "reasons": list(gate_report.reasons),
        },
        "profile_a": profile_obj(result.profile_a),
        "profile_b": profile_obj(result.profile_b),
        "verdict": result.status,
        "witness": result.witness,
        "tool_version": tool_version,
    }
