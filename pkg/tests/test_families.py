"""Difference-family constructions, validation and file round-trips."""

import pytest

from ddfkit import (build_field, build_ring, davis_family, feng_families,
                    furino_family, load_family, save_family, squares_family,
                    validate_ddf, wilson_family)
from ddfkit.families import DifferenceFamily, family_to_text
from ddfkit.groups import field_group, group_for


def assert_valid(fam):
    report = validate_ddf(fam)
    assert report.is_difference_family, report
    assert report.observed_lambda == fam.lam
    assert report.disjoint and fam.disjoint
    assert report.near_complete and fam.near_complete
    return report


# ---------------------------------------------------------------------------
# cyclotomic-coset construction
# ---------------------------------------------------------------------------

def test_wilson_f9_e4():
    fam = wilson_family(build_field(3, 2), 4)
    assert (fam.v, fam.k, fam.lam, fam.b) == (9, 2, 1, 4)
    assert_valid(fam)


def test_wilson_f625_e52():
    fam = wilson_family(build_field(5, 4), 52)
    assert (fam.v, fam.k, fam.lam, fam.b) == (625, 12, 11, 52)


def test_wilson_f1331_e14():
    fam = wilson_family(build_field(11, 3), 14)
    assert (fam.v, fam.k, fam.lam, fam.b) == (1331, 95, 94, 14)


def test_wilson_f9_e2():
    fam = wilson_family(build_field(3, 2), 2)
    assert (fam.v, fam.k, fam.lam) == (9, 4, 3)
    assert_valid(fam)


def test_wilson_parameter_errors():
    f9 = build_field(3, 2)
    with pytest.raises(ValueError):
        wilson_family(f9, 3)  # 3 does not divide 8
    with pytest.raises(ValueError):
        wilson_family(f9, 8)  # f = 1 < 2
    with pytest.raises(ValueError):
        wilson_family(f9, 1)


# ---------------------------------------------------------------------------
# Teichmüller-coset constructions
# ---------------------------------------------------------------------------

def test_davis_gr9_exact_blocks():
    # direct expansion mod 9: (1+3a)T* for a in (0, 1, 8), then 3T*
    fam = davis_family(build_ring(3, 1))
    assert fam.blocks == ((1, 8), (4, 5), (2, 7), (3, 6))
    assert (fam.v, fam.k, fam.lam) == (9, 2, 1)
    assert_valid(fam)


def test_davis_parameters():
    fam = davis_family(build_ring(5, 2))
    assert (fam.v, fam.k, fam.lam, fam.b) == (625, 24, 23, 26)
    fam = davis_family(build_ring(5, 1))
    assert (fam.v, fam.k, fam.lam, fam.b) == (25, 4, 3, 6)
    assert_valid(fam)


def test_squares_gr25():
    fam = squares_family(build_ring(5, 1))
    assert (fam.v, fam.k, fam.lam, fam.b) == (25, 2, 1, 12)
    assert_valid(fam)


def test_squares_gr625():
    fam = squares_family(build_ring(5, 2))
    assert (fam.v, fam.k, fam.lam, fam.b) == (625, 12, 11, 52)


def test_squares_rejects_small():
    with pytest.raises(ValueError):
        squares_family(build_ring(3, 1))  # p^r = 3 < 5


def test_squares_refine_davis_blocks():
    # every Teichmüller-coset block splits into exactly two square-coset blocks
    for p, r in [(5, 1), (5, 2), (7, 1)]:
        davis = davis_family(build_ring(p, r))
        halves = squares_family(build_ring(p, r))
        half_sets = [set(b) for b in halves.blocks]
        for block in davis.blocks:
            parts = [h for h in half_sets if h <= set(block)]
            assert len(parts) == 2
            assert parts[0] | parts[1] == set(block)


# ---------------------------------------------------------------------------
# generic unit-subgroup cosets
# ---------------------------------------------------------------------------

def test_furino_reproduces_teichmuller_cosets():
    ring = build_ring(5, 1)
    fam = furino_family(ring, ring.teichmuller[1:])
    davis = davis_family(ring)
    assert {frozenset(b) for b in fam.blocks} == {frozenset(b) for b in davis.blocks}


def test_furino_reproduces_square_cosets():
    ring = build_ring(5, 1)
    squares, _ = ring.square_split()
    fam = furino_family(ring, squares)
    halves = squares_family(ring)
    assert {frozenset(b) for b in fam.blocks} == {frozenset(b) for b in halves.blocks}


def test_furino_cube_subgroup_gr49():
    ring = build_ring(7, 1)
    cubes = sorted({ring.pow(t, 3) for t in ring.teichmuller[1:]})
    assert len(cubes) == 2  # {1, xi^3}
    fam = furino_family(ring, cubes)
    assert (fam.v, fam.k, fam.lam, fam.b) == (49, 2, 1, 24)
    assert_valid(fam)


def test_furino_rejects_nonunit_differences():
    # principal units of Z_25: closed under multiplication, but 6 - 1 = 5
    ring = build_ring(5, 1)
    with pytest.raises(ValueError, match="not a unit"):
        furino_family(ring, [1, 6, 11, 16, 21])


def test_furino_rejects_non_subgroup():
    ring = build_ring(5, 1)
    with pytest.raises(ValueError):
        furino_family(ring, [1, 7, 24])  # 7*24 = 18 missing


# ---------------------------------------------------------------------------
# partition families of F_{11^3}
# ---------------------------------------------------------------------------

def test_feng_block_sizes_and_validation():
    fams = feng_families(build_field(11, 3))
    assert len(fams) == 3
    for fam in fams:
        assert (fam.v, fam.k, fam.lam, fam.b) == (1331, 665, 664, 2)
        assert all(len(b) == 665 for b in fam.blocks)
        assert_valid(fam)


def test_feng_cut_recovers_cyclotomic_family():
    field = build_field(11, 3)
    fams = feng_families(field)
    wilson = wilson_family(field, 14)
    classes = {frozenset(c) for c in field.cyclotomic_classes(14)}
    assert {frozenset(b) for b in wilson.blocks} == classes
    for fam in fams:
        for block in fam.blocks:
            pieces = {cls for cls in classes if cls <= set(block)}
            assert len(pieces) == 7
            covered = set()
            for cls in pieces:
                covered |= cls
            assert covered == set(block)


def test_feng_requires_f1331():
    with pytest.raises(ValueError):
        feng_families(build_field(5, 4))


# ---------------------------------------------------------------------------
# validation reports
# ---------------------------------------------------------------------------

def test_validate_flags_duplicate_element():
    g = field_group(5, 1)
    fam = DifferenceFamily(group=g, blocks=((1, 2), (2, 3)), v=5, k=2, lam=1,
                           disjoint=False, near_complete=False)
    report = validate_ddf(fam)
    assert not report.disjoint
    assert report.offending_element == 2


def test_validate_flags_nonconstant_counts():
    g = field_group(5, 1)
    fam = DifferenceFamily(group=g, blocks=((1, 2),), v=5, k=2, lam=1,
                           disjoint=True, near_complete=False)
    report = validate_ddf(fam)
    assert not report.is_difference_family
    assert report.observed_lambda is None
    assert report.offending_element is not None


def test_parameter_identity_all_constructions():
    fams = [
        wilson_family(build_field(3, 2), 4),
        wilson_family(build_field(5, 2), 6),
        davis_family(build_ring(5, 1)),
        squares_family(build_ring(5, 2)),
        furino_family(build_ring(7, 1),
                      sorted({build_ring(7, 1).pow(t, 3)
                              for t in build_ring(7, 1).teichmuller[1:]})),
    ]
    for fam in fams:
        assert fam.lam * (fam.v - 1) == fam.b * fam.k * (fam.k - 1)
        total = sum(len(b) for b in fam.blocks)
        assert total == fam.v - 1  # blocks partition the nonzero elements
        union = set()
        for b in fam.blocks:
            union.update(b)
        assert union == set(range(1, fam.v))


def test_observed_lambda_matches_declared_at_desk_scale():
    families = []
    for e in (2, 4):
        families.append(wilson_family(build_field(3, 2), e))
    for e in (2, 3, 4, 6, 8, 12):
        families.append(wilson_family(build_field(5, 2), e))
    for e in (2, 8, 16, 24):
        families.append(wilson_family(build_field(7, 2), e))
    families.append(wilson_family(build_field(5, 4), 26))
    families.append(wilson_family(build_field(5, 4), 52))
    for p, r in [(3, 1), (5, 1), (7, 1), (5, 2)]:
        families.append(davis_family(build_ring(p, r)))
    for p, r in [(5, 1), (7, 1), (11, 1), (5, 2)]:
        families.append(squares_family(build_ring(p, r)))
    for fam in families:
        assert_valid(fam)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def test_family_roundtrip(tmp_path):
    fam = squares_family(build_ring(5, 1))
    path = tmp_path / "fam.txt"
    save_family(fam, path)
    loaded = load_family(path, group_for("ring", 5, 25))
    assert loaded.blocks == fam.blocks
    assert (loaded.v, loaded.k, loaded.lam, loaded.b) == (fam.v, fam.k, fam.lam, fam.b)
    assert loaded.disjoint and loaded.near_complete


def test_family_text_deterministic():
    fam = davis_family(build_ring(3, 1))
    assert family_to_text(fam) == "9 2 1 4\n1 8\n4 5\n2 7\n3 6\n"


def test_family_load_rejects_bad_files(tmp_path):
    g = group_for("field", 5, 5)
    cases = {
        "bad-header.txt": "5 2 1\n1 2\n",
        "wrong-count.txt": "5 2 1 2\n1 2\n",
        "unsorted.txt": "5 2 1 2\n2 1\n3 4\n",
        "out-of-range.txt": "5 2 1 2\n1 2\n3 7\n",
        "bad-lambda.txt": "5 2 2 2\n1 2\n3 4\n",
        "dup-in-block.txt": "5 2 1 2\n1 1\n3 4\n",
    }
    for name, text in cases.items():
        path = tmp_path / name
        path.write_text(text)
        with pytest.raises(ValueError):
            load_family(path, g)


def test_family_load_group_mismatch(tmp_path):
    fam = davis_family(build_ring(3, 1))
    path = tmp_path / "fam.txt"
    save_family(fam, path)
    with pytest.raises(ValueError):
        load_family(path, group_for("field", 5, 5))
