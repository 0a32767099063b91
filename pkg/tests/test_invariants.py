import pytest

from digitopo import (BudgetExhaustedError, DigitalMap, SearchBudget,
                      catalog_get, coincidence_set, coincidence_spectrum,
                      common_fixed_spectrum, divergence_degree,
                      fixed_point_spectrum, has_FPP,
                      homotopy_coincidence_spectrum,
                      homotopy_common_fixed_spectrum, is_continuous,
                      min_numbers, restricted_divergence)
from digitopo.catalog import rotation
from digitopo.image import iter_bits

from conftest import spectra_oracle


def test_spectra_match_oracle(interval3, c5):
    for image in (interval3, c5):
        fix, cs, cfs = spectra_oracle(image)
        assert fixed_point_spectrum(image).values == fix
        assert coincidence_spectrum(image).values == cs
        assert common_fixed_spectrum(image).values == cfs


def test_cycle5_spectra(c5):
    assert fixed_point_spectrum(c5).values == {0, 1, 2, 3, 5}
    assert common_fixed_spectrum(c5).values == {0, 1, 2, 3, 5}


def test_cube_fixed_and_common_fixed(cube):
    expected = {0, 1, 2, 3, 4, 5, 6, 8}
    f_spec = fixed_point_spectrum(cube)
    cf_spec = common_fixed_spectrum(cube)
    assert f_spec.complete and cf_spec.complete
    assert f_spec.values == expected
    assert cf_spec.values == expected


def test_cube_coincidence_spectrum_is_full(cube):
    # unlike the common-fixed count, a coincidence count of 7 *is* realizable:
    # perturb a constant map at one point (see the witness test below)
    spec = coincidence_spectrum(cube)
    assert spec.complete
    assert spec.values == set(range(9))


def test_cube_seven_coincidence_witness(cube):
    q = next(iter_bits(cube.neighbor_masks[0]))
    f2 = DigitalMap.constant(cube, cube, 0)
    assign = [0] * 8
    assign[7] = q
    f1 = DigitalMap(cube, cube, assign)
    assert is_continuous(f1) and is_continuous(f2)
    assert len(coincidence_set(f1, f2)) == 7


def test_spectrum_ordering_helpers(c5):
    spec = fixed_point_spectrum(c5)
    assert spec.sorted() == [0, 1, 2, 3, 5]
    assert spec.to_json()["values"] == [0, 1, 2, 3, 5]


def test_homotopy_coincidence_cycle(c5):
    ident = DigitalMap.identity(c5)
    const = DigitalMap.constant(c5, c5, 0)
    assert homotopy_coincidence_spectrum(ident, const, starred=True).values == {1}
    assert homotopy_coincidence_spectrum(ident, const).values == {0, 1, 2, 3}
    assert homotopy_coincidence_spectrum(const, ident, starred=True).values == {0, 1, 2, 3}


def test_min_numbers_cycle(c5):
    ident = DigitalMap.identity(c5)
    const = DigitalMap.constant(c5, c5, 0)
    assert min_numbers(ident, const, "MC") == 0
    assert min_numbers(ident, const, "MC_star") == 1
    assert min_numbers(ident, ident, "MCF") == 0
    with pytest.raises(ValueError):
        min_numbers(ident, const, "bogus")


def test_homotopy_fixed_cycle(c5):
    ident = DigitalMap.identity(c5)
    assert homotopy_common_fixed_spectrum(ident, ident).values == {0, 5}
    assert homotopy_common_fixed_spectrum(ident, rotation(c5, 2)).values == {0, 5}


def test_cube_class_spectra_match_global(cube):
    # the cube has a single homotopy class, so per-class spectra equal X-spectra
    ident = DigitalMap.identity(cube)
    hfs = homotopy_common_fixed_spectrum(ident, ident)
    assert hfs.values == common_fixed_spectrum(cube).values


def test_fpp_only_for_the_point(c5, cube, interval3):
    assert has_FPP(catalog_get("point").image)
    for image in (c5, cube, interval3, catalog_get("fig1").image):
        assert not has_FPP(image)


def test_divergence_degree_is_one(c5, cube, fig1_entry):
    for image in (c5, cube, fig1_entry.image):
        for x in range(0, image.size, 3):
            k, f1, f2, stats = divergence_degree(image, x)
            assert k == 1 and stats.exhausted
            assert is_continuous(f1) and is_continuous(f2)
            assert f1.assign[x] != f2.assign[x]
            assert sum(a != b for a, b in zip(f1.assign, f2.assign)) == 1


def test_restricted_divergence_family(fig1_entry):
    image = fig1_entry.image
    family = [fig1_entry.maps[name]
              for name in ("f", "p_v", "p_h", "g1", "g2", "g3", "h1", "h2")]
    k, f1, f2 = restricted_divergence(image, 6, family)  # figure label 7
    assert k == 3
    diff = {x for x in range(18) if f1.assign[x] != f2.assign[x]}
    assert 6 in diff and len(diff) == 3
    # every point diverges within this family, and never by more than the size
    for x in range(18):
        k, _, _ = restricted_divergence(image, x, family)
        assert 1 <= k <= 18


def test_restricted_divergence_errors(c5):
    ident = DigitalMap.identity(c5)
    with pytest.raises(Exception):
        restricted_divergence(c5, 0, [])
    with pytest.raises(Exception):
        restricted_divergence(c5, 0, [ident, ident])  # no pair differs at 0


def test_min_numbers_budget_guard():
    c7 = catalog_get("cycle:7").image
    ident = DigitalMap.identity(c7)
    const = DigitalMap.constant(c7, c7, 0)
    with pytest.raises(BudgetExhaustedError):
        min_numbers(ident, const, "MC", SearchBudget(max_nodes=4))
