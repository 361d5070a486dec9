import csv
import io

import pytest

from grasscycle.cycle import CycleSpec, build_beta_sequence
from grasscycle.errors import SearchSpaceTooLarge, SpecInvalid
from grasscycle.orbits import orbit_partition
from grasscycle.search import SearchTask, search_dual, twist_placements
from grasscycle.verify import verify_universal
from grasscycle import windows

from .conftest import REMARK_35

PAPER_HITS_25 = [(1, 4, 8, 16, 3), (1, 16, 8, 4, 3)]


def test_dual_hits_25(f25):
    res = search_dual(SearchTask(CycleSpec(f25, (3, 4, 8, 16, 1)), ks=(2, 3)))
    assert res.search_space_size == 24
    assert res.hits == PAPER_HITS_25
    for h in res.hits:
        assert set(res.reports[h]) == {2, 3}


def test_default_ks_is_2_and_n_minus_2(f25):
    res = search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16))))
    assert res.ks == (2, 3)
    assert res.hits == PAPER_HITS_25


def test_k2_only_every_ordering_hits(f25):
    res = search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16)), ks=(2,)))
    assert len(res.hits) == 24


def test_hits_reverify_standalone(f25):
    for h in search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16)), ks=(2, 3))).hits:
        cycle = build_beta_sequence(CycleSpec(f25, h))
        assert verify_universal(cycle, 2).universal and verify_universal(cycle, 3).universal


def test_reversal_not_identified(f25):
    a, b = PAPER_HITS_25
    assert b == (a[0],) + tuple(reversed(a[1:4])) + (a[4],)


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_backend_independent(f25, backend):
    if backend == "cython" and windows._compiled is None:
        pytest.skip("compiled kernel not built")
    res = search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16)), ks=(2, 3), backend=backend))
    assert res.hits == PAPER_HITS_25


def test_workers_deterministic(f25):
    one = search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16)), ks=(2, 3), workers=1))
    two = search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16)), ks=(2, 3), workers=2))
    assert one.hits == two.hits
    assert one.to_json() == two.to_json()


def test_csv_rows(f25):
    res = search_dual(SearchTask(CycleSpec(f25, (1, 3, 4, 8, 16)), ks=(2, 3), record_all=True))
    rows = list(csv.reader(io.StringIO(res.to_csv())))
    assert rows[0] == ["ordering", "k2", "k3"]
    assert len(rows) == 25
    assert all(r[1] == "1" for r in rows[1:])
    assert sum(r[2] == "1" for r in rows[1:]) == 2


def test_cap(f35):
    with pytest.raises(SearchSpaceTooLarge):
        search_dual(SearchTask(CycleSpec(f35, REMARK_35), cap=1000))


def test_invalid_template(f25):
    with pytest.raises(SpecInvalid):
        search_dual(SearchTask(CycleSpec(f25, (3, 4, 8, 16, 13))))


def test_twist_placements_25(f25):
    base = (2, 4, 8, 16, 1)
    assert twist_placements(orbit_partition(f25), base) == [(1, 3, 4, 8, 16)]


def test_twist_placements_35(f35):
    base = (1, 3, 9, 27, 81, 2, 6, 18, 54, 162)
    got = twist_placements(orbit_partition(f35), base)
    assert tuple(sorted(REMARK_35)) in got
    for ms in got:
        assert (sum(ms) - 1) % 121 == 0


def test_twist_placements_exclude_fstar_products(f35):
    # twisting an already valid system moves the product to alpha^2 F^*
    assert twist_placements(orbit_partition(f35), REMARK_35) == []


def test_twist_mode_25(f25):
    res = search_dual(SearchTask(CycleSpec(f25, (2, 4, 8, 16, 1)), mode="orderings+twist", ks=(2, 3)))
    assert res.multisets == [(1, 3, 4, 8, 16)]
    assert res.hits == PAPER_HITS_25


@pytest.mark.slow
def test_remark_ordering_found_35(f35):
    if windows._compiled is None:
        pytest.skip("full 9! scan is a compiled-kernel target")
    res = search_dual(SearchTask(CycleSpec(f35, REMARK_35), ks=(2, 3)))
    assert res.search_space_size == 362880
    assert REMARK_35 in res.hits
    assert res.hits == sorted(res.hits)
    assert res.elapsed < 600
