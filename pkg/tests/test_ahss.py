from bredon.ahss import (
    COLLAPSES,
    D3_NOTE,
    SINGLE_COLUMN_NOTE,
    UNKNOWN,
    e2_page,
    k_theory_ranks_if_collapse,
)
from bredon.complexes import load_bundled, parse_complex
from bredon.homology import AbelianGroup


def test_sl2z_page(sl2z):
    page = e2_page(sl2z)
    assert page.collapse_status == COLLAPSES
    # odd rows vanish and even rows repeat with period 2
    for p in range(-1, 4):
        for q in range(-4, 5):
            if q % 2:
                assert page.entry(p, q).is_zero()
            else:
                assert page.entry(p, q) == page.entry(p, 0)
    assert page.entry(0, 0) == AbelianGroup(8)
    assert page.entry(1, 0).is_zero()
    assert page.nonzero_columns() == [0]
    ranks = k_theory_ranks_if_collapse(page)
    assert (ranks.even, ranks.odd) == (8, 0)
    assert ranks.even_torsion == () and ranks.odd_torsion == ()


def test_sl2z_render(sl2z):
    text = e2_page(sl2z).render()
    lines = text.splitlines()
    assert lines[0].strip().startswith("q=1 (odd)") and lines[1].strip().startswith("q=0 (even)")
    assert "Z^8" in lines[1]
    assert f"collapse: {COLLAPSES}" in text


def test_point_pages():
    point = e2_page(load_bundled("point"))
    assert point.collapse_status == COLLAPSES
    assert k_theory_ranks_if_collapse(point).even == 1
    c2 = parse_complex("group C2 perm\ngen 1 0\ncell v dim=0 stab=C2\n")
    assert k_theory_ranks_if_collapse(e2_page(c2)).even == 2


def test_circle_has_odd_k_rank():
    ranks = k_theory_ranks_if_collapse(e2_page(load_bundled("circle_free")))
    assert (ranks.even, ranks.odd) == (1, 1)


def test_sl3z_unknown(sl3z):
    page = e2_page(sl3z)
    assert page.collapse_status == UNKNOWN
    assert D3_NOTE in page.notes
    assert k_theory_ranks_if_collapse(page) is None
    # H^0 = Z^8 survives, the higher columns vanish, yet collapse is still not claimed
    assert page.entry(0, 0) == AbelianGroup(8)
    assert page.nonzero_columns() == [0]
    assert SINGLE_COLUMN_NOTE in page.notes
    assert set(page.grid) == {(p, q) for p in range(4) for q in (0, 1)}
