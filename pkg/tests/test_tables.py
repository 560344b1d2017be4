import pytest

from buchstaber.fixtures import AT_LEAST, AT_MOST, EXACT, SET, UNKNOWN, TableFixtureEntry, mk_table, srm_table
from buchstaber.tables import (
    MATCH,
    MISMATCH,
    OPEN,
    REFINE,
    Cell,
    check_paper,
    classify,
    format_cells,
    mkb_cells,
    mkb_evaluator,
    parse_range,
    srm_cells,
    srm_evaluator,
)


def entry(kind, values, table="srm", coords=(12, 8), q=None):
    return TableFixtureEntry(table, coords, kind, frozenset(values), q)


# --- fixtures


def test_fixture_shapes():
    mk = mk_table()
    assert len(mk) == 1 + 3 + 7 + 15 + 31
    srm = srm_table()
    assert len(srm) == sum(min(m, 18) - 1 for m in range(2, 41))
    kinds = {e.kind for e in srm}
    assert kinds == {EXACT, AT_MOST, AT_LEAST, UNKNOWN}


def test_fixture_spot_values():
    by = {e.coords: e for e in srm_table()}
    assert by[(8, 5)].values == {4}
    assert by[(12, 8)].kind == AT_MOST and by[(12, 8)].values == {5}
    assert by[(17, 10)].kind == AT_LEAST
    assert by[(9, 7)].values == {5}
    mk = {e.coords: e for e in mk_table()}
    assert mk[(5, 5)].kind == SET and mk[(5, 5)].admissible(1) == {38, 40}
    assert mk[(4, 6)].admissible(2) == {42}


def test_fixture_validation():
    with pytest.raises(ValueError):
        entry(EXACT, {1, 2})
    with pytest.raises(ValueError):
        entry(SET, {1})
    with pytest.raises(ValueError):
        entry(UNKNOWN, {1})


# --- classification


@pytest.mark.parametrize(
    "kind, values, lo, hi, expected",
    [
        (EXACT, {4}, 4, 4, MATCH),
        (EXACT, {4}, 3, 5, OPEN),
        (EXACT, {4}, 5, 5, MISMATCH),
        (SET, {7, 9}, 7, 7, REFINE),
        (SET, {7, 9}, 7, 9, MATCH),
        (SET, {7, 9}, 11, 11, MISMATCH),
        (AT_MOST, {5}, 4, 4, REFINE),
        (AT_MOST, {5}, 4, 5, OPEN),
        (AT_MOST, {5}, 6, 6, MISMATCH),
        (AT_LEAST, {5}, 3, 4, MISMATCH),
        (AT_LEAST, {5}, 5, 6, OPEN),
        (UNKNOWN, (), 4, 4, REFINE),
        (UNKNOWN, (), 4, 6, OPEN),
    ],
)
def test_classify(kind, values, lo, hi, expected):
    assert classify(entry(kind, values), lo, hi) == expected


def test_full_bounds_run_has_no_mismatch():
    lines = check_paper()
    assert not [ln for ln in lines if ln.status == MISMATCH]
    # m_5(5) = 7 settles the published "7 or 9"
    (cell,) = [ln for ln in lines if ln.entry.coords == (5, 5) and ln.entry.table == "mk" and ln.Q == 0]
    assert cell.status == REFINE and cell.cell.lo == 7


def test_corrupted_fixture_is_caught():
    corrupt = [entry(EXACT, {5}, coords=(8, 5)), entry(EXACT, {4}, coords=(8, 5))]
    lines = check_paper([], corrupt)
    assert [ln.status for ln in lines] == [MISMATCH, MATCH]
    bad_mk = [entry(EXACT, {10}, table="mk", coords=(4, 4), q=15)]
    assert check_paper(bad_mk, [], q_values=(0,))[0].status == MISMATCH


# --- emission


def test_parse_range():
    assert list(parse_range("2..5")) == [2, 3, 4, 5]
    assert list(parse_range("7")) == [7]
    assert list(parse_range("5..4")) == []
    with pytest.raises(ValueError):
        parse_range("-1..3")
    with pytest.raises(ValueError):
        parse_range("a..b")


def test_srm_table_reproduces_definite_entries():
    cells = srm_cells(range(2, 13), range(2, 9), srm_evaluator(None, True))
    published = {e.coords: e for e in srm_table()}
    for c in cells:
        e = published[c.coords]
        if e.kind == EXACT:
            assert c.exact and {c.lo} == e.values


def test_mkb_table_matches_m3_family():
    cells = mkb_cells([3], range(15), mkb_evaluator(None, True))
    for c in cells:
        Q, R = divmod(c.coords[1], 3)
        assert c.exact and c.lo == 7 * Q + (0, 1, 4)[R]


def test_format_csv_and_markdown():
    cells = [Cell((3, 2), 2, 2, "x"), Cell((4, 2), 1, 2, "y")]
    csv_text = format_cells(cells, ("m", "p"), "csv")
    assert csv_text.splitlines() == ["m,p,value,lo,hi,provenance", "3,2,2,2,2,x", '4,2,"[1,2]",1,2,y']
    md = format_cells(cells, ("m", "p"), "markdown").splitlines()
    assert md[0] == "| m | p | value | lo | hi | provenance |" and len(md) == 4
    assert format_cells([], ("k", "b"), "csv") == "k,b,value,lo,hi,provenance\n"
    with pytest.raises(ValueError):
        format_cells(cells, ("m", "p"), "tsv")
