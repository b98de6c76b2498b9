from __future__ import annotations

from fractions import Fraction

import pytest

from forts.graph import CapacityExceeded
from forts.survey import (
    MissingSurveyData,
    RunConfig,
    SurveyRow,
    format_fraction,
    rows_from_csv,
    rows_to_csv,
    run_survey,
    strip_timing,
    survey_rows_for,
    table1,
    table2,
    table3,
)
from forts.treegen import decode_graph6, is_isomorphic_tree, star, write_graph6_file, generate_free_trees


@pytest.fixture(scope="module")
def rows():
    return run_survey(RunConfig(n_min=1, n_max=13, workers=1))


def test_counts_and_maxima(rows):
    assert [r.tree_count for r in rows] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301]
    assert rows[3].max_forts == 3
    for r in rows[4:]:
        assert r.max_forts == (r.n - 1) * (r.n - 2) // 2
        assert len(r.argmax_codes) == 1
        assert is_isomorphic_tree(decode_graph6(r.argmax_codes[0]), star(r.n))


def test_exact_mean(rows):
    r10 = rows[9]
    assert r10.mean_forts == Fraction(1092, 106)
    assert format_fraction(r10.mean_forts, 4) == "10.3019"
    assert r10.mean_forts * r10.tree_count == r10.fort_sum


def test_rounding_is_correct():
    assert format_fraction(Fraction(1, 8), 2) == "0.12"
    assert format_fraction(Fraction(3, 8), 2) == "0.38"
    assert format_fraction(Fraction(2, 3), 4) == "0.6667"
    assert format_fraction(Fraction(-1, 3), 3) == "-0.333"


def test_csv_round_trip(rows):
    text = rows_to_csv(rows)
    assert text.splitlines()[0].startswith("n,tree_count,max_forts")
    back = rows_from_csv(text)
    assert back == rows
    assert rows_to_csv(back) == text


def test_worker_count_does_not_change_output():
    a = run_survey(RunConfig(n_min=8, n_max=14, workers=1, chunk_size=97))
    b = run_survey(RunConfig(n_min=8, n_max=14, workers=3, chunk_size=97))
    assert strip_timing(rows_to_csv(a)) == strip_timing(rows_to_csv(b))


def test_oracle_sample_runs():
    rows = run_survey(RunConfig(n_min=6, n_max=9, workers=1, oracle_sample=0.5, seed=3))
    assert rows[-1].tree_count == 47


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(workers=0)
    with pytest.raises(ValueError):
        RunConfig(oracle_sample=1.5)
    with pytest.raises(CapacityExceeded):
        RunConfig(n_max=17)
    with pytest.raises(CapacityExceeded):
        RunConfig(n_max=25, allow_long=True)
    RunConfig(n_max=17, allow_long=True)


def test_input_file_survey(tmp_path):
    f = tmp_path / "trees.g6"
    write_graph6_file(f, list(generate_free_trees(9)) + list(generate_free_trees(10)))
    rows = run_survey(RunConfig(input_path=str(f), workers=1))
    assert [(r.n, r.tree_count, r.fort_sum) for r in rows] == [(9, 47, 414), (10, 106, 1092)]


def test_tables(rows):
    t1 = table1(rows)
    assert t1[3] == (4, 3, "S_4", 4, "E_4")
    assert t1[12] == (13, 66, "S_13", 66, "S_13")
    t2 = table2(rows, 13)
    assert t2[1] == (2, 1, 2, 1, False)
    assert all(row[4] for row in t2 if row[0] != 2)
    t3 = table3(rows[9:])
    assert [row[2] for row in t3] == ["10.3019", "11.9745", "13.7731", "15.8040"]


def test_table2_without_survey():
    t2 = table2(None, 20)
    assert t2[16][3] == 8840 and t2[19][1:4] == (213, 213, 28690)


def test_missing_data(rows):
    with pytest.raises(MissingSurveyData):
        table1(rows[2:])
    with pytest.raises(MissingSurveyData):
        table3([])
    with pytest.raises(MissingSurveyData):
        table2(None, 21)


def test_survey_rows_for_reuses_cache(rows):
    fake = SurveyRow(5, 3, 999, 11, ("D??",))
    got = survey_rows_for(6, RunConfig(workers=1), [fake])
    assert got[4] is fake and got[5].tree_count == 6
