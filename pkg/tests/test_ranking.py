import pytest

from actualcause import INF, RankingError, RankingFunction, load_ranking, parse_ranking
from actualcause.ranking import format_ranking, parse_rank


def test_parse_rank():
    assert parse_rank("5") == 5
    assert parse_rank("inf") == INF
    for bad in ("-1", "x", "1.5"):
        with pytest.raises(RankingError):
            parse_rank(bad)


def test_world_rank_is_min_over_matching_rows():
    r = RankingFunction((({"A": 1}, 3), ({"B": 1}, 1)))
    assert r.rank({"A": "1", "B": "1"}) == 1
    assert r.rank({"A": "1", "B": "0"}) == 3
    assert r.rank({"A": "0", "B": "0"}) == INF


def test_actual_world_is_rank_zero():
    r = RankingFunction((({"A": 1}, 3),))
    world = {"A": "1"}
    assert r.rank(world, actual=world) == 0


def test_set_rank():
    r = RankingFunction((({"A": 1}, 3),))
    assert r.rank_of_set([]) == INF
    assert r.rank_of_set([{"A": "0"}, {"A": "1"}]) == 3


def test_bad_rows():
    with pytest.raises(RankingError):
        RankingFunction((({"A": 1}, -2),))
    with pytest.raises(RankingError):
        parse_ranking("A=1 3\n")


def test_check_against_model():
    from actualcause.corpus import load_example

    entry = load_example("finger_loanshark")
    entry.ranking.check(entry.model)
    with pytest.raises(RankingError):
        RankingFunction((({"U": "u10"}, 1),)).check(entry.model)
    with pytest.raises(RankingError):
        RankingFunction((({"LL": "7"}, 1),)).check(entry.model)


def test_file_round_trip(tmp_path):
    text = "# fanciful worlds\nLL=0\t0\nLL=1,FS=0\tinf\n"
    r = parse_ranking(text)
    path = tmp_path / "r.tsv"
    path.write_text(format_ranking(r))
    assert load_ranking(path) == r
