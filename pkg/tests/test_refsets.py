import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EIGHTEEN_COUNTS, EIGHTEEN_PRINTED
from citerank.model import ApproachSpec, PaperRecord, validate_corpus
from citerank.refsets import aggregate, build_reference_sets, score_paper_set


def make_corpus(spec, horizon=2):
    """spec: list of (categories, yearly counts) or (categories, yearly, doc)."""
    papers = []
    for k, item in enumerate(spec):
        cats, yearly = item[0], item[1]
        doc = item[2] if len(item) > 2 else "article"
        papers.append(PaperRecord(f"p{k:04d}", doc, cats, yearly))
    return validate_corpus(papers, horizon)


def test_small_set_dropped_and_its_papers_excluded():
    corpus = make_corpus([(("X",), [1, 1])] * 120 + [(("Y",), [0, 2])] * 80)
    sets, report = build_reference_sets(corpus, 100)
    assert [(s.key, s.size) for s in sets] == [(("X", "article"), 120)]
    assert report.dropped_sets == ((("Y", "article"), 80),)
    assert len(report.dropped_papers) == 80
    assert report.dropped_ids == {f"p{k:04d}" for k in range(120, 200)}


def test_min_size_one_keeps_everything():
    corpus = make_corpus([(("X",), [1, 1]), (("Y", "Z"), [0, 0]), (("X",), [2, 0], "review")])
    sets, report = build_reference_sets(corpus, 1)
    assert [s.key for s in sets] == [("X", "article"), ("X", "review"), ("Y", "article"), ("Z", "article")]
    assert report.dropped_sets == () and report.dropped_papers == ()


def test_paper_keeps_only_surviving_set():
    corpus = make_corpus([(("X", "Y"), [3, 0])] + [(("X",), [1, 0])] * 150 + [(("Y",), [1, 0])] * 10)
    sets, report = build_reference_sets(corpus)
    assert [s.key for s in sets] == [("X", "article")]
    assert "p0000" in sets[0].member_ids
    assert "p0000" not in report.dropped_ids


def test_invalid_min_size():
    with pytest.raises(ValueError):
        build_reference_sets(make_corpus([(("X",), [0, 0])]), 0)


@given(st.lists(st.tuples(st.sets(st.sampled_from("ABCD"), min_size=1, max_size=3), st.sampled_from(["article", "review"])), min_size=1, max_size=60), st.integers(1, 12))
def test_partition_properties(papers, min_size):
    corpus = make_corpus([(tuple(sorted(c)), [0, 1], d) for c, d in papers])
    sets, report = build_reference_sets(corpus, min_size)
    again = build_reference_sets(corpus, min_size)
    assert (sets, report) == again
    covered = set()
    for s in sets:
        assert s.size >= min_size
        for pid in s.member_ids:
            p = corpus.get(pid)
            assert s.category in p.subject_categories and s.doc_type == p.doc_type
            covered.add(pid)
    all_ids = {p.paper_id for p in corpus}
    assert covered | report.dropped_ids == all_ids
    assert not covered & report.dropped_ids


def test_score_set_p100_three_members():
    corpus = make_corpus([(("X",), [1, 0]), (("X",), [5, 0]), (("X",), [3, 1])])
    (refset,), _ = build_reference_sets(corpus, 1)
    assert score_paper_set(refset, corpus, ApproachSpec("p100"), 1) == {"p0000": 0, "p0001": 100, "p0002": 50}
    assert score_paper_set(refset, corpus, ApproachSpec("p100"), 2) == {"p0000": 0, "p0001": 100, "p0002": 50}


@pytest.mark.parametrize("approach", ["p_low", "p_inc", "hazen", "incites", "scimago", "p100"])
def test_score_set_all_uncited_year(approach):
    corpus = make_corpus([(("X",), [0, k]) for k in range(4)])
    (refset,), _ = build_reference_sets(corpus, 1)
    assert set(score_paper_set(refset, corpus, ApproachSpec(approach), 1).values()) == {0.0}


def test_score_set_eighteen_papers():
    corpus = make_corpus([(("X",), [c]) for c in EIGHTEEN_COUNTS], horizon=1)
    (refset,), _ = build_reference_sets(corpus, 1)
    got = score_paper_set(refset, corpus, ApproachSpec("p100"), 1)
    for k, c in enumerate(EIGHTEEN_COUNTS):
        assert got[f"p{k:04d}"] == pytest.approx(EIGHTEEN_PRINTED[c], abs=0.35)


def test_score_set_year_range():
    corpus = make_corpus([(("X",), [0, 1])])
    (refset,), _ = build_reference_sets(corpus, 1)
    with pytest.raises(ValueError):
        score_paper_set(refset, corpus, ApproachSpec("hazen"), 3)


def test_score_set_cwts_returns_probabilities():
    corpus = make_corpus([(("X",), [c, 0]) for c in (9, 7, 7, 7, 3, 2, 1, 0, 0, 0)])
    (refset,), _ = build_reference_sets(corpus, 1)
    got = score_paper_set(refset, corpus, ApproachSpec("cwts", x=20), 1)
    assert sum(got.values()) == pytest.approx(2.0)


@pytest.mark.parametrize(
    "approach,values,expected",
    [("hazen", [40, 60], 50), ("incites", [40, 60], 60), ("cwts", [0.2, 0.6], 0.4), ("p100", [10, 20, 60], 30), ("p_inc", [30], 30)],
)
def test_aggregate_examples(approach, values, expected):
    assert aggregate(values, approach) == pytest.approx(expected)


def test_aggregate_empty():
    with pytest.raises(ValueError):
        aggregate([], "hazen")


@given(st.lists(st.floats(0, 100), min_size=1, max_size=8))
def test_incites_best_of_dominates_average(values):
    assert aggregate(values, "incites") >= aggregate(values, "hazen") - 1e-12
