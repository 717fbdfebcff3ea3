import pytest

from teamlogic.checks import SUITES, default_model, run_all, run_suite


def test_suite_registry_names():
    assert set(SUITES) == {
        "flatness", "union", "lem", "downward", "locality", "empty-team",
        "fo-negation", "atom-translation", "atom-complement",
        "so-correspondence", "definability", "team-constructions"}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_each_suite_passes_small_run(name):
    res = run_suite(name, seed=11, runs=8)
    assert res.ok, res.summary()
    assert res.name == name
    assert res.failures == []
    assert "PASS" in res.summary()


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_suite("nonesuch", seed=0, runs=1)


def test_run_all_covers_every_suite():
    results = run_all(seed=3, runs=2)
    assert {r.name for r in results} == set(SUITES)
    assert all(r.ok for r in results)


def test_runs_are_reproducible():
    a = run_suite("flatness", seed=9, runs=5)
    b = run_suite("flatness", seed=9, runs=5)
    assert a.runs == b.runs and a.failures == b.failures


def test_custom_model_is_used():
    m = default_model()
    res = run_suite("downward", seed=1, runs=3, model=m)
    assert res.ok
