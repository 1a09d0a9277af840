"""The self-check battery."""
import pytest

from cosetgame.verify import CHECKS, run_checks


def test_all_checks_pass_at_m1():
    results = run_checks(1)
    assert len(results) == len(CHECKS)
    for r in results:
        assert r.passed, f"{r.name}: {r.detail}"


def test_name_filter():
    results = run_checks(2, names=["bell-table", "qvandermonde"])
    assert sorted(r.name for r in results) == ["bell-table", "qvandermonde"]
    assert all(r.passed for r in results)


def test_check_names_are_unique():
    names = [name for name, _ in CHECKS]
    assert len(names) == len(set(names))


def test_out_of_range_m_rejected():
    with pytest.raises(ValueError):
        run_checks(0)
    with pytest.raises(ValueError):
        run_checks(4)
