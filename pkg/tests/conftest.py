import itertools

import pytest

SPINS = ("1/2", "1")
PAIRS = list(itertools.product(SPINS, repeat=2))
TRIPLES = list(itertools.product(SPINS, repeat=3))


def assert_all_pass(report):
    bad = [(r.identity_id, r.spins, r.witness) for r in report.results if r.status == "fail"]
    assert not bad, bad


@pytest.fixture
def all_pass():
    return assert_all_pass
