from __future__ import annotations

import pytest

from hlc.calculus import Prover
from hlc.fixtures import derivable_corpus, nonderivable_corpus


@pytest.fixture(scope="session")
def prover() -> Prover:
    return Prover()


@pytest.fixture(scope="session")
def corpus(prover):
    return derivable_corpus(prover)


@pytest.fixture(scope="session")
def bad_corpus(prover):
    return nonderivable_corpus(prover)
