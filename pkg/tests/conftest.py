import pathlib

import pytest

from lcmlattice.monomial import MonomialIdeal

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def ideal(text):
    """Compact ideal text: single-letter variables written side by side."""
    return MonomialIdeal.parse(text, compact=True)


@pytest.fixture
def fixtures():
    return FIXTURES
