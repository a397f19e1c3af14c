from __future__ import annotations

import pytest

from itaxotools.ntru_witt.anf import AnfPoly, parse_anf
from itaxotools.ntru_witt.attack import generate_system
from itaxotools.ntru_witt.ring import NtruParams, keygen


def anf(text: str) -> AnfPoly:
    return parse_anf(text)


@pytest.fixture(scope="session")
def keys7():
    return keygen(NtruParams(7, 128), 1)


@pytest.fixture(scope="session")
def keys11():
    return keygen(NtruParams(11, 128), 2)


@pytest.fixture(scope="session")
def system7(keys7):
    return generate_system(keys7, 4)


@pytest.fixture(scope="session")
def system11(keys11):
    return generate_system(keys11, 4)
