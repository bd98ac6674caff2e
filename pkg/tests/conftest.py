import pytest

from src.core.colors import ColorSet
from src.core.groups import named_group
from src.core.operads import endomorphism_operad


@pytest.fixture
def one_color():
    """One color '*' with the trivial group"""
    return ColorSet.trivial(['*'])


@pytest.fixture
def z2_point():
    """One color '*' fixed by Z2"""
    return ColorSet.trivial(['*'], group=named_group('Z2'))


@pytest.fixture
def sign_colors():
    """Z2 swapping a and -a and fixing b"""
    return ColorSet(named_group('Z2'), ['a', '-a', 'b'], [[0, 1, 2], [1, 0, 2]])


@pytest.fixture
def end2():
    return endomorphism_operad(2, 2)
