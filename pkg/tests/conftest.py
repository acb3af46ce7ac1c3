"""
Shared fixtures: catalog algebras and stateless engines.
"""

from typing import Dict, List, Tuple

import pytest

from catalog import Catalog
from core.algebra_engine import AlgebraEngine
from core.field_linalg import random_invertible
from core.homalg import HomologicalAlgebra
from core.module_builder import ModuleBuilder


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size grids over the catalog (deselect with -m \"not slow\")")


@pytest.fixture(scope="session")
def catalog():
    return Catalog()


@pytest.fixture(scope="session")
def a2(catalog):
    return catalog.load("a2")


@pytest.fixture(scope="session")
def kronecker(catalog):
    return catalog.load("kronecker")


@pytest.fixture(scope="session")
def a3_relation(catalog):
    return catalog.load("a3-relation")


@pytest.fixture(scope="session")
def kronecker_tail(catalog):
    return catalog.load("kronecker-tail")


@pytest.fixture(scope="session")
def string_fork(catalog):
    return catalog.load("string-fork")


@pytest.fixture(scope="session")
def ringel5(catalog):
    return catalog.load("ringel5")


@pytest.fixture
def builder():
    return ModuleBuilder()


@pytest.fixture
def homalg():
    return HomologicalAlgebra()


@pytest.fixture
def engine():
    return AlgebraEngine()


@pytest.fixture(scope="session")
def random_module():
    """
    Factory for seeded random modules: a direct sum of string modules in a
    random basis.
    """
    builder = ModuleBuilder()
    strings: Dict[Tuple[str, int], List] = {}

    def make(algebra, rng, prime=5, max_summands=3, max_dim=3):
        key = (algebra.name, max_dim)
        if key not in strings:
            strings[key] = builder.enumerate_strings(algebra, max_dim)
        count = int(rng.integers(1, max_summands + 1))
        picks = [strings[key][int(i)] for i in rng.integers(0, len(strings[key]), size=count)]
        module = builder.direct_sum([builder.string_module(algebra, start, walk, prime)
                                     for start, walk in picks])
        g = {v: random_invertible(rng, module.dim(v), prime) for v in algebra.vertices if module.dim(v)}
        return builder.base_change(module, g)

    return make
