import pytest

from viewflux import (
    UniverseConfig,
    instance,
    make_relation,
    with_default_labels,
)


@pytest.fixture(scope="session")
def cfg0():
    return UniverseConfig(domain=frozenset({"a", "b"}), k_max=1)


@pytest.fixture(scope="session")
def cfg_single():
    return UniverseConfig(domain=frozenset({"a"}), k_max=1)


@pytest.fixture(scope="session")
def cfg2():
    return UniverseConfig(domain=frozenset({"a", "b"}), k_max=2)


@pytest.fixture(scope="session")
def ra():
    return make_relation(1, {("a",)})


@pytest.fixture(scope="session")
def rb():
    return make_relation(1, {("b",)})


@pytest.fixture(scope="session")
def rab():
    return make_relation(1, {("a",), ("b",)})


@pytest.fixture(scope="session")
def pa(ra):
    return with_default_labels(instance(ra))


@pytest.fixture(scope="session")
def pb(rb):
    return with_default_labels(instance(rb))


@pytest.fixture(scope="session")
def pab(ra, rb):
    return with_default_labels(instance(ra, rb))


@pytest.fixture(scope="session")
def all_instances(cfg0):
    from viewflux import subset_instances

    return list(subset_instances(cfg0, 4))
