import itertools
from fractions import Fraction

import pytest

from hypharm import builders, groups


BUILTIN_GROUPS = ("z2", "z4", "s3", "d4", "q8", "a4")


@pytest.fixture(scope="session")
def builtin_groups():
    return {name: groups.get_group(name) for name in BUILTIN_GROUPS}


@pytest.fixture(scope="session")
def finite_tables(builtin_groups):
    """Conj(G) and Irr(G) for every built-in group."""
    out = {}
    for name, G in builtin_groups.items():
        out[f"conj_{name}"] = builders.conjugacy_hypergroup(G)
        out[f"irr_{name}"] = builders.irr_hypergroup(G)
    return out


def brute_force_class_products(G):
    """Independent oracle: class products counted straight off the Cayley table."""
    classes = G.conjugacy_classes()
    cls_of = G.class_of()
    k = len(classes)
    rows = {}
    for i, j in itertools.product(range(k), repeat=2):
        counts = [0] * k
        for a in classes[i]:
            for b in classes[j]:
                counts[cls_of[G.mul(a, b)]] += 1
        denom = len(classes[i]) * len(classes[j])
        rows[(i, j)] = tuple(Fraction(c, denom) for c in counts)
    return rows
