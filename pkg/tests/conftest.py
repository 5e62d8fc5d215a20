import pytest

from bredon.complexes import BUNDLED, load_bundled


def bundled_groups(max_order: int = 24):
    """Distinct (by multiplication table) stabilizer groups of the bundled datasets."""
    seen, out = set(), []
    for name in BUNDLED:
        X = load_bundled(name)
        for gname, G in X.groups.items():
            if G.order <= max_order and G.table_key not in seen:
                seen.add(G.table_key)
                out.append((f"{name}:{gname}", G))
    return out


@pytest.fixture(scope="session")
def sl2z():
    return load_bundled("sl2z")


@pytest.fixture(scope="session")
def sl3z():
    return load_bundled("sl3z")
