import pytest

from dominantk.data import load


@pytest.fixture(scope="session")
def matrices():
    return {name: load(name) for name in (
        "a2", "b2", "g2", "a1xa1", "affine_a1", "affine_a2",
        "hyper_rank2", "hyper_rank3", "ext4", "e9", "e10",
    )}
