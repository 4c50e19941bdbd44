"""Bundled example matrices."""

from importlib import resources

from ..gcm import GeneralizedCartanMatrix, parse_gcm

NAMES = (
    "a2",
    "b2",
    "g2",
    "a1xa1",
    "affine_a1",
    "affine_a2",
    "hyper_rank2",
    "hyper_rank3",
    "ext4",
    "e9",
    "e10",
)


def load(name: str) -> GeneralizedCartanMatrix:
    text = resources.files(__package__).joinpath(f"{name}.gcm").read_text()
    return parse_gcm(text)
