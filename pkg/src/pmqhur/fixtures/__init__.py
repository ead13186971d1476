"""Bundled PMQ, group and pair fixtures in the JSON interchange format."""

from importlib import resources
from pathlib import Path

from ..pmq import PairSpec, PmqSpec

PMQS = ("triv", "free1", "trans3", "s3norm", "z2", "free1_broken")
PAIRS = ("pair_triv", "pair_free1_trivial", "pair_trans3_s3", "pair_s3norm_s3")


def path(name: str) -> Path:
    return Path(str(resources.files(__name__) / f"{name}.json"))


def pmq(name: str) -> PmqSpec:
    return PmqSpec.load(path(name))


def pair(name: str) -> PairSpec:
    return PairSpec.load(path(name))
