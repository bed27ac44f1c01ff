"""Built-in fusion data: finite groups (optionally twisted) and small anyon fixtures."""
from __future__ import annotations

import json
from importlib import resources

from ..fusiondata import FusionData, FusionDataError, load_fusion, validate_all
from .groups import *  # noqa: F401,F403
from .groups import GROUPS, cyclic_group, group, symmetric_group, vec_g, z3_cocycle
from .oracle import OracleDiff, diff_against_oracle, dictionary, group_oracle, oracle_label

FIXTURES = ("fibonacci", "ising", "vec_z3_twisted", "rep_s3")
BUILTINS = FIXTURES + ("vec_z2", "vec_z3", "vec_z4", "vec_s3")


def _data_document(name: str) -> dict:
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def fixture(name: str) -> FusionData:
    """Load a shipped fixture and validate it (pentagon, duality, fusion ring)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    if name == "vec_z3_twisted":
        fd = vec_g(cyclic_group(3), z3_cocycle())
    else:
        fd = load_fusion(_data_document(name))
    for report in validate_all(fd):
        if not report.ok:
            raise FusionDataError(f"fixture {name}: {report.summary()}")
    return fd


def builtin(name: str) -> FusionData:
    """A fixture or one of the untwisted groups ``vec_z2``, ``vec_z3``, ``vec_z4``, ``vec_s3``."""
    if name in FIXTURES:
        return fixture(name)
    if name.startswith("vec_") and name[4:].upper() in GROUPS:
        return vec_g(group(name[4:].upper()))
    raise KeyError(f"unknown builtin {name!r}; available: {', '.join(BUILTINS)}")
