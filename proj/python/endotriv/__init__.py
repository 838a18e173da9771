"""Endotrivial-module calculator: exact stable module arithmetic over small
finite fields, T(G) for finite groups of supported shape, and the
amalgam/HNN calculators for one-edge graphs of finite groups.

The heavy lifting happens in the C++ extension ``endotriv._core``; this
wrapper turns its JSON-string reports into dictionaries.
"""

import json as _json

from ._core import (  # noqa: F401
    Field,
    Group,
    Module,
    ValidationError,
    ext_hat,
    is_endotrivial,
    is_projective,
    norm_rank,
    omega,
    omega_order,
    snf,
    stable_iso,
    strip,
)
from . import _core as _c

__all__ = [
    "Field", "Group", "Module", "ValidationError",
    "strip", "norm_rank", "omega", "omega_order", "is_projective",
    "is_endotrivial", "stable_iso", "ext_hat", "snf",
    "t_group", "amalgam", "hnn", "components", "inflation_map",
    "load_group", "load_module",
]


def _as_spec(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def load_group(path):
    with open(path) as fh:
        return Group.from_json(fh.read())


def load_module(path):
    with open(path) as fh:
        return Module.from_json(fh.read())


def t_group(group, field, extras=()):
    """T(G) report as a dict (value, completeness, generators, evidence)."""
    return _json.loads(_c.t_group(group, field, list(extras)))


def amalgam(spec, field=None):
    """T of an amalgamated free product from a spec dict or JSON string."""
    return _json.loads(_c.amalgam(_as_spec(spec), field))


def hnn(spec, field=None):
    """T of an HNN extension from a spec dict or JSON string."""
    return _json.loads(_c.hnn(_as_spec(spec), field))


def components(spec, field=None):
    """p-subgroup poset components of a one-edge graph of groups."""
    return _json.loads(_c.components(_as_spec(spec), field))


def inflation_map(spec, field=None):
    """Induced map T(Q) -> T(G) along a quotient of an amalgam."""
    return _json.loads(_c.inflation_map(_as_spec(spec), field))
