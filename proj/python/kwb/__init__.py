"""Exact algebraic K-theory workbench.

Thin convenience layer over the _kwb extension: the report-producing calls
return JSON strings from C++; here they are decoded to dictionaries.
"""

import json as _json

from _kwb import (  # noqa: F401
    EngineError,
    FgAbGroup,
    OracleFileError,
    SourceGap,
    certify_sk1,
    classify_ring,
    k0,
    k1,
    kernel_cokernel,
    oracle_export,
    oracle_validate,
    smith_normal_form,
)

import _kwb as _raw


def _decoded(name):
    fn = getattr(_raw, name)

    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = name
    wrapper.__doc__ = fn.__doc__
    return wrapper


nk = _decoded("nk")
fundamental_sequence = _decoded("fundamental_sequence")
bhs_check = _decoded("bhs_check")
contracted_check = _decoded("contracted_check")
negative_k = _decoded("negative_k")
shadow_tower = _decoded("shadow_tower")
kh_groups = _decoded("kh_groups")

__all__ = [
    "EngineError",
    "FgAbGroup",
    "OracleFileError",
    "SourceGap",
    "bhs_check",
    "certify_sk1",
    "classify_ring",
    "contracted_check",
    "fundamental_sequence",
    "k0",
    "k1",
    "kernel_cokernel",
    "kh_groups",
    "negative_k",
    "nk",
    "oracle_export",
    "oracle_validate",
    "shadow_tower",
    "smith_normal_form",
]
