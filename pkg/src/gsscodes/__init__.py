"""Subfield, subspace and generalized subspace subcodes of Reed-Solomon and GRS codes."""

from .blocks import BlockCode, MonomialIsometry, apply_isometry, q_ary_image
from .codes import LinearCode, dual, puncture, shorten, subfield_subcode, trace_code
from .crypto import CryptoParams, decrypt, encrypt, keygen, keysize_systematic, workfactor_log2
from .fields import FieldTower, FiniteField
from .gss import (
    NotInSubspace,
    SubspaceFamily,
    gss_algorithm1,
    gss_algorithm2,
    gss_algorithm3,
    gss_decode,
    gss_w,
    s_u,
    subspace_subcode,
)
from .rng import make_rng
from .rs import DecodingFailure, GrsSpec, alternant_code

__all__ = [
    "BlockCode",
    "CryptoParams",
    "DecodingFailure",
    "FieldTower",
    "FiniteField",
    "GrsSpec",
    "LinearCode",
    "MonomialIsometry",
    "NotInSubspace",
    "SubspaceFamily",
    "alternant_code",
    "apply_isometry",
    "decrypt",
    "dual",
    "encrypt",
    "gss_algorithm1",
    "gss_algorithm2",
    "gss_algorithm3",
    "gss_decode",
    "gss_w",
    "keygen",
    "keysize_systematic",
    "make_rng",
    "puncture",
    "q_ary_image",
    "s_u",
    "shorten",
    "subfield_subcode",
    "subspace_subcode",
    "trace_code",
    "workfactor_log2",
]
