"""Centric radical subgroups built from quaternion pieces in the three blocks of K.

Per block: R = <a^2, w> (generalised quaternion of order 2^(l+3)),
Q = <i, w> and Q' = <i, a^2 w> = a Q a^-1, the two classes of Q8 in R.
"""

from __future__ import annotations

from itertools import product

from .kmodel import GAMMA, IDP, TAU, KModel, _pcomp

PERMS_F = (IDP, TAU, GAMMA, _pcomp(TAU, GAMMA), _pcomp(GAMMA, TAU), _pcomp(TAU, _pcomp(GAMMA, TAU)))
PERMS_H = (IDP, TAU)

# row name -> (block pieces, extra generator)
ROWS = {
    "S": ("RRR", "c+tau"),
    "CS_U": ("RRR", "c"),
    "R1R2Q3t": ("RRQ", "tau"),
    "Q1R2R3": ("QRR", None),
    "Q1Q2R3": ("QQR", None),
    "Q1R2Q3": ("QRQ", None),
    "Q1Q2pR3": ("QqR", None),
    "Q1R2Q3p": ("QRq", None),
    "Q1Q2R3t": ("QQR", "tau"),
    "Q1Q2pR3tp": ("QqR", "taup"),
    "Q1Q2Q3": ("QQQ", None),
    "Q1pQ2Q3": ("qQQ", None),
    "Q1Q2Q3p": ("QQq", None),
    "Q1Q2Q3t": ("QQQ", "tau"),
    "Q1Q2Q3pt": ("QQq", "tau"),
}


def piece(K: KModel, kind: str):
    B = K.B
    a2 = B.power(K.a, 2)
    if kind == "R":
        return [a2, K.w]
    if kind == "Q":
        return [K.i, K.w]
    if kind == "q":
        return [K.i, B.mul(a2, K.w)]
    raise ValueError(kind)


def tau_prime(K: KModel):
    B = K.B
    ai = B.inv(K.a)
    return K.diag(ai, K.a, K.a, TAU)


def generators(K: KModel, name: str):
    pieces, extra = ROWS[name]
    gens = [K.block(j, m) for j, kind in enumerate(pieces) for m in piece(K, kind)]
    if extra:
        for e in extra.split("+"):
            gens.append({"c": K.c, "tau": K.tau, "taup": tau_prime(K)}[e])
    return gens


def normalizer_candidates(K: KModel, perms):
    """Elements of K tried as normalizers: block-local moves and twisted block permutations."""
    B = K.B
    a, ai = K.a, B.inv(K.a)
    yp = B.mul(B.mul(a, K.y), ai)
    odd = [a, ai]
    # at l = 0, t = a is odd and must not be mixed with even entries
    even = [m for m in (B.I, K.t, K.y, yp, K.w, B.power(a, 2)) if m not in odd]
    out = []
    for p in perms:
        for m in product(even, repeat=3):
            out.append(K.diag(m[0], m[1], m[2], p))
        for m in product(odd, repeat=3):
            out.append(K.diag(m[0], m[1], m[2], p))
    return out


def full_blocks(name: str, l: int = 1):
    # at l = 0 every piece is Q8
    kinds = "RQq" if l == 0 else "Qq"
    return tuple(j for j, kind in enumerate(ROWS[name][0]) if kind in kinds)
