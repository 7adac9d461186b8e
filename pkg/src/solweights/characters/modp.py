"""Linear algebra and polynomial root finding over a prime field F_P.

P is kept below 2^27 so that numpy int64 dot products of length <= 512 do not
overflow.
"""

from __future__ import annotations

import random

import numpy as np
from sympy import isprime

P_LIMIT = 1 << 27


class PrimeSearchFailed(RuntimeError):
    pass


def choose_prime(modulus: int, lower: int) -> int:
    """Smallest prime P > lower with P = 1 (mod modulus)."""
    start = lower // modulus + 1
    for t in range(start, start + 10 ** 7):
        p = t * modulus + 1
        if p >= P_LIMIT:
            break
        if isprime(p):
            return p
    raise PrimeSearchFailed(f"no prime = 1 mod {modulus} above {lower} below 2^27")


def root_of_unity(P: int, m: int) -> int:
    """A primitive m-th root of unity mod P (m | P - 1), chosen deterministically."""
    from sympy import primitive_root
    g = primitive_root(P)
    return pow(g, (P - 1) // m, P)


def nullspace(A: np.ndarray, P: int) -> np.ndarray:
    """Basis of the right nullspace of A mod P, as columns."""
    A = A.copy() % P
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, P)) % P
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % P
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-A[i, f]) % P
    return basis


def column_echelon(B: np.ndarray, P: int):
    """Column-reduce B so that a set of pivot rows carries the identity.

    Returns (B', pivot_rows).
    """
    Bt = B.T.copy() % P
    n, k = Bt.shape
    piv = []
    r = 0
    for c in range(k):
        if r >= n:
            break
        nz = np.nonzero(Bt[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            Bt[[r, p]] = Bt[[p, r]]
        Bt[r] = (Bt[r] * pow(int(Bt[r, c]), -1, P)) % P
        col = Bt[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            Bt[nzr] = (Bt[nzr] - np.outer(col[nzr], Bt[r])) % P
        piv.append(c)
        r += 1
    return Bt[:r].T.copy(), piv


# polynomials: lists/arrays of coefficients, lowest degree first --------------

def _trim(a):
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def poly_mod(a, f, P):
    a = np.array(a, dtype=np.int64) % P
    f = _trim(f)
    df = len(f) - 1
    inv_lead = pow(int(f[-1]), -1, P)
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d]
        if c:
            c = (c * inv_lead) % P
            a[d - df:d + 1] = (a[d - df:d + 1] - c * f) % P
    return _trim(a[:df])


def poly_mulmod(a, b, f, P):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    # split to keep products below 2^63
    lo_a, hi_a = a % (1 << 14), a >> 14
    prod = (np.convolve(lo_a, b) % P + ((np.convolve(hi_a, b) % P) * (1 << 14)) % P) % P
    return poly_mod(prod, f, P)


def poly_gcd(a, b, P):
    a, b = _trim(np.asarray(a) % P), _trim(np.asarray(b) % P)
    while len(b):
        a, b = b, poly_mod(a, b, P)
    if len(a):
        a = (a * pow(int(a[-1]), -1, P)) % P
    return a


def poly_powmod(base, e, f, P):
    result = np.array([1], dtype=np.int64)
    base = poly_mod(base, f, P)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, P)
        base = poly_mulmod(base, base, f, P)
        e >>= 1
    return result


def poly_div(a, b, P):
    a = np.array(a, dtype=np.int64) % P
    b = _trim(b)
    db = len(b) - 1
    q = np.zeros(max(len(a) - db, 1), dtype=np.int64)
    inv_lead = pow(int(b[-1]), -1, P)
    for d in range(len(a) - 1, db - 1, -1):
        c = (a[d] * inv_lead) % P
        q[d - db] = c
        if c:
            a[d - db:d + 1] = (a[d - db:d + 1] - c * b) % P
    return q


def roots_squarefree_split(f, P, rng: random.Random):
    """All roots of f, assuming f splits over F_P into distinct linear factors."""
    f = _trim(np.asarray(f) % P)
    deg = len(f) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [int((-f[0] * pow(int(f[1]), -1, P)) % P)]
    while True:
        a = rng.randrange(P)
        h = poly_powmod(np.array([a, 1], dtype=np.int64), (P - 1) // 2, f, P)
        h = h.copy() if len(h) else np.zeros(1, dtype=np.int64)
        h[0] = (h[0] - 1) % P
        g = poly_gcd(f, h, P)
        dg = len(g) - 1
        if 0 < dg < deg:
            return (roots_squarefree_split(g, P, rng)
                    + roots_squarefree_split(poly_div(f, g, P), P, rng))


def minimal_polynomial(A: np.ndarray, P: int, rng: random.Random):
    """Minimal polynomial of v under A for a random v (Berlekamp–Massey)."""
    n = A.shape[0]
    v = np.array([rng.randrange(P) for _ in range(n)], dtype=np.int64)
    u = np.array([rng.randrange(P) for _ in range(n)], dtype=np.int64)
    seq = []
    x = v
    for _ in range(2 * n):
        seq.append(int(u @ x % P))
        x = matvec(A, x, P)
    return berlekamp_massey(seq, P)


def matvec(A, x, P):
    lo, hi = x % (1 << 14), x >> 14
    return ((A @ lo) % P + ((A @ hi) % P) * (1 << 14) % P) % P


def matmul(A, B, P):
    lo, hi = B % (1 << 14), B >> 14
    return ((A @ lo) % P + ((A @ hi) % P) * (1 << 14) % P) % P


def berlekamp_massey(s, P):
    C = [1]
    B = [1]
    L, m, b = 0, 1, 1
    for i in range(len(s)):
        d = s[i]
        for j in range(1, L + 1):
            d = (d + C[j] * s[i - j]) % P
        if d == 0:
            m += 1
            continue
        coef = d * pow(b, -1, P) % P
        T = C[:]
        if len(C) < len(B) + m:
            C += [0] * (len(B) + m - len(C))
        for j in range(len(B)):
            C[j + m] = (C[j + m] - coef * B[j]) % P
        if 2 * L <= i:
            L, B, b, m = i + 1 - L, T, d, 1
        else:
            m += 1
    C = C[: L + 1] + [0] * (L + 1 - len(C))
    # connection polynomial -> minimal polynomial (reverse)
    return np.array(C[::-1], dtype=np.int64) % P
