"""Compiled normal-form kernels.

Every kernel takes the ring parameters as plain arrays:

    s, d, p, pr, high_p    nilpotency bound, deg g, p, p^r, first Y-degree killed by p
    g                      g(X) minus its leading term, length d
    gt, gv                 g-relation exponents and coefficient rows (m, d)
    pt, pu                 p-relation exponents and coefficient rows (n, d)

Work arrays are (N, s + 1, W) int64 batches of raw coefficients.  The
reduction is one loop nest on purpose: calls between compiled functions that
pass arrays carry a reference-count cost that dominates the arithmetic on
rings this small.
"""

import numpy as np
from numba import njit

MODE_R2 = 0
MODE_R3 = 1
MODE_LINEAR = 2


@njit(cache=True, error_model="numpy")
def reduce_many(w, s, d, p, pr, high_p, g, gt, gv, pt, pu, mode):
    """In-place reduction of each w[n]; the normal form sits in w[n, :, :d]."""
    N = w.shape[0]
    W = w.shape[2]
    n_p = pt.shape[0]
    n_g = gt.shape[0]
    for n in range(N):
        for b in range(s + 1):
            lim = p if (mode != MODE_LINEAR and b >= high_p) else pr
            for a in range(W):
                v = w[n, b, a]
                if v < 0 or v >= lim:
                    w[n, b, a] = v % lim
            # R3 across the full width before R2
            if mode == MODE_R3 and n_p > 0:
                for a in range(W - (d - 1)):
                    c = w[n, b, a]
                    if 0 <= c < p:
                        continue
                    c %= pr
                    carry = c // p
                    w[n, b, a] = c - carry * p
                    if carry == 0:
                        continue
                    for i in range(n_p):
                        bb = b + pt[i]
                        if bb > s:
                            break
                        for k in range(d):
                            w[n, bb, a + k] += carry * pu[i, k]
            # R2: X^d -> -g_low + sum v_j Y^s_j
            for a in range(W - 1, d - 1, -1):
                h = w[n, b, a]
                if h == 0:
                    continue
                w[n, b, a] = 0
                if h < 0 or h >= pr:
                    h %= pr
                    if h == 0:
                        continue
                for k in range(d):
                    w[n, b, a - d + k] -= h * g[k]
                for j in range(n_g):
                    bb = b + gt[j]
                    if bb <= s:
                        for k in range(d):
                            w[n, bb, a - d + k] += h * gv[j, k]
            for a in range(d):
                v = w[n, b, a]
                if v < 0 or v >= pr:
                    w[n, b, a] = v % pr
            # R3 on the surviving digits
            if mode != MODE_LINEAR and n_p > 0:
                for a in range(d):
                    c = w[n, b, a]
                    if 0 <= c < p:
                        continue
                    carry = c // p
                    w[n, b, a] = c - carry * p
                    if carry == 0:
                        continue
                    for i in range(n_p):
                        bb = b + pt[i]
                        if bb > s:
                            break
                        for k in range(d):
                            w[n, bb, a + k] += carry * pu[i, k]
        if mode != MODE_LINEAR and n_p == 0:
            for b in range(s + 1):
                for a in range(d):
                    v = w[n, b, a]
                    if v < 0 or v >= p:
                        w[n, b, a] = v % p


@njit(cache=True, error_model="numpy")
def reduce_batch(C, s, d, p, pr, high_p, g, gt, gv, pt, pu, mode, width):
    N, Yd, Xd = C.shape
    w = np.zeros((N, s + 1, width), dtype=np.int64)
    ymax = min(Yd, s + 1)
    for n in range(N):
        for b in range(ymax):
            for a in range(Xd):
                w[n, b, a] = C[n, b, a]
    reduce_many(w, s, d, p, pr, high_p, g, gt, gv, pt, pu, mode)
    return w[:, :, :d].copy()


@njit(cache=True, error_model="numpy")
def _encode_many(w, s, d, p):
    N = w.shape[0]
    out = np.empty(N, dtype=np.int64)
    for n in range(N):
        x = 0
        for b in range(s, -1, -1):
            for a in range(d - 1, -1, -1):
                x = x * p + w[n, b, a]
        out[n] = x
    return out


@njit(cache=True, error_model="numpy")
def _decode_many(A, D, s, d, p):
    """Digits of each index, from the table D when it is non-empty."""
    N = A.shape[0]
    out = np.empty((N, s + 1, d), dtype=np.int64)
    use_table = D.shape[0] > 0
    for n in range(N):
        x = A[n]
        for b in range(s + 1):
            for a in range(d):
                if use_table:
                    out[n, b, a] = D[x, b, a]
                else:
                    out[n, b, a] = x % p
                    x //= p
    return out


@njit(cache=True, error_model="numpy")
def binary_op(A, B, op, D, s, d, p, pr, high_p, g, gt, gv, pt, pu):
    """Elementwise add (op 0), multiply (op 1) or negate A (op 2) on index arrays.

    D is a digit table indexed by element, or an empty array to decode on the fly.
    """
    N = A.shape[0]
    width = 2 * d - 1
    x = _decode_many(A, D, s, d, p)
    w = np.zeros((N, s + 1, width), dtype=np.int64)
    if op == 2:
        for n in range(N):
            for b in range(s + 1):
                for a in range(d):
                    w[n, b, a] = -x[n, b, a]
    else:
        y = _decode_many(B, D, s, d, p)
        for n in range(N):
            if op == 1:
                for b1 in range(s + 1):
                    for a1 in range(d):
                        c = x[n, b1, a1]
                        if c == 0:
                            continue
                        for b2 in range(s + 1 - b1):
                            for a2 in range(d):
                                w[n, b1 + b2, a1 + a2] += c * y[n, b2, a2]
            else:
                for b in range(s + 1):
                    for a in range(d):
                        w[n, b, a] = x[n, b, a] + y[n, b, a]
    reduce_many(w, s, d, p, pr, high_p, g, gt, gv, pt, pu, MODE_R2)
    return _encode_many(w, s, d, p)


@njit(cache=True, error_model="numpy")
def table_fill(idx_a, n, op, D, s, d, p, pr, high_p, g, gt, gv, pt, pu):
    """Rows idx_a of the full operation table."""
    out = np.empty((idx_a.shape[0], n), dtype=np.int32)
    B = np.arange(n)
    for i in range(idx_a.shape[0]):
        A = np.full(n, idx_a[i])
        out[i, :] = binary_op(A, B, op, D, s, d, p, pr, high_p, g, gt, gv, pt, pu)
    return out
