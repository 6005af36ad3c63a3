"""Truncated Taylor jets: lists ``[u, u', u'', ...]`` at a point.

Entries may be floats, numpy arrays or mpmath numbers; only ring operations
are used, so one implementation serves every evaluation path.
"""
from math import comb


def jet_mul(u, v):
    """Leibniz product, truncated to the shorter operand."""
    order = min(len(u), len(v))
    return [sum(comb(m, j) * u[j] * v[m - j] for j in range(m + 1)) for m in range(order)]


def jet_diff(u):
    return u[1:]


def jet_axpy(u, scale, v):
    """``u - scale * v`` truncated to the shorter operand."""
    return [a - scale * b for a, b in zip(u, v)]


def identity_jet(X, length):
    """Jet of the map X -> X."""
    zero = X * 0
    return ([X, zero + 1] + [zero] * (length - 2))[:length]


def discouragement_jets(G, K):
    """Jets of g_1..g_K from the jet ``G`` of g, with g_{k+1} = -g_k' g.

    g_k keeps ``len(G) - k + 1`` entries.
    """
    out = [list(G)]
    for _ in range(K - 1):
        prev = out[-1]
        out.append([-w for w in jet_mul(jet_diff(prev), G)])
    return out
