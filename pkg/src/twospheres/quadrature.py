"""Adaptive composite Gauss-Legendre quadrature."""
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError

ORDER = 64
MAX_DEPTH = 40


@lru_cache(maxsize=None)
def gauss_legendre(order=ORDER):
    """Nodes and weights on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _panel(f, lo, hi, nodes, weights):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * float(np.dot(weights, f(mid + half * nodes)))


def integrate(f, lo, hi, abs_tol=1e-13, rel_tol=1e-13, order=ORDER):
    """Integrate a vectorized function ``f`` over ``[lo, hi]``.

    Each panel is compared with the sum over its two halves; a panel is
    accepted once the two estimates differ by less than ``abs_tol`` (scaled
    by the panel's share of the interval) or by less than ``rel_tol`` times
    the refined estimate. Pass ``abs_tol=0`` for a purely relative criterion,
    which keeps tiny positive integrals accurate to full precision.
    """
    if hi == lo:
        return 0.0
    if hi < lo:
        return -integrate(f, hi, lo, abs_tol, rel_tol, order)
    nodes, weights = gauss_legendre(order)
    width = hi - lo
    total = 0.0
    stack = [(lo, hi, _panel(f, lo, hi, nodes, weights), 0)]
    while stack:
        a, b, coarse, depth = stack.pop()
        m = 0.5 * (a + b)
        left = _panel(f, a, m, nodes, weights)
        right = _panel(f, m, b, nodes, weights)
        fine = left + right
        diff = abs(fine - coarse)
        if diff <= abs_tol * (b - a) / width or diff <= rel_tol * abs(fine):
            total += fine
        elif depth >= MAX_DEPTH:
            raise ConvergenceError(f"quadrature did not converge on [{a}, {b}]")
        else:
            stack.append((m, b, right, depth + 1))
            stack.append((a, m, left, depth + 1))
    return total
