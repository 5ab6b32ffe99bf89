"""Transition matrices and certified Perron-Frobenius data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import GraphMap

MAX_CHARPOLY_ORDER = 12


class NotPrimitive(ValueError):
    pass


def transition_matrix(gm: GraphMap) -> np.ndarray:
    """``m[e, e']`` counts occurrences of ``e`` or ``~e`` in ``f(e')``."""
    n = gm.graph.num_edges
    m = np.zeros((n, n), dtype=np.int64)
    for j, img in enumerate(gm.edge_images):
        for x in img:
            m[x.index, j] += 1
    return m


def char_poly(m) -> list[int]:
    """Characteristic polynomial ``det(xI - M)``, highest degree first.

    Faddeev-LeVerrier on Python integers; every division is exact.
    """
    a = [[int(v) for v in row] for row in np.asarray(m)]
    n = len(a)
    if n > MAX_CHARPOLY_ORDER:
        raise ValueError(f"order {n} exceeds {MAX_CHARPOLY_ORDER}")
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c
        mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        trace = sum(am[i][i] for i in range(n))
        assert trace % k == 0
        c = -trace // k
        coeffs.append(c)
    return coeffs


def poly_eval(coeffs, x: float) -> float:
    value = 0.0
    for c in coeffs:
        value = value * x + c
    return value


def is_primitive(m) -> bool:
    """Some power of ``m`` is entrywise positive (Wielandt bound)."""
    b = np.asarray(m) > 0
    n = b.shape[0]
    if n == 0:
        return False
    bound = (n - 1) ** 2 + 1
    power = 1
    p = b.copy()
    while power < bound:
        p = (p.astype(np.int64) @ p.astype(np.int64)) > 0
        power *= 2
    return bool(p.all())


@dataclass(frozen=True)
class PFData:
    eigenvalue: float
    eigenvector: np.ndarray
    residual: float
    enclosure: tuple[float, float]
    iterations: int

    @property
    def width(self) -> float:
        return self.enclosure[1] - self.enclosure[0]


def pf_eigenpair(m, width_tol: float = 1e-9, residual_tol: float = 1e-10,
                 max_iter: int = 200_000) -> PFData:
    """Power iteration from the all-ones vector with a Collatz-Wielandt bracket.

    Stops once the bracket ``[min (Mv)_i/v_i, max (Mv)_i/v_i]`` is narrower
    than ``width_tol`` and the residual of the midpoint is below
    ``residual_tol``.  The eigenvector is scaled so that its largest entry
    is 1.
    """
    if not is_primitive(m):
        raise NotPrimitive("Perron-Frobenius data requires a primitive matrix")
    a = np.asarray(m, dtype=float)
    v = np.ones(a.shape[0])
    for it in range(1, max_iter + 1):
        w = a @ v
        ratios = w / v
        lo, hi = float(ratios.min()), float(ratios.max())
        lam = 0.5 * (lo + hi)
        v = w / w.max()
        residual = float(np.abs(a @ v - lam * v).max())
        if hi - lo < width_tol and residual < residual_tol:
            return PFData(lam, v, residual, (lo, hi), it)
    raise RuntimeError(f"power iteration did not converge in {max_iter} steps")


def left_pf_eigenpair(m, **kwargs) -> PFData:
    return pf_eigenpair(np.asarray(m).T, **kwargs)
