import numpy as np
import pytest

from voromedian.instances import generate


@pytest.fixture(scope="session")
def inst100():
    return generate(100)


@pytest.fixture(scope="session")
def inst500():
    return generate(500)


@pytest.fixture(scope="session")
def inst1000():
    return generate(1000)


def brute_force_circumcircle_violations(sites: np.ndarray, simplices: np.ndarray,
                                        tol: float = 1e-7) -> int:
    """Number of (triangle, site) pairs where the site lies strictly inside
    the triangle's circumcircle. Independent O(T*n) check."""
    from voromedian.geometry import _circumcenters

    centers = _circumcenters(sites, simplices)
    radii = np.hypot(*(sites[simplices[:, 0]] - centers).T)
    diff = sites[None, :, :] - centers[:, None, :]
    dist = np.sqrt(np.einsum("tnk,tnk->tn", diff, diff))
    return int((dist < radii[:, None] - tol).sum())


def brute_force_pmedian(matrix: np.ndarray, weights: np.ndarray, p: int):
    """Exhaustive reference optimum, deliberately written without any of the
    solver machinery (plain loops over itertools.combinations)."""
    import itertools
    import math

    best, best_sel = math.inf, None
    nd, m = matrix.shape
    for combo in itertools.combinations(range(m), p):
        total = 0.0
        for i in range(nd):
            total += weights[i] * min(matrix[i][j] for j in combo)
        if total < best:
            best, best_sel = total, combo
    return best, best_sel
