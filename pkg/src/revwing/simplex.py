"""Minimal deterministic Nelder-Mead simplex minimizer.

Standard coefficients (reflection 1, expansion 2, contraction 0.5,
shrink 0.5), stable ordering, and a termination rule on the objective
spread of the simplex.  Shared by the design optimizer and the
coefficient fit.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["SimplexResult", "nelder_mead"]


@dataclass
class SimplexResult:
    x: np.ndarray            # best point found
    fx: float                # objective at x
    iterations: int
    evaluations: int
    converged: bool          # True: spread tolerance met; False: budget hit
    history: list            # (iteration, best-so-far objective) pairs


def nelder_mead(fn, x0, steps, spread_tol: float = 1e-6,
                max_evals: int = 2000) -> SimplexResult:
    """Minimize fn from x0 with an initial simplex spanned by per-axis steps.

    Deterministic: ties in the vertex ordering resolve by insertion order,
    and every candidate is evaluated exactly once per appearance.
    """
    x0 = np.asarray(x0, dtype=float)
    steps = np.asarray(steps, dtype=float)
    n = x0.size
    if steps.size != n:
        raise ValueError("steps must match the dimension of x0")
    if np.any(steps == 0.0):
        raise ValueError("all initial steps must be nonzero")

    points = [x0.copy()]
    for i in range(n):
        p = x0.copy()
        p[i] += steps[i]
        points.append(p)
    values = [float(fn(p)) for p in points]
    evals = n + 1

    history = []
    iteration = 0
    while True:
        order = sorted(range(n + 1), key=lambda i: (values[i], i))
        points = [points[i] for i in order]
        values = [values[i] for i in order]
        history.append((iteration, values[0]))
        if values[-1] - values[0] < spread_tol:
            return SimplexResult(points[0], values[0], iteration, evals, True, history)
        if evals >= max_evals:
            return SimplexResult(points[0], values[0], iteration, evals, False, history)
        iteration += 1

        centroid = np.mean(points[:-1], axis=0)
        worst = points[-1]
        reflected = centroid + (centroid - worst)
        f_reflected = float(fn(reflected))
        evals += 1

        if values[0] <= f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_expanded = float(fn(expanded))
            evals += 1
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
            continue
        # contraction: outside when the reflection improved on the worst
        if f_reflected < values[-1]:
            contracted = centroid + 0.5 * (reflected - centroid)
        else:
            contracted = centroid + 0.5 * (worst - centroid)
        f_contracted = float(fn(contracted))
        evals += 1
        if f_contracted < min(f_reflected, values[-1]):
            points[-1], values[-1] = contracted, f_contracted
            continue
        # shrink every vertex toward the best
        for i in range(1, n + 1):
            points[i] = points[0] + 0.5 * (points[i] - points[0])
            values[i] = float(fn(points[i]))
            evals += 1
            if evals >= max_evals:
                break
