"""Implicit-shift QL iteration for symmetric tridiagonal matrices.

Only the first component of every eigenvector is tracked, which is all the
Golub-Welsch construction of Gauss rules needs, so the cost stays O(n^2).
"""

from __future__ import annotations

import math

from .errors import NumericalError

MAX_SWEEPS = 60


def tridiagonal_eigen(diag, offdiag, max_sweeps=MAX_SWEEPS):
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    ``diag`` has length n and ``offdiag`` length n-1.  Returns two lists,
    ``(eigenvalues, first_components)``, in the order the iteration leaves
    them (unsorted).  Raises :class:`NumericalError` if an eigenvalue needs
    more than ``max_sweeps`` QL sweeps.
    """
    d = [float(x) for x in diag]
    n = len(d)
    if len(offdiag) != max(n - 1, 0):
        raise ValueError("offdiag must have length len(diag) - 1")
    e = [float(x) for x in offdiag] + [0.0]
    z = [0.0] * n
    if n:
        z[0] = 1.0

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise NumericalError(
                    "QL iteration did not converge",
                    {"index": l, "sweeps": sweeps, "offdiag": e[l], "diag": d[l]},
                )
            sweeps += 1
            # Wilkinson-type shift from the leading 2x2 block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z
