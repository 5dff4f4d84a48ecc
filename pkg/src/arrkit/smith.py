"""Smith normal form over the integers, diagonal only."""

from __future__ import annotations

from math import gcd


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonnegative diagonal of the Smith normal form, divisibility-ordered.

    Arbitrary-precision; returns min(rows, cols) entries, zeros included.
    """
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    size = min(rows, cols)
    diag = []

    def pivot_search(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = m[i][j]
                if v and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < size:
        pos = pivot_search(t)
        if pos is None:
            break
        i, j = pos
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                for j in range(t, cols):
                    m[i][j] -= q * m[t][j]
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                for i in range(t, rows):
                    m[i][j] -= q * m[i][t]
                if m[t][j]:
                    dirty = True
        if dirty:
            continue
        # Pivot must divide the rest of the submatrix for true SNF.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, cols):
                m[t][j] += m[offender][j]
            continue
        diag.append(abs(m[t][t]))
        t += 1

    diag.extend(0 for _ in range(size - len(diag)))

    # Enforce the divisibility chain d1 | d2 | ... on nonzero entries.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a and b and b % a:
                g = gcd(a, b)
                diag[i], diag[j] = g, a * b // g
    return diag
