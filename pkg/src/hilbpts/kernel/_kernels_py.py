"""Pure-Python elimination kernels; the compiled ``_kernels`` module mirrors this API."""


def echelon(rows, ncols):
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    ``rows`` is consumed and rewritten in place.  Returns ``(rows, pivots)``
    where the first ``len(pivots)`` rows are the nonzero echelon rows and
    ``pivots[k]`` is the pivot column of row ``k``.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and rows[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = piv * row[j] // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots
