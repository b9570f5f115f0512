"""Pure-Python elimination kernels (fallback for the compiled ``_kernels``).

Both functions take a dense matrix as a list of rows of Python ints and
leave their input untouched.
"""


def rank_mod_p(rows, p):
    """Rank over GF(p) by Gaussian elimination; pivots taken row-major."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[c], -1, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_integer(rows):
    """Rank over the rationals of an integer matrix by Bareiss elimination.

    Every intermediate entry is a minor of the input, so the divisions by
    the previous pivot are exact and entries stay polynomially bounded.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        a = prow[c]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (a * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = a
        rank += 1
        if rank == nrows:
            break
    return rank
