"""Smith normal form over the integers.

Exact arbitrary-precision arithmetic throughout; no floating point.
The matrix is taken as sparse columns.  A sparse phase eliminates with
unit pivots chosen to limit fill-in (each such pivot contributes an
invariant factor 1); whatever remains is finished off with the classic
dense algorithm.

>>> smith_invariants([{0: 2}, {1: 4}], 2)
[2, 4]
>>> smith_invariants([{0: 1, 1: 1}], 2)
[1]
"""


def _dense_snf(entries):
    """Classic Smith reduction of a small dict {(r, c): v}; returns the
    list of invariant factors d_1 | d_2 | ...

    Each round moves the minimum-absolute nonzero entry to the pivot and
    reduces its row and column with floor division; any nonzero
    remainder is strictly smaller than the pivot, so the minimum can
    only shrink and the loop terminates.
    """
    if not entries:
        return []
    rows = sorted({r for r, _ in entries})
    cols = sorted({c for _, c in entries})
    rmap = {r: i for i, r in enumerate(rows)}
    cmap = {c: i for i, c in enumerate(cols)}
    m, n = len(rows), len(cols)
    a = [[0] * n for _ in range(m)]
    for (r, c), v in entries.items():
        a[rmap[r]][cmap[c]] = v
    divisors = []
    top = 0
    while top < m and top < n:
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        p = a[top][top]
        changed = False
        for i in range(top + 1, m):
            if a[i][top]:
                q = a[i][top] // p
                if q:
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                if a[i][top]:
                    changed = True
        for j in range(top + 1, n):
            if a[top][j]:
                q = a[top][j] // p
                if q:
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                if a[top][j]:
                    changed = True
        if changed:
            continue
        # row and column are clear; the pivot must divide the rest
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, n):
                a[top][j] += a[offender][j]
            continue
        divisors.append(abs(p))
        top += 1
    return divisors


def smith_invariants(columns, nrows):
    """Invariant factors of the integer matrix whose sparse columns are
    given as dicts {row: value}.  Zero entries may be present and are
    ignored.  Returns d_1 | d_2 | ... (all positive; the rank is the
    length of the list)."""
    cols = {}
    rows = {}
    for c, col in enumerate(columns):
        cc = {r: v for r, v in col.items() if v}
        if cc:
            cols[c] = cc
            for r, v in cc.items():
                rows.setdefault(r, {})[c] = v
    ones = 0

    def delete(r, c):
        for c2 in list(rows[r]):
            cols[c2].pop(r, None)
            if not cols[c2]:
                del cols[c2]
        del rows[r]
        if c in cols:
            for r2 in list(cols[c]):
                rows[r2].pop(c, None)
                if not rows[r2]:
                    del rows[r2]
            del cols[c]

    while cols:
        # hunt for a unit pivot with small fill, scanning a bounded sample
        best = None
        best_cost = None
        scanned = 0
        for c in cols:
            col = cols[c]
            for r, v in col.items():
                if v in (1, -1):
                    cost = (len(col) - 1) * (len(rows[r]) - 1)
                    if best_cost is None or cost < best_cost:
                        best, best_cost = (r, c), cost
                    scanned += 1
                    if best_cost == 0 or scanned > 256:
                        break
            if best_cost == 0 or scanned > 256:
                break
        if best is None:
            break
        r, c = best
        pv = cols[c][r]
        pivot_col = dict(cols[c])
        # clear row r from the other columns (column operations)
        for c2 in list(rows[r]):
            if c2 == c:
                continue
            f = rows[r][c2] * pv  # entry / pivot since pivot is a unit
            col2 = cols[c2]
            for r2, v2 in pivot_col.items():
                nv = col2.get(r2, 0) - f * v2
                if nv:
                    col2[r2] = nv
                    rows.setdefault(r2, {})[c2] = nv
                else:
                    if r2 in col2:
                        del col2[r2]
                        del rows[r2][c2]
            if not col2:
                del cols[c2]
        # the leftover entries of column c die by free row operations
        delete(r, c)
        ones += 1

    residual = {}
    for c, col in cols.items():
        for r, v in col.items():
            residual[(r, c)] = v
    return [1] * ones + _dense_snf(residual)
