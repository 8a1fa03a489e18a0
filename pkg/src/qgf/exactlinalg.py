"""Fraction-free linear algebra over the Laurent polynomial ring.

Matrices whose entries are Laurent polynomials (Scalars with trivial
denominator, or Scalars sharing a clearable denominator) are handled by
Bareiss elimination: all intermediate entries stay polynomial and the
divisions performed are exact.  The routines return determinants,
inverses with a single common denominator, and nullspace bases with
polynomial entries.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    Scalar,
    VarTable,
    _pdiv_exact,
    _pmul,
    _pneg,
    _padd,
    _pone,
    _pcontent_exps,
    _pmono_mul,
)


def _clear_denominators(row, table):
    """Scale a row of Scalars to polynomials (common denominator per row).

    Row scaling changes the determinant by a nonzero factor, which is fine
    for nullspace computations; `det` below accounts for it explicitly.
    Returns (polys, factor) where factor is the denominator product used.
    """
    den = _pone(len(table))
    for s in row:
        den = _pmul(den, s.den)
    polys = []
    for s in row:
        polys.append(_pmul(s.num, _pdiv_exact(den, s.den)))
    return polys, den


def _to_poly_matrix(mat, table):
    rows = []
    scale = table.one()
    for row in mat:
        polys, den = _clear_denominators(row, table)
        rows.append(polys)
        scale = scale * Scalar(table, den, _pone(len(table)))
    return rows, scale


def _strip_row_content(row):
    live = [p for p in row if p]
    if not live:
        return row
    mins = _pcontent_exps(*live)
    if mins and any(mins):
        shift = tuple(-v for v in mins)
        row = [_pmono_mul(p, Fraction(1), shift) for p in row]
    return row


def bareiss_det(mat, table):
    """Exact determinant of a square matrix of Scalars."""
    n = len(mat)
    if n == 0:
        return table.one()
    rows, scale = _to_poly_matrix(mat, table)
    a = [list(r) for r in rows]
    sign = 1
    prev = _pone(len(table))
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return table.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _padd(_pmul(a[i][j], a[k][k]), _pneg(_pmul(a[i][k], a[k][j])))
                a[i][j] = _pdiv_exact(num, prev)
            a[i][k] = {}
        prev = a[k][k]
    det_poly = a[n - 1][n - 1]
    det = Scalar(table, det_poly, _pone(len(table)))
    if sign < 0:
        det = -det
    return det / scale


def invert_adjugate(mat, table):
    """Exact inverse via one-step fraction-free Gauss-Jordan.

    All intermediate entries are Laurent polynomials and the divisions
    performed are exact.  Every entry of the returned inverse carries the
    same denominator (the determinant up to sign), which keeps later
    sums over these entries in the cheap common-denominator path.
    Raises ZeroDivisionError for a singular matrix.
    """
    n = len(mat)
    one = _pone(len(table))
    row_dens = []
    a = []
    for orig in mat:
        polys, den = _clear_denominators(orig, table)
        row_dens.append(den)
        a.append(list(polys) + [{}] * n)
    for i in range(n):
        a[i][n + i] = one
    prev = one
    for k in range(n):
        if not a[k][k]:
            swap = None
            best = None
            for r in range(k + 1, n):
                if a[r][k]:
                    cost = len(a[r][k])
                    if best is None or cost < best:
                        best, swap = cost, r
            if swap is None:
                raise ZeroDivisionError("singular matrix")
            a[k], a[swap] = a[swap], a[k]
        pivot = a[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = a[i][k]
            if not aik:
                # row still needs the pivot rescaling step
                for j in range(n + n):
                    if j != k and a[i][j]:
                        a[i][j] = _pdiv_exact(_pmul(pivot, a[i][j]), prev)
                continue
            for j in range(n + n):
                if j == k:
                    continue
                num = _padd(_pmul(pivot, a[i][j]), _pneg(_pmul(aik, a[k][j])))
                a[i][j] = _pdiv_exact(num, prev) if num else {}
            a[i][k] = {}
        prev = pivot
    d = a[0][0]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            # inverse = (aug block) / diag, then undo row clearing columnwise
            num = _pmul(a[i][n + j], row_dens[j])
            row.append(Scalar(table, num, d))
        out.append(row)
    return out


def invert(mat, table):
    """Exact inverse of a square Scalar matrix via Gauss-Jordan.

    Entries of the result are Scalars; pivots are chosen by smallest
    term count to limit expression growth.
    """
    n = len(mat)
    a = [list(row) for row in mat]
    inv = [[table.one() if i == j else table.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = None
        best = None
        for r in range(col, n):
            e = a[r][col]
            if not e.is_zero():
                cost = len(e.num) * len(e.den)
                if best is None or cost < best:
                    best, pivot = cost, r
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        pinv = p.inv()
        a[col] = [e * pinv for e in a[col]]
        inv[col] = [e * pinv for e in inv[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f.is_zero():
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def nullspace(mat, table):
    """Basis of the right nullspace of a Scalar matrix.

    Returns a list of vectors of Scalars with polynomial entries and
    unit content (the smallest exact representatives the elimination
    produces).
    """
    if not mat:
        return []
    nrows, ncols = len(mat), len(mat[0])
    a = [list(row) for row in mat]
    pivots = []  # (row, col)
    row = 0
    for col in range(ncols):
        pivot = None
        best = None
        for r in range(row, nrows):
            e = a[r][col]
            if not e.is_zero():
                cost = len(e.num) * len(e.den)
                if best is None or cost < best:
                    best, pivot = cost, r
        if pivot is None:
            continue
        if pivot != row:
            a[row], a[pivot] = a[pivot], a[row]
        p = a[row][col].inv()
        a[row] = [e * p for e in a[row]]
        for r in range(nrows):
            if r != row and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [table.zero()] * ncols
        vec[fc] = table.one()
        for r, c in pivots:
            vec[c] = -a[r][fc]
        basis.append(_clear_vector(vec, table))
    return basis


def _clear_vector(vec, table):
    """Clear denominators and strip content from a Scalar vector."""
    den = _pone(len(table))
    for s in vec:
        if not s.is_zero():
            den = _pmul(den, s.den)
    out = []
    for s in vec:
        out.append(_pmul(s.num, _pdiv_exact(den, s.den)) if not s.is_zero() else {})
    live = [p for p in out if p]
    if live:
        mins = _pcontent_exps(*live)
        if mins and any(mins):
            shift = tuple(-v for v in mins)
            out = [_pmono_mul(p, Fraction(1), shift) if p else p for p in out]
        # normalize so the first nonzero entry has lex-min coefficient 1
        first = next(p for p in out if p)
        c = first[min(first.keys())]
        if c != 1:
            out = [{e: v / c for e, v in p.items()} for p in out]
    return [Scalar(table, p, _pone(len(table))) for p in out]
