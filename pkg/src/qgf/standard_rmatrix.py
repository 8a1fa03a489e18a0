"""Construction of the standard universal R-matrix, grade by grade.

The coefficient of a grade-k term is obtained by inverting the pairing
matrix between raising words and lowering difference-operator strings.
The module also provides the commutator recursion check, the per-grade
Yang-Baxter residual, the Hopf maps and the coproduct intertwining
residual; every check returns normal-ordered residuals that must vanish
identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exactlinalg
from .constants import find_constants, multisets, words_of_multiset
from .free_algebra import (
    PLUS,
    MINUS,
    AlgebraElement,
    AlgebraSpec,
    FreeElement,
    TensorElement,
    derivative,
    derivative_string,
)


class ObstructionPresent(ArithmeticError):
    """The pairing matrix is singular: a constant obstructs the recursion."""

    def __init__(self, multiset, nullspace):
        self.multiset = multiset
        self.nullspace = nullspace
        super().__init__(f"singular pairing at multiset {multiset}")


def pairing_matrix(spec: AlgebraSpec, multiset):
    """Rows: raising words; columns: lowering derivative strings.

    S[(a)][(b)] applies the lowering operators b1, b2, ... (innermost
    first) to the word e_{a1} ... e_{an} and keeps the unit coefficient.
    """
    words = words_of_multiset(tuple(sorted(multiset)))
    mat = []
    for wa in words:
        elem = AlgebraElement(spec, PLUS, {wa: spec.vars.one()})
        row = []
        for wb in words:
            cur = elem
            for gamma in wb:
                cur = derivative(cur, gamma, side="left")
            row.append(cur.terms.get((), spec.vars.zero()))
        mat.append(row)
    return words, mat


def pairing_matrix_opposite(spec: AlgebraSpec, multiset):
    """The lowering-side pairing S'[(a)][(b)] built from minus words."""
    words = words_of_multiset(tuple(sorted(multiset)))
    mat = []
    for wa in words:
        row = []
        for wb in words:
            elem = AlgebraElement(spec, MINUS, {wb: spec.vars.one()})
            cur = elem
            for gamma in wa:
                cur = derivative(cur, gamma, side="left")
            row.append(cur.terms.get((), spec.vars.zero()))
        mat.append(row)
    return words, mat


@dataclass
class TCoefficients:
    """Exchange-matrix coefficients per multiset, through a grade cutoff."""

    spec: AlgebraSpec
    max_grade: int
    tables: dict  # multiset -> (words, {word: idx}, matrix)

    @classmethod
    def build(cls, spec, max_grade, check_obstructions=True):
        tables = {}
        for size in range(1, max_grade + 1):
            for ms in multisets(spec.n, size):
                words, s = pairing_matrix(spec, ms)
                if check_obstructions:
                    det = exactlinalg.bareiss_det(s, spec.vars)
                    if det.is_zero():
                        raise ObstructionPresent(ms, find_constants(spec, ms))
                try:
                    t = exactlinalg.invert_adjugate(s, spec.vars)
                except ZeroDivisionError:
                    raise ObstructionPresent(ms, find_constants(spec, ms))
                tables[ms] = (words, {w: i for i, w in enumerate(words)}, t)
        return cls(spec=spec, max_grade=max_grade, tables=tables)

    def scalar(self, lower, upper):
        """t with the given lower and upper index words."""
        lower, upper = tuple(lower), tuple(upper)
        if len(lower) != len(upper):
            return self.spec.vars.zero()
        if not lower:
            return self.spec.vars.one()
        ms = tuple(sorted(lower))
        if tuple(sorted(upper)) != ms:
            return self.spec.vars.zero()
        words, index, t = self.tables[ms]
        return t[index[lower]][index[upper]]

    def plus_element(self, lower) -> AlgebraElement:
        """t_(lower) = sum over upper words of t * e_{upper}."""
        lower = tuple(lower)
        if not lower:
            return AlgebraElement.unit(self.spec, PLUS)
        ms = tuple(sorted(lower))
        words, index, t = self.tables[ms]
        row = t[index[lower]]
        return AlgebraElement(self.spec, PLUS, {w: row[j] for j, w in enumerate(words)})

    def minus_element(self, upper) -> AlgebraElement:
        """t^(upper) = sum over lower words of t * e_{-lower}."""
        upper = tuple(upper)
        if not upper:
            return AlgebraElement.unit(self.spec, MINUS)
        ms = tuple(sorted(upper))
        words, index, t = self.tables[ms]
        j = index[upper]
        return AlgebraElement(
            self.spec, MINUS, {w: t[i][j] for i, w in enumerate(words)}
        )

    def body(self, max_grade=None) -> TensorElement:
        """The bracketed series: 1 + sum over words of t e_- (x) e_+."""
        spec = self.spec
        max_grade = self.max_grade if max_grade is None else max_grade
        out = TensorElement.unit(spec, 2)
        ut = spec.unit_tag()
        terms = dict(out.terms)
        for size in range(1, max_grade + 1):
            for ms in multisets(spec.n, size):
                words, index, t = self.tables[ms]
                for i, lw in enumerate(words):
                    for j, uw in enumerate(words):
                        c = t[i][j]
                        if c.is_zero():
                            continue
                        key = ((lw, ut, ()), ((), ut, uw))
                        terms[key] = c
        return TensorElement(spec, 2, terms)


def t_from_recursion(spec, t_prev: TCoefficients, size):
    """Coefficients at the given grade from the left lowering recursion.

    Solves d_{-gamma} t_(a) = delta(gamma, a1) t_(a2...) for each lower
    word, as a linear system on the unknown upper coefficients; used as a
    cross-check of uniqueness against direct inversion.
    """
    tables = {}
    for ms in multisets(spec.n, size):
        words, s = pairing_matrix(spec, ms)
        index = {w: i for i, w in enumerate(words)}
        # unknown row vector u for lower word a satisfies, for all gamma and
        # all grade-(size-1) words w:  sum_j u_j <d_gamma e_wj, w> = rhs
        rows = []
        rhs_cols = {}
        eqs = []  # list of (gamma, word) labels
        deriv = {}
        for j, w in enumerate(words):
            elem = AlgebraElement(spec, PLUS, {w: spec.vars.one()})
            for gamma in range(spec.n):
                d = derivative(elem, gamma, side="left")
                for sub, c in d.terms.items():
                    deriv.setdefault((gamma, sub), {})[j] = c
        labels = sorted(deriv.keys())
        mat = []
        for lab in labels:
            row = [deriv[lab].get(j, spec.vars.zero()) for j in range(len(words))]
            mat.append(row)
        out = {}
        for a in words:
            rhs = []
            for (gamma, sub) in labels:
                if a[0] == gamma:
                    rhs.append(t_prev.scalar(a[1:], sub))
                else:
                    rhs.append(spec.vars.zero())
            out[a] = _solve_overdetermined(mat, rhs, spec)
        tables[ms] = (words, index, [out[a] for a in words])
    return tables


def _solve_overdetermined(mat, rhs, spec):
    """Solve a consistent overdetermined Scalar system (unique solution)."""
    ncols = len(mat[0])
    a = [list(row) + [r] for row, r in zip(mat, rhs)]
    pivots = []
    row = 0
    nrows = len(a)
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if not a[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("rank-deficient recursion system")
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col].inv()
        a[row] = [e * p for e in a[row]]
        for r in range(nrows):
            if r != row and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
    sol = [spec.vars.zero()] * ncols
    for r, c in pivots:
        sol[c] = a[r][-1]
    # consistency of the remaining equations
    for r in range(row, nrows):
        if not a[r][-1].is_zero():
            raise ArithmeticError("inconsistent recursion system")
    return sol


def verify_recursion(spec, t: TCoefficients, grade):
    """Residuals of the commutator recursion at the given grade.

    For each lower word a = (a1..al) and each generator gamma computes
      [t_(a), f_gamma] - delta(gamma,a1) T+ t_(a2..) + t_(a..l-1) delta(gamma,al) T-
    in normal form, with T+ = e^{phi(gamma, .)} and T- = e^{-phi(., gamma)}.
    """
    residuals = {}
    for ms in multisets(spec.n, grade):
        for a in words_of_multiset(ms):
            ta = FreeElement.from_half(spec, t.plus_element(a))
            for gamma in range(spec.n):
                f = FreeElement.minus_word(spec, (gamma,))
                res = ta * f - f * ta
                if a[0] == gamma:
                    head = FreeElement.from_tag(spec, spec.tag(left={gamma: 1}))
                    res = res - head * FreeElement.from_half(spec, t.plus_element(a[1:]))
                if a[-1] == gamma:
                    tail = FreeElement.from_tag(spec, spec.tag(right={gamma: -1}))
                    res = res + FreeElement.from_half(spec, t.plus_element(a[:-1])) * tail
                residuals[(a, gamma)] = res
    return residuals


def yb_grade_residual(spec, t: TCoefficients, grade_l, grade_n):
    """The middle-slot Yang-Baxter residual at bidegree (l, n).

    For each pair of index words (a, g) the residual is the m-sum
      t^{g1..gm}_{a(l-m+1)..al} t_(a1..a(l-m)) e^{-phi(., g1+..+gm)} t^(g(m+1)..gn)
      - t^{g(n-m+1)..gn}_{a1..am} t^(g1..g(n-m)) e^{phi(a1+..+am, .)} t_(a(m+1)..al)
    in normal form; the R-matrix satisfies Yang-Baxter at this bidegree
    iff all residuals vanish.
    """
    residuals = {}
    gen_words_l = [w for ms in multisets(spec.n, grade_l) for w in words_of_multiset(ms)] if grade_l else [()]
    gen_words_n = [w for ms in multisets(spec.n, grade_n) for w in words_of_multiset(ms)] if grade_n else [()]
    from .free_algebra import _Acc

    for a in gen_words_l:
        for g in gen_words_n:
            acc = _Acc(spec.vars)
            for m in range(min(grade_l, grade_n) + 1):
                c1 = t.scalar(a[grade_l - m:], g[:m])
                if not c1.is_zero():
                    piece = (
                        FreeElement.from_half(spec, t.plus_element(a[: grade_l - m]))
                        * FreeElement.from_tag(
                            spec, spec.tag(right={gi: -g[:m].count(gi) for gi in set(g[:m])})
                        )
                        * FreeElement.from_half(spec, t.minus_element(g[m:]))
                    )
                    for k, c in piece.terms.items():
                        acc.add(k, c * c1)
                c2 = t.scalar(a[:m], g[grade_n - m:])
                if not c2.is_zero():
                    piece = (
                        FreeElement.from_half(spec, t.minus_element(g[: grade_n - m]))
                        * FreeElement.from_tag(
                            spec, spec.tag(left={ai: a[:m].count(ai) for ai in set(a[:m])})
                        )
                        * FreeElement.from_half(spec, t.plus_element(a[m:]))
                    )
                    for k, c in piece.terms.items():
                        acc.add(k, -(c * c2))
            residuals[(a, g)] = FreeElement(spec, acc.result())
    return residuals


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


def coproduct(elem: FreeElement) -> TensorElement:
    """The algebra homomorphism Delta in normal-ordered tensor form.

    Delta(e) = 1 (x) e + e (x) K_e,  Delta(f) = K_f (x) f + f (x) 1,
    Delta(T) = T (x) T for Cartan tags, extended multiplicatively.
    """
    spec = elem.spec
    out = TensorElement(spec, 2, {})
    unit2 = TensorElement.unit(spec, 2)
    for (m, t, p), c in elem.terms.items():
        acc = unit2.scale(c)
        for i in m:
            acc = acc * _delta_minus(spec, i)
        acc = acc * TensorElement.from_slots(
            spec, [FreeElement.from_tag(spec, t), FreeElement.from_tag(spec, t)]
        )
        for i in p:
            acc = acc * _delta_plus(spec, i)
        out = out + acc
    return out


def _delta_plus(spec, i):
    e = FreeElement.plus_word(spec, (i,))
    one = FreeElement.unit(spec)
    k = FreeElement.from_tag(spec, spec.tag(left={i: 1}))
    return TensorElement.from_slots(spec, [one, e]) + TensorElement.from_slots(spec, [e, k])


def _delta_minus(spec, i):
    f = FreeElement.minus_word(spec, (i,))
    one = FreeElement.unit(spec)
    k = FreeElement.from_tag(spec, spec.tag(right={i: -1}))
    return TensorElement.from_slots(spec, [k, f]) + TensorElement.from_slots(spec, [f, one])


def coproduct_opposite(elem: FreeElement) -> TensorElement:
    return coproduct(elem).flip()


def multiply_slots(t2: TensorElement) -> FreeElement:
    """The multiplication map m: A (x) A -> A."""
    spec = t2.spec
    out = FreeElement(spec, {})
    for (k1, k2), c in t2.terms.items():
        prod = FreeElement(spec, {k1: spec.vars.one()}) * FreeElement(spec, {k2: c})
        out = out + prod
    return out


def antipode(elem: FreeElement) -> FreeElement:
    return elem.antipode()


def counit(elem: FreeElement):
    return elem.counit()


def intertwiner_residual(spec, t: TCoefficients, gen, sign=PLUS, max_grade=None):
    """Delta(e) R - R Delta'(e) with the Cartan prefactor pulled out.

    Works with the bracketed body B of R; the prefactor conjugations turn
    the coproduct legs into tag-dressed generators.  Terms in grades the
    truncation cannot complete are dropped before returning.
    """
    d = t.max_grade if max_grade is None else max_grade
    b = t.body(d)
    one = FreeElement.unit(spec)
    if sign == PLUS:
        e = FreeElement.plus_word(spec, (gen,))
        kt = FreeElement.from_tag(spec, spec.tag(right={gen: -1}))   # e^{-phi(., gen)}
        kp = FreeElement.from_tag(spec, spec.tag(left={gen: 1}))     # e^{phi(gen, .)}
        res = (
            TensorElement.from_slots(spec, [kt, e]) * b
            + TensorElement.from_slots(spec, [e, one]) * b
            - b * TensorElement.from_slots(spec, [e, one])
            - b * TensorElement.from_slots(spec, [kp, e])
        )
        return res.filter_grades(lambda g: g[1] <= d)
    e = FreeElement.minus_word(spec, (gen,))
    kp = FreeElement.from_tag(spec, spec.tag(left={gen: 1}))
    kt = FreeElement.from_tag(spec, spec.tag(right={gen: -1}))
    res = (
        TensorElement.from_slots(spec, [one, e]) * b
        + TensorElement.from_slots(spec, [e, kp]) * b
        - b * TensorElement.from_slots(spec, [one, e])
        - b * TensorElement.from_slots(spec, [e, kt])
    )
    return res.filter_grades(lambda g: g[0] >= -d)
