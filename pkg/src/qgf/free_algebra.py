"""Graded free algebras on a generator set with Cartan exponential tags.

The positive and negative halves are free; the only relations used are
the cross commutator between raising and lowering generators, which
produces Cartan exponentials, and the commutation of those exponentials
past generators, which produces invertible monomial scalars.  Every
element of the full algebra is kept in the normal form

    (word in lowering generators) * (Cartan tag) * (word in raising ones),

and a Cartan tag is recorded by its multiplicative character on the
generators: the tuple of monomials it produces when commuted past each
generator.  Two exponentials that act identically on the root lattice
(for instance after a parameter surface has been imposed) are therefore
identified, which is exactly the identification the residual checks rely
on.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .scalars import Scalar, VarTable, sum_scalars

PLUS = +1
MINUS = -1


class _Acc:
    """Per-key scalar accumulator that groups summands by denominator."""

    __slots__ = ("table", "data")

    def __init__(self, table):
        self.table = table
        self.data = {}

    def add(self, key, scalar):
        if scalar.is_zero():
            return
        self.data.setdefault(key, []).append(scalar)

    def result(self):
        out = {}
        for k, lst in self.data.items():
            s = lst[0] if len(lst) == 1 else sum_scalars(lst, self.table)
            if not s.is_zero():
                out[k] = s
        return out


class MixedSignAlgebras(TypeError):
    pass


class NonHomogeneous:
    """Sentinel returned when an element has no single weight."""

    def __repr__(self):
        return "NonHomogeneous"


NON_HOMOGENEOUS = NonHomogeneous()

# A monomial is (coefficient, exponent tuple); tags are tuples of these,
# one per generator.
Mono = tuple


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] * b[0], tuple(x + y for x, y in zip(a[1], b[1])))


def _mono_inv(a: Mono) -> Mono:
    return (1 / a[0], tuple(-x for x in a[1]))


def _mono_pow(a: Mono, n: int) -> Mono:
    return (a[0] ** n, tuple(x * n for x in a[1]))


class AlgebraSpec:
    """Generator set, Cartan weight data and the pairing exponentials.

    ``phi[(i, j)]`` is the invertible monomial scalar by which the
    exponential attached to generator i commutes past generator j; it is
    stored after any parameter surface substitution, so all derived
    characters automatically live on the surface.
    """

    def __init__(self, generators, vartable, phi, cartan_labels=None, weights=None):
        self.generators = tuple(generators)
        self.vars = vartable
        self.n = len(self.generators)
        self.cartan_labels = tuple(cartan_labels) if cartan_labels else tuple(self.generators)
        self._x = {}
        for (i, j), s in phi.items():
            if not isinstance(s, Scalar):
                raise TypeError("phi values must be Scalars")
            self._x[(i, j)] = s.as_monomial()
        for i in range(self.n):
            for j in range(self.n):
                if (i, j) not in self._x:
                    raise ValueError(f"phi not total: missing pair {(i, j)}")
        if weights is None:
            weights = {
                (a, b): Fraction(1 if a == b else 0)
                for a in range(len(self.cartan_labels))
                for b in range(self.n)
            }
        self.weights = {k: Fraction(v) for k, v in weights.items()}
        self._unit_mono = (Fraction(1), (0,) * len(self.vars))
        self._reorder_cache = {}
        self._termmul_cache = {}

    # -- parameter access ------------------------------------------------
    def x(self, i, j) -> Scalar:
        """e^{phi(i,j)} as a monomial scalar."""
        c, e = self._x[(i, j)]
        return self.vars.monomial(c, e)

    def x_mono(self, i, j) -> Mono:
        return self._x[(i, j)]

    def q(self, i, j) -> Scalar:
        """The difference-operator parameter q^{ij} = e^{-phi(i,j)}."""
        c, e = self._x[(i, j)]
        return self.vars.monomial(1 / c, tuple(-v for v in e))

    def weight_of(self, a, gen) -> Fraction:
        return self.weights.get((a, gen), Fraction(0))

    def gen_index(self, label):
        return self.generators.index(label)

    # -- tags --------------------------------------------------------------
    def unit_tag(self):
        return (self._unit_mono,) * self.n

    def tag(self, left=None, right=None):
        """Character of e^{phi(nu, .)} e^{phi(., mu)} on the generators.

        ``left`` and ``right`` are integer vectors over the generators
        (the root-lattice labels nu and mu).
        """
        left = left or ()
        right = right or ()
        chars = []
        for beta in range(self.n):
            m = self._unit_mono
            for gamma, k in _iter_vec(left):
                if k:
                    m = _mono_mul(m, _mono_pow(self._x[(gamma, beta)], k))
            for gamma, k in _iter_vec(right):
                if k:
                    m = _mono_mul(m, _mono_pow(self._x[(beta, gamma)], k))
            chars.append(m)
        return tuple(chars)

    def tag_plus(self, gen):
        """e^{phi(gen, .)}: the exponential produced by a cross commutator."""
        return self.tag(left={gen: 1})

    def tag_minus(self, gen):
        """e^{-phi(., gen)}."""
        return self.tag(right={gen: -1})

    def tag_mul(self, t1, t2):
        return tuple(_mono_mul(a, b) for a, b in zip(t1, t2))

    def tag_inv(self, t):
        return tuple(_mono_inv(a) for a in t)

    def tag_char_word(self, tag, word) -> Mono:
        """Product of the tag's characters over the letters of a word."""
        m = self._unit_mono
        for beta in word:
            m = _mono_mul(m, tag[beta])
        return m

    def tag_is_unit(self, tag) -> bool:
        return all(c == self._unit_mono for c in tag)


def _iter_vec(vec):
    if isinstance(vec, dict):
        return vec.items()
    return enumerate(vec)


# ---------------------------------------------------------------------------
# Elements of one free half (no tags): maps word -> Scalar.
# ---------------------------------------------------------------------------


class AlgebraElement:
    """Finite linear combination of words in one sign half."""

    __slots__ = ("spec", "sign", "terms")

    def __init__(self, spec, sign, terms=None):
        self.spec = spec
        self.sign = sign
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[tuple(w)] = c

    @classmethod
    def unit(cls, spec, sign):
        return cls(spec, sign, {(): spec.vars.one()})

    @classmethod
    def generator(cls, spec, sign, i):
        return cls(spec, sign, {(i,): spec.vars.one()})

    def copy(self):
        return AlgebraElement(self.spec, self.sign, dict(self.terms))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if other == 0:
            return self
        if self.sign != other.sign:
            raise MixedSignAlgebras("cannot add plus- and minus-half elements")
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return AlgebraElement(self.spec, self.sign, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.spec, self.sign, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar):
        if s.is_zero():
            return AlgebraElement(self.spec, self.sign, {})
        return AlgebraElement(self.spec, self.sign, {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if self.sign != other.sign:
            raise MixedSignAlgebras("cannot multiply plus- and minus-half elements")
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return AlgebraElement(self.spec, self.sign, out)

    def grades(self):
        return sorted({len(w) for w in self.terms})

    def is_homogeneous(self):
        return len(self.grades()) <= 1

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.sign == other.sign and (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        sym = "e" if self.sign == PLUS else "f"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            mono = "*".join(f"{sym}{self.spec.generators[i]}" for i in w) or "1"
            bits.append(f"({self.terms[w]})*{mono}")
        return " + ".join(bits)


def derivative(elem: AlgebraElement, gamma: int, side: str = "left") -> AlgebraElement:
    """The graded difference operator paired with generator gamma.

    On the plus half this is the lowering operator (annihilates the unit,
    sends grade n to n-1); on the minus half the raising one.  ``side``
    selects the left-acting or right-acting variant.
    """
    spec = elem.spec
    out = {}

    def add(word, coeff):
        if coeff.is_zero():
            return
        s = out.get(word)
        s = coeff if s is None else s + coeff
        if s.is_zero():
            out.pop(word, None)
        else:
            out[word] = s

    for w, c in elem.terms.items():
        if not w:
            continue
        if side == "left":
            # peel letters from the left end
            carry = c
            for k, alpha in enumerate(w):
                if alpha == gamma:
                    add(w[:k] + w[k + 1:], carry)
                if elem.sign == PLUS:
                    m = _mono_inv(spec.x_mono(gamma, alpha))
                else:
                    m = _mono_inv(spec.x_mono(alpha, gamma))
                carry = carry.mul_monomial(*m)
        elif side == "right":
            carry = c
            for k in range(len(w) - 1, -1, -1):
                alpha = w[k]
                if alpha == gamma:
                    add(w[:k] + w[k + 1:], carry)
                if elem.sign == PLUS:
                    m = _mono_inv(spec.x_mono(alpha, gamma))
                else:
                    m = _mono_inv(spec.x_mono(gamma, alpha))
                carry = carry.mul_monomial(*m)
        else:
            raise ValueError("side must be 'left' or 'right'")
    return AlgebraElement(spec, elem.sign, out)


def derivative_string(elem: AlgebraElement, word, side: str = "left") -> AlgebraElement:
    """Apply the composition d_{word[0]} ... d_{word[-1]} (rightmost first)."""
    for gamma in reversed(tuple(word)):
        elem = derivative(elem, gamma, side)
    return elem


def constant_operator_apply(C: AlgebraElement, X: AlgebraElement) -> AlgebraElement:
    """Apply the differential operator with C's coefficients to X.

    For a verified constant C the result is zero on the whole half.
    """
    if C.sign != X.sign:
        raise MixedSignAlgebras("operator and argument from different halves")
    total = AlgebraElement(X.spec, X.sign, {})
    for w, c in C.terms.items():
        total = total + derivative_string(X, w, side="left").scale(c)
    return total


def one_form_closedness(C: AlgebraElement, one_form) -> AlgebraElement:
    """Closedness pairing of a one-form {gamma: element} against C."""
    spec = C.spec
    total = AlgebraElement(spec, C.sign, {})
    for w, c in C.terms.items():
        if not w:
            continue
        y = one_form.get(w[-1])
        if y is None or y.is_zero():
            continue
        total = total + derivative_string(y, w[:-1], side="left").scale(c)
    return total


# ---------------------------------------------------------------------------
# Normal-ordered elements of the full algebra and tensor powers.
# ---------------------------------------------------------------------------

# term key: (minus word, tag, plus word)


def _reorder(spec, plus, minus):
    """Normal form of (plus word)*(minus word) as {key: Mono coefficient}.

    Coefficients here are pure monomials except for the unit scalars, so
    they are returned as {key: Scalar}.
    """
    cache = spec._reorder_cache
    key = (plus, minus)
    hit = cache.get(key)
    if hit is not None:
        return hit
    one = spec.vars.one()
    if not plus or not minus:
        result = {(minus, spec.unit_tag(), plus): one}
        cache[key] = result
        return result
    p_head, alpha = plus[:-1], plus[-1]
    beta, m_tail = minus[0], minus[1:]
    result = {}

    def accumulate(k, c):
        s = result.get(k)
        s = c if s is None else s + c
        if s.is_zero():
            result.pop(k, None)
        else:
            result[k] = s

    # e_alpha e_{-beta} = e_{-beta} e_alpha + delta (T+ - T-)
    for (m1, t1, p1), c1 in _reorder(spec, p_head, (beta,)).items():
        for (m2, t2, p2), c2 in _reorder(spec, p1 + (alpha,), m_tail).items():
            cross = _mono_inv(spec.tag_char_word(t1, m2))
            c = (c1 * c2).mul_monomial(*cross)
            accumulate((m1 + m2, spec.tag_mul(t1, t2), p2), c)
    if alpha == beta:
        t_plus = spec.tag(left={alpha: 1})    # e^{phi(alpha, .)}
        t_minus = spec.tag(right={alpha: -1})  # e^{-phi(., alpha)}
        for sgn, tag in ((1, t_plus), (-1, t_minus)):
            for (m3, t3, p3), c3 in _reorder(spec, p_head, m_tail).items():
                adj = _mono_mul(
                    _mono_inv(spec.tag_char_word(tag, m_tail)),
                    _mono_inv(spec.tag_char_word(tag, p3)),
                )
                c = c3.mul_monomial(*adj)
                if sgn < 0:
                    c = -c
                accumulate((m3, spec.tag_mul(t3, tag), p3), c)
    cache[key] = result
    return result


def _mul_term_keys(spec, k1, k2):
    """Product of two normal-form term keys as {key: Scalar}."""
    cache = spec._termmul_cache
    ck = (k1, k2)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    (m1, t1, p1), (m2, t2, p2) = k1, k2
    out = {}
    for (m, t, p), c in _reorder(spec, p1, m2).items():
        adj = _mono_mul(
            _mono_inv(spec.tag_char_word(t1, m)),
            _mono_inv(spec.tag_char_word(t2, p)),
        )
        key = (m1 + m, spec.tag_mul(spec.tag_mul(t1, t), t2), p + p2)
        c = c.mul_monomial(*adj)
        s = out.get(key)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    cache[ck] = out
    return out


class FreeElement:
    """Normal-ordered element of the full algebra."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        self.spec = spec
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    # -- constructors ---------------------------------------------------
    @classmethod
    def unit(cls, spec):
        return cls(spec, {((), spec.unit_tag(), ()): spec.vars.one()})

    @classmethod
    def plus_word(cls, spec, word, coeff=None):
        return cls(spec, {((), spec.unit_tag(), tuple(word)): coeff or spec.vars.one()})

    @classmethod
    def minus_word(cls, spec, word, coeff=None):
        return cls(spec, {(tuple(word), spec.unit_tag(), ()): coeff or spec.vars.one()})

    @classmethod
    def from_tag(cls, spec, tag, coeff=None):
        return cls(spec, {((), tag, ()): coeff or spec.vars.one()})

    @classmethod
    def from_half(cls, spec, elem: AlgebraElement):
        t = spec.unit_tag()
        if elem.sign == PLUS:
            return cls(spec, {((), t, tuple(w)): c for w, c in elem.terms.items()})
        return cls(spec, {(tuple(w), t, ()): c for w, c in elem.terms.items()})

    # -- linear structure -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if other == 0:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return FreeElement(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement(self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if isinstance(s, (int, Fraction)):
            s = self.spec.vars.const(s)
        if s.is_zero():
            return FreeElement(self.spec, {})
        return FreeElement(self.spec, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        acc = _Acc(self.spec.vars)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                for k, c in _mul_term_keys(self.spec, k1, k2).items():
                    acc.add(k, c12 * c)
        return FreeElement(self.spec, acc.result())

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, FreeElement):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def grade(self, key):
        m, _, p = key
        return len(p) - len(m)

    def counit(self) -> Scalar:
        total = self.spec.vars.zero()
        for (m, _t, p), c in self.terms.items():
            if not m and not p:
                total = total + c
        return total

    def antipode(self):
        return antipode_free(self)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (m, t, p) in sorted(self.terms, key=lambda k: (len(k[0]) + len(k[2]), k[0], k[2])):
            c = self.terms[(m, t, p)]
            parts = []
            if m:
                parts.append("f[" + ",".join(str(self.spec.generators[i]) for i in m) + "]")
            if not self.spec.tag_is_unit(t):
                parts.append("T" + repr(tuple((str(c0), e) for c0, e in t)))
            if p:
                parts.append("e[" + ",".join(str(self.spec.generators[i]) for i in p) + "]")
            bits.append(f"({c})*" + ("*".join(parts) or "1"))
        return " + ".join(bits)


def antipode_free(elem: FreeElement) -> FreeElement:
    """Antipode: anti-automorphism with S(e) = -e K^{-1}, S(f) = -K f, S(T) = T^{-1}."""
    spec = elem.spec
    total = FreeElement(spec, {})
    for (m, t, p), c in elem.terms.items():
        acc = FreeElement.unit(spec).scale(c)
        # reversed product of images: S(m1..mj T p1..pk) = S(pk)...S(p1) S(T) S(m_j)...S(m1)
        factors = []
        for i in reversed(p):
            factors.append(_antipode_plus_gen(spec, i))
        factors.append(FreeElement.from_tag(spec, spec.tag_inv(t)))
        for i in reversed(m):
            factors.append(_antipode_minus_gen(spec, i))
        for f in factors:
            acc = acc * f
        total = total + acc
    return total


def _antipode_plus_gen(spec, i):
    # -e_i e^{-phi(i, .)}
    out = FreeElement.plus_word(spec, (i,)) * FreeElement.from_tag(spec, spec.tag(left={i: -1}))
    return -out


def _antipode_minus_gen(spec, i):
    # -e^{phi(., i)} e_{-i}
    out = FreeElement.from_tag(spec, spec.tag(right={i: 1})) * FreeElement.minus_word(spec, (i,))
    return -out


class TensorElement:
    """Finitely supported element of a tensor power of the full algebra."""

    __slots__ = ("spec", "nslots", "terms")

    def __init__(self, spec, nslots, terms=None):
        self.spec = spec
        self.nslots = nslots
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    @classmethod
    def unit(cls, spec, nslots):
        key = tuple(((), spec.unit_tag(), ()) for _ in range(nslots))
        return cls(spec, nslots, {key: spec.vars.one()})

    @classmethod
    def from_slots(cls, spec, factors, coeff=None):
        """Tensor product of single FreeElements, one per slot."""
        n = len(factors)
        out = cls(spec, n, {})
        items = [list(f.terms.items()) for f in factors]
        for combo in itertools.product(*items):
            key = tuple(k for k, _ in combo)
            c = coeff or spec.vars.one()
            for _, ci in combo:
                c = c * ci
            s = out.terms.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.terms.pop(key, None)
            else:
                out.terms[key] = s
        return out

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if other == 0:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return TensorElement(self.spec, self.nslots, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.spec, self.nslots, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if isinstance(s, (int, Fraction)):
            s = self.spec.vars.const(s)
        if s.is_zero():
            return TensorElement(self.spec, self.nslots, {})
        return TensorElement(self.spec, self.nslots, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if self.nslots != other.nslots:
            raise ValueError("tensor slot count mismatch")
        spec = self.spec
        acc = _Acc(spec.vars)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                slotprods = [_mul_term_keys(spec, a, b) for a, b in zip(k1, k2)]
                for combo in itertools.product(*(sp.items() for sp in slotprods)):
                    key = tuple(k for k, _ in combo)
                    c = c12
                    for _, ci in combo:
                        c = c * ci
                    acc.add(key, c)
        return TensorElement(self.spec, self.nslots, acc.result())

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def embed(self, nslots, positions):
        """Place this element's slots at `positions` in a larger tensor power."""
        spec = self.spec
        unit = ((), spec.unit_tag(), ())
        out = {}
        for k, c in self.terms.items():
            big = [unit] * nslots
            for slot, pos in zip(k, positions):
                big[pos] = slot
            out[tuple(big)] = c
        return TensorElement(spec, nslots, out)

    def flip(self, i=0, j=1):
        """Exchange two tensor slots."""
        out = {}
        for k, c in self.terms.items():
            kk = list(k)
            kk[i], kk[j] = kk[j], kk[i]
            key = tuple(kk)
            s = out.get(key)
            s = c if s is None else s + c
            if not s.is_zero():
                out[key] = s
            else:
                out.pop(key, None)
        return TensorElement(self.spec, self.nslots, out)

    def conj_r0(self, i, j):
        """Move the Cartan prefactor attached to slots (i, j) from the right
        of this element to the left.

        Each raising letter in slot i sprays e^{-phi(letter, .)} into slot
        j, each lowering letter sprays e^{+phi(letter, .)}; symmetrically
        slot j sprays right-argument exponentials into slot i.
        """
        spec = self.spec
        out = {}
        for k, c in self.terms.items():
            (mi, ti, pi) = k[i]
            (mj, tj, pj) = k[j]
            di = {g: 0 for g in range(spec.n)}
            for g in pi:
                di[g] += 1
            for g in mi:
                di[g] -= 1
            dj = {g: 0 for g in range(spec.n)}
            for g in pj:
                dj[g] += 1
            for g in mj:
                dj[g] -= 1
            spray_j = spec.tag(left={g: -v for g, v in di.items() if v})
            spray_i = spec.tag(right={g: -v for g, v in dj.items() if v})
            # spray_i lands at the right end of slot i: cross its plus word
            adj = _mono_inv(spec.tag_char_word(spray_i, pi))
            # spray_j lands at the left end of slot j: cross its minus word
            adj = _mono_mul(adj, _mono_inv(spec.tag_char_word(spray_j, mj)))
            kk = list(k)
            kk[i] = (mi, spec.tag_mul(ti, spray_i), pi)
            kk[j] = (mj, spec.tag_mul(spray_j, tj), pj)
            key = tuple(kk)
            cc = c.mul_monomial(*adj)
            s = out.get(key)
            s = cc if s is None else s + cc
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return TensorElement(spec, self.nslots, out)

    def slot_grades(self, key):
        return tuple(len(p) - len(m) for (m, _t, p) in key)

    def filter_grades(self, predicate):
        """Keep terms whose tuple of slot grades satisfies `predicate`."""
        return TensorElement(
            self.spec,
            self.nslots,
            {k: c for k, c in self.terms.items() if predicate(self.slot_grades(k))},
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, key=lambda k: tuple((len(s[0]), len(s[2]), s[0], s[2]) for s in k)):
            slot_strs = []
            for (m, t, p) in k:
                e = FreeElement(self.spec, {(m, t, p): self.spec.vars.one()})
                slot_strs.append(repr(e).split(")*", 1)[-1])
            bits.append(f"({self.terms[k]})*" + " (x) ".join(slot_strs))
        return " + ".join(bits)


def weight(spec, obj):
    """Common weight of all terms, or the NonHomogeneous sentinel.

    Works for AlgebraElement, FreeElement and TensorElement; the weight of
    a term is the sum of +H_a(letter) over raising letters and
    -H_a(letter) over lowering letters, in every tensor slot.
    """
    na = len(spec.cartan_labels)

    def term_weight(slots):
        w = [Fraction(0)] * na
        for (m, _t, p) in slots:
            for g in p:
                for a in range(na):
                    w[a] += spec.weight_of(a, g)
            for g in m:
                for a in range(na):
                    w[a] -= spec.weight_of(a, g)
        return tuple(w)

    if isinstance(obj, AlgebraElement):
        keys = [((w, spec.unit_tag(), ()) if obj.sign == MINUS else ((), spec.unit_tag(), w),)
                for w in obj.terms]
    elif isinstance(obj, FreeElement):
        keys = [(k,) for k in obj.terms]
    elif isinstance(obj, TensorElement):
        keys = list(obj.terms)
    else:
        raise TypeError(type(obj))
    found = None
    for k in keys:
        w = term_weight(k)
        if found is None:
            found = w
        elif w != found:
            return NON_HOMOGENEOUS
    if found is None:
        return tuple(Fraction(0) for _ in range(na))
    return {spec.cartan_labels[a]: found[a] for a in range(na)}
