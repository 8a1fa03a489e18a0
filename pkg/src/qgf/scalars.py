"""Exact arithmetic for deformation parameters.

A Scalar is a ratio of multivariate Laurent polynomials over Q, stored
unreduced.  Every variable is invertible, so monomial content common to
numerator and denominator can always be cancelled cheaply; full
multivariate GCD is never attempted.  Equality is decided by the
cross-multiplied polynomial identity a*d - c*b == 0.
"""

from __future__ import annotations

from fractions import Fraction

# A Laurent polynomial is a dict {exponent tuple: Fraction}, zero
# coefficients never stored.  All exponent tuples in one poly have the
# same length, equal to the number of variables of the owning table.


def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pneg(p):
    return {e: -c for e, c in p.items()}


def _pscale(p, f):
    if not f:
        return {}
    return {e: c * f for e, c in p.items()}


def _pmul(p, q):
    if not p or not q:
        return {}
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e)
            if s is None:
                out[e] = c1 * c2
            else:
                s = s + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def _pmono_mul(p, coef, exps):
    """Multiply a poly by a single monomial coef*x^exps."""
    if not coef:
        return {}
    return {tuple(a + b for a, b in zip(e, exps)): c * coef for e, c in p.items()}


def _ppow(p, n):
    if n < 0:
        raise ValueError("negative power of a general polynomial")
    nv = None
    for e in p:
        nv = len(e)
        break
    out = _pone(nv if nv is not None else 0)
    base = p
    while n:
        if n & 1:
            out = _pmul(out, base)
        base = _pmul(base, base) if n > 1 else base
        n >>= 1
    return out


def _pone(nvars):
    return {(0,) * nvars: Fraction(1)}


def _pconst(nvars, f):
    f = Fraction(f)
    return {(0,) * nvars: f} if f else {}


def _pis_monomial(p):
    return len(p) == 1


def _plex_min(p):
    return min(p.keys())


def _pcontent_exps(*polys):
    """Componentwise min exponent over all terms of the given polys."""
    mins = None
    for p in polys:
        for e in p:
            if mins is None:
                mins = list(e)
            else:
                for i, v in enumerate(e):
                    if v < mins[i]:
                        mins[i] = v
    return mins


def _pdiv_exact(p, d):
    """Exact division of Laurent polys; raises if the division is not exact.

    Uses lex order on exponent tuples; valid because d's lex-leading term
    divides (in the Laurent sense, always) and elimination terminates.
    """
    if not d:
        raise ZeroDivisionError("exact division by zero polynomial")
    if not p:
        return {}
    if len(d) == 1:
        (e0, c0), = d.items()
        inv = 1 / c0
        neg = tuple(-v for v in e0)
        return _pmono_mul(p, inv, neg)
    dl = max(d.keys())
    dc = d[dl]
    rem = dict(p)
    quot = {}
    while rem:
        rl = max(rem.keys())
        rc = rem[rl]
        qe = tuple(a - b for a, b in zip(rl, dl))
        qc = rc / dc
        quot[qe] = quot.get(qe, Fraction(0)) + qc
        rem = _padd(rem, _pmono_mul(d, -qc, qe))
        if rem and max(rem.keys()) >= rl:
            raise ArithmeticError("non-exact polynomial division")
    return {e: c for e, c in quot.items() if c}


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


class VarTable:
    """Fixed ordered list of invertible variable names."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarTable{self.names}"

    # -- constructors -------------------------------------------------
    def zero(self):
        return Scalar(self, {}, _pone(len(self)))

    def one(self):
        return Scalar(self, _pone(len(self)), _pone(len(self)))

    def const(self, f):
        return Scalar(self, _pconst(len(self), Fraction(f)), _pone(len(self)))

    def var(self, name, power=1):
        e = [0] * len(self)
        e[self.index[name]] = power
        return Scalar(self, {tuple(e): Fraction(1)}, _pone(len(self)))

    def monomial(self, coef, exps):
        coef = Fraction(coef)
        exps = tuple(exps)
        if len(exps) != len(self):
            raise ValueError("exponent vector length mismatch")
        num = {exps: coef} if coef else {}
        return Scalar(self, num, _pone(len(self)))


class Scalar:
    """Element of the rational-function field over a VarTable."""

    __slots__ = ("vars", "num", "den")

    def __init__(self, vartable, num, den):
        if not den:
            raise DivisionByZero("denominator is identically zero")
        self.vars = vartable
        self.num = num
        self.den = den
        self._normalize()

    def _normalize(self):
        if not self.num:
            self.den = _pone(len(self.vars))
            return
        # cancel monomial content shared with the denominator
        mins = _pcontent_exps(self.num, self.den)
        if any(mins):
            shift = tuple(-v for v in mins)
            self.num = _pmono_mul(self.num, Fraction(1), shift)
            self.den = _pmono_mul(self.den, Fraction(1), shift)
        # make the denominator's lex-min coefficient 1
        c = self.den[_plex_min(self.den)]
        if c != 1:
            inv = 1 / c
            self.den = _pscale(self.den, inv)
            self.num = _pscale(self.num, inv)

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return not self.num

    def constant_value(self):
        """The Fraction this scalar equals, or None if it is not constant."""
        if not self.num:
            return Fraction(0)
        e = _plex_min(self.den)
        if e not in self.num:
            return None
        c = self.num[e] / self.den[e]
        if self.num == _pscale(self.den, c):
            return c
        return None

    def is_one(self):
        return self.num == self.den

    def is_monomial(self):
        return len(self.num) == 1 and len(self.den) == 1

    def as_monomial(self):
        """Return (coef, exps) if this scalar is a single monomial."""
        if not self.is_monomial():
            raise ValueError(f"not a monomial: {self}")
        (en, cn), = self.num.items()
        (ed, cd), = self.den.items()
        return cn / cd, tuple(a - b for a, b in zip(en, ed))

    # -- ring operations ----------------------------------------------
    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.vars.const(other)
        if not isinstance(other, Scalar) or other.vars != self.vars:
            raise TypeError("scalar from a different variable table")
        return other

    def __add__(self, other):
        other = self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Scalar(self.vars, _padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar(self.vars, num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.vars, _pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return self.vars.zero()
        # single-monomial factors avoid general polynomial products
        if len(other.num) == 1:
            (en, cn), = other.num.items()
            num = _pmono_mul(self.num, cn, en)
            if len(other.den) == 1:
                (ed, cd), = other.den.items()
                return Scalar(self.vars, num, _pmono_mul(self.den, cd, ed))
            return Scalar(self.vars, num, _pmul(self.den, other.den))
        if len(self.num) == 1:
            return other * self
        return Scalar(self.vars, _pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def mul_monomial(self, coef, exps):
        if not coef:
            return self.vars.zero()
        return Scalar(self.vars, _pmono_mul(self.num, Fraction(coef), tuple(exps)), self.den)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return Scalar(self.vars, self.den, self.num)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("only integer powers")
        if n == 0:
            return self.vars.one()
        base = self if n > 0 else self.inv()
        return Scalar(base.vars, _ppow(base.num, abs(n)), _ppow(base.den, abs(n)))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.vars.const(other)
        if not isinstance(other, Scalar) or other.vars != self.vars:
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    __hash__ = None  # equality is structural; scalars are not dict keys

    # -- substitution and evaluation ------------------------------------
    def substitute(self, assignment, target=None):
        """Apply a homomorphism sending each variable to a Scalar.

        `assignment` maps variable names to Scalars over `target` (which
        defaults to this scalar's table).  Unassigned variables pass
        through; they must then exist in the target table.
        """
        target = target or self.vars
        images = []
        for name in self.vars.names:
            img = assignment.get(name)
            if img is None:
                img = target.var(name)
            elif isinstance(img, (int, Fraction)):
                f = Fraction(img)
                if f == 0:
                    raise ValueError(f"substitution maps {name} to zero")
                img = target.const(f)
            elif img.vars != target:
                raise TypeError("substitution image over wrong table")
            images.append(img)

        def image_of_poly(p):
            total = target.zero()
            for e, c in p.items():
                term = target.const(c)
                for i, k in enumerate(e):
                    if k:
                        term = term * images[i] ** k
                total = total + term
            return total

        n = image_of_poly(self.num)
        d = image_of_poly(self.den)
        if d.is_zero():
            raise DivisionByZero("substitution annihilates the denominator")
        return n / d

    def eval_numeric(self, point, tol=1e-12):
        """Evaluate at a complex point {name: complex}; poles are errors."""
        vals = []
        for name in self.vars.names:
            if name not in point:
                raise KeyError(f"no value for variable {name}")
            vals.append(complex(point[name]))

        def ev(p):
            total = 0j
            for e, c in p.items():
                t = complex(c)
                for v, k in zip(vals, e):
                    if k:
                        t *= v ** k
                total += t
            return total

        d = ev(self.den)
        if abs(d) <= tol:
            raise PoleAtPoint(f"|denominator| = {abs(d):.3e} at {point}")
        return ev(self.num) / d

    # -- display --------------------------------------------------------
    def _poly_str(self, p):
        if not p:
            return "0"
        bits = []
        for e in sorted(p.keys()):
            c = p[e]
            factors = []
            for name, k in zip(self.vars.names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        s = " + ".join(bits)
        return s.replace("+ -", "- ")

    def __repr__(self):
        if self.den == _pone(len(self.vars)):
            return self._poly_str(self.num)
        return f"({self._poly_str(self.num)})/({self._poly_str(self.den)})"


def sum_scalars(items, table):
    """Sum an iterable of Scalars, grouping by denominator first."""
    groups = {}
    for s in items:
        key = tuple(sorted(s.den.items()))
        if key in groups:
            groups[key] = (_padd(groups[key][0], s.num), s.den)
        else:
            groups[key] = (s.num, s.den)
    total = table.zero()
    for num, den in groups.values():
        total = total + Scalar(table, num, den)
    return total


class Substitution:
    """A named assignment of variables, composable and reusable."""

    def __init__(self, assignment, target=None):
        self.assignment = dict(assignment)
        self.target = target

    def __call__(self, s: Scalar) -> Scalar:
        return s.substitute(self.assignment, self.target)

    def compose(self, inner: "Substitution") -> "Substitution":
        """self after inner: (self.compose(inner))(s) == self(inner(s))."""
        out = {}
        for k, v in inner.assignment.items():
            out[k] = self(v) if isinstance(v, Scalar) else v
        for k, v in self.assignment.items():
            out.setdefault(k, v)
        return Substitution(out, self.target)
