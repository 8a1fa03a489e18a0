"""Bundled algebra specifications used by tests, the CLI and the docs."""

from __future__ import annotations

from fractions import Fraction

from .free_algebra import AlgebraSpec
from .scalars import VarTable


def generic_spec(n, labels=None):
    """Fully generic spec: one independent invertible parameter per ordered pair."""
    labels = labels or [str(i + 1) for i in range(n)]
    names = [f"x{labels[i]}{labels[j]}" for i in range(n) for j in range(n)]
    table = VarTable(names)
    phi = {
        (i, j): table.var(f"x{labels[i]}{labels[j]}")
        for i in range(n)
        for j in range(n)
    }
    return AlgebraSpec(labels, table, phi)


def sigma1_spec():
    """Two generators on the surface x12*x21 = 1 (a grade-2 obstruction)."""
    table = VarTable(["x11", "x12", "x22"])
    phi = {
        (0, 0): table.var("x11"),
        (0, 1): table.var("x12"),
        (1, 0): table.var("x12", -1),
        (1, 1): table.var("x22"),
    }
    return AlgebraSpec(["1", "2"], table, phi)


def serre_surface_spec(k):
    """Two generators on the minimal Serre surface of order k.

    In difference-operator variables the surface is q^{k-1} sigma = 1 with
    q = q^{11}; in exponential variables that reads x21 = x11^{1-k} x12^{-1}.
    """
    table = VarTable(["x11", "x12", "x22"])
    x11 = table.var("x11")
    phi = {
        (0, 0): x11,
        (0, 1): table.var("x12"),
        (1, 0): x11 ** (1 - k) * table.var("x12", -1),
        (1, 1): table.var("x22"),
    }
    return AlgebraSpec(["1", "2"], table, phi)


def serre_surface_substitution(spec, alpha, beta, k):
    """The minimal surface substitution for a Serre constant on a generic spec."""
    la, lb = spec.generators[alpha], spec.generators[beta]
    table = spec.vars
    target_name = f"x{lb}{la}"
    image = spec.x(alpha, alpha) ** (1 - k) * spec.x(alpha, beta).inv()
    return {target_name: image}


def a1_affine_spec():
    """Affine two-generator spec on the full deformation surface.

    Single parameter q with x11 = x00 = q and x10 = x01 = 1/q; both
    ordered pairs (1,0) and (0,1) are then admissible deformation pairs,
    and the Cartan matrix is [[2,-2],[-2,2]].
    """
    table = VarTable(["q"])
    q = table.var("q")
    qi = table.var("q", -1)
    phi = {(0, 0): q, (0, 1): qi, (1, 0): qi, (1, 1): q}
    weights = {(0, 0): Fraction(1), (0, 1): Fraction(-1)}
    return AlgebraSpec(["1", "0"], table, phi, cartan_labels=["h"], weights=weights)


def sl2_finite_spec():
    table = VarTable(["q"])
    phi = {(0, 0): table.var("q")}
    return AlgebraSpec(["1"], table, phi)


def sl3_finite_spec():
    """Two generators with the A2 Cartan matrix on the one-parameter surface."""
    table = VarTable(["q"])
    q2 = table.var("q", 2)
    qi = table.var("q", -1)
    phi = {(0, 0): q2, (0, 1): qi, (1, 0): qi, (1, 1): q2}
    return AlgebraSpec(["1", "2"], table, phi)


def disjoint_twist_spec():
    """Four generators with two admissible pairs 1->3 and 2->4.

    The surface imposes exactly the admissibility characters
    x_{1b} x_{b3} = 1 and x_{2b} x_{b4} = 1 for every generator b; the
    remaining parameters stay free.
    """
    free = ["a11", "a12", "a21", "a22", "c31", "c32", "c41", "c42"]
    table = VarTable(free)
    v = table.var
    a = {(0, 0): v("a11"), (0, 1): v("a12"), (1, 0): v("a21"), (1, 1): v("a22")}
    x = {}
    # upper-left block free
    for k, s in a.items():
        x[k] = s
    x[(0, 2)] = a[(0, 0)].inv()          # x13 = 1/x11
    x[(0, 3)] = a[(1, 0)].inv()          # x14 = 1/x21
    x[(1, 2)] = a[(0, 1)].inv()          # x23 = 1/x12
    x[(1, 3)] = a[(1, 1)].inv()          # x24 = 1/x22
    x[(2, 0)] = v("c31")
    x[(2, 1)] = v("c32")
    x[(2, 2)] = a[(0, 0)]                 # x33 = x11 (from x13 x33 = 1/x11 * x33 ... )
    x[(2, 3)] = a[(0, 1)]                 # x34 = 1/x23 = x12
    x[(3, 0)] = v("c41")
    x[(3, 1)] = v("c42")
    x[(3, 2)] = a[(1, 0)]                 # x43 = 1/x14 = x21
    x[(3, 3)] = a[(1, 1)]                 # x44 = 1/x24 = x22
    return AlgebraSpec(["1", "2", "3", "4"], table, phi=x)


def transposed_spec(spec):
    """Same data with the pairing exponentials transposed."""
    phi = {
        (i, j): spec.x(j, i)
        for i in range(spec.n)
        for j in range(spec.n)
    }
    return AlgebraSpec(
        spec.generators,
        spec.vars,
        phi,
        cartan_labels=spec.cartan_labels,
        weights=spec.weights,
    )
