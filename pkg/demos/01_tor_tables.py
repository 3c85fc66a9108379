"""
Multigraded Tor tables of monomial ideals
=========================================

Everything in this library is graded by exponent vectors in N^n.  A monomial
ideal is a minimal antichain of such vectors, a quotient R/I contributes a
one-dimensional piece at every degree outside I, and Tor modules of several
quotients are computed fiberwise over a finite "stability box" beyond which
nothing changes.
"""

from homotor import (
    MonomialIdeal,
    betti_table,
    family_box,
    iter_box,
    multi_tor,
    taylor_resolution,
    tor1_oracle,
)

# Two ideals in k[x, y]: the maximal ideal and (x^2, xy).
m = MonomialIdeal(2, [(1, 0), (0, 1)])
i = MonomialIdeal(2, [(2, 0), (1, 1)])
print("m  =", m)
print("i  =", i)

# The Taylor resolution of R/i: basis = subsets of the generators, twisted
# by their least common multiples.
t = taylor_resolution(i)
print("\nTaylor resolution of R/i:", t)
for deg, summands in sorted(t.terms.items()):
    print(f"  degree {deg}: shifts {[tuple(s.shift) for s in summands]}")

# Tor of the pair (R/m, R/i): a table of dimensions indexed by homological
# degree and multidegree.  The box is where all the action happens.
table = multi_tor([m, i])
print("\nTor(R/m, R/i) over box", tuple(table.box))
for rec in table.records():
    print("  Tor_%d at %s has dimension %d" % (rec["i"], rec["degree"], rec["dim"]))

# Tor_1 has a resolution-free description: tuples in the direct sum of the
# ideals summing to zero, modulo the pairwise product relations.  The two
# computations agree degree by degree.
oracle = tor1_oracle([m, i])
box = family_box([m, i])
agree = all(table.dim(1, g) == oracle.dim(1, g) for g in iter_box(box))
print("\nTor_1 oracle agrees with the resolution computation:", agree)

# Betti numbers, projective dimension, depth and the Cohen-Macaulay test.
for ideal, name in ((m, "R/m"), (i, "R/(x^2,xy)")):
    b = betti_table(ideal)
    print(f"\n{name}: pd = {b.pd}, depth = {b.depth}, dim = {b.dim}, "
          f"Cohen-Macaulay = {b.is_cm}")
    for rec in b.betti.records():
        print(f"  beta_{rec['i']} at {rec['degree']} = {rec['dim']}")
