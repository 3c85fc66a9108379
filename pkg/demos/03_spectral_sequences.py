"""
Spectral sequences of multicomplexes
====================================

Tensoring the Taylor resolutions of an ideal family gives an N^n-indexed
multicomplex with commuting differentials.  Four filtrations of natural
constructions on it (the Koszul cone, its hypercube-augmented version, the
support-count filtration and its augmentation) produce convergent spectral
sequences; two more arise from the Mayer-Vietoris double complexes built
from the sum and product complexes.  All pages are computed fiberwise over
GF(p) and convergence is checked against the homology of the total complex.
"""

from homotor import (
    MonomialIdeal,
    Multidegree,
    build_filtration,
    mv_double,
    pages,
    taylor_resolution,
    tensor,
)

m = MonomialIdeal(2, [(1, 0), (0, 1)])
family = [m, m]
multi = tensor([taylor_resolution(i) for i in family])
gamma = Multidegree((1, 1))

for kind in ("kcone", "kcone_augmented", "interior", "interior_augmented"):
    pg = pages(build_filtration(multi, gamma, kind))
    print(f"{kind:20s} E1 = {pg.e1}")
    print(f"{'':20s} E_inf = {pg.e_infinity}, stabilized at page {pg.r_stab}, "
          f"convergent = {pg.converged}")

# The Mayer-Vietoris double complexes relate Tor against sums of subfamilies
# to Tor against products.  First pages list those Tor dimensions; the
# abutment is the homology of the total complex.
origin = Multidegree((0, 0))
print("\nsum-to-product double complex at", tuple(origin))
pg = mv_double("sum_to_product", family, None, origin)
print("  E1:", pg.e1)
print("  E_inf by total degree:", pg.total_dims())

print("\nproduct-to-sum double complex at", tuple(origin))
pg = mv_double("product_to_sum", family, None, origin)
print("  E1:", pg.e1)
print("  E_inf by total degree:", pg.total_dims())

# The classical pair bookkeeping: the abutment of the sum-to-product
# sequence carries R/(I cap J), so Tor_1 = R/IJ minus that, degree by
# degree.  For (x),(x) in one variable at degree (1,): dim R/x^2 = 1 and
# dim R/x = 0, leaving one class of Tor_1.
from homotor import combine, multi_tor

x = MonomialIdeal(1, [(1,)])
pair = [x, x]
inter = combine(pair, "intersection")
prod = combine(pair, "product")
for g in ((0,), (1,)):
    pg = mv_double("sum_to_product", pair, None, Multidegree(g))
    h1 = pg.total_dims().get(1, 0)
    dim_rij = 0 if prod.contains(g) else 1
    print(f"degree {g}: H_1(total) = {h1} = dim R/(x cap x), "
          f"Tor_1 = {dim_rij - h1} = {multi_tor(pair).dim_stable(1, g)}")
