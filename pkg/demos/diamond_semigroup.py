"""Which counts hom(diamond, G) are realisable?

The small spectrum {0, 6, 16, 48} generates a numerical semigroup. Past
its threshold every even number is hit by a disjoint union of small hosts.
"""

from homrec import bezout_threshold, diamond, single_hom_decide, small_spectrum

D = diamond()
spec = small_spectrum(D)
print("spectrum", spec.values)

data = bezout_threshold([6, 16])
print("gcd", data.gcd, "threshold", data.threshold, "gaps", data.gaps)

for h in (6, 3, 20, 134, 10 ** 12):
    v = single_hom_decide(D, h)
    print(h, v.status, v.recipe if v.recipe and len(str(v.recipe)) < 80 else "", v.reason)
