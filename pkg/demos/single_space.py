"""Compute one moduli space four ways and print the agreement."""

from parbetti import Instance, applicable_methods, compute, make_data, moduli_dim

# genus 2 curve, one marked point with a full flag in rank 2,
# weights 0 < 1/3, degree 0
data = make_data([((1, 1), ("0", "1/3"))])
inst = Instance(genus=2, degree=0, data=data)

print(f"rank {data.rank}, genus {inst.genus}, degree {inst.degree}")
print(f"moduli dimension {moduli_dim(data, inst.genus)}")
print()

for method in applicable_methods(inst):
    res = compute(inst, method)
    print(f"{method:<10} betti {','.join(str(b) for b in res.betti)}")

res = compute(inst, "closed")
print()
print("Poincare polynomial coefficients by exponent:")
for e, c in sorted(res.poly.items()):
    print(f"  t^{e}: {c}")
