"""Signs attached to permutations, and the lifted group they live in.

The canonical product is checked against an independent Clifford
multivector computation.
"""
import random

from itinlab.permgroup import all_perms, eta, parse_perm
from itinlab.spinsign import acute, group_mul, hat_perm, oracle_mul, pi_matrix

print("hat [7245136] =", hat_perm(parse_perm("[7245136]")))
for n in range(1, 11):
    print(f"  n={n:2d}  hat(top) = {hat_perm(eta(n))}")

# permutations of S4 grouped by their sign
fibres = {}
for s in all_perms(3):
    fibres.setdefault(str(hat_perm(s)), []).append(str(s))
for q, members in sorted(fibres.items()):
    print(f"{q:>8}: {' '.join(members)}")

z = acute(parse_perm("[aba]"))
print("signed matrix of the lifted top element (n=2):")
for row in pi_matrix(z):
    print("   ", " ".join(f"{v:2d}" for v in row))

rnd = random.Random(0)
perms = list(all_perms(3))
agree = sum(group_mul(acute(a), acute(b)) == oracle_mul(acute(a), acute(b))
            for a, b in ((rnd.choice(perms), rnd.choice(perms)) for _ in range(200)))
print(f"canonical vs multivector product: {agree}/200 agree")
