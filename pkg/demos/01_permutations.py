"""Permutation statistics, covers and the join used for letters.

Run: python3 demos/01_permutations.py
"""
from itinlab.permgroup import covers, eta, format_mult, multiplicity, parse_perm, reduced_word, vee

s = parse_perm("[432156]")
print("sigma         ", s)
print("inversions    ", s.inv)
print("multiplicities", format_mult(multiplicity(s)))
print("reduced word  ", " ".join(f"a{i}" for i in reduced_word(s)))

# covers one step up change a single block of multiplicities
t = parse_perm("[2413]")
for up in sorted(covers(t, "succ"), key=lambda p: p.images):
    print(f"{t} < {up}   mult {format_mult(multiplicity(t))} -> {format_mult(multiplicity(up))}")

# two letters whose join is already the top element
j = vee(parse_perm("[2413]"), parse_perm("[2431]"))
print("join:", j, "(top element)" if j == eta(3) else "")
