"""Words, their boundaries, and a finite piece of the cell complex they index."""
from itinlab.cwcomplex import build_skeleton, components, dd_is_zero, hat_partition_agrees
from itinlab.words import boundary, chain_str, edge_endpoints, normal_form, parse_word

for w in ("[ba]", "a[ba]", "[aba]", "[ba][ab]"):
    print(f"d {w:10s} = {chain_str(boundary(parse_word(w, 2)))}")
print("d [ac]b[ac] =", chain_str(boundary(parse_word("[ac]b[ac]", 3))))
lo, hi = edge_endpoints(parse_word("[ac]", 3))
print("edge [ac] runs from", lo, "to", hi)
print("normal form of abab:", normal_form(parse_word("abab")))

for n in (2, 3):
    c = build_skeleton(n, 7)
    comp = components(c, 4)
    print(f"n={n}: cells {c.sizes()}, dd = 0: {dd_is_zero(c)}, components {comp.count},"
          f" same component iff same sign: {hat_partition_agrees(c, comp)}")
    print("   representatives:", " ".join(str(w) or "()" for w in comp.representatives))
