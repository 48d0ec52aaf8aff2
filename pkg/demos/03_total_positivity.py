"""Totally nonnegative lower triangular matrices: cells, factorisations, braid moves."""
from fractions import Fraction as F

from itinlab.permgroup import reduced_word
from itinlab.trilat import ac_constants, braid_move, chart, factor_along_word, jacobi_product, tnn_cell

L = jacobi_product(3, (1, 2, 1, 3), [F(1), F(2), F(3), F(1, 2)])
print("product of elementary factors:")
for row in L.rows:
    print("   ", "  ".join(f"{str(v):>4}" for v in row))
s = tnn_cell(L)
print("cell:", s, " reduced word:", reduced_word(s))
print("parameters back:", [str(t) for t in factor_along_word(L, reduced_word(s))])

t = (F(1), F(2), F(3))
print("braid move", [str(v) for v in t], "->", [str(v) for v in braid_move(*t)])

L = chart(F(5), F(3), F(6))
c, ct = ac_constants(L)
print("along a1 a2 a1:", [str(v) for v in c])
print("along a2 a1 a2:", [str(v) for v in ct])
