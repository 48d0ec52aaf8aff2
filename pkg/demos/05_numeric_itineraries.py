"""Recovering an itinerary from floating-point frames and comparing with the exact one."""
from fractions import Fraction as F

import numpy as np
import sympy as sp

from itinlab.bruhat import frenet_itinerary, lu_chart
from itinlab.permgroup import parse_perm
from itinlab.polycurve import T, itinerary_at, transversal_family

s = parse_perm("[aba]")
M = transversal_family(s)
for x in [(F(-1), F(-1, 4)), (F(1, 3), F(2))]:
    f = sp.lambdify(T, M.matrix().subs(dict(zip(M.xs, map(sp.Rational, x)))), "numpy")
    num = frenet_itinerary(lambda t: lu_chart(np.array(f(t), dtype=float)), -6.0, 6.0, samples=1200)
    exact = itinerary_at(s, x)
    print("x =", tuple(map(str, x)))
    for a, b in zip(num, exact):
        print(f"   {str(b.letter):8s} numeric t = {a.t:+.12f}   exact t = {b.root.approx():+.12f}")
