"""
Truncated power series over Q(i)
================================

Every object in the package is a series in named variables, exact through a
total-degree bound K.
"""

from formalcr import VariableSpace, make_block, parse_series

sp = VariableSpace([make_block("z", "z", 1), make_block("chi", "chi", 1)])

f = parse_series("1 + i*z1", sp, 4)
g = parse_series("1 - i*z1", sp, 4)
print("(1 + iz)(1 - iz) =", f * g)

# geometric series: inversion needs a nonzero constant term
print("1/(1 - z)       =", parse_series("1 - z1", sp, 4).invert())

# exp only accepts arguments without constant term
e = parse_series("i*z1*chi1", sp, 4).exp()
print("exp(i z chi)    =", e)

# derivatives lose one degree of faithfulness
d = e.derivative("chi1")
print("d/dchi          =", d, f"(exact through degree {d.K})")

# substitution: chi -> chi + z^2
print("exp(i z (chi + z^2)) =", e.compose({"chi1": parse_series("chi1 + z1^2", sp, 4)}))
