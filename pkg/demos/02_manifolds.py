"""
Manifolds in normal coordinates
===============================

A manifold is the graph w = Q(z, chi, tau).  Validation checks normality and
the reality identity, and reports the lowest monomial where either fails.
"""

from formalcr import NotNormalForm, NotReal, normal_space, parse_series, validate_normal_form
from formalcr.manifold import conjugate_Q

sp = normal_space(1, 1)
lewy = validate_normal_form([parse_series("tau1 + 2*i*z1*chi1", sp, 8)], name="lewy")
print("Lewy Q    =", lewy.Q[0])
print("Lewy Qbar =", conjugate_Q(lewy)[0])

for bad in ["tau1 + z1^2", "tau1 + z1*chi1"]:
    try:
        validate_normal_form([parse_series(bad, sp, 8)])
    except (NotNormalForm, NotReal) as exc:
        print(f"{bad:16} -> {type(exc).__name__}: {exc.identity} at {exc.monomial}")

# the Lebl family: w_k = conj(w_k) exp(i p_k |z|^2)
sp2 = normal_space(1, 2)
Q = [parse_series(f"tau{k}*exp(i*{p}*z1*chi1)", sp2, 6) for k, p in [(1, 1), (2, 2)]]
lebl = validate_normal_form(Q, name="lebl12")
for k, q in enumerate(lebl.Q, start=1):
    print(f"Lebl Q{k} =", q)
