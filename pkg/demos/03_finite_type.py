"""
Segre maps and finite type
==========================

Iterating v1 = Q(z, chi, Qbar(chi, z1, w)) along a chain of variables and
asking whether some v_j(.; 0) reaches generic rank d.  A certificate names a
minor and one nonzero coefficient of it, which anyone can re-expand.
"""

from formalcr import finite_type_search, normal_space, parse_series, revalidate_certificate
from formalcr import segre_vj, validate_normal_form


def manifold(*Q, n=1):
    sp = normal_space(n, len(Q))
    return validate_normal_form([parse_series(q, sp, 8) for q in Q])


lewy = manifold("tau1 + 2*i*z1*chi1")
print("v2 for Lewy:", segre_vj(lewy, 2).v[0])

cases = {
    "Lewy": lewy,
    "|z|^4": manifold("tau1 + 2*i*z1^2*chi1^2"),
    "codim 2": manifold("tau1 + 2*i*z1*chi1", "tau2 + 2*i*z1^2*chi1^2"),
    "flat": manifold("tau1"),
    "Lebl (1,2)": manifold("tau1*exp(i*z1*chi1)", "tau2*exp(i*2*z1*chi1)"),
}
for name, M in cases.items():
    v = finite_type_search(M, 3)
    line = f"{name:11} {v.status:12} ranks {v.ranks}"
    if v.certificate:
        c = v.certificate
        line += f"  minor {c.minor}  (coefficient {c.coefficient} at {c.monomial})"
        assert revalidate_certificate(M, v.j, c)
    print(line)
