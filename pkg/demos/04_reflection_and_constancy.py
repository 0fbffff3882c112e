"""
Real-valued maps and constancy
==============================

H = N/D is real on M when Dbar(chi,tau) N(z,Q) = Nbar(chi,tau) D(z,Q).  On a
manifold of finite type such an H must be constant; the Lebl manifolds are of
infinite type and carry the non-constant real map w1^q / w2^p.
"""

from formalcr import (
    MeromorphicMap,
    check_real_on_M,
    compute_unit_a,
    decide_constancy,
    enumerate_real_holomorphic,
    map_space,
    normal_space,
    parse_series,
    validate_normal_form,
    verify_cross_identity,
)


def manifold(*Q):
    sp = normal_space(1, len(Q))
    return validate_normal_form([parse_series(q, sp, 8) for q in Q])


def hmap(N, D, d=1):
    sp = map_space(1, d)
    return MeromorphicMap.make([parse_series(N, sp, 8)], parse_series(D, sp, 8))


lewy = manifold("tau1 + 2*i*z1*chi1")
lebl = manifold("tau1*exp(i*z1*chi1)", "tau2*exp(i*2*z1*chi1)")

r = check_real_on_M(lewy, hmap("w1", "1"))[0]
print("w on Lewy real?", r.holds, "first failure at", r.monomial_text,
      f"({r.lhs_coefficient} vs {r.rhs_coefficient})")

H = hmap("w1^2", "w2", d=2)
print("w1^2/w2 on Lebl real?", all(check_real_on_M(lebl, H)),
      "cross identity:", all(verify_cross_identity(lebl, H)))

print("unit a for 0/(1+w) on Lewy:", compute_unit_a(lewy, hmap("0", "1 + w1")))

for M, H, label in [(lewy, hmap("1", "2"), "1/2 on Lewy"),
                    (lewy, hmap("w1", "1"), "w on Lewy"),
                    (lebl, H, "w1^2/w2 on Lebl")]:
    v = decide_constancy(M, H, 3)
    print(f"{label:16} -> {v.constant.value}", [str(x) for x in v.value or []])

# independent check: solve the linear system for all real numerators of degree <= 3
space = enumerate_real_holomorphic(lewy, None, 3)
print("real polynomials on Lewy, degree <= 3:", [str(b) for b in space.basis])
