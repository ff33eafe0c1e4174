"""Membership: the exponent monoid, its minimal generators, and the ring.

Everything here is exact integer/rational arithmetic, and every verdict is
computed by two independent routes that must agree.
"""

from kuroda import (
    concrete_example,
    enumerate_t_generators,
    expand_y_to_x,
    in_r_oracle,
    in_r_star,
    monoid_member,
    monoid_member_oracle,
    parse_polynomial,
    polynomial_to_text,
    star_violations,
)

config = concrete_example()

# Monoid membership: the inequality route vs the expansion route.  The
# expansion route maps a y-exponent vector to its ambient x-exponents and
# demands nonnegativity.
for n in [(1, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 5), (2, 1, 0, 0)]:
    print(
        f"n = {n}: inequalities {monoid_member(n, config)}, "
        f"expansion {monoid_member_oracle(n, config)}, x-image {expand_y_to_x(n, config)}"
    )

# Minimal generators by exhaustive splitting.  For this instance the basis
# is complete at degree 4; the counts plateau from there on.
for bound in (1, 2, 4, 8):
    listing = enumerate_t_generators(config, bound)
    print(f"degree bound {bound}: {listing.count()} generators")
listing = enumerate_t_generators(config, 4)
print("the full basis:", [list(g) for g in listing.generators])

# Ring membership: support-slope route vs full-expansion route.
candidates = [
    "1",
    "P1",
    "P1*P2*P3",
    "(P1-P2)*(P2-P3)*(P3-P1)",
]
for text in candidates:
    f = parse_polynomial(text)
    star, oracle = in_r_star(f, config), in_r_oracle(f, config)
    assert star == oracle
    print(f"{text:30s} in ring: {star}")

# The slope route reports every violating support triple, per axis.
f = parse_polynomial("P1*P2*P3")
print("expanded:", polynomial_to_text(f))
for violation in star_violations(f, config):
    print(
        f"  axis {violation.axis}: triple {violation.triple} "
        f"breaks {violation.lhs} <= {violation.rhs}"
    )
