"""Configurations: the validity condition and the per-axis Euclid towers.

Walks through three weight matrices: the standard symmetric instance, a
family with non-integer column ratios, and a matrix that fails the strict
dominance condition.
"""

from fractions import Fraction

from kuroda import (
    KurodaConfig,
    concrete_example,
    derive_constants,
    euclid_tower,
    validate,
)

# The standard instance: off-diagonal weights 3, diagonal magnitudes 1.
config = concrete_example()
report = validate(config)
print("signed rows:", [config.signed_row(i) for i in (1, 2, 3)])
print("condition value:", report.condition_value, "->", "valid" if report.valid else "invalid")
print("column minima d:", report.d)
for check in report.pair_checks:
    print(f"  pair ({check.i},{check.j}): {check.diagonal_product} < {check.cross_product}")

# Every valid configuration yields, per axis, the continued fraction of
# Q_i = d_i / delta_ii, a partition of {0..N_i} into blocks, and the two
# index sets that mark the boundary unions.
tower = euclid_tower(config)
for ax in tower.axes:
    print(
        f"axis {ax.axis}: quotients {list(ax.q)}, blocks {[list(b) for b in ax.blocks]},"
        f" j1 {sorted(ax.j1)}, j2 {sorted(ax.j2)}"
    )

# A family whose ratio is 7/2: the continued fraction [3; 2] produces two
# blocks, and the two index sets no longer coincide.
family = KurodaConfig.from_signed([[-2, 7, 7, 0], [7, -2, 7, 0], [7, 7, -2, 0]], 1)
print("\nfamily with ratio 7/2:", validate(family).condition_value)
constants = derive_constants(family)
print("ratios:", constants.q_ratio)
ax = euclid_tower(family).axis(1)
print("axis 1 quotients:", list(ax.q), "blocks:", [list(b) for b in ax.blocks])
print("j1:", sorted(ax.j1), " j2:", sorted(ax.j2), " (difference:", sorted(ax.j1 - ax.j2), ")")

# The all-ones matrix fails: the dominance sum reaches 3/2.
flat = {"delta": [[-1, 1, 1, 0], [1, -1, 1, 0], [1, 1, -1, 0]], "gamma": 1}
bad = validate(flat)
print("\nall-ones matrix:", bad.condition_value, "->", "valid" if bad.valid else "invalid")
assert bad.condition_value == Fraction(3, 2)

# A broken sign pattern is a verdict, not an exception.
report = validate({"delta": [[1, 3, 3, 0], [3, -1, 3, 0], [3, 3, -1, 0]], "gamma": 1})
print("sign-pattern verdict:", report.sign_ok, report.sign_issues[0])
