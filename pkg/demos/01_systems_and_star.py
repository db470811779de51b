"""Build Rota-Baxter systems, check the axioms, and form the star product.

Run from the repository root after installing:  python3 demos/01_systems_and_star.py
"""

from rbsys import (
    QQ,
    Algebra,
    Matrix,
    RotaBaxterSystem,
    check_rbs,
    from_rb_operator,
    orthogonality_criterion,
    star_algebra,
)

# The smallest playground: the unital line K with its only product 1*1 = 1.
line = Algebra(QQ, 1, [[[1]]])
one = Matrix.identity(QQ, 1)
zero = Matrix.zeros(QQ, 1, 1)

print("== operator pairs on the unital line ==")
print("(id, 0):", check_rbs(RotaBaxterSystem(line, one, zero)).describe())
print("(id, id):", check_rbs(RotaBaxterSystem(line, one, one)).describe())
# the failing verdict names the equation, the basis pair, and both sides

# A weight-lambda operator produces two systems at once.
print("\n== systems from a weight-1 operator ==")
s1, s2 = from_rb_operator(line, -one, 1)
print("first: R =", s1.R.entries(), " S =", s1.S.entries(), "->", check_rbs(s1).describe())
print("second: R =", s2.R.entries(), " S =", s2.S.entries(), "->", check_rbs(s2).describe())

# A 3-dimensional example: upper-triangular 2x2 matrices with basis
# e0 = E11, e1 = E12, e2 = E22.  Right multiplication by e1 is a left
# module map, left multiplication by e1 a right module map, and the pair
# annihilates through the product, so the operator equations hold.
mult = [[[0] * 3 for _ in range(3)] for _ in range(3)]
mult[0][0][0] = 1  # E11 E11 = E11
mult[0][1][1] = 1  # E11 E12 = E12
mult[1][2][1] = 1  # E12 E22 = E12
mult[2][2][2] = 1  # E22 E22 = E22
tri = Algebra(QQ, 3, mult)
R = Matrix.from_rows(QQ, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])  # a -> a e1
S = Matrix.from_rows(QQ, [[0, 0, 0], [0, 0, 1], [0, 0, 0]])  # a -> e1 a
tri_sys = RotaBaxterSystem(tri, R, S)

print("\n== triangular example ==")
print("axioms:", check_rbs(tri_sys).describe())
report = orthogonality_criterion(tri, R, S)
print("R left-linear:", report.r_left_linear, " S right-linear:", report.s_right_linear)
print("annihilation criterion:", report.criterion_holds)
print("operators orthogonal (R S = S R = 0):", report.operators_orthogonal)

# The star product a * b = R(a) b + a S(b) is associative for any system.
star = star_algebra(tri_sys)
print("\n== star product structure constants (nonzero ones) ==")
for i in range(3):
    for j in range(3):
        for k in range(3):
            c = star.constant(i, j, k)
            if c:
                print(f"  e{i} * e{j} -> {c} e{k}")
