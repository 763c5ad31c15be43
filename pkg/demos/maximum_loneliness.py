"""
Maximum loneliness of integer speed tuples
==========================================

"""

from fractions import Fraction

# the core query: how far from every runner can the origin-based walker get?
from runnerspec.loneliness import max_loneliness, d_subtorus1

for speeds in [(1,), (1, 2), (2, 3), (1, 2, 3), (1, 3, 4)]:
    res = max_loneliness(speeds)
    print(f"ML{speeds} = {res.ml}  at time t = {res.witness_time}")

# the gap to 1/2 is the center distance of the orbit closure in the torus
print("d(1,2,3) =", d_subtorus1((1, 2, 3)))

# the four-speed family that dips below the conjectured bound 1/5:
# ML(8, 4r+3, 4r+11, 4r+19) = (2r+7)/(8r+30), strictly under 1/4 + epsilon
for r in range(4):
    speeds = (8, 4 * r + 3, 4 * r + 11, 4 * r + 19)
    res = max_loneliness(speeds)
    expected = Fraction(2 * r + 7, 8 * r + 30)
    print(f"r={r}: ML{speeds} = {res.ml}  (closed form {expected})")

# signs and permutations never matter, duplicates collapse
print(max_loneliness((3, -2)).ml, "==", max_loneliness((2, 3)).ml)
print(max_loneliness((1, 1, 2)).ml, "==", max_loneliness((1, 2)).ml)
