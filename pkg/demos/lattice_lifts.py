"""
Lifting lines to dense planes
=============================

"""

from fractions import Fraction

from runnerspec.lattice import (
    certificate_profile,
    d_subtorus2,
    dense_sequence,
    kronecker_lift,
    shortest_projected_vector,
    slice_plane_to_line,
)
from runnerspec.loneliness import d_subtorus1

# the best plane through a line is spanned by the line and the integer
# vector with the shortest component orthogonal to it
v = (3, 7, 199)
x, p_sq = shortest_projected_vector(v)
print(f"shortest offset for {v}: {x}, squared distance {p_sq} from the line")

# the lift certificate: parallel orbit lines fill the plane torus to
# within sqrt(delta_sq), guaranteed once delta_sq <= epsilon^2
cert = kronecker_lift(v, epsilon=Fraction(1, 25))
print(f"delta_sq = {cert.delta_sq}  guaranteed = {cert.guaranteed}")

# the certificate is checkable by exact sampling of the plane torus
profile = certificate_profile(cert)
print(f"spacing identity: {profile.spacing_identity_ok},",
      f"worst sampled squared distance {profile.max_sample_sq}",
      f"(bound {cert.delta_sq})")

# going the other way: slicing a plane down to a line can only push the
# orbit farther from the center.  This basis spans the hyperplane with
# normal (1, 1, -1), which sits at distance 1/6.
u, w = (1, 0, 1), (0, 1, 1)
line = slice_plane_to_line(u, w)
print(f"slice of the plane <{u}, {w}>: {line}")
print(f"d1(line) = {d_subtorus1(line)} >= d2(plane) = {d_subtorus2(u, w)}")

# while the family u + j*w has members dropping back to the plane
# distance (j = 0 would give a zero coordinate, so start at 1)
for j in (1, 2, 4, 8):
    member = dense_sequence(u, w, j)
    print(f"j={j}: {member}  d1 = {d_subtorus1(member)}")
