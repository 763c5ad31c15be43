"""
Volume thresholds with rational pi enclosures
=============================================

"""

from fractions import Fraction

from runnerspec.lattice import (
    REFINED_PI_BOUNDS,
    ball_volume,
    lift_volume_threshold,
    lrc_threshold,
    threshold_below_power_bound,
)


def show(p):
    # c * pi^e as a compact exact string
    if p.pi_power == 0:
        return str(p.coefficient)
    tail = "pi" if abs(p.pi_power) == 1 else f"pi^{abs(p.pi_power)}"
    return f"{p.coefficient}{'/' if p.pi_power < 0 else '*'}{tail}"


# unit-ball volumes stay exact as coefficient * pi^power
for k in range(5):
    print(f"omega_{k} = {show(ball_volume(k))}")

# above this squared volume, every n-torus line orbit is epsilon-dense
# in a surrounding plane; n=2 and n=3 come out in closed form
print("lrc_threshold(2) =", show(lrc_threshold(2)))
thr = lrc_threshold(3)
lo, hi = thr.bounds()
print(f"lrc_threshold(3) = {show(thr)} in [{lo}, {hi}]")
print(f"                 = [{float(lo):.9f}, {float(hi):.9f}]")

# a tighter pi enclosure narrows the interval without touching the code
lo, hi = thr.bounds(REFINED_PI_BOUNDS)
print(f"refined          = [{float(lo):.9f}, {float(hi):.9f}]")

# the general-n threshold stays below n^(5n/2), checked by logarithms
# against the rational pi bounds
print("threshold < n^(5n/2) for n=2..12:",
      all(threshold_below_power_bound(n) for n in range(2, 13)))

# the tail cutoff used by the absence certificate: radius 2/25 forces
# squared volume 625/pi, just under 199
c_star = lift_volume_threshold(3, 1, Fraction(2, 25))
print(f"c_star(3, 1, 2/25) = {show(c_star)} = {c_star.decimal():.4f}")
