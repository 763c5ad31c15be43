"""
Spectra of center distances
===========================

"""

from fractions import Fraction

from runnerspec.spectrum import (
    EnumerationSpec,
    build_spectrum,
    verify_closed_form_s2,
    verify_window,
    accumulation_report,
    multiplicity_report,
)

# every proper primitive direction with v1^2+...+vn^2 <= 2000, one per
# permutation/sign class, mapped to its center distance
table = build_spectrum(EnumerationSpec(n=3, max_volume_sq=2000))
print(f"{len(table.entries)} distinct keys, {table.total_multiplicity()} orbits")

# the top of the spectrum: 1/4 from (1,2,3), then an accumulation toward 1/6
for key in table.keys_descending()[:6]:
    e = table.entries[key]
    print(f"d = {key}  x{e.multiplicity}  first witness {e.witnesses[0]}")

# all small loneliness values s/(3s+1): the proven n=3 window
report = verify_window(table, "strict")
print("window:", report.passed, report.class_counts)

# keys pile up toward 1/6 from above only
row = accumulation_report(table, [Fraction(1, 6)], Fraction(1, 100))[0]
print(f"near 1/6: {row.above_count} keys above, {row.below_count} below")

# repeated keys flag the values a whole plane family keeps hitting
for r in multiplicity_report(table, threshold=50)[:4]:
    tag = " (plane value)" if r.expected_unbounded else ""
    print(f"d = {r.key}: multiplicity {r.multiplicity}{tag}")

# the n=2 table is a solved closed form, a handy self-test
n2 = build_spectrum(EnumerationSpec(n=2, max_volume_sq=10**4))
print("n=2 closed form:", verify_closed_form_s2(n2).passed)
