# What no selector can do: closed-form Hamming-risk lower bounds.
#
# For s-sparse signals with active magnitudes at least a, the minimax
# Hamming risk is bounded below by a two-term formula built from the normal
# CDF. Tabulating it over (n, s, level) grids exposes the phase structure:
# weak signals sit in an impossibility region, a middle band carries an
# informative positive bound, and strong signals make the bound vacuous
# (recovery is simply possible there).

from hullselect import (
    BoundQuery,
    PHASE_CSV_HEADER,
    coordinate_risk,
    hamming_risk_lower_bound,
    phase_row_csv,
    phase_table,
    separation_for_level,
)

# The per-coordinate risk term collapses nicely at n = 2s and decays with
# the separation a.
print("per-coordinate risk at n=2s:")
for a in (0.5, 1.0, 2.0, 4.0, 8.0):
    q = BoundQuery(n=200, s=100, a=a, sigma=1.0)
    print(f"  a={a:>4}: {coordinate_risk(q):.6f}")

print("\nbound in the weak-signal regime (grows linearly in s):")
for s in (20, 40, 80, 160):
    n = 50 * s
    a = separation_for_level(n, s, 1.0, 1.0)
    lb = hamming_risk_lower_bound(BoundQuery(n=n, s=s, a=a, sigma=1.0))
    print(f"  n={n:>5} s={s:>4}: bound {lb.value:9.3f}  per-active {lb.value / s:.3f}")

print("\nphase table:")
print(PHASE_CSV_HEADER)
for row in phase_table([1000], [20, 50], [0.5, 2.0, 8.0], 1.0):
    print(phase_row_csv(row))
