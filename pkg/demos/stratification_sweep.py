#!/usr/bin/env python3
"""
Flow every four-dimensional family to its critical point and tabulate where
each one lands.  Sixteen families go in; the limits take only six values,

    4/3 < 2 < 3 < 4 < 6 < 12,

each with a fixed rational type, so the families organize into six strata
ordered by the limit energy.  The semisimple one (sl2+C) sits at the bottom,
the "most nilpotent" one (n3+C, a heisenberg bracket plus a line) at the top.
The zero bracket C4 is skipped: the functional is undefined there.

Run time is a couple of seconds; every flow certifies its limit by the
residual test, so a FAILED row would mean a real regression.
"""
from fractions import Fraction

from skewflow import (
    DEFAULT_PARAMS,
    DIM4_FAMILY_NAMES,
    FlowParams,
    critical_value,
    dim4_family,
    flow,
)

params = FlowParams(max_steps=100_000)

print(f"{'family':<8} {'params':<12} {'steps':>6} {'limit F':>12} "
      f"{'exact':>6}  type")
print("-" * 64)

by_value = {}
for name in DIM4_FAMILY_NAMES:
    entry = dim4_family(name, DEFAULT_PARAMS.get(name, ()))
    if entry.tensor.is_zero():
        print(f"{name:<8} {'':<12} {'-':>6} {'(zero bracket)':>12}")
        continue
    trace = flow(entry.tensor, params)
    assert trace.converged, f"{name} did not certify"
    f_limit = trace.samples[-1][1]
    exact = critical_value(trace.stratum)
    p = ",".join(f"{x.real:g}" for x in entry.params)
    print(f"{name:<8} {p:<12} {trace.samples[-1][0]:>6} {f_limit:>12.8f} "
          f"{str(exact):>6}  {trace.stratum}")
    by_value.setdefault(exact, []).append(name)

print()
print("strata by limit value:")
for value in sorted(by_value):
    members = ", ".join(by_value[value])
    print(f"  F = {str(value):>4}: {members}")

expected = [Fraction(4, 3), Fraction(2), Fraction(3), Fraction(4),
            Fraction(6), Fraction(12)]
assert sorted(by_value) == expected, "stratification changed!"
print("\nsix strata, as expected.")
