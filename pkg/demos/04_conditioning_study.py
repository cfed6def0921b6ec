"""Conditioning study on the integer family.

Three effects show up as the dimension grows past 10:

* intended real eigenvalues collapse into complex pairs ("bifurcations"),
* the quotient method driven by individual poles (algebroid1) is
  sensitive to the order in which the poles are presented, while the
  chain method (algebroid2) consumes only polynomial coefficients and is
  bitwise order-invariant,
* dropping to 32-bit arithmetic moves the failure boundary down to n = 8.
"""

from poleplace.bench import ExampleFamily, render_table, run_suite
from poleplace.linalg import BITS32, BITS64

print("== 64-bit, forward pole order (-1, -2, ..., -n) ==")
records = run_suite([ExampleFamily("integer", n) for n in (10, 11, 12)],
                    ["algebroid1", "algebroid2"], [BITS64], ["forward"])
print(render_table(records))

print("== 64-bit, n = 11, forward vs reversed order ==")
records = run_suite([ExampleFamily("integer", 11)],
                    ["algebroid1", "algebroid2"], [BITS64],
                    ["forward", "reversed"])
print(render_table(records))
by = {(r.algorithm, r.pole_order): r for r in records}
same = by[("algebroid2", "forward")].gain == by[("algebroid2", "reversed")].gain
print(f"algebroid2 gain bitwise identical under reversal: {same}")
print()

print("== n = 8, 32-bit vs 64-bit placement (evaluation always 64-bit) ==")
records = run_suite([ExampleFamily("integer", 8)],
                    ["algebroid1", "algebroid2"], [BITS32, BITS64], ["forward"])
print(render_table(records))

print("== static context: a commercial placement routine on the same runs ==")
from poleplace.bench import REFERENCE_COMMERCIAL_SPECTRA  # noqa: E402

for n, spectrum in sorted(REFERENCE_COMMERCIAL_SPECTRA.items()):
    pairs = sum(1 for z in spectrum if complex(z).imag > 1e-9)
    print(f"  n = {n}: {pairs} complex pairs "
          f"(worst real error {max(abs(complex(z).real - t) for z, t in zip(sorted(spectrum, key=lambda z: complex(z).real), sorted(-(k + 1.0) for k in range(n)))):.2e})")
print("  (fixture data only; that implementation is not reproducible here)")
