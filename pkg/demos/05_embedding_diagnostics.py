"""Mapping-space embedding diagnostics.

Each object A yields a presheaf: its value at B is the zigzag mapping
space B ~> A, and marked maps act by precomposition into the zigzag
legs.  The verifier certifies that marked maps induce levelwise
component bijections and homology isomorphisms (through the algebraic
mapping cone), and that component counts agree with the homotopy
category's hom-sets.
"""

from pmcat.fixtures import build
from pmcat.relcat import RelCategory
from pmcat.sset import pi0
from pmcat.yoneda import (
    yoneda_object, check_presheaf_action, verify_yoneda_relative,
)

iw = build("Iw")
print("== the presheaf of an object ==")
y1 = yoneda_object(iw.rc, "1", 2)
for b in iw.rc.cat.objects:
    print(f"  value at {b}: {y1.values[b].size(0)} zigzags, "
          f"{len(pi0(y1.values[b]))} component(s)")
print("action table lawful:", check_presheaf_action(iw.rc, y1) == [])

print()
print("== a marked map induces equivalences of values ==")
report = verify_yoneda_relative(iw.rc, 2, pms=iw)
print(f"Iw: {'pass' if report.passed else 'FAIL'} "
      f"({report.checked_weqs} marked map(s), {report.checked_pairs} hom pairs)")
for note in report.notes:
    print("  note:", note)

print()
print("== across the whole fixture library ==")
from pmcat.fixtures import FIXTURES
for name in FIXTURES:
    value = build(name)
    if isinstance(value, RelCategory):
        rc, pms = value, None
    else:
        rc, pms = value.rc, value
    rep = verify_yoneda_relative(rc, 1, pms=pms)
    mode = "homotopy category" if pms is not None else "word oracle"
    print(f"  {name:3} {'pass' if rep.passed else 'FAIL'}  (hom comparison via {mode})")
