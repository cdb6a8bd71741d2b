"""The .relcat document format.

A line-oriented plain-text description of a relative category,
optionally with calculus data.  Directives:

    relcat-version 1
    object <id>
    morphism <id> <src> <tgt>
    compose <f> <g> <h>          # h is g after f; non-identity pairs
    weq <morphism>               # identities are implicitly marked
    u <morphism>                 # identities implicit
    v <morphism>                 # identities implicit
    factor <w> <u> <mid> <v>     # w = v.u through the object <mid>
    middle <w> <w2> <a> <b> <m>  # middle map of the square (a, b)

Blank lines and ``#`` comments are ignored.  Identity morphisms are
auto-generated with the reserved ids ``id:<object>``.  A document with
any u/v/factor/middle line parses to a calculus structure, otherwise to
a raw relative category; omitting weq lines leaves only the identities
marked.

The serializer emits a canonical form (fixed directive order, input
order within each block), so parse -> serialize -> parse is the
identity on documents and serializer output round-trips byte-exactly.
"""

from .fincat import FinCategory, StructuralError, CategoryLawError, ID_PREFIX
from .relcat import RelCategory
from .pmc import PartialModelStructure

FORMAT_VERSION = "1"


class DocumentError(ValueError):
    """Parse-level failure; carries the offending line number."""

    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


def parse_document(text, origin="<string>"):
    """Parse a .relcat document.

    Returns a PartialModelStructure when calculus data is present, else
    a RelCategory.  Identities are inserted, the category laws are
    validated, and every unresolved id is reported with its line.
    """
    objects = []
    morphisms = []
    comp = {}
    weq = []
    u_sub, v_sub = [], []
    factor = {}
    middle = {}
    has_calculus = False
    seen_version = False
    declared = set()
    mor_ids = set()
    line_of = {}

    def need(line_no, parts, n, usage):
        if len(parts) != n:
            raise DocumentError(line_no, f"expected '{usage}'")

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "relcat-version":
            need(line_no, parts, 2, "relcat-version 1")
            if parts[1] != FORMAT_VERSION:
                raise DocumentError(line_no, f"unsupported version {parts[1]}")
            seen_version = True
        elif head == "object":
            need(line_no, parts, 2, "object <id>")
            if parts[1] in declared:
                raise DocumentError(line_no, f"object {parts[1]} declared twice")
            declared.add(parts[1])
            objects.append(parts[1])
        elif head == "morphism":
            need(line_no, parts, 4, "morphism <id> <src> <tgt>")
            mid, src, tgt = parts[1:]
            if mid in mor_ids:
                raise DocumentError(line_no, f"morphism {mid} declared twice")
            if mid.startswith(ID_PREFIX):
                raise DocumentError(line_no, f"{ID_PREFIX} ids are reserved for identities")
            mor_ids.add(mid)
            line_of[mid] = line_no
            morphisms.append((mid, src, tgt))
        elif head == "compose":
            need(line_no, parts, 4, "compose <f> <g> <h>")
            f, g, h = parts[1:]
            if (f, g) in comp and comp[(f, g)] != h:
                raise DocumentError(line_no, f"conflicting composite for ({f}, {g})")
            comp[(f, g)] = h
            line_of[(f, g)] = line_no
        elif head == "weq":
            need(line_no, parts, 2, "weq <morphism>")
            weq.append(parts[1])
            line_of[("weq", parts[1])] = line_no
        elif head == "u":
            need(line_no, parts, 2, "u <morphism>")
            u_sub.append(parts[1])
            has_calculus = True
        elif head == "v":
            need(line_no, parts, 2, "v <morphism>")
            v_sub.append(parts[1])
            has_calculus = True
        elif head == "factor":
            need(line_no, parts, 5, "factor <w> <u> <mid> <v>")
            factor[parts[1]] = (parts[2], parts[3], parts[4])
            has_calculus = True
        elif head == "middle":
            need(line_no, parts, 6, "middle <w> <w2> <a> <b> <m>")
            middle[(parts[1], parts[2], parts[3], parts[4])] = parts[5]
            has_calculus = True
        else:
            raise DocumentError(line_no, f"unknown directive '{head}'")

    if not seen_version:
        raise DocumentError(1, "missing 'relcat-version 1' header")

    for mid, src, tgt in morphisms:
        for o in (src, tgt):
            if o not in declared:
                raise DocumentError(line_of[mid], f"unknown object {o}")
    all_mor = set(mor_ids) | {ID_PREFIX + o for o in objects}
    for (f, g), h in comp.items():
        for m in (f, g, h):
            if m not in all_mor:
                raise DocumentError(line_of[(f, g)], f"unknown morphism {m}")
    for w in weq:
        if w not in all_mor:
            raise DocumentError(line_of[("weq", w)], f"unknown morphism {w}")

    try:
        cat = FinCategory.build(objects, morphisms, comp)
    except CategoryLawError as e:
        missing = [v for v in e.report.violations if v.law == "missing-composite"]
        if missing:
            f, g = missing[0].witness
            raise DocumentError(
                0, f"composition table not closed: no composite for ({f}, {g})") from None
        raise DocumentError(0, "not a category: " + e.report.describe()) from None
    except StructuralError as e:
        raise DocumentError(0, str(e)) from None

    rc = RelCategory(cat, weq)
    if not has_calculus:
        return rc
    for name, sub in (("u", u_sub), ("v", v_sub)):
        for m in sub:
            if m not in all_mor:
                raise DocumentError(0, f"unknown morphism {m} in {name} block")
    for w, (u, mid, v) in factor.items():
        for m in (w, u, v):
            if m not in all_mor:
                raise DocumentError(0, f"unknown morphism {m} in factor block")
        if mid not in declared:
            raise DocumentError(0, f"unknown object {mid} in factor block")
    for sq, m in middle.items():
        for x in sq + (m,):
            if x not in all_mor:
                raise DocumentError(0, f"unknown morphism {x} in middle block")
    return PartialModelStructure(rc, u_sub, v_sub, factor, middle)


def parse_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_document(fh.read(), origin=path)
    except OSError as e:
        raise DocumentError(0, f"cannot read {path}: {e.strerror}") from None


def serialize_document(value):
    """Canonical text form of a RelCategory or PartialModelStructure."""
    if isinstance(value, PartialModelStructure):
        rc, pms = value.rc, value
    else:
        rc, pms = value, None
    cat = rc.cat
    lines = [f"relcat-version {FORMAT_VERSION}"]
    for o in cat.objects:
        lines.append(f"object {o}")
    for m in cat.morphisms:
        if not cat.is_identity(m):
            lines.append(f"morphism {m} {cat.src[m]} {cat.tgt[m]}")
    for (f, g), h in sorted(cat.comp.items()):
        if not (cat.is_identity(f) or cat.is_identity(g)):
            lines.append(f"compose {f} {g} {h}")
    for w in rc.weq:
        if not cat.is_identity(w):
            lines.append(f"weq {w}")
    if pms is not None:
        for m in pms.u_sub:
            if not cat.is_identity(m):
                lines.append(f"u {m}")
        for m in pms.v_sub:
            if not cat.is_identity(m):
                lines.append(f"v {m}")
        for w in sorted(pms.factorization):
            u, mid, v = pms.factorization[w]
            lines.append(f"factor {w} {u} {mid} {v}")
        for sq in sorted(pms.middle):
            lines.append(f"middle {' '.join(sq)} {pms.middle[sq]}")
    return "\n".join(lines) + "\n"
