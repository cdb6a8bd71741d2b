"""Shared builders for the small categories the tests lean on."""

from pmcat.fincat import FinCategory


def poset_category(elements, leq, name=None):
    """Category of a finite preorder.

    Non-identity morphisms a -> b are named by ``name(a, b)`` (default
    ``"a<b"``); hom-sets have at most one element so the composition
    table is forced.
    """
    if name is None:
        name = lambda a, b: f"{a}<{b}"
    elements = list(elements)
    mor = {}
    for a in elements:
        for b in elements:
            if a != b and leq(a, b):
                mor[(a, b)] = name(a, b)
    rows = [(m, a, b) for (a, b), m in mor.items()]
    comp = {}
    for (a, b), f in mor.items():
        for (b2, c), g in mor.items():
            if b2 == b and leq(a, c):
                comp[(f, g)] = mor[(a, c)] if a != c else "id:" + str(a)
    return FinCategory.build(elements, rows, comp)


def chain_poset(n):
    """The linear order [n] with morphisms named by endpoint digits."""
    return poset_category(
        [str(i) for i in range(n + 1)],
        lambda a, b: int(a) <= int(b),
        name=lambda a, b: f"{a}{b}",
    )


def boolean_lattice():
    """Subsets of a two-element set: objects 0, 1, 2, 12."""
    contains = {"0": set(), "1": {1}, "2": {2}, "12": {1, 2}}
    return poset_category(
        ["0", "1", "2", "12"],
        lambda a, b: contains[a] <= contains[b],
    )


def walking_iso():
    """Two objects, one isomorphism each way."""
    rows = [("s", "a", "b"), ("t", "b", "a")]
    comp = {("s", "t"): "id:a", ("t", "s"): "id:b"}
    return FinCategory.build(["a", "b"], rows, comp)


def terminal_category():
    return FinCategory.build(["*"], [], {})
