"""Small standard categories used throughout the test and acceptance suites."""
from __future__ import annotations

from .core import FinCat, Functor, make_category


def terminal_category() -> FinCat:
    """One object, one (identity) morphism."""
    return make_category("1", ["*"], [], {})


def walking_arrow() -> FinCat:
    """Two objects 0, 1 and a single non-identity arrow a: 0 -> 1."""
    return make_category("2", ["0", "1"], [("a", "0", "1")], {})


def parallel_pair() -> FinCat:
    """Two objects and two parallel arrows u, v: 0 -> 1."""
    return make_category("PP", ["0", "1"], [("u", "0", "1"), ("v", "0", "1")], {})


def discrete(n: int, prefix: str = "d") -> FinCat:
    return make_category(f"disc{n}", [f"{prefix}{i}" for i in range(n)], [], {})


def empty_category() -> FinCat:
    return FinCat("0", (), (), {}, {})


def z2_monoid() -> FinCat:
    """The two-element group as a one-object category; s is the involution."""
    return make_category("Z2", ["*"], [("s", "*", "*")], {("s", "s"): "id_*"})


def chain(n: int) -> FinCat:
    """The poset 0 < 1 < ... < n-1 as a category; arrows c{i}{j} for i<j."""
    objs = [str(i) for i in range(n)]
    arrows = [(f"c{i}{j}", str(i), str(j)) for i in range(n) for j in range(i + 1, n)]
    compose = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                compose[(f"c{j}{k}", f"c{i}{j}")] = f"c{i}{k}"
    return make_category(f"chain{n}", objs, arrows, compose)


def pick_object(C: FinCat, c: str, name: str | None = None) -> Functor:
    """The functor from the terminal category choosing c."""
    one = terminal_category()
    return Functor(name or f"pick({c})", one, C, {"*": c}, {"id_*": C.id_of(c)})


def bang(C: FinCat) -> Functor:
    """The unique functor to the terminal category."""
    one = terminal_category()
    return Functor(f"!({C.name})", C, one,
                   {a: "*" for a in C.objects},
                   {m.name: "id_*" for m in C.morphisms})
