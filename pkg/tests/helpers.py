"""Shared fixtures for the diagram-calculus tests and the acceptance suite."""
from __future__ import annotations

import random

from fincat.core import Functor, NatTrans, identity_functor, renamed
from fincat.diagram import Environment, Generator, HComp, Id, VComp, typecheck
from fincat.fixtures import terminal_category, walking_arrow


def fixture_env() -> Environment:
    two = renamed(walking_arrow(), "C")
    one = renamed(terminal_category(), "E")
    f0 = Functor("F0", two, two, {"0": "0", "1": "0"},
                 {"id_0": "id_0", "id_1": "id_0", "a": "id_0"})
    f1 = Functor("F1", two, two, {"0": "1", "1": "1"},
                 {"id_0": "id_1", "id_1": "id_1", "a": "id_1"})
    ident = identity_functor(two)
    ident = Functor("I", two, two, dict(ident.obj_map), dict(ident.mor_map))
    bg = Functor("B", two, one, {"0": "*", "1": "*"},
                 {"id_0": "id_*", "id_1": "id_*", "a": "id_*"})
    p0 = Functor("P0", one, two, {"*": "0"}, {"id_*": "id_0"})
    p1 = Functor("P1", one, two, {"*": "1"}, {"id_*": "id_1"})
    gens = {
        "s": NatTrans("s", f0, ident, {"0": "id_0", "1": "a"}),
        "t": NatTrans("t", ident, f1, {"0": "a", "1": "id_1"}),
        "u": NatTrans("u", f0, f1, {"0": "a", "1": "a"}),
        "p": NatTrans("p", p0, p1, {"*": "a"}),
        "q": NatTrans("q", p0, p0, {"*": "id_0"}),
    }
    env = Environment(
        categories={"C": two, "E": one},
        functors={"F0": f0, "F1": f1, "I": ident, "B": bg, "P0": p0, "P1": p1},
        generators=gens,
    )
    env.validate()
    return env


def random_term(rng: random.Random, env: Environment, max_gens: int = 6):
    """Grow a well-typed term by random vertical/horizontal combination."""
    atoms = [Generator(g) for g in sorted(env.generators)] + \
            [Id(f) for f in sorted(env.functors)] + \
            [Id(c) for c in sorted(env.categories)]
    pool = [(a, typecheck(a, env)) for a in atoms]
    term, face = pool[rng.randrange(len(pool))]
    gens = 1 if isinstance(term, Generator) else 0
    for _ in range(40):
        if gens >= max_gens:
            break
        cand, cface = pool[rng.randrange(len(pool))]
        cg = 1 if isinstance(cand, Generator) else 0
        ops = []
        if face.top == cface.bottom and face.left == cface.left and \
                face.right == cface.right:
            ops.append("stack")
        if cface.left == face.right:
            ops.append("outer")
        if face.left == cface.right:
            ops.append("inner")
        if not ops:
            continue
        op = rng.choice(ops)
        if op == "stack":
            term = VComp((term, cand)) if not isinstance(term, VComp) else \
                VComp(term.parts + (cand,))
        elif op == "inner":
            term = HComp((term, cand))
        else:
            term = HComp((cand, term))
        face = typecheck(term, env)
        gens += cg
    return term
