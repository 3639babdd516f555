#!/usr/bin/env python3
"""Regenerate the golden .cat corpus under tests/corpus/."""
from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from fincat.catfile import Workspace, serialize
from fincat.core import (
    Functor,
    NatTrans,
    identity_functor,
    opposite,
    product,
    renamed,
    renamed_functor,
)
from fincat.finset import FinSetMap, FinSetObj, SetFunctor, hom_functor
from fincat.fixtures import (
    bang,
    chain,
    discrete,
    parallel_pair,
    pick_object,
    terminal_category,
    walking_arrow,
    z2_monoid,
)

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "corpus"
OUT.mkdir(parents=True, exist_ok=True)


def write(name: str, ws: Workspace) -> None:
    (OUT / name).write_text(serialize(ws))
    print("wrote", name)


def empty(**kw) -> Workspace:
    base = dict(categories={}, functors={}, nats={}, setfunctors={}, terms={})
    base.update(kw)
    return Workspace(**base)


two = renamed(walking_arrow(), "two")
one = renamed(terminal_category(), "one")
z2 = renamed(z2_monoid(), "z2")
pp = renamed(parallel_pair(), "pp")
d2 = renamed(discrete(2), "d2")

write("two.cat", empty(categories={"two": two}))
write("z2.cat", empty(categories={"z2": z2}))

# FinSet diagram on the parallel pair: equalizer/coequalizer material
V = FinSetObj(("e1", "e2", "e3"))
ident = FinSetMap(V, V, {x: x for x in V.elements})
swap = FinSetMap(V, V, {"e1": "e2", "e2": "e1", "e3": "e3"})
D = SetFunctor("D", pp, {"0": V, "1": V},
               {"id_0": ident, "id_1": ident, "u": ident, "v": swap})
write("pair_diagram.cat", empty(categories={"pp": pp}, setfunctors={"D": D}))

# diagram into a poset: the product of 0 and 1 inside the chain
c3 = renamed(chain(3), "c3")
Dg = Functor("Dg", d2, c3, {"d0": "0", "d1": "1"},
             {"id_d0": "id_0", "id_d1": "id_1"})
write("poset_diagram.cat", empty(categories={"d2": d2, "c3": c3},
                                 functors={"Dg": Dg}))

# bifunctor on op(two) x two: the hom bifunctor of two, as a setfunctor
P = product(opposite(two), two)
P = renamed(P, "homshape")
from fincat.core import split_pair

on_obj, on_mor = {}, {}
for o in P.objects:
    a, b = split_pair(o)
    on_obj[o] = FinSetObj(two.hom(a, b))
for m in P.morphisms:
    f, g = split_pair(m.name)
    table = {h: two.comp_path(f, h, g) for h in on_obj[m.dom].elements}
    on_mor[m.name] = FinSetMap(on_obj[m.dom], on_obj[m.cod], table)
H = SetFunctor("H", P, on_obj, on_mor)
write("bifunctor.cat", empty(categories={"two": two, "homshape": P},
                             setfunctors={"H": H}))

# bifunctor valued in a poset: second projection into the chain
c3b = renamed(chain(3), "c3")
Pb = renamed(product(opposite(two), two), "homshape2")
obj_map = {}
mor_map = {}
for o in Pb.objects:
    _, c = split_pair(o)
    obj_map[o] = c
for m in Pb.morphisms:
    _, g = split_pair(m.name)
    gd, gc = two.dom(g), two.cod(g)
    mor_map[m.name] = c3b.id_of(gd) if gd == gc else f"c{gd}{gc}"
Bf = Functor("Bf", Pb, c3b, obj_map, mor_map)
write("bifunctor_poset.cat", empty(categories={"two": two, "homshape2": Pb,
                                               "c3": c3b},
                                   functors={"Bf": Bf}))

# Kan fixture: K picks 0 in two; F a two-element set on the point
K = Functor("K", one, two, {"*": "0"}, {"id_*": "id_0"})
F = SetFunctor("F", one, {"*": FinSetObj(("u", "v"))},
               {"id_*": FinSetMap(FinSetObj(("u", "v")), FinSetObj(("u", "v")),
                                  {"u": "u", "v": "v"})})
write("kan.cat", empty(categories={"one": one, "two": two},
                       functors={"K": K}, setfunctors={"F": F}))

# adjoint synthesis fixture
G = Functor("G", one, two, {"*": "1"}, {"id_*": "id_1"})
write("adjoint.cat", empty(categories={"one": one, "two": two}, functors={"G": G}))

# adjoint-absent fixture
G2 = Functor("G2", one, d2, {"*": "d0"}, {"id_*": "id_d0"})
write("adjoint_absent.cat", empty(categories={"one": one, "d2": d2},
                                  functors={"G2": G2}))

# snake fixtures on the Z/2 monoid: identity endofunctor, eta/eps involutions
idz = renamed_functor(identity_functor(z2), "Iz")
eta_s = NatTrans("etaS", idz, idz, {"*": "s"})
eps_s = NatTrans("epsS", idz, idz, {"*": "s"})
eps_e = NatTrans("epsE", idz, idz, {"*": "id_*"})
write("snake.cat", empty(categories={"z2": z2}, functors={"Iz": idz},
                         nats={"etaS": eta_s, "epsS": eps_s, "epsE": eps_e}))

# diagram terms over endofunctors of two
twoC = renamed(walking_arrow(), "C")
oneE = renamed(terminal_category(), "E")
f0 = Functor("F0", twoC, twoC, {"0": "0", "1": "0"},
             {"id_0": "id_0", "id_1": "id_0", "a": "id_0"})
f1 = Functor("F1", twoC, twoC, {"0": "1", "1": "1"},
             {"id_0": "id_1", "id_1": "id_1", "a": "id_1"})
ii = renamed_functor(identity_functor(twoC), "I")
p0 = Functor("P0", oneE, twoC, {"*": "0"}, {"id_*": "id_0"})
p1 = Functor("P1", oneE, twoC, {"*": "1"}, {"id_*": "id_1"})
gens = {
    "s": NatTrans("s", f0, ii, {"0": "id_0", "1": "a"}),
    "t": NatTrans("t", ii, f1, {"0": "a", "1": "id_1"}),
    "u": NatTrans("u", f0, f1, {"0": "a", "1": "a"}),
    "q": NatTrans("q", p0, p0, {"*": "id_0"}),
}
from fincat.diagram import parse_term

write("terms.cat", empty(
    categories={"C": twoC, "E": oneE},
    functors={"F0": f0, "F1": f1, "I": ii, "P0": p0, "P1": p1},
    nats=gens,
    terms={"stack": parse_term("s ; t"),
           "side": parse_term("u | q"),
           "mixed": parse_term("(u | id(P0)) ; (id(F1) | q)")}))

# weighted limit fixture: representable weight and diagram on two;
# the weighted limit is Nat(W, Fy) = Fy(1) = hom(0,1), a singleton
W = hom_functor(two, "1", "covariant")
W = SetFunctor("W", W.dom, W.on_obj, W.on_mor)
Fy = hom_functor(two, "0", "covariant")
Fy = SetFunctor("Fy", Fy.dom, Fy.on_obj, Fy.on_mor)
write("weighted.cat", empty(categories={"two": two},
                            setfunctors={"W": W, "Fy": Fy}))

# density / codensity fixtures
idt = renamed_functor(identity_functor(two), "Itwo")
Kp = Functor("Kpick", one, two, {"*": "0"}, {"id_*": "id_0"})
write("density.cat", empty(categories={"one": one, "two": two},
                           functors={"Itwo": idt, "Kpick": Kp}))

# law violation: a deliberately nonassociative table
(OUT / "bad_law.cat").write_text("""category bad {
  objects: x;
  mor p: x -> x;
  mor q: x -> x;
  compose p.p = q;
  compose p.q = id_x;
  compose q.p = p;
  compose q.q = q;
}
""")
print("wrote bad_law.cat")

# structural error: missing composition entry
(OUT / "bad_missing.cat").write_text("""category gap {
  objects: a, b, c;
  mor f: a -> b;
  mor g: b -> c;
}
""")
print("wrote bad_missing.cat")

# structural error: syntax
(OUT / "bad_syntax.cat").write_text("category Broken { objects a b }\n")
print("wrote bad_syntax.cat")
