"""Comma categories, initial/terminal search, universal morphisms, representability."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .core import (
    FinCat,
    Functor,
    Mor,
    NatTrans,
    Report,
    StructuralError,
    const_diagram,
    fail_report,
    ok_report,
    opposite,
)
from .finset import (
    FinSetMap,
    SINGLETON,
    SetFunctor,
    SetNatTrans,
    const_set_functor,
    enumerate_set_naturals,
    hom_functor,
    set_precompose,
    yoneda_map,
)

FROM_OBJECT = "from-object"
TO_OBJECT = "to-object"


def _pair(x: str, a: str) -> str:
    return f"⟨{x},{a}⟩"


def _arrow_id(f: str, src: str, tgt: str) -> str:
    return f"{f}:{src}→{tgt}"


@dataclass(frozen=True, eq=False)
class CommaData:
    cat: FinCat
    forgetful: Functor
    canonical: Union[NatTrans, SetNatTrans]
    pairs: dict[str, tuple[str, str]]   # comma object id -> (object, morphism/element)


def _build_comma(name: str, pairs: list[tuple[str, str]], D: FinCat,
                 mor_ok) -> tuple[FinCat, Functor, dict]:
    """Shared builder: objects are pairs, morphisms are D-morphisms passing mor_ok."""
    obj_ids = {}
    for x, a in pairs:
        obj_ids[(x, a)] = _pair(x, a)
    objects = tuple(sorted(obj_ids.values()))
    by_id = {v: k for k, v in obj_ids.items()}
    mors = []
    underlying: dict[str, str] = {}
    for src in objects:
        x, a = by_id[src]
        for tgt in objects:
            y, b = by_id[tgt]
            for f in D.hom(x, y):
                mid = _arrow_id(f, src, tgt)
                if mor_ok(f, (x, a), (y, b)):
                    mors.append(Mor(mid, src, tgt))
                    underlying[mid] = f
    identity = {}
    for o in objects:
        x, a = by_id[o]
        identity[o] = _arrow_id(D.id_of(x), o, o)
    table = {}
    msorted = sorted(mors, key=lambda m: m.name)
    for m in msorted:
        for n in msorted:
            if n.cod != m.dom:
                continue
            table[(m.name, n.name)] = _arrow_id(
                D.comp(underlying[m.name], underlying[n.name]), n.dom, m.cod)
    cat = FinCat(name, objects, tuple(msorted), identity, table)
    forget_obj = {o: by_id[o][0] for o in objects}
    forgetful = Functor(f"P({name})", cat, D, forget_obj, dict(underlying))
    return cat, forgetful, by_id


def comma_from_object(c: str, G: Functor, name: str | None = None) -> CommaData:
    """The comma category of arrows out of c into the image of G.

    Objects are pairs of an object x of G's domain and an arrow c -> Gx; a
    morphism f: (x,a) -> (y,a') is an f with a' = Gf . a.  The canonical
    family (x,a) |-> a is a cone from c over G composed with the forgetful
    functor.
    """
    C = G.cod
    D = G.dom
    if c not in C.objects:
        raise StructuralError(f"unknown object {c} in {C.name}")
    pairs = [(x, a) for x in D.sorted_objects() for a in C.hom(c, G.obj_map[x])]

    def mor_ok(f, src, tgt):
        (x, a), (y, b) = src, tgt
        return C.comp(G.mor_map[f], a) == b

    cat, forgetful, by_id = _build_comma(name or f"({c}↓{G.name})", pairs, D, mor_ok)
    GP = _compose_via(G, forgetful)
    theta = NatTrans(f"θ({c}↓{G.name})", const_diagram(c, cat, C), GP,
                     {o: by_id[o][1] for o in cat.objects})
    return CommaData(cat, forgetful, theta, {o: by_id[o] for o in cat.objects})


def comma_to_object(G: Functor, c: str, name: str | None = None) -> CommaData:
    """The comma category of arrows from the image of G into c.

    Objects are pairs (x, a: Gx -> c); a morphism f: (x,a) -> (y,a') is an f
    with a' . Gf = a.  The canonical family is a cocone from G composed with
    the forgetful functor down to c.
    """
    C = G.cod
    D = G.dom
    if c not in C.objects:
        raise StructuralError(f"unknown object {c} in {C.name}")
    pairs = [(x, a) for x in D.sorted_objects() for a in C.hom(G.obj_map[x], c)]

    def mor_ok(f, src, tgt):
        (x, a), (y, b) = src, tgt
        return C.comp(b, G.mor_map[f]) == a

    cat, forgetful, by_id = _build_comma(name or f"({G.name}↓{c})", pairs, D, mor_ok)
    GP = _compose_via(G, forgetful)
    theta = NatTrans(f"θ({G.name}↓{c})", GP, const_diagram(c, cat, C),
                     {o: by_id[o][1] for o in cat.objects})
    return CommaData(cat, forgetful, theta, {o: by_id[o] for o in cat.objects})


def _compose_via(G: Functor, P: Functor) -> Functor:
    from .core import compose_functors
    return compose_functors(G, P)


def elements_category(X: SetFunctor, name: str | None = None) -> CommaData:
    """The category of elements of a Set-valued functor.

    For a covariant X this is the comma of the singleton into X: objects are
    pairs (c, x in Xc), morphisms f: (c,x) -> (c',x') those f with Xf(x)=x'.
    For a presheaf (dom an opposite category) the same construction applies
    to the underlying data, matching the dual comma description.
    """
    C = X.dom
    pairs = [(c, x) for c in C.sorted_objects() for x in X.on_obj[c].sorted()]

    def mor_ok(f, src, tgt):
        (c, x), (cp, xp) = src, tgt
        return X.on_mor[f](x) == xp

    cat, forgetful, by_id = _build_comma(name or f"el({X.name})", pairs, C, mor_ok)
    XP = set_precompose(X, forgetful, name=f"{X.name}*P")
    theta = SetNatTrans(
        f"θ(el({X.name}))", const_set_functor(cat, SINGLETON), XP,
        {o: FinSetMap(SINGLETON, XP.on_obj[o], {"*": by_id[o][1]}) for o in cat.objects})
    return CommaData(cat, forgetful, theta, {o: by_id[o] for o in cat.objects})


def comma_category(kind: str, *args, name: str | None = None) -> CommaData:
    """Dispatch on the comma shape: 'c↓G', 'G↓c', 'K↓d', 'd↓K' or 'el'."""
    if kind in ("c↓G", "d↓K"):
        c, G = args
        return comma_from_object(c, G, name)
    if kind in ("G↓c", "K↓d"):
        G, c = args
        return comma_to_object(G, c, name)
    if kind == "el":
        (X,) = args
        return elements_category(X, name)
    raise StructuralError(f"unknown comma kind {kind!r}")


# ---------------------------------------------------------------------------
# Initial / terminal objects

@dataclass(frozen=True)
class Extremal:
    object: str
    connecting: dict[str, str]   # other object -> the unique arrow
    candidates: tuple[str, ...]  # all qualifying objects, sorted


def extremal_object(C: FinCat, which: str) -> Optional[Extremal]:
    """Initial or terminal object with its uniqueness certificates.

    Returns the lexicographically least qualifying object; absence is a valid
    result, not an error.
    """
    if which not in ("initial", "terminal"):
        raise StructuralError(f"unknown extremal kind {which!r}")
    winners = []
    for a in C.sorted_objects():
        conn = {}
        for x in C.objects:
            hs = C.hom(a, x) if which == "initial" else C.hom(x, a)
            if len(hs) != 1:
                conn = None
                break
            conn[x] = hs[0]
        if conn is not None:
            winners.append((a, conn))
    if not winners:
        return None
    best = winners[0]
    return Extremal(best[0], best[1], tuple(a for a, _ in winners))


@dataclass(frozen=True)
class UniversalWitness:
    vertex: str
    arrow: str
    direction: str
    report: Report


def universal_morphism(c: str, G: Functor, direction: str = FROM_OBJECT
                       ) -> Optional[UniversalWitness]:
    """Search the comma category for its initial (or terminal) object.

    The defining factorization property is re-verified exhaustively before
    the witness is returned.
    """
    if direction == FROM_OBJECT:
        comma = comma_from_object(c, G)
        ext = extremal_object(comma.cat, "initial")
    elif direction == TO_OBJECT:
        comma = comma_to_object(G, c)
        ext = extremal_object(comma.cat, "terminal")
    else:
        raise StructuralError(f"unknown direction {direction!r}")
    if ext is None:
        return None
    x, a = comma.pairs[ext.object]
    w = UniversalWitness(x, a, direction, ok_report(0))
    rep = verify_universal(w, c, G)
    w = UniversalWitness(x, a, direction, rep)
    if not rep.ok:
        raise StructuralError(
            f"comma search returned a non-universal candidate for {c} and {G.name}; "
            f"counterexample {rep.counterexample}")
    return w


def verify_universal(w: UniversalWitness, c: str, G: Functor) -> Report:
    """Exhaustively check that every comma object factors uniquely through the witness."""
    C, D = G.cod, G.dom
    u, eta = w.vertex, w.arrow
    checked = 0
    if w.direction == FROM_OBJECT:
        if eta not in C.hom(c, G.obj_map[u]):
            raise StructuralError("witness arrow has the wrong type")
        for x in D.sorted_objects():
            for a in C.hom(c, G.obj_map[x]):
                checked += 1
                factors = [f for f in D.hom(u, x)
                           if C.comp(G.mor_map[f], eta) == a]
                if len(factors) != 1:
                    return fail_report(checked, "universal-factorization",
                                       at=_pair(x, a), count=len(factors))
    else:
        if eta not in C.hom(G.obj_map[u], c):
            raise StructuralError("witness arrow has the wrong type")
        for x in D.sorted_objects():
            for a in C.hom(G.obj_map[x], c):
                checked += 1
                factors = [f for f in D.hom(x, u)
                           if C.comp(eta, G.mor_map[f]) == a]
                if len(factors) != 1:
                    return fail_report(checked, "universal-factorization",
                                       at=_pair(x, a), count=len(factors))
    return ok_report(checked)


def essentially_unique(c: str, G: Functor, w1: UniversalWitness,
                       w2: UniversalWitness) -> Report:
    """Two witnesses for the same data are related by a unique isomorphism."""
    C, D = G.cod, G.dom
    checked = 0
    if w1.direction != w2.direction:
        raise StructuralError("witness directions differ")
    if w1.direction == FROM_OBJECT:
        psis = [f for f in D.hom(w1.vertex, w2.vertex)
                if C.comp(G.mor_map[f], w1.arrow) == w2.arrow]
    else:
        psis = [f for f in D.hom(w2.vertex, w1.vertex)
                if C.comp(w1.arrow, G.mor_map[f]) == w2.arrow]
    checked += 1
    if len(psis) != 1:
        return fail_report(checked, "essential-uniqueness", count=len(psis))
    if not D.is_iso(psis[0]):
        return fail_report(checked, "essential-uniqueness", arrow=psis[0],
                           failure="mediating arrow not iso")
    return ok_report(checked)


# ---------------------------------------------------------------------------
# Representability

@dataclass(frozen=True, eq=False)
class Representation:
    object: str
    iso: SetNatTrans


def representability(X: SetFunctor) -> Optional[Representation]:
    """Search for a representing object and an explicit natural isomorphism.

    Candidates are scanned in lexicographic object order; the returned
    representation is round-tripped through the universal-morphism view of
    the singleton comma before being accepted.
    """
    C = X.dom
    for u in C.sorted_objects():
        yu = hom_functor(C, u, "covariant")
        if any(len(yu.on_obj[a]) != len(X.on_obj[a]) for a in C.objects):
            continue
        for sigma in enumerate_set_naturals(yu, X):
            if not sigma.is_iso():
                continue
            eta = yoneda_map("alpha", C, u, X, sigma)
            # certify: every (x, a) factors uniquely through eta
            ok = True
            for x in C.sorted_objects():
                for a in X.on_obj[x].sorted():
                    factors = [f for f in C.hom(u, x) if X.on_mor[f](eta) == a]
                    if len(factors) != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return Representation(u, sigma)
    return None
