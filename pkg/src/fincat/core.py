"""Finite categories, functors, natural transformations, and their composition algebra.

Everything is tabulated: a category is a list of objects, a list of morphism
records and a total composition table.  All operations are pure; every
enumeration iterates in lexicographic id order so results are deterministic
across runs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Optional

DEFAULT_GUARD = 10**6


class StructuralError(Exception):
    """Malformed input: unresolved ids, non-total tables, typing mismatches.

    Distinct from a law violation, which is reported through a Report value.
    """


class GuardExceeded(Exception):
    """An enumeration would exceed the configured candidate budget."""


@dataclass(frozen=True)
class Counterexample:
    law: str
    details: dict

    def to_json(self) -> dict:
        return {"law": self.law, "details": {k: str(v) for k, v in sorted(self.details.items())}}


@dataclass(frozen=True)
class Report:
    ok: bool
    checked: int
    counterexample: Optional[Counterexample] = None
    partial: bool = False

    def __post_init__(self):
        assert self.ok == (self.counterexample is None)

    def to_json(self) -> dict:
        out = {"ok": self.ok, "checked": self.checked}
        if self.partial:
            out["partial"] = True
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


def ok_report(checked: int, partial: bool = False) -> Report:
    return Report(True, checked, None, partial)


def fail_report(checked: int, law: str, **details) -> Report:
    return Report(False, checked, Counterexample(law, details))


@dataclass(frozen=True)
class Mor:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category: objects, morphism records, identity and composition tables."""

    name: str
    objects: tuple[str, ...]
    morphisms: tuple[Mor, ...]
    identity: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]

    @cached_property
    def mor(self) -> dict[str, Mor]:
        return {m.name: m for m in self.morphisms}

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        table: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            table.setdefault((m.dom, m.cod), []).append(m.name)
        return {k: tuple(sorted(v)) for k, v in table.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        """Morphism ids from a to b, lexicographically sorted."""
        return self._homs.get((a, b), ())

    def dom(self, m: str) -> str:
        return self.mor[m].dom

    def cod(self, m: str) -> str:
        return self.mor[m].cod

    def id_of(self, a: str) -> str:
        return self.identity[a]

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.mor[m].dom) == m

    def comp(self, g: str, f: str) -> str:
        """Composite g after f."""
        try:
            return self.compose[(g, f)]
        except KeyError:
            raise StructuralError(
                f"{self.name}: no composition entry for {g} after {f}") from None

    def comp_path(self, *ms: str) -> str:
        """Composite of a whole path, first morphism applied first."""
        out = ms[0]
        for m in ms[1:]:
            out = self.comp(m, out)
        return out

    def sorted_objects(self) -> tuple[str, ...]:
        return tuple(sorted(self.objects))

    def sorted_mor_names(self) -> tuple[str, ...]:
        return tuple(sorted(m.name for m in self.morphisms))

    def nonidentity_mor_names(self) -> tuple[str, ...]:
        return tuple(m for m in self.sorted_mor_names() if not self.is_identity(m))

    def is_iso(self, f: str) -> bool:
        m = self.mor[f]
        for g in self.hom(m.cod, m.dom):
            if self.comp(g, f) == self.identity[m.dom] and self.comp(f, g) == self.identity[m.cod]:
                return True
        return False

    def inverse(self, f: str) -> str:
        m = self.mor[f]
        for g in self.hom(m.cod, m.dom):
            if self.comp(g, f) == self.identity[m.dom] and self.comp(f, g) == self.identity[m.cod]:
                return g
        raise StructuralError(f"{self.name}: {f} is not invertible")

    def key(self):
        return (
            tuple(sorted(self.objects)),
            tuple(sorted((m.name, m.dom, m.cod) for m in self.morphisms)),
            tuple(sorted(self.identity.items())),
            tuple(sorted(self.compose.items())),
        )

    def __eq__(self, other):
        return isinstance(other, FinCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinCat({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def same_structure(a: FinCat, b: FinCat) -> bool:
    """Structural equality ignoring the category name."""
    return a.key() == b.key()


def renamed(C: FinCat, name: str) -> FinCat:
    return FinCat(name, C.objects, C.morphisms, C.identity, C.compose)


def renamed_functor(F: Functor, name: str) -> Functor:
    return Functor(name, F.dom, F.cod, F.obj_map, F.mor_map)


@dataclass(frozen=True, eq=False)
class Functor:
    name: str
    dom: FinCat
    cod: FinCat
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]

    def on_obj(self, a: str) -> str:
        return self.obj_map[a]

    def on_mor(self, f: str) -> str:
        return self.mor_map[f]

    def key(self):
        return (self.dom.key(), self.cod.key(),
                tuple(sorted(self.obj_map.items())), tuple(sorted(self.mor_map.items())))

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Functor({self.name!r}: {self.dom.name} -> {self.cod.name})"


@dataclass(frozen=True, eq=False)
class NatTrans:
    name: str
    src: Functor
    tgt: Functor
    components: Mapping[str, str]

    def at(self, a: str) -> str:
        return self.components[a]

    def key(self):
        return (self.src.key(), self.tgt.key(), tuple(sorted(self.components.items())))

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"NatTrans({self.name!r}: {self.src.name} => {self.tgt.name})"


# ---------------------------------------------------------------------------
# Construction helpers

def make_category(name, objects, arrows, compose, identity_prefix="id_") -> FinCat:
    """Build a FinCat from non-identity arrow specs (name, dom, cod).

    Identity morphisms and their composites are generated; `compose` supplies
    the remaining entries keyed by (g, f).
    """
    objects = tuple(objects)
    mors = [Mor(identity_prefix + a, a, a) for a in objects]
    identity = {a: identity_prefix + a for a in objects}
    seen = {m.name for m in mors}
    for spec in arrows:
        m = Mor(*spec)
        if m.name in seen:
            raise StructuralError(f"{name}: duplicate morphism id {m.name}")
        seen.add(m.name)
        mors.append(m)
    table: dict[tuple[str, str], str] = dict(compose)
    for m in mors:
        # explicit entries win so a wrong unit composite stays visible to the
        # validator instead of being silently repaired
        table.setdefault((m.name, identity[m.dom]), m.name)
        table.setdefault((identity[m.cod], m.name), m.name)
    return FinCat(name, objects, tuple(mors), identity, table)


def identity_functor(C: FinCat) -> Functor:
    return Functor(f"id_{C.name}", C, C,
                   {a: a for a in C.objects}, {m.name: m.name for m in C.morphisms})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """Horizontal composite G after F."""
    if F.cod != G.dom:
        raise StructuralError(f"cannot compose {G.name} after {F.name}: boundary mismatch")
    return Functor(f"{G.name}*{F.name}", F.dom, G.cod,
                   {a: G.obj_map[x] for a, x in F.obj_map.items()},
                   {f: G.mor_map[u] for f, u in F.mor_map.items()})


def identity_nat(F: Functor) -> NatTrans:
    return NatTrans(f"id_{F.name}", F, F,
                    {a: F.cod.id_of(F.obj_map[a]) for a in F.dom.objects})


def vcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Vertical composite beta after alpha."""
    if alpha.tgt != beta.src:
        raise StructuralError(f"cannot stack {beta.name} on {alpha.name}: boundary mismatch")
    D = alpha.src.cod
    return NatTrans(f"{beta.name}.{alpha.name}", alpha.src, beta.tgt,
                    {a: D.comp(beta.components[a], alpha.components[a])
                     for a in alpha.src.dom.objects})


def hcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Horizontal composite: components beta_{F'a} after G(alpha_a).

    Both evaluation orders are computed and asserted equal; their agreement is
    exactly the sliding rule.
    """
    F, Fp = alpha.src, alpha.tgt
    G, Gp = beta.src, beta.tgt
    if F.cod != G.dom:
        raise StructuralError(f"cannot place {beta.name} beside {alpha.name}: boundary mismatch")
    E = G.cod
    comps = {}
    for a in F.dom.objects:
        left = E.comp(beta.components[Fp.obj_map[a]], G.mor_map[alpha.components[a]])
        right = E.comp(Gp.mor_map[alpha.components[a]], beta.components[F.obj_map[a]])
        if left != right:
            raise StructuralError(
                f"sliding rule broken at {a} composing {beta.name} * {alpha.name}; "
                "inputs are not natural transformations")
        comps[a] = left
    return NatTrans(f"{beta.name}*{alpha.name}",
                    compose_functors(G, F), compose_functors(Gp, Fp), comps)


def whisker_functor_nat(H: Functor, alpha: NatTrans) -> NatTrans:
    """H * alpha: apply the functor H after every component."""
    return hcompose(identity_nat(H), alpha)


def whisker_nat_functor(alpha: NatTrans, K: Functor) -> NatTrans:
    """alpha * K: restrict the component family along K."""
    return hcompose(alpha, identity_nat(K))


def compose(x, y, mode: str):
    """Dispatching composition; mode names the operator placement.

    Modes: 'functor*functor', 'nat.nat' (vertical), 'nat*nat' (horizontal),
    'nat*functor', 'functor*nat'.  The unicode spellings with the bullet and
    circle operators are accepted as synonyms.
    """
    mode = mode.replace("•", "*").replace("∘", ".")
    if mode == "functor*functor":
        return compose_functors(x, y)
    if mode == "nat.nat":
        return vcompose(x, y)
    if mode == "nat*nat":
        return hcompose(x, y)
    if mode == "nat*functor":
        return whisker_nat_functor(x, y)
    if mode == "functor*nat":
        return whisker_functor_nat(x, y)
    raise StructuralError(f"unknown composition mode {mode!r}")


# ---------------------------------------------------------------------------
# Validation

def composable_pairs(C: FinCat) -> Iterator[tuple[Mor, Mor]]:
    for g in C.morphisms:
        for f in C.morphisms:
            if f.cod == g.dom:
                yield g, f


def validate_category(C: FinCat) -> Report:
    """Exhaustively check well-formedness, unit laws and associativity."""
    for a, i in C.identity.items():
        if a not in C.objects:
            raise StructuralError(f"{C.name}: identity table names unknown object {a}")
        if i not in C.mor:
            raise StructuralError(f"{C.name}: identity {i} of {a} is not a morphism")
    for m in C.morphisms:
        if m.dom not in C.objects or m.cod not in C.objects:
            raise StructuralError(f"{C.name}: morphism {m.name} has unresolved endpoints")
    for a in C.objects:
        if a not in C.identity:
            raise StructuralError(f"{C.name}: object {a} has no identity morphism")
    for (g, f), h in C.compose.items():
        if g not in C.mor or f not in C.mor or h not in C.mor:
            raise StructuralError(f"{C.name}: composition entry ({g},{f})={h} has unresolved ids")
        if C.mor[f].cod != C.mor[g].dom:
            raise StructuralError(f"{C.name}: composition entry for non-composable pair ({g},{f})")
        if C.mor[h].dom != C.mor[f].dom or C.mor[h].cod != C.mor[g].cod:
            raise StructuralError(f"{C.name}: composite {h} of ({g},{f}) has wrong endpoints")

    checked = 0
    for a, i in C.identity.items():
        if not (C.mor[i].dom == a and C.mor[i].cod == a):
            return fail_report(checked, "identity-endpoints", object=a, identity=i)
    pair_list = list(composable_pairs(C))
    for g, f in pair_list:
        if (g.name, f.name) not in C.compose:
            raise StructuralError(
                f"{C.name}: incomplete composition table, missing ({g.name},{f.name})")
        checked += 1
    for m in C.morphisms:
        if C.comp(m.name, C.identity[m.dom]) != m.name:
            return fail_report(checked, "unit", morphism=m.name, side="right")
        if C.comp(C.identity[m.cod], m.name) != m.name:
            return fail_report(checked, "unit", morphism=m.name, side="left")
    for h in C.morphisms:
        for g in C.morphisms:
            if g.cod != h.dom:
                continue
            for f in C.morphisms:
                if f.cod != g.dom:
                    continue
                checked += 1
                if C.comp(h.name, C.comp(g.name, f.name)) != C.comp(C.comp(h.name, g.name), f.name):
                    return fail_report(checked, "associativity", h=h.name, g=g.name, f=f.name)
    return ok_report(checked)


def validate_functor(F: Functor) -> Report:
    C, D = F.dom, F.cod
    for a in C.objects:
        if a not in F.obj_map:
            raise StructuralError(f"{F.name}: object map not total at {a}")
        if F.obj_map[a] not in D.objects:
            raise StructuralError(f"{F.name}: object map sends {a} outside {D.name}")
    for m in C.morphisms:
        if m.name not in F.mor_map:
            raise StructuralError(f"{F.name}: morphism map not total at {m.name}")
        u = F.mor_map[m.name]
        if u not in D.mor:
            raise StructuralError(f"{F.name}: morphism map sends {m.name} outside {D.name}")
        if D.mor[u].dom != F.obj_map[m.dom] or D.mor[u].cod != F.obj_map[m.cod]:
            raise StructuralError(f"{F.name}: image of {m.name} has wrong endpoints")
    checked = 0
    for a in C.objects:
        checked += 1
        if F.mor_map[C.id_of(a)] != D.id_of(F.obj_map[a]):
            return fail_report(checked, "functor-identity", object=a,
                               image=F.mor_map[C.id_of(a)])
    for g, f in composable_pairs(C):
        checked += 1
        if F.mor_map[C.comp(g.name, f.name)] != D.comp(F.mor_map[g.name], F.mor_map[f.name]):
            return fail_report(checked, "functor-composition", g=g.name, f=f.name)
    return ok_report(checked)


def validate_natural(alpha: NatTrans) -> Report:
    F, G = alpha.src, alpha.tgt
    if F.dom != G.dom or F.cod != G.cod:
        raise StructuralError(f"{alpha.name}: source and target functors are not parallel")
    C, D = F.dom, F.cod
    for a in C.objects:
        if a not in alpha.components:
            raise StructuralError(f"{alpha.name}: no component at {a}")
        u = alpha.components[a]
        if u not in D.mor:
            raise StructuralError(f"{alpha.name}: component at {a} is not a morphism of {D.name}")
        if D.mor[u].dom != F.obj_map[a] or D.mor[u].cod != G.obj_map[a]:
            raise StructuralError(
                f"{alpha.name}: component at {a} lies in the wrong hom-set")
    checked = 0
    for m in C.morphisms:
        checked += 1
        lhs = D.comp(G.mor_map[m.name], alpha.components[m.dom])
        rhs = D.comp(alpha.components[m.cod], F.mor_map[m.name])
        if lhs != rhs:
            return fail_report(checked, "naturality", morphism=m.name,
                               lhs=lhs, rhs=rhs)
    return ok_report(checked)


# ---------------------------------------------------------------------------
# Opposites and products

def opposite(C: FinCat) -> FinCat:
    """Swap every dom/cod and transpose the composition table.

    Applying it twice returns a category structurally equal to the input,
    including the name (the "op(..)" wrapper is stripped rather than doubled).
    """
    name = C.name[3:-1] if C.name.startswith("op(") and C.name.endswith(")") else f"op({C.name})"
    return FinCat(name, C.objects,
                  tuple(Mor(m.name, m.cod, m.dom) for m in C.morphisms),
                  dict(C.identity),
                  {(f, g): h for (g, f), h in C.compose.items()})


def opposite_functor(F: Functor) -> Functor:
    return Functor(F.name, opposite(F.dom), opposite(F.cod), dict(F.obj_map), dict(F.mor_map))


def product(C: FinCat, D: FinCat) -> FinCat:
    """Product category; ids are canonical pairs "(x,y)"."""
    pair = "({},{})".format
    objects = tuple(pair(x, y) for x in C.sorted_objects() for y in D.sorted_objects())
    mors = []
    for m in sorted(C.morphisms, key=lambda m: m.name):
        for n in sorted(D.morphisms, key=lambda n: n.name):
            mors.append(Mor(pair(m.name, n.name), pair(m.dom, n.dom), pair(m.cod, n.cod)))
    identity = {pair(x, y): pair(C.identity[x], D.identity[y])
                for x in C.objects for y in D.objects}
    table = {}
    for g, f in itertools.product(C.morphisms, repeat=2):
        if f.cod != g.dom:
            continue
        gf = C.comp(g.name, f.name)
        for gp, fp in itertools.product(D.morphisms, repeat=2):
            if fp.cod != gp.dom:
                continue
            table[(pair(g.name, gp.name), pair(f.name, fp.name))] = \
                pair(gf, D.comp(gp.name, fp.name))
    return FinCat(f"{C.name}x{D.name}", objects, tuple(mors), identity, table)


def pair_id(x: str, y: str) -> str:
    return f"({x},{y})"


def split_pair(p: str) -> tuple[str, str]:
    """Inverse of pair_id; splits at the comma with balanced parentheses."""
    assert p.startswith("(") and p.endswith(")")
    body = p[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch in "(⟨[":
            depth += 1
        elif ch in ")⟩]":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise StructuralError(f"not a pair id: {p}")


# ---------------------------------------------------------------------------
# Functor categories

def canonical_functor_id(F: Functor) -> str:
    """Stable cross-run object id for a functor inside a functor category."""
    obj = ";".join(f"{a}↦{F.obj_map[a]}" for a in sorted(F.obj_map))
    gens = F.dom.nonidentity_mor_names()
    if not gens:
        return obj
    return obj + "|" + ";".join(f"{f}↦{F.mor_map[f]}" for f in gens)


def canonical_nat_id(alpha: NatTrans) -> str:
    comps = ";".join(f"{a}↦{alpha.components[a]}" for a in sorted(alpha.components))
    return f"{canonical_functor_id(alpha.src)}=>{canonical_functor_id(alpha.tgt)}:[{comps}]"


def enumerate_functors(C: FinCat, D: FinCat, guard: int | None = None) -> list[Functor]:
    """All functors C -> D by backtracking, in canonical id order."""
    guard = DEFAULT_GUARD if guard is None else guard
    objs = C.sorted_objects()
    d_objs = D.sorted_objects()
    if len(d_objs) ** max(len(objs), 1) > guard:
        raise GuardExceeded(
            f"functor enumeration {C.name} -> {D.name} exceeds guard {guard}")
    gens = C.nonidentity_mor_names()
    pairs = [(g.name, f.name) for g, f in composable_pairs(C)]
    out = []
    for choice in itertools.product(d_objs, repeat=len(objs)):
        obj_map = dict(zip(objs, choice))
        mor_map = {C.id_of(a): D.id_of(obj_map[a]) for a in objs}

        def extend(i: int):
            if i == len(gens):
                for g, f in pairs:
                    gf = C.comp(g, f)
                    if D.comp(mor_map[g], mor_map[f]) != mor_map[gf]:
                        return
                out.append(Functor("F", C, D, dict(obj_map), dict(mor_map)))
                return
            f = gens[i]
            m = C.mor[f]
            for u in D.hom(obj_map[m.dom], obj_map[m.cod]):
                mor_map[f] = u
                ok = True
                for g2, f2 in pairs:
                    if g2 in mor_map and f2 in mor_map:
                        gf = C.comp(g2, f2)
                        if gf in mor_map and D.comp(mor_map[g2], mor_map[f2]) != mor_map[gf]:
                            ok = False
                            break
                if ok:
                    extend(i + 1)
                del mor_map[f]

        extend(0)
    out = [Functor(canonical_functor_id(F), C, D, F.obj_map, F.mor_map) for F in out]
    out.sort(key=lambda F: F.name)
    return out


def enumerate_nat_trans(F: Functor, G: Functor) -> list[NatTrans]:
    """All natural transformations F => G by backtracking with naturality pruning."""
    C, D = F.dom, F.cod
    objs = C.sorted_objects()
    mors = [C.mor[m] for m in C.sorted_mor_names()]
    out: list[NatTrans] = []
    comps: dict[str, str] = {}

    def extend(i: int):
        if i == len(objs):
            out.append(NatTrans("t", F, G, dict(comps)))
            return
        a = objs[i]
        for u in D.hom(F.obj_map[a], G.obj_map[a]):
            comps[a] = u
            ok = True
            for m in mors:
                if m.dom in comps and m.cod in comps:
                    if D.comp(G.mor_map[m.name], comps[m.dom]) != \
                            D.comp(comps[m.cod], F.mor_map[m.name]):
                        ok = False
                        break
            if ok:
                extend(i + 1)
            del comps[a]

    extend(0)
    return sorted(out, key=canonical_nat_id)


@dataclass(frozen=True, eq=False)
class FunctorCategory:
    """A materialized functor category with an index back to the tabulated values."""

    cat: FinCat
    functors: dict[str, Functor]
    nats: dict[str, NatTrans]

    def obj_id_of(self, F: Functor) -> str:
        return canonical_functor_id(F)

    def mor_id_of(self, alpha: NatTrans) -> str:
        return canonical_nat_id(alpha)


def functor_category(C: FinCat, D: FinCat, guard: int | None = None) -> FunctorCategory:
    """The category of functors C -> D and all natural transformations between them."""
    fs = enumerate_functors(C, D, guard)
    functors = {F.name: F for F in fs}
    nats: dict[str, NatTrans] = {}
    mors = []
    identity = {}
    for F in fs:
        for G in fs:
            for t in enumerate_nat_trans(F, G):
                tid = canonical_nat_id(t)
                nats[tid] = t
                mors.append(Mor(tid, F.name, G.name))
    for F in fs:
        identity[F.name] = canonical_nat_id(identity_nat(F))
    table = {}
    for m in mors:
        for n in mors:
            if n.cod != m.dom:
                continue
            table[(m.name, n.name)] = canonical_nat_id(vcompose(nats[m.name], nats[n.name]))
    cat = FinCat(f"[{C.name},{D.name}]", tuple(F.name for F in fs),
                 tuple(mors), identity, table)
    return FunctorCategory(cat, functors, nats)


def const_diagram(c: str, J: FinCat, C: FinCat) -> Functor:
    """The constant functor at c, i.e. the diagonal functor applied to c."""
    if c not in C.objects:
        raise StructuralError(f"unknown object {c} in {C.name}")
    return Functor(f"const({c})", J, C,
                   {j: c for j in J.objects},
                   {m.name: C.id_of(c) for m in J.morphisms})


def diagonal_functor(J: FinCat, C: FinCat, fc: FunctorCategory) -> Functor:
    """The diagonal functor C -> [J,C], tabulated against a materialized functor category."""
    obj_map = {}
    mor_map = {}
    for c in C.objects:
        obj_map[c] = fc.obj_id_of(const_diagram(c, J, C))
    for m in C.morphisms:
        src = fc.functors[obj_map[m.dom]]
        tgt = fc.functors[obj_map[m.cod]]
        nat = NatTrans(f"const({m.name})", src, tgt, {j: m.name for j in J.objects})
        mor_map[m.name] = fc.mor_id_of(nat)
    return Functor(f"diag[{J.name}]", C, fc.cat, obj_map, mor_map)


def fully_faithful_check(F: Functor) -> Report:
    """Is hom(a,b) -> hom(Fa,Fb) bijective for every pair of objects?"""
    C, D = F.dom, F.cod
    checked = 0
    for a in C.sorted_objects():
        for b in C.sorted_objects():
            checked += 1
            source = C.hom(a, b)
            target = D.hom(F.obj_map[a], F.obj_map[b])
            images = [F.mor_map[f] for f in source]
            if len(set(images)) < len(images):
                return fail_report(checked, "fully-faithful", pair=f"({a},{b})",
                                   failure="injectivity")
            if set(images) != set(target):
                return fail_report(checked, "fully-faithful", pair=f"({a},{b})",
                                   failure="surjectivity")
    return ok_report(checked)
