"""The .cat workspace format: parse, validate, serialize.

Line-oriented declarations with '#' comments:

    category C { objects: a, b; mor f: a -> b; compose g.f = h; }
    functor F: C -> D { obj a |-> x; mor f |-> u; }
    nat t: F => G { at a: u; }
    setfunctor X: C -> Set { obj a |-> {e1,e2}; mor f |-> [e1->d1, e2->d1]; }
    term name = "alpha ; (beta | id(F))";

Identities are implicit; composition tables must cover every non-identity
composable pair.  op(C) is allowed as a setfunctor source.  Names may be bare
identifiers or double-quoted strings (needed for constructed ids like
"(0,0)").
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .core import (
    FinCat,
    Functor,
    NatTrans,
    StructuralError,
    make_category,
    opposite,
    validate_category,
    validate_functor,
    validate_natural,
)
from .diagram import Environment, Term, parse_term, pretty
from .finset import FinSetMap, FinSetObj, SetFunctor, validate_set_functor


class CatSyntaxError(StructuralError):
    def __init__(self, message: str, file: str, line: int, col: int):
        super().__init__(f"{file}:{line}:{col}: {message}")
        self.file = file
        self.line = line
        self.col = col


class LawViolation(Exception):
    """A well-formed declaration that fails its law check; carries the Report."""

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


_PUNCT = ["|->", "->", "=>", "{", "}", ";", ":", ",", ".", "=", "(", ")", "[", "]"]
_TOKEN = re.compile(
    r'"(?:[^"\\]|\\.)*"|' + "|".join(re.escape(p) for p in _PUNCT) +
    r"|[A-Za-z_][A-Za-z0-9_]*|\S")


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str, filename: str) -> list[_Tok]:
    out = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in _TOKEN.finditer(line):
            out.append(_Tok(m.group(0), ln, m.start() + 1))
    return out


@dataclass(frozen=True, eq=False)
class Workspace:
    categories: dict[str, FinCat]
    functors: dict[str, Functor]
    nats: dict[str, NatTrans]
    setfunctors: dict[str, SetFunctor]
    terms: dict[str, Term]

    def env(self) -> Environment:
        env = Environment(dict(self.categories), dict(self.functors), dict(self.nats))
        env.validate()
        return env


class _WorkspaceParser:
    def __init__(self, text: str, filename: str):
        self.toks = _tokenize(text, filename)
        self.pos = 0
        self.file = filename

    def error(self, message: str):
        if self.pos < len(self.toks):
            t = self.toks[self.pos]
            raise CatSyntaxError(message, self.file, t.line, t.col)
        last = self.toks[-1] if self.toks else _Tok("", 1, 1)
        raise CatSyntaxError(message + " (at end of file)", self.file, last.line, last.col)

    def peek(self) -> Optional[str]:
        return self.toks[self.pos].text if self.pos < len(self.toks) else None

    def take(self, expect: Optional[str] = None) -> str:
        if self.pos >= len(self.toks):
            self.error(f"expected {expect!r}" if expect else "unexpected end of file")
        t = self.toks[self.pos]
        if expect is not None and t.text != expect:
            self.error(f"expected {expect!r}, found {t.text!r}")
        self.pos += 1
        return t.text

    def name(self) -> str:
        t = self.take()
        if t.startswith('"') and t.endswith('"') and len(t) >= 2:
            return t[1:-1].replace('\\"', '"').replace("\\\\", "\\")
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t):
            return t
        self.pos -= 1
        self.error(f"expected a name, found {t!r}")

    def parse(self) -> dict:
        decls = {"category": [], "functor": [], "nat": [], "setfunctor": [], "term": []}
        while self.peek() is not None:
            kind = self.take()
            if kind not in decls:
                self.pos -= 1
                self.error(f"unknown declaration {kind!r}")
            getattr(self, f"parse_{kind}")(decls)
        return decls

    def parse_category(self, decls):
        cname = self.name()
        self.take("{")
        objects, arrows, compose = [], [], {}
        while self.peek() != "}":
            key = self.take()
            if key == "objects":
                self.take(":")
                objects.append(self.name())
                while self.peek() == ",":
                    self.take(",")
                    objects.append(self.name())
                self.take(";")
            elif key == "mor":
                mname = self.name()
                self.take(":")
                d = self.name()
                self.take("->")
                c = self.name()
                self.take(";")
                arrows.append((mname, d, c))
            elif key == "compose":
                g = self.name()
                self.take(".")
                f = self.name()
                self.take("=")
                h = self.name()
                self.take(";")
                compose[(g, f)] = h
            else:
                self.pos -= 1
                self.error(f"unknown category clause {key!r}")
        self.take("}")
        decls["category"].append((cname, objects, arrows, compose))

    def parse_functor(self, decls):
        fname = self.name()
        self.take(":")
        dom = self.name()
        self.take("->")
        cod = self.name()
        self.take("{")
        obj_map, mor_map = {}, {}
        while self.peek() != "}":
            key = self.take()
            if key == "obj":
                a = self.name()
                self.take("|->")
                obj_map[a] = self.name()
                self.take(";")
            elif key == "mor":
                f = self.name()
                self.take("|->")
                mor_map[f] = self.name()
                self.take(";")
            else:
                self.pos -= 1
                self.error(f"unknown functor clause {key!r}")
        self.take("}")
        decls["functor"].append((fname, dom, cod, obj_map, mor_map))

    def parse_nat(self, decls):
        tname = self.name()
        self.take(":")
        src = self.name()
        self.take("=>")
        tgt = self.name()
        self.take("{")
        comps = {}
        while self.peek() != "}":
            self.take("at")
            a = self.name()
            self.take(":")
            comps[a] = self.name()
            self.take(";")
        self.take("}")
        decls["nat"].append((tname, src, tgt, comps))

    def parse_setfunctor(self, decls):
        xname = self.name()
        self.take(":")
        src = self.name()
        if src == "op" and self.peek() == "(":
            self.take("(")
            src = f"op({self.name()})"
            self.take(")")
        self.take("->")
        target = self.take()
        if target != "Set":
            self.pos -= 1
            self.error("setfunctor target must be Set")
        self.take("{")
        on_obj, on_mor = {}, {}
        while self.peek() != "}":
            key = self.take()
            if key == "obj":
                a = self.name()
                self.take("|->")
                self.take("{")
                elems = []
                if self.peek() != "}":
                    elems.append(self.name())
                    while self.peek() == ",":
                        self.take(",")
                        elems.append(self.name())
                self.take("}")
                self.take(";")
                on_obj[a] = tuple(elems)
            elif key == "mor":
                f = self.name()
                self.take("|->")
                self.take("[")
                table = {}
                if self.peek() != "]":
                    x = self.name()
                    self.take("->")
                    table[x] = self.name()
                    while self.peek() == ",":
                        self.take(",")
                        x = self.name()
                        self.take("->")
                        table[x] = self.name()
                self.take("]")
                self.take(";")
                on_mor[f] = table
            else:
                self.pos -= 1
                self.error(f"unknown setfunctor clause {key!r}")
        self.take("}")
        decls["setfunctor"].append((xname, src, on_obj, on_mor))

    def parse_term(self, decls):
        tname = self.name()
        self.take("=")
        body = self.take()
        if not (body.startswith('"') and body.endswith('"')):
            self.pos -= 1
            self.error("term body must be a quoted string")
        self.take(";")
        decls["term"].append((tname, body[1:-1]))


def parse_workspace(files: list[tuple[str, str]]) -> Workspace:
    """Build a workspace from (filename, text) pairs; everything validates on load."""
    merged = {"category": [], "functor": [], "nat": [], "setfunctor": [], "term": []}
    for filename, text in files:
        decls = _WorkspaceParser(text, filename).parse()
        for k, v in decls.items():
            merged[k].extend(v)

    categories: dict[str, FinCat] = {}
    for cname, objects, arrows, compose in merged["category"]:
        if cname in categories:
            raise StructuralError(f"duplicate category {cname}")
        C = make_category(cname, objects, arrows, compose)
        rep = validate_category(C)
        if not rep.ok:
            raise LawViolation(f"category {cname} violates a law", rep)
        categories[cname] = C

    def resolve_cat(name: str) -> FinCat:
        if name.startswith("op(") and name.endswith(")") and name[3:-1] in categories:
            return opposite(categories[name[3:-1]])
        if name not in categories:
            raise StructuralError(f"unresolved category reference {name}")
        return categories[name]

    functors: dict[str, Functor] = {}
    for fname, dom, cod, obj_map, mor_map in merged["functor"]:
        D, C = resolve_cat(dom), resolve_cat(cod)
        full = dict(mor_map)
        for a in D.objects:
            if a in obj_map:
                full.setdefault(D.id_of(a), C.id_of(obj_map[a]))
        F = Functor(fname, D, C, obj_map, full)
        rep = validate_functor(F)
        if not rep.ok:
            raise LawViolation(f"functor {fname} violates a law", rep)
        functors[fname] = F

    nats: dict[str, NatTrans] = {}
    for tname, src, tgt, comps in merged["nat"]:
        if src not in functors or tgt not in functors:
            raise StructuralError(f"nat {tname}: unresolved functor reference")
        t = NatTrans(tname, functors[src], functors[tgt], comps)
        rep = validate_natural(t)
        if not rep.ok:
            raise LawViolation(f"nat {tname} violates naturality", rep)
        nats[tname] = t

    setfunctors: dict[str, SetFunctor] = {}
    for xname, src, on_obj_raw, on_mor_raw in merged["setfunctor"]:
        C = resolve_cat(src)
        on_obj = {a: FinSetObj(v) for a, v in on_obj_raw.items()}
        for a in C.objects:
            if a not in on_obj:
                raise StructuralError(f"setfunctor {xname}: no value at object {a}")
        on_mor = {}
        for m in C.morphisms:
            if C.is_identity(m.name) and m.name not in on_mor_raw:
                on_mor[m.name] = FinSetMap(on_obj[m.dom], on_obj[m.dom],
                                           {x: x for x in on_obj[m.dom].elements})
            elif m.name in on_mor_raw:
                on_mor[m.name] = FinSetMap(on_obj[m.dom], on_obj[m.cod],
                                           on_mor_raw[m.name])
            else:
                raise StructuralError(f"setfunctor {xname}: no table at {m.name}")
        X = SetFunctor(xname, C, on_obj, on_mor)
        rep = validate_set_functor(X)
        if not rep.ok:
            raise LawViolation(f"setfunctor {xname} violates functoriality", rep)
        setfunctors[xname] = X

    terms: dict[str, Term] = {}
    for tname, body in merged["term"]:
        terms[tname] = parse_term(body)

    return Workspace(categories, functors, nats, setfunctors, terms)


def load_workspace(paths: list[str]) -> Workspace:
    files = []
    for p in paths:
        with open(p, "r", encoding="utf8") as fh:
            files.append((p, fh.read()))
    return parse_workspace(files)


def _q(name: str) -> str:
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize(ws: Workspace) -> str:
    """Emit a workspace as .cat text that reparses to a structurally equal one."""
    out = []
    for cname in sorted(ws.categories):
        C = ws.categories[cname]
        out.append(f"category {_q(cname)} {{")
        out.append("  objects: " + ", ".join(_q(a) for a in C.sorted_objects()) + ";")
        for m in sorted(C.morphisms, key=lambda m: m.name):
            if not C.is_identity(m.name):
                out.append(f"  mor {_q(m.name)}: {_q(m.dom)} -> {_q(m.cod)};")
        for (g, f), h in sorted(C.compose.items()):
            if not C.is_identity(g) and not C.is_identity(f):
                out.append(f"  compose {_q(g)}.{_q(f)} = {_q(h)};")
        out.append("}")
    for fname in sorted(ws.functors):
        F = ws.functors[fname]
        out.append(f"functor {_q(fname)}: {_q(F.dom.name)} -> {_q(F.cod.name)} {{")
        for a in sorted(F.obj_map):
            out.append(f"  obj {_q(a)} |-> {_q(F.obj_map[a])};")
        for f in sorted(F.mor_map):
            if not F.dom.is_identity(f):
                out.append(f"  mor {_q(f)} |-> {_q(F.mor_map[f])};")
        out.append("}")
    for tname in sorted(ws.nats):
        t = ws.nats[tname]
        out.append(f"nat {_q(tname)}: {_q(t.src.name)} => {_q(t.tgt.name)} {{")
        for a in sorted(t.components):
            out.append(f"  at {_q(a)}: {_q(t.components[a])};")
        out.append("}")
    for xname in sorted(ws.setfunctors):
        X = ws.setfunctors[xname]
        src = X.dom.name
        out.append(f"setfunctor {_q(xname)}: {_q_src(src)} -> Set {{")
        for a in sorted(X.on_obj):
            elems = ", ".join(_q(x) for x in X.on_obj[a].sorted())
            out.append(f"  obj {_q(a)} |-> {{{elems}}};")
        for f in sorted(X.on_mor):
            if not X.dom.is_identity(f):
                entries = ", ".join(f"{_q(x)} -> {_q(y)}"
                                    for x, y in sorted(X.on_mor[f].table.items()))
                out.append(f"  mor {_q(f)} |-> [{entries}];")
        out.append("}")
    for tname in sorted(ws.terms):
        out.append(f'term {_q(tname)} = "{pretty(ws.terms[tname])}";')
    return "\n".join(out) + "\n"


def _q_src(src: str) -> str:
    if src.startswith("op(") and src.endswith(")"):
        return f"op({_q(src[3:-1])})"
    return _q(src)
