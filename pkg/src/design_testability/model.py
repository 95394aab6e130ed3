"""Language-neutral class model: types, loading, validation, hierarchy.

A model document is JSON::

    {"project": "demo",
     "classes": [{"name": "A", "parents": [],
                  "attributes": [{"name": "x", "type": "int", "visibility": "private"}],
                  "methods": [{"name": "run", "visibility": "public",
                               "params": [{"name": "p", "type": "B"}]}]}]}

``parents`` may be omitted; every other key is required.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Tuple

from .exceptions import CycleDetected, MalformedDocument, SchemaViolation

VISIBILITIES = ("public", "protected", "private")

Signature = Tuple[str, Tuple[str, ...]]


@dataclass(frozen=True)
class Param:
    name: str
    type_name: str


@dataclass(frozen=True)
class AttributeDecl:
    name: str
    type_name: str
    visibility: str


@dataclass(frozen=True)
class MethodDecl:
    name: str
    visibility: str
    params: Tuple[Param, ...] = ()

    @property
    def signature(self) -> Signature:
        """Name plus ordered parameter types; equal signatures override."""
        return (self.name, tuple(p.type_name for p in self.params))

    @property
    def param_types(self) -> FrozenSet[str]:
        return frozenset(p.type_name for p in self.params)


@dataclass(frozen=True)
class ClassDecl:
    name: str
    parents: Tuple[str, ...] = ()
    attributes: Tuple[AttributeDecl, ...] = ()
    methods: Tuple[MethodDecl, ...] = ()


@dataclass(frozen=True)
class DesignModel:
    project_name: str
    classes: Tuple[ClassDecl, ...] = ()

    def class_names(self) -> List[str]:
        return [c.name for c in self.classes]

    def get(self, name: str) -> ClassDecl:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)


# -- loading -----------------------------------------------------------------


def _require(obj: Mapping[str, Any], key: str, kind: type, where: str):
    if not isinstance(obj, Mapping):
        raise SchemaViolation(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaViolation(f"{where}: missing required field '{key}'")
    value = obj[key]
    if not isinstance(value, kind) or (kind is str and not value):
        expected = "non-empty string" if kind is str else kind.__name__
        raise SchemaViolation(f"{where}: field '{key}' must be a {expected}")
    return value


def _visibility(obj, where):
    vis = _require(obj, "visibility", str, where)
    if vis not in VISIBILITIES:
        raise SchemaViolation(
            f"{where}: bad visibility {vis!r} (expected one of {', '.join(VISIBILITIES)})"
        )
    return vis


def model_from_dict(doc: Mapping[str, Any]) -> DesignModel:
    """Build a :class:`DesignModel` from a decoded document, checking its schema."""
    project = _require(doc, "project", str, "document")
    raw_classes = _require(doc, "classes", list, "document")
    classes = []
    for i, rc in enumerate(raw_classes):
        where = f"classes[{i}]"
        name = _require(rc, "name", str, where)
        where = f"class '{name}'"
        parents = rc.get("parents", [])
        if not isinstance(parents, list) or not all(
            isinstance(p, str) and p for p in parents
        ):
            raise SchemaViolation(f"{where}: 'parents' must be a list of class names")
        attrs = []
        for j, ra in enumerate(_require(rc, "attributes", list, where)):
            aw = f"{where} attributes[{j}]"
            attrs.append(
                AttributeDecl(
                    name=_require(ra, "name", str, aw),
                    type_name=_require(ra, "type", str, aw),
                    visibility=_visibility(ra, aw),
                )
            )
        methods = []
        for j, rm in enumerate(_require(rc, "methods", list, where)):
            mw = f"{where} methods[{j}]"
            mname = _require(rm, "name", str, mw)
            vis = _visibility(rm, mw)
            params = []
            for k, rp in enumerate(_require(rm, "params", list, mw)):
                pw = f"{mw} params[{k}]"
                params.append(
                    Param(_require(rp, "name", str, pw), _require(rp, "type", str, pw))
                )
            methods.append(MethodDecl(mname, vis, tuple(params)))
        classes.append(ClassDecl(name, tuple(parents), tuple(attrs), tuple(methods)))
    return DesignModel(project, tuple(classes))


def model_to_dict(m: DesignModel) -> Dict[str, Any]:
    return {
        "project": m.project_name,
        "classes": [
            {
                "name": c.name,
                "parents": list(c.parents),
                "attributes": [
                    {"name": a.name, "type": a.type_name, "visibility": a.visibility}
                    for a in c.attributes
                ],
                "methods": [
                    {
                        "name": md.name,
                        "visibility": md.visibility,
                        "params": [{"name": p.name, "type": p.type_name} for p in md.params],
                    }
                    for md in c.methods
                ],
            }
            for c in m.classes
        ],
    }


def loads_design_model(text: str, path=None) -> DesignModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(exc.msg, path=path, line=exc.lineno, column=exc.colno) from exc
    try:
        return model_from_dict(doc)
    except SchemaViolation as exc:
        if path is not None:
            raise SchemaViolation(f"{path}: {exc}") from exc
        raise


def load_design_model(path) -> DesignModel:
    """Read a class-model document from ``path``.

    Raises ``FileNotFoundError`` for a missing file, :class:`MalformedDocument`
    for a syntax error and :class:`SchemaViolation` for structural problems.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return loads_design_model(text, path=str(path))


def dumps_design_model(m: DesignModel) -> str:
    return json.dumps(model_to_dict(m), indent=2) + "\n"


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # duplicate-class | unknown-parent | cycle | duplicate-attribute | ...
    classes: Tuple[str, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]


def _find_cycles(graph: Mapping[str, Tuple[str, ...]]) -> List[List[str]]:
    """Return one representative cycle per strongly connected component."""
    # Tarjan, iterative.
    index: Dict[str, int] = {}
    low: Dict[str, int] = {}
    on_stack = set()
    stack: List[str] = []
    cycles = []
    counter = 0
    for root in graph:
        if root in index:
            continue
        work = [(root, iter(graph.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in graph:
                    continue
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(graph.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1 or node in graph.get(node, ()):
                    cycles.append(sorted(comp))
    return cycles


def validate_model(m: DesignModel) -> ValidationReport:
    """Collect every invariant violation of ``m``; never raises."""
    out: List[Violation] = []
    seen = set()
    for c in m.classes:
        if c.name in seen:
            out.append(Violation("duplicate-class", (c.name,), f"class '{c.name}' declared more than once"))
        seen.add(c.name)

    for c in m.classes:
        for p in c.parents:
            if p not in seen:
                out.append(
                    Violation("unknown-parent", (c.name, p), f"class '{c.name}' has undeclared parent '{p}'")
                )
        attr_names = [a.name for a in c.attributes]
        for dup in sorted({n for n in attr_names if attr_names.count(n) > 1}):
            out.append(
                Violation("duplicate-attribute", (c.name,), f"class '{c.name}' repeats attribute '{dup}'")
            )
        sigs = [md.signature for md in c.methods]
        for dup in sorted({s for s in sigs if sigs.count(s) > 1}):
            out.append(
                Violation(
                    "duplicate-method",
                    (c.name,),
                    f"class '{c.name}' repeats method {dup[0]}({', '.join(dup[1])})",
                )
            )
        for md in c.methods:
            pnames = [p.name for p in md.params]
            if len(set(pnames)) != len(pnames):
                out.append(
                    Violation(
                        "duplicate-parameter",
                        (c.name,),
                        f"method '{c.name}.{md.name}' repeats a parameter name",
                    )
                )

    graph = {}
    for c in m.classes:
        graph.setdefault(c.name, ())
        graph[c.name] = graph[c.name] + tuple(c.parents)
    for cyc in _find_cycles(graph):
        out.append(Violation("cycle", tuple(cyc), "inheritance cycle through " + ", ".join(cyc)))
    return ValidationReport(tuple(out))


# -- hierarchy ---------------------------------------------------------------


@dataclass(frozen=True)
class ResolvedClass:
    ancestors: FrozenSet[str]
    inherited: FrozenSet[Signature]
    local: FrozenSet[Signature]


@dataclass(frozen=True)
class ResolvedHierarchy:
    classes: Mapping[str, ResolvedClass] = field(default_factory=dict)

    def __getitem__(self, name: str) -> ResolvedClass:
        return self.classes[name]

    def ancestors(self, name: str) -> FrozenSet[str]:
        return self.classes[name].ancestors

    def inherited(self, name: str) -> FrozenSet[Signature]:
        return self.classes[name].inherited

    def local(self, name: str) -> FrozenSet[Signature]:
        return self.classes[name].local


def resolve_hierarchy(m: DesignModel) -> ResolvedHierarchy:
    """Compute transitive ancestors and inherited method signatures per class.

    A locally declared method with the same signature as an ancestor's
    shadows it. Signatures reached through several ancestors count once.
    """
    by_name = {c.name: c for c in m.classes}
    graph = {c.name: tuple(p for p in c.parents if p in by_name) for c in m.classes}
    cycles = _find_cycles(graph)
    if cycles:
        raise CycleDetected("inheritance cycle through " + ", ".join(cycles[0]))

    ancestors: Dict[str, FrozenSet[str]] = {}

    def anc(name):
        if name not in ancestors:
            acc = set()
            for p in graph[name]:
                acc.add(p)
                acc |= anc(p)
            ancestors[name] = frozenset(acc)
        return ancestors[name]

    resolved = {}
    for c in m.classes:
        local = frozenset(md.signature for md in c.methods)
        inherited = set()
        for a in anc(c.name):
            inherited.update(md.signature for md in by_name[a].methods)
        resolved[c.name] = ResolvedClass(anc(c.name), frozenset(inherited - local), local)
    return ResolvedHierarchy(resolved)
