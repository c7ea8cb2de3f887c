"""JSON serialization for rings, modules, groups, certificates, categories.

Every scalar is written as a string ("p/q" over the rationals, a
decimal residue over a prime field) so round-trips are exact.  Files
are written with sorted keys and a fixed indent, which makes repeated
runs byte-identical.
"""

from __future__ import annotations

import json

from .fields import ScalarField
from .linalg import Mat
from .rings import (
    StructureRing,
    RingMorphism,
    IdempotentFamily,
    check_group_table,
)
from .modules import LeftModule
from .tensor import tensor_square
from .separability import SeparabilityCertificate
from .category import FiniteCategory


class InputError(ValueError):
    """Malformed or inconsistent definition file."""


def _scal(field: ScalarField, s):
    if not isinstance(s, str):
        raise InputError("scalar entries must be strings, got %r" % (s,))
    try:
        return field.parse(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("bad scalar %r: %s" % (s, exc)) from exc


def mat_to_json(field: ScalarField, m: Mat) -> list:
    return [[field.format(x) for x in row] for row in m.data]


def mat_from_json(field: ScalarField, rows, shape=None) -> Mat:
    data = [[_scal(field, s) for s in row] for row in rows]
    ncols = len(data[0]) if data else (shape[1] if shape else 0)
    if any(len(r) != ncols for r in data):
        raise InputError("ragged matrix")
    m = Mat(len(data), ncols, data) if data else Mat.zero(field, 0, ncols)
    if shape and (m.rows, m.cols) != tuple(shape):
        raise InputError("matrix has shape %dx%d, expected %dx%d"
                         % (m.rows, m.cols, shape[0], shape[1]))
    return m


def vec_to_json(field: ScalarField, v: list) -> list:
    return [field.format(x) for x in v]


def vec_from_json(field: ScalarField, entries) -> list:
    return [_scal(field, s) for s in entries]


# -- rings -------------------------------------------------------------------


def ring_to_json(ring: StructureRing, family: IdempotentFamily = None) -> dict:
    n = ring.dim
    mul = [
        [
            vec_to_json(ring.field,
                        [ring.table[i][j].get(k, ring.field.zero)
                         for k in range(n)])
            for j in range(n)
        ]
        for i in range(n)
    ]
    out = {
        "label": ring.label,
        "field": ring.field.to_json(),
        "dim": n,
        "mul": mul,
    }
    if family is not None:
        out["idempotents"] = [vec_to_json(ring.field, e)
                              for e in family.idempotents]
    return out


def ring_from_json(obj: dict):
    """Returns (ring, idempotent family or None)."""
    try:
        field = ScalarField.from_json(obj["field"])
        n = obj["dim"]
        mul = obj["mul"]
        label = obj.get("label", "")
    except (KeyError, TypeError) as exc:
        raise InputError("ring file missing field: %s" % exc) from exc
    if len(mul) != n or any(len(r) != n for r in mul):
        raise InputError("mul table must be %d x %d x %d" % (n, n, n))
    consts = [[vec_from_json(field, mul[i][j]) for j in range(n)]
              for i in range(n)]
    for i in range(n):
        for j in range(n):
            if len(consts[i][j]) != n:
                raise InputError("mul[%d][%d] has wrong length" % (i, j))
    ring = StructureRing.from_constants(field, consts, label)
    family = None
    if "idempotents" in obj:
        idems = [vec_from_json(field, e) for e in obj["idempotents"]]
        family = IdempotentFamily(ring, idems)
    return ring, family


def group_from_json(obj: dict) -> list:
    try:
        order = obj["order"]
        table = obj["table"]
    except (KeyError, TypeError) as exc:
        raise InputError("group file missing field: %s" % exc) from exc
    if len(table) != order or any(len(r) != order for r in table):
        raise InputError("group table must be %d x %d" % (order, order))
    check_group_table(table)
    return table


def group_to_json(table: list) -> dict:
    return {"order": len(table), "table": table}


# -- modules -----------------------------------------------------------------


def module_to_json(m: LeftModule, ring_label: str = None) -> dict:
    return {
        "ring": ring_label if ring_label is not None else m.ring.label,
        "dim": m.dim,
        "actions": [mat_to_json(m.field, a) for a in m.actions],
    }


def module_from_json(obj: dict, ring: StructureRing,
                     label: str = "") -> LeftModule:
    try:
        dim = obj["dim"]
        actions = obj["actions"]
    except (KeyError, TypeError) as exc:
        raise InputError("module file missing field: %s" % exc) from exc
    if len(actions) != ring.dim:
        raise InputError("need one action matrix per ring basis element")
    mats = [mat_from_json(ring.field, a, (dim, dim)) for a in actions]
    return LeftModule(ring, mats, label or obj.get("label", ""))


# -- certificates --------------------------------------------------------------


def certificate_to_json(cert: SeparabilityCertificate,
                        ring_label: str, base_label: str) -> dict:
    sq = cert.square
    field = sq.ring.field
    return {
        "ring": ring_label,
        "base": base_label,
        "morphism": mat_to_json(field, sq.f.matrix),
        "tensor_basis": mat_to_json(field, sq.tensor.quotient.section),
        "sigma": mat_to_json(field, cert.sigma),
        "scalars": field.to_json(),
    }


def certificate_from_json(obj: dict, ring: StructureRing,
                          base: StructureRing) -> SeparabilityCertificate:
    """Rebuild a certificate with no solver state.

    The tensor square is reconstructed from the ring data and the
    inclusion matrix; the stored coset section must match the
    reconstruction exactly, so a tampered tensor basis is rejected
    before sigma is even looked at.
    """
    try:
        field = ScalarField.from_json(obj["scalars"])
    except (KeyError, TypeError) as exc:
        raise InputError("certificate missing field: %s" % exc) from exc
    if field != ring.field or field != base.field:
        raise InputError("certificate scalars disagree with ring fields")
    fmat = mat_from_json(field, obj["morphism"], (ring.dim, base.dim))
    f = RingMorphism(base, ring, fmat)
    sq = tensor_square(f)
    stored = mat_from_json(field, obj["tensor_basis"])
    if stored.data != sq.tensor.quotient.section.data:
        raise InputError("tensor basis does not match the extension")
    sigma = mat_from_json(field, obj["sigma"], (sq.tensor.dim, ring.dim))
    return SeparabilityCertificate(sq, sigma)


# -- categories ----------------------------------------------------------------


def category_to_json(cat: FiniteCategory) -> dict:
    homs = {}
    for a in range(cat.n_objects):
        for b in range(cat.n_objects):
            ms = cat.hom(a, b)
            if ms:
                homs["%s->%s" % (cat.objects[a], cat.objects[b])] = [
                    cat.names[m] for m in ms]
    compose = {}
    for (g, f), h in sorted(cat.compose_table.items()):
        compose["%s;%s" % (cat.names[g], cat.names[f])] = cat.names[h]
    return {
        "label": cat.label,
        "objects": list(cat.objects),
        "homs": homs,
        "compose": compose,
        "identities": {cat.objects[o]: cat.names[i]
                       for o, i in enumerate(cat.identities)},
    }


def category_from_json(obj: dict) -> FiniteCategory:
    try:
        objects = obj["objects"]
        homs = obj["homs"]
        compose = obj["compose"]
        identities = obj["identities"]
    except (KeyError, TypeError) as exc:
        raise InputError("category file missing field: %s" % exc) from exc
    oidx = {o: i for i, o in enumerate(objects)}
    names, src, dst = [], [], []
    midx = {}
    for key, ms in homs.items():
        try:
            a, b = key.split("->")
        except ValueError as exc:
            raise InputError("bad hom key %r" % key) from exc
        if a not in oidx or b not in oidx:
            raise InputError("hom key %r names unknown object" % key)
        for name in ms:
            if name in midx:
                raise InputError("duplicate morphism name %r" % name)
            midx[name] = len(names)
            names.append(name)
            src.append(oidx[a])
            dst.append(oidx[b])
    comp = {}
    for key, h in compose.items():
        try:
            g, f = key.split(";")
        except ValueError as exc:
            raise InputError("bad composition key %r" % key) from exc
        for nm in (g, f, h):
            if nm not in midx:
                raise InputError("composition names unknown morphism %r" % nm)
        comp[(midx[g], midx[f])] = midx[h]
    try:
        ids = [midx[identities[o]] for o in objects]
    except KeyError as exc:
        raise InputError("identity entry missing or unknown: %s" % exc) from exc
    return FiniteCategory(objects, src, dst, comp, ids, names,
                          obj.get("label", ""))


def functor_from_json(obj: dict, ws: "Workspace"):
    """Functor file: {"source": cat label, "target": cat label,
    "object_map": {obj: obj}, "morphism_map": {name: name}}."""
    from .category import FiniteFunctor
    try:
        C = ws.resolve_category(obj["source"])
        D = ws.resolve_category(obj["target"])
        omap = obj["object_map"]
        mmap = obj["morphism_map"]
    except (KeyError, TypeError) as exc:
        raise InputError("functor file missing field: %s" % exc) from exc
    d_oidx = {o: i for i, o in enumerate(D.objects)}
    d_midx = {n: i for i, n in enumerate(D.names)}
    try:
        object_map = [d_oidx[omap[o]] for o in C.objects]
        morphism_map = [d_midx[mmap[n]] for n in C.names]
    except KeyError as exc:
        raise InputError("functor map entry missing or unknown: %s" % exc) \
            from exc
    return FiniteFunctor(C, D, object_map, morphism_map,
                         obj.get("label", ""))


# -- workspace -----------------------------------------------------------------


class Workspace:
    """Label-addressed store of the objects read from definition files."""

    def __init__(self):
        self.rings: dict = {}
        self.families: dict = {}
        self.morphisms: dict = {}
        self.modules: dict = {}
        self.groups: dict = {}
        self.categories: dict = {}

    def _register(self, table: dict, label: str, value):
        if not label:
            raise InputError("every definition needs a nonempty label")
        if label in table:
            raise InputError("duplicate label %r" % label)
        table[label] = value

    def add_object(self, obj: dict, label_hint: str = ""):
        """Dispatch one parsed JSON object on its shape."""
        if "mul" in obj:
            ring, family = ring_from_json(obj)
            self._register(self.rings, ring.label or label_hint, ring)
            if family is not None:
                self.families[ring.label or label_hint] = family
        elif "actions" in obj:
            label = obj.get("label", label_hint)
            ring = self.resolve_ring(obj.get("ring"))
            mod = module_from_json(obj, ring, label)
            self._register(self.modules, label, mod)
        elif "order" in obj and "table" in obj:
            label = obj.get("label", label_hint)
            self._register(self.groups, label, group_from_json(obj))
        elif "objects" in obj and "homs" in obj:
            cat = category_from_json(obj)
            self._register(self.categories, cat.label or label_hint, cat)
        else:
            raise InputError("unrecognized definition object (keys: %s)"
                             % sorted(obj))

    def load_file(self, path: str):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(
                    "%s: invalid JSON at line %d column %d: %s"
                    % (path, exc.lineno, exc.colno, exc.msg)) from exc
        import os
        hint = os.path.splitext(os.path.basename(path))[0]
        if isinstance(data, list):
            for item in data:
                self.add_object(item, hint)
        else:
            self.add_object(data, hint)

    def resolve_ring(self, label) -> StructureRing:
        if label not in self.rings:
            raise InputError("unknown ring label %r" % (label,))
        return self.rings[label]

    def resolve_module(self, label) -> LeftModule:
        if label not in self.modules:
            raise InputError("unknown module label %r" % (label,))
        return self.modules[label]

    def resolve_group(self, label) -> list:
        if label not in self.groups:
            raise InputError("unknown group label %r" % (label,))
        return self.groups[label]

    def resolve_category(self, label) -> FiniteCategory:
        if label not in self.categories:
            raise InputError("unknown category label %r" % (label,))
        return self.categories[label]


def dump_canonical(obj: dict) -> str:
    """Deterministic serialization: sorted keys, fixed indent, newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_canonical(path: str, obj: dict):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_canonical(obj))
