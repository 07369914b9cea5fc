"""Persistence, the curated complex library, and text import/export.

Complexes are stored as versioned JSON documents that round-trip
bit-identically, including display labels and whitelisted cached
properties.  The shipped library is a directory of such documents; the
``SIMPLICIA_LIB`` environment variable overrides its location.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from importlib import resources

from .complex import Complex, SimplicialError, from_facets
from .invariants import euler_characteristic, homology, orientability

SCHEMA_VERSION = 1


class DocumentError(SimplicialError):
    """Malformed or incompatible on-disk document."""


# -- cached property (de)serialization --------------------------------------

def _encode_cache(cache):
    out = {}
    for key, value in cache.items():
        if key == "f_vector":
            out[key] = list(value)
        elif key == "chi":
            out[key] = int(value)
        elif key == "flags":
            out[key] = dict(value)
        elif key == "homology":
            out[key] = [[b, list(t)] for b, t in value]
        elif key == "orientable":
            out[key] = [value[0], list(value[1]) if value[1] is not None else None]
        elif key == "topological_type":
            out[key] = str(value)
    return out


def _decode_cache_entry(key, value):
    if key == "homology":
        return tuple((int(b), tuple(int(x) for x in t)) for b, t in value)
    if key == "orientable":
        return (bool(value[0]), tuple(value[1]) if value[1] is not None else None)
    if key == "flags":
        return dict(value)
    return value


_RECOMPUTE = {
    "f_vector": lambda c: c.f_vector(),
    "chi": euler_characteristic,
    "flags": lambda c: c.flags(),
    "homology": lambda c: homology(c).entries,
    "orientable": lambda c: (orientability(c)[0], tuple(orientability(c)[1] or ()) or None),
}


def to_document(c: Complex, name=None, move_log=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": c.name if name is None else name,
        "labels": list(c.labels),
        "facets": [list(f) for f in c.facets],
        "cached_properties": _encode_cache(c._cache),
    }
    if move_log is not None:
        doc["move_log"] = [[list(a), list(b)] for a, b in move_log]
    return doc


def from_document(doc, strict=False) -> Complex:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentError(
            "unsupported schema_version %r (expected %d)" % (version, SCHEMA_VERSION)
        )
    for field in ("name", "labels", "facets"):
        if field not in doc:
            raise DocumentError("missing field %r" % field)
    facets = [list(f) for f in doc["facets"]]
    labels = list(doc["labels"])
    c = from_facets(facets, labels=labels, name=doc["name"])
    if [list(f) for f in c.facets] != facets:
        raise DocumentError("facets are not in canonical form")
    stored = doc.get("cached_properties", {})
    for key, value in stored.items():
        decoded = _decode_cache_entry(key, value)
        if strict and key in _RECOMPUTE:
            fresh = _RECOMPUTE[key](c)
            fresh_enc = _encode_cache({key: fresh}).get(key)
            if fresh_enc != value:
                raise DocumentError(
                    "stored property %r does not match recomputation: %r != %r"
                    % (key, value, fresh_enc)
                )
        c.cache_put(key, decoded)
    return c


def dumps_document(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save(c: Complex, path, name=None, move_log=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(to_document(c, name=name, move_log=move_log)))


def load(path, strict=False) -> Complex:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError("%s: %s" % (path, err)) from err
    return from_document(doc, strict=strict)


def load_document(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as err:
            raise DocumentError("%s: %s" % (path, err)) from err


# -- library -----------------------------------------------------------------

@dataclass
class LibraryEntry:
    name: str
    complex: Complex
    properties: dict

    @property
    def dim(self):
        return self.complex.dim


def _entry_properties(c: Complex):
    props = dict(_encode_cache(c._cache))
    props.setdefault("f_vector", c.f_vector())
    props["dim"] = c.dim
    props["vertices"] = c.n_vertices
    props["facets"] = len(c.facets)
    return props


class Library:
    """A directory of complex documents searchable by name or property."""

    def __init__(self, path):
        self.path = str(path)
        self._entries = None

    def entries(self):
        if self._entries is None:
            out = []
            for fname in sorted(os.listdir(self.path)):
                if not fname.endswith(".json"):
                    continue
                c = load(os.path.join(self.path, fname))
                out.append(LibraryEntry(c.name, c, _entry_properties(c)))
            self._entries = out
        return list(self._entries)

    def validate_strict(self):
        """Re-load every entry in strict mode; returns the number checked."""
        count = 0
        for fname in sorted(os.listdir(self.path)):
            if fname.endswith(".json"):
                load(os.path.join(self.path, fname), strict=True)
                count += 1
        return count

    def search_name(self, needle):
        needle = needle.lower()
        return [e for e in self.entries() if needle in e.name.lower()]

    def search(self, query):
        """Name-substring search, or a property predicate search.

        Anything containing a comparison operator or the torsion keyword is
        treated as a predicate; a predicate that fails to parse is an error.
        """
        if any(tok in query for tok in ("==", "!=", "<", ">", ".torsion")):
            predicate = parse_predicate(query)
            return [e for e in self.entries() if predicate(e)]
        return self.search_name(query)

    def get(self, name):
        for e in self.entries():
            if e.name == name:
                return e
        raise KeyError(name)


def default_library() -> Library:
    override = os.environ.get("SIMPLICIA_LIB")
    if override:
        return Library(override)
    return Library(resources.files("simplicia") / "library")


# -- property predicates -------------------------------------------------------

_GRAMMAR = (
    "predicate grammar: CLAUSE ('and' CLAUSE)*; "
    "CLAUSE: dim|chi|vertices|facets OP INT | f[K] OP INT | betti[K] OP INT "
    "| homology[K].torsion nonempty|empty; OP: == != < <= > >="
)

_OPS = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
}

_CLAUSE = re.compile(
    r"^\s*(dim|chi|vertices|facets|f\[(\d+)\]|betti\[(\d+)\])\s*"
    r"(==|!=|<=|>=|<|>)\s*(-?\d+)\s*$"
)
_TORSION = re.compile(r"^\s*homology\[(\d+)\]\.torsion\s+(nonempty|empty)\s*$")


def parse_predicate(query):
    """Compile a property query into a function on LibraryEntry."""
    clauses = []
    for part in re.split(r"\s+and\s+", query.strip()):
        m = _CLAUSE.match(part)
        if m:
            key, fk, bk, op, value = m.groups()
            value = int(value)
            if fk is not None:
                clauses.append(_field_clause("f_vector", int(fk), op, value))
            elif bk is not None:
                clauses.append(_betti_clause(int(bk), op, value))
            else:
                clauses.append(_scalar_clause(key, op, value))
            continue
        m = _TORSION.match(part)
        if m:
            k, kind = int(m.group(1)), m.group(2)
            clauses.append(_torsion_clause(k, kind))
            continue
        raise DocumentError("cannot parse %r; %s" % (part, _GRAMMAR))

    def predicate(entry):
        return all(cl(entry) for cl in clauses)

    return predicate


def _scalar_clause(key, op, value):
    def clause(entry):
        props = entry.properties
        if key == "chi" and "chi" not in props:
            props["chi"] = euler_characteristic(entry.complex)
        have = props.get(key)
        return have is not None and _OPS[op](have, value)

    return clause


def _field_clause(key, k, op, value):
    def clause(entry):
        vec = entry.properties.get(key)
        return vec is not None and k < len(vec) and _OPS[op](vec[k], value)

    return clause


def _homology_of(entry):
    props = entry.properties
    if "homology" not in props:
        props["homology"] = homology(entry.complex).to_lists()
    return props["homology"]


def _betti_clause(k, op, value):
    def clause(entry):
        h = _homology_of(entry)
        return k < len(h) and _OPS[op](h[k][0], value)

    return clause


def _torsion_clause(k, kind):
    def clause(entry):
        h = _homology_of(entry)
        if k >= len(h):
            return False
        nonempty = bool(h[k][1])
        return nonempty if kind == "nonempty" else not nonempty

    return clause


# -- text export ----------------------------------------------------------------

def export_latex(c: Complex) -> str:
    """A LaTeX fragment: one tabular row per facet plus an invariant summary."""
    lines = [
        "%% %s" % (c.name or "simplicial complex"),
        "\\begin{tabular}{rl}",
        "facet & vertices \\\\",
        "\\hline",
    ]
    for i, facet in enumerate(c.facets, start=1):
        labels = ", ".join(str(c.vertex_label(v)) for v in facet)
        lines.append("%d & (%s) \\\\" % (i, labels))
    lines.append("\\end{tabular}")
    lines.append("")
    lines.append("\\begin{itemize}")
    lines.append("\\item dimension: %d" % c.dim)
    lines.append("\\item f-vector: %s" % (c.f_vector(),))
    lines.append("\\item Euler characteristic: %d" % euler_characteristic(c))
    lines.append("\\end{itemize}")
    return "\n".join(lines) + "\n"


def export_topaz(c: Complex) -> str:
    """A TOPAZ-style FACETS block: 0-based indices, one facet per line."""
    lines = ["FACETS"]
    for facet in c.facets:
        lines.append("{%s}" % " ".join(str(v - 1) for v in facet))
    return "\n".join(lines) + "\n"


def import_topaz(text) -> Complex:
    """Parse a FACETS block back into a complex (labels are not recovered)."""
    facets = []
    for line in text.splitlines():
        line = line.strip()
        m = re.match(r"^\{([-\d\s]*)\}$", line)
        if m:
            entries = m.group(1).split()
            if entries:
                facets.append([int(v) + 1 for v in entries])
    if not facets:
        raise DocumentError("no facet lines found in TOPAZ input")
    return from_facets(facets)


def export(c: Complex, fmt: str) -> str:
    if fmt == "latex":
        return export_latex(c)
    if fmt == "topaz":
        return export_topaz(c)
    raise DocumentError("unknown export format %r" % fmt)
