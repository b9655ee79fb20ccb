"""Bound quiver algebras kQ/I with a normal-form path basis.

The basis is computed by length-graded saturation: enumerate all paths up
to the length cap, span the ideal slice by all products path * relation *
path that fit under the cap, and row-reduce with columns ordered so that
longer (then lexicographically larger) paths become pivots.  Pivot paths
are reducible; the surviving paths form the basis.  Finite-dimensionality
is certified, not assumed: if any path of length == cap survives, the cap
does not witness nilpotency of the arrow ideal and the build fails.

Composition convention (fixed once, used everywhere): multiply(a, b) means
"first b, then a" (function composition).  Paths are stored in traversal
order, so the concatenation underlying a*b is b.arrows + a.arrows.
Consequently e_x * p != 0 iff target(p) = x, and p * e_y != 0 iff
source(p) = y; the slice e_x A e_y is spanned by paths y -> x.
"""

from dataclasses import dataclass

from .errors import (CapInsufficient, NotAdmissible, UnknownArrow,
                     UnknownVertex, SchemaError)
from .linalg import QQ, PrimeField, Matrix, rref, scalar_to_str


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path in a quiver; arrows listed in traversal order."""

    source: str
    target: str
    arrows: tuple

    def __len__(self):
        return len(self.arrows)

    def is_trivial(self):
        return not self.arrows

    def label(self):
        if not self.arrows:
            return "e_%s" % self.source
        return "*".join(self.arrows)


class Quiver:
    """Finite quiver; loops, parallel arrows and oriented cycles allowed."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise SchemaError("duplicate vertex ids")
        self.arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise SchemaError("arrow %s has unknown endpoint" % a.name)
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self._arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.arrows_out = {v: [] for v in self.vertices}
        self.arrows_in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.arrows_out[a.source].append(a)
            self.arrows_in[a.target].append(a)

    def trivial_path(self, v):
        if v not in self.arrows_out:
            raise UnknownVertex(str(v))
        return Path(v, v, ())

    def path(self, arrow_names, source=None):
        """Build a path from arrow names in traversal order."""
        if not arrow_names:
            if source is None:
                raise SchemaError("trivial path needs a source vertex")
            return self.trivial_path(source)
        arrs = []
        for n in arrow_names:
            if n not in self.arrow_by_name:
                raise UnknownArrow(str(n))
            arrs.append(self.arrow_by_name[n])
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise SchemaError("arrows %s, %s do not compose" % (x.name, y.name))
        return Path(arrs[0].source, arrs[-1].target, tuple(a.name for a in arrs))

    def path_sort_key(self, p):
        return (len(p.arrows), tuple(self._arrow_index[a] for a in p.arrows))

    def is_acyclic(self):
        # Kahn peeling on the vertex set.
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.arrows_out[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return seen == len(self.vertices)


class Element:
    """Finite k-linear combination of parallel-or-not paths."""

    def __init__(self, terms, field=QQ):
        z = field.zero()
        self.field = field
        self.terms = {p: c for p, c in terms.items() if c != z}

    def is_zero(self):
        return not self.terms

    def __add__(self, o):
        t = dict(self.terms)
        for p, c in o.terms.items():
            t[p] = t.get(p, self.field.zero()) + c
        return Element(t, self.field)

    def __sub__(self, o):
        t = dict(self.terms)
        for p, c in o.terms.items():
            t[p] = t.get(p, self.field.zero()) - c
        return Element(t, self.field)

    def __neg__(self):
        return Element({p: -c for p, c in self.terms.items()}, self.field)

    def scale(self, c):
        return Element({p: c * x for p, x in self.terms.items()}, self.field)

    def __eq__(self, o):
        return isinstance(o, Element) and self.terms == o.terms

    def __repr__(self):
        if not self.terms:
            return "Element(0)"
        bits = ["%s*%s" % (scalar_to_str(c), p.label()) for p, c in self.terms.items()]
        return "Element(%s)" % " + ".join(bits)

    def endpoints(self):
        """(source, target) if all terms are parallel, else None."""
        eps = {(p.source, p.target) for p in self.terms}
        if len(eps) == 1:
            return next(iter(eps))
        return None


class BoundQuiverAlgebra:
    """Finite-dimensional algebra kQ/I with a certified path basis."""

    def __init__(self, quiver, relations, length_cap, field=QQ, name=""):
        self.quiver = quiver
        self.relations = relations
        self.length_cap = length_cap
        self.field = field
        self.name = name
        self._check_admissible()
        self._build_basis()
        self._mult_cache = {}

    # -- construction ---------------------------------------------------

    def _check_admissible(self):
        for rel in self.relations:
            if rel.is_zero():
                raise NotAdmissible("zero relation")
            if rel.endpoints() is None:
                raise NotAdmissible("relation terms are not parallel")
            for p in rel.terms:
                if len(p) < 2:
                    raise NotAdmissible("relation contains a path of length < 2")
                if len(p) > self.length_cap:
                    raise CapInsufficient(
                        "relation of length %d exceeds cap %d" % (len(p), self.length_cap))

    def _enumerate_paths(self):
        by_len = [[self.quiver.trivial_path(v) for v in self.quiver.vertices]]
        for ell in range(1, self.length_cap + 1):
            prev = by_len[-1]
            cur = []
            for p in prev:
                for a in self.quiver.arrows_out[p.target]:
                    cur.append(Path(p.source, a.target, p.arrows + (a.name,)))
            by_len.append(cur)
            if len(cur) > 200000:
                raise CapInsufficient("path count explosion before cap; algebra "
                                      "is likely infinite-dimensional")
        return [p for lst in by_len for p in lst]

    def _build_basis(self):
        q = self.quiver
        paths = self._enumerate_paths()
        # Longest (then lexicographically latest) paths first, so they are
        # the ones eliminated as pivots.
        paths.sort(key=q.path_sort_key, reverse=True)
        col_of = {p: i for i, p in enumerate(paths)}
        # Ideal slice rows: left_path * relation * right_path within the cap.
        by_target = {}
        by_source = {}
        for p in paths:
            by_target.setdefault(p.target, []).append(p)
            by_source.setdefault(p.source, []).append(p)
        rows = []
        for rel in self.relations:
            s, t = rel.endpoints()
            rel_len = max(len(p) for p in rel.terms)
            for right in by_target.get(s, []):
                if len(right) + rel_len > self.length_cap:
                    continue
                for left in by_source.get(t, []):
                    if len(right) + rel_len + len(left) > self.length_cap:
                        continue
                    row = [self.field.zero()] * len(paths)
                    ok = True
                    for p, c in rel.terms.items():
                        full = right.arrows + p.arrows + left.arrows
                        if len(full) > self.length_cap:
                            ok = False
                            break
                        fp = Path(right.source, left.target, full)
                        row[col_of[fp]] = row[col_of[fp]] + c
                    if ok:
                        rows.append(row)
        if rows:
            M = Matrix(len(rows), len(paths), rows, self.field)
            R, pivots = rref(M)
        else:
            R, pivots = None, []
        pivot_set = set(pivots)
        # reduction[pivot path] = {basis path: coeff}
        self._reduction = {}
        for r, pc in enumerate(pivots):
            red = {}
            for j in range(pc + 1, len(paths)):
                if j in pivot_set:
                    continue
                c = R.entries[r][j]
                if c != self.field.zero():
                    red[paths[j]] = -c
            self._reduction[paths[pc]] = red
        basis = [paths[j] for j in range(len(paths)) if j not in pivot_set]
        for p in basis:
            if len(p) >= self.length_cap:
                raise CapInsufficient(
                    "path %s of length %d not reducible at cap %d" %
                    (p.label(), len(p), self.length_cap))
        basis.sort(key=q.path_sort_key)
        self.basis = basis
        self.total_dim = len(basis)
        self.basis_index = {p: i for i, p in enumerate(basis)}
        self.basis_by_st = {}
        for p in basis:
            self.basis_by_st.setdefault((p.source, p.target), []).append(p)

    # -- normal forms and multiplication --------------------------------

    def unit(self, v):
        return Element({self.quiver.trivial_path(v): self.field.one()}, self.field)

    def zero_element(self):
        return Element({}, self.field)

    def _reduce_known(self, p):
        """Normal form of an enumerated path (length <= cap) as a term dict."""
        if p in self.basis_index:
            return {p: self.field.one()}
        red = self._reduction.get(p)
        if red is None:
            # Path beyond the cap can only appear through stepwise products,
            # which never exceed the cap; anything else is a bug.
            raise CapInsufficient("path %s escaped the enumeration" % p.label())
        return dict(red)

    def reduce_path(self, p):
        """Normal form of an arbitrary path as an Element (stepwise)."""
        vec = {self.quiver.trivial_path(p.source): self.field.one()}
        for name in p.arrows:
            a = self.quiver.arrow_by_name[name]
            nxt = {}
            for bp, c in vec.items():
                if bp.target != a.source:
                    raise SchemaError("path does not traverse the quiver")
                ext = Path(bp.source, a.target, bp.arrows + (a.name,))
                for rp, rc in self._reduce_known(ext).items():
                    nxt[rp] = nxt.get(rp, self.field.zero()) + c * rc
            vec = {k: v for k, v in nxt.items() if v != self.field.zero()}
        return Element(vec, self.field)

    def reduce_element(self, e):
        out = self.zero_element()
        for p, c in e.terms.items():
            out = out + self.reduce_path(p).scale(c)
        return out

    def mult_paths(self, p, q):
        """Normal form of p*q = "first q, then p" for basis paths."""
        key = (p, q)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        if q.target != p.source:
            out = self.zero_element()
        else:
            out = self.reduce_path(Path(q.source, p.target, q.arrows + p.arrows))
        self._mult_cache[key] = out
        return out

    def multiply(self, a, b):
        """Product of normal-form elements; multiply(a, b) = first b, then a."""
        if isinstance(a, Path):
            a = Element({a: self.field.one()}, self.field)
        if isinstance(b, Path):
            b = Element({b: self.field.one()}, self.field)
        out = self.zero_element()
        for p, cp in a.terms.items():
            for q, cq in b.terms.items():
                out = out + self.mult_paths(p, q).scale(cp * cq)
        return out

    def mult_table(self):
        """Full basis-times-basis product table (lazy, then cached)."""
        table = {}
        for p in self.basis:
            for q in self.basis:
                if q.target == p.source:
                    table[(p, q)] = self.mult_paths(p, q)
        return table

    def slice_basis(self, x, y):
        """Basis of e_x A e_y: normal paths y -> x."""
        return self.basis_by_st.get((y, x), [])

    def element(self, path_coeffs):
        """Element from {path-or-arrow-name-tuple: coeff}, reduced."""
        terms = {}
        for p, c in path_coeffs.items():
            if not isinstance(p, Path):
                p = self.quiver.path(list(p))
            if not isinstance(c, (int,)):
                terms[p] = terms.get(p, self.field.zero()) + c
            else:
                terms[p] = terms.get(p, self.field.zero()) + self.field.from_int(c)
        return self.reduce_element(Element(terms, self.field))

    def opposite(self):
        """The opposite algebra (all arrows reversed)."""
        q = self.quiver
        oq = Quiver(list(q.vertices), [Arrow(a.name, a.target, a.source) for a in q.arrows])
        rels = []
        for rel in self.relations:
            terms = {}
            for p, c in rel.terms.items():
                terms[oq.path(list(reversed(p.arrows)))] = c
            rels.append(Element(terms, self.field))
        return BoundQuiverAlgebra(oq, rels, self.length_cap, self.field,
                                  name=self.name + "^op" if self.name else "")


def default_cap(quiver, relations):
    max_rel = max((max(len(p) for p in r.terms) for r in relations), default=2)
    return 2 + len(quiver.arrows) * max_rel


def build_algebra(quiver, relations, cap=None, field=QQ, name=""):
    if cap is None:
        cap = default_cap(quiver, relations)
    return BoundQuiverAlgebra(quiver, relations, cap, field, name=name)


# -- JSON (de)serialization ---------------------------------------------

def field_from_json(d):
    kind = d.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(int(d["p"]))
    raise SchemaError("unknown field kind %r" % (kind,))


def field_to_json(field):
    if field == QQ:
        return {"kind": "rational"}
    return {"kind": "prime", "p": field.p}


def algebra_from_json(d, name=""):
    try:
        field = field_from_json(d.get("field", {"kind": "rational"}))
        qd = d["quiver"]
        quiver = Quiver([str(v) for v in qd["vertices"]],
                        [Arrow(str(a["id"]), str(a["from"]), str(a["to"]))
                         for a in qd["arrows"]])
        rels = []
        for rel in d.get("relations", []):
            terms = {}
            for term in rel:
                p = quiver.path([str(x) for x in term["path"]])
                terms[p] = terms.get(p, field.zero()) + field.parse(str(term.get("coeff", "1")))
            rels.append(Element(terms, field))
        cap = d.get("length_cap")
    except (KeyError, TypeError) as e:
        raise SchemaError("malformed algebra file: %s" % e)
    return build_algebra(quiver, rels, cap, field, name=name or d.get("name", ""))


def algebra_to_json(alg):
    return {
        "field": field_to_json(alg.field),
        "quiver": {
            "vertices": list(alg.quiver.vertices),
            "arrows": [{"id": a.name, "from": a.source, "to": a.target}
                       for a in alg.quiver.arrows],
        },
        "relations": [
            [{"coeff": scalar_to_str(c), "path": list(p.arrows)}
             for p, c in sorted(rel.terms.items(),
                                key=lambda t: alg.quiver.path_sort_key(t[0]))]
            for rel in alg.relations
        ],
        "length_cap": alg.length_cap,
    }
