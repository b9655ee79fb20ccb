"""Spherelike/spherical classification, asphericality, membership, scans.

An object F with derived endomorphism profile {0:1, d:1} is d-spherelike;
it is d-spherical when additionally nu F is isomorphic to F[d].  For
d = 0 the degree-0 endomorphism ring (dimension 2) decides between
k[x]/x^2 (indecomposable) and k x k (decomposable).  The asphericality
object Q_F is the cone of the unique map F -> nu F[-d]; the spherical
subcategory of F consists of the objects A with Hom^*(A, Q_F) = 0.
"""

from .errors import (DZeroUnsupported, EngineInvariantViolation,
                     GlobalDimensionExceeded, NonUniqueMap,
                     UnsupportedCandidateSet)
from .linalg import Matrix, rref
from .reps import (Representation, hom_basis, kernel_cokernel,
                   simple_module, top_and_radical)
from . import reps as _reps
from .derived import (BoundedComplex, ChainMap, HomComplexData, LabeledComplex,
                      as_rep_complex, chain_map_space, cone, hom_profile,
                      iso_up_to_shift, minimal_projective_resolution, nakayama,
                      perfectify, resolve)
from .algebra import Path


DEFAULT_BOUND = 40


def certify_finite_gldim(alg, bound=DEFAULT_BOUND):
    """Global dimension via resolutions of all simples (cached)."""
    cached = getattr(alg, "_gldim", None)
    if cached is not None:
        return cached
    g = 0
    for v in alg.quiver.vertices:
        res = minimal_projective_resolution(simple_module(alg, v), bound)
        if not res.is_zero():
            g = max(g, -min(res.degrees()))
    alg._gldim = g
    return g


class SpherelikeReport:
    def __init__(self, desc, profile, verdict, d=None, spherical_witnessed=None,
                 end_kind=None, field_sensitive=False, note="", complex=None):
        self.desc = desc
        self.profile = profile
        self.verdict = verdict
        self.d = d
        self.spherical_witnessed = spherical_witnessed
        self.end_kind = end_kind
        self.field_sensitive = field_sensitive
        self.note = note
        self.complex = complex  # perfect presentation used

    def is_spherelike(self):
        return self.verdict in ("d_spherical", "properly_d_spherelike",
                                "decomposable_0_spherelike")

    def is_spherical(self):
        return self.verdict == "d_spherical"

    def to_json(self):
        out = {
            "object": self.desc,
            "profile": {str(k): v for k, v in sorted(self.profile.items())},
            "verdict": self.verdict,
        }
        if self.d is not None:
            out["d"] = self.d
        if self.end_kind is not None:
            out["end_kind"] = self.end_kind
        if self.field_sensitive:
            out["field_sensitive"] = True
        if self.spherical_witnessed == "not_witnessed":
            out["spherical_witnessed"] = "not_witnessed"
        if self.note:
            out["note"] = self.note
        return out

    def __repr__(self):
        return "SpherelikeReport(%s, %s, d=%r)" % (self.desc, self.verdict, self.d)


def _hom_coords(data, cm, s):
    """Hom-complex degree-s coordinates of a chain map F_rep -> G[s]."""
    vec = []
    for (p, j, x, d) in data.slots(s):
        gen = _generator_column(data.F, p, j, x)
        col = cm.comp(p).mats[x].col(gen)
        vec.extend(col)
    return vec


def _generator_column(F, p, j, x):
    _, index = F.summand_basis(p)
    return index[x][(j, F.alg.quiver.trivial_path(x))]


def _degree0_end_structure(F):
    """(alpha, beta) with phi^2 = alpha*id + beta*phi in H^0 End(F).

    Assumes dim H^0 End(F) = 2; phi is a basis element independent of the
    identity class.
    """
    alg = F.alg
    field = alg.field
    Frep = F.to_rep()
    data = HomComplexData(F, Frep)
    dim, cands = chain_map_space(F, Frep, 0)
    assert dim == 2
    idm = ChainMap(Frep, Frep,
                   {n: _reps.identity_morphism(Frep.piece(n)) for n in Frep.pieces},
                   check=False)
    dprev = data.delta(-1)
    idvec = _hom_coords(data, idm, 0)

    def in_basis(vec_list, target):
        """Coordinates of target modulo boundaries in span(vec_list)."""
        cols = [dprev.col(j) for j in range(dprev.cols)] if dprev.cols else []
        ncols = len(cols) + len(vec_list)
        n = len(target)
        M = Matrix(n, ncols,
                   [[ (cols[j][i] if j < len(cols) else vec_list[j - len(cols)][i])
                      for j in range(ncols)] for i in range(n)], field)
        from .linalg import solve as _solve
        sol = _solve(M, target)
        assert sol is not None
        return sol[len(cols):]

    # pick phi = candidate independent of id modulo boundaries
    phi = None
    for cand in cands:
        cvec = _hom_coords(data, cand, 0)
        bound_cols = [dprev.col(j) for j in range(dprev.cols)]
        test = Matrix(len(idvec), len(bound_cols) + 2,
                      [[ (bound_cols[j][i] if j < len(bound_cols)
                          else (idvec[i] if j == len(bound_cols) else cvec[i]))
                         for j in range(len(bound_cols) + 2)]
                       for i in range(len(idvec))], field)
        _, piv = rref(test)
        if len(piv) == len(rref(Matrix(len(idvec), len(bound_cols) + 1,
                                       [[ (bound_cols[j][i] if j < len(bound_cols)
                                           else idvec[i])
                                          for j in range(len(bound_cols) + 1)]
                                        for i in range(len(idvec))], field))[1]) + 1:
            phi = cand
            break
    assert phi is not None
    phivec = _hom_coords(data, phi, 0)
    # phi o phi
    sq = ChainMap(Frep, Frep,
                  {n: phi.comp(n).compose(phi.comp(n)) for n in Frep.pieces},
                  check=False)
    sqvec = _hom_coords(data, sq, 0)
    coords = in_basis([idvec, phivec], sqvec)
    return coords[0], coords[1]


def _is_square(field, x):
    from .reps import _is_rational_square
    return _is_rational_square(x)


def classify_spherelike(obj, desc="object", bound=DEFAULT_BOUND):
    """SpherelikeReport for a module, bounded complex or perfect complex."""
    F = resolve(obj, bound)
    alg = F.alg
    certify_finite_gldim(alg, bound)
    prof = hom_profile(F, F)
    total = sum(prof.values())
    rep = SpherelikeReport(desc, prof, "not_spherelike", complex=F)
    if total == 1 and prof.get(0) == 1:
        rep.note = "exceptional"
        return rep
    if total != 2 or prof.get(0) not in (1, 2):
        return rep
    if prof.get(0) == 2 and len(prof) == 1:
        d = 0
    else:
        others = [k for k in prof if k != 0]
        if len(others) != 1 or prof[others[0]] != 1 or prof.get(0) != 1:
            return rep
        d = others[0]
    rep.d = d
    if d == 0:
        alpha, beta = _degree0_end_structure(F)
        disc = beta * beta + alg.field.from_int(4) * alpha
        if disc == alg.field.zero():
            rep.end_kind = "k[x]/x^2"
            iso = iso_up_to_shift(F, nakayama(F).to_rep(), 0)
            rep.spherical_witnessed = iso
            rep.verdict = "d_spherical" if iso is True else "properly_d_spherelike"
        else:
            rep.end_kind = "k x k"
            if alg.field.characteristic == 0 and not _is_square(alg.field, disc):
                rep.field_sensitive = True
            rep.verdict = "decomposable_0_spherelike"
        return rep
    iso = iso_up_to_shift(F, nakayama(F).to_rep(), d)
    rep.spherical_witnessed = iso
    rep.verdict = "d_spherical" if iso is True else "properly_d_spherelike"
    if rep.verdict == "d_spherical" and d < 0:
        raise EngineInvariantViolation(
            "spherical object with negative d=%d over finite global dimension" % d)
    return rep


def asphericality(F, report=None, bound=DEFAULT_BOUND):
    """Q_F = cone of the unique map F -> nu F[-d]; acyclic iff F spherical."""
    F = resolve(F, bound)
    if report is None:
        report = classify_spherelike(F, bound=bound)
    if not report.is_spherelike():
        raise NonUniqueMap("object is not spherelike; no canonical map")
    d = report.d
    if d == 0:
        raise DZeroUnsupported("asphericality for d = 0 is not computed")
    nurep = nakayama(F).to_rep()
    dim, cands = chain_map_space(F, nurep, -d)
    if dim != 1:
        raise NonUniqueMap("map space F -> nu F[-d] has dim %d" % dim)
    Q = cone(cands[0])
    return Q


def in_spherical_subcat(A, Q, bound=DEFAULT_BOUND):
    """True iff Hom^*(A, Q) = 0, i.e. A lies in the spherical subcategory."""
    Aperf = resolve(A, bound)
    return hom_profile(Aperf, Q) == {}


def interval_modules(alg):
    """Quotients P(v)/rad^l, one per vertex and Loewy layer.

    For Nakayama algebras these are exactly the interval modules (one
    module per vertex-interval of paths).
    """
    out = []
    for v in alg.quiver.vertices:
        P = _reps.projective_module(alg, v)
        layers = []
        cur = P
        incl = None
        while cur.total_dim() > 0:
            tr = top_and_radical(cur)
            nxt_incl = tr.rad_inclusion if incl is None else incl.compose(tr.rad_inclusion)
            layers.append(nxt_incl)
            cur = tr.rad
            incl = nxt_incl
        for ell in range(1, len(layers) + 1):
            if ell == len(layers):
                M = P
            else:
                _, M, _, _ = kernel_cokernel(layers[ell - 1])
            out.append(("interval:%s,%d" % (v, ell), M))
    return out


def candidate_list(alg, descriptor, dim_bound=None, explicit=None):
    if descriptor == "all_simples":
        return [("S:%s" % v, simple_module(alg, v)) for v in alg.quiver.vertices]
    if descriptor == "all_interval_modules":
        return interval_modules(alg)
    if descriptor == "explicit":
        return list(explicit or [])
    if descriptor == "all_indecomposables_up_to_dimvector":
        return _indecomposables_up_to(alg, dim_bound)
    raise UnsupportedCandidateSet(str(descriptor))


def _indecomposables_up_to(alg, bound):
    """Exhaustive enumeration over a prime field; refused over the rationals."""
    if alg.field.characteristic == 0:
        raise UnsupportedCandidateSet(
            "all_indecomposables_up_to_dimvector requires a prime field "
            "(finite enumeration)")
    p = alg.field.characteristic
    verts = alg.quiver.vertices
    import itertools
    out = []
    seen = []
    for dims in itertools.product(*(range(0, bound + 1) for _ in verts)):
        if sum(dims) == 0:
            continue
        dv = dict(zip(verts, dims))
        shapes = [(a, dv[a.target] * dv[a.source]) for a in alg.quiver.arrows]
        total = sum(s for _, s in shapes)
        if p ** total > 200000:
            raise UnsupportedCandidateSet("enumeration too large (p^%d matrices)" % total)
        for flat in itertools.product(range(p), repeat=total):
            maps = {}
            idx = 0
            for a, sz in shapes:
                ent = []
                for i in range(dv[a.target]):
                    row = [alg.field.from_int(flat[idx + i * dv[a.source] + j])
                           for j in range(dv[a.source])]
                    ent.append(row)
                idx += sz
                maps[a.name] = Matrix(dv[a.target], dv[a.source], ent, alg.field)
            try:
                M = Representation(alg, dv, maps)
            except Exception:
                continue
            if not _is_indecomposable_finite(M):
                continue
            if any(_iso_modules_finite(M, N) for _, N in seen):
                continue
            desc = "indec:%s#%d" % (",".join(str(d) for d in dims), len(seen))
            seen.append((desc, M))
            out.append((desc, M))
    return out


def _is_indecomposable_finite(M):
    """Over a finite field: End(M) local iff every endo is nilpotent or unit."""
    ends = hom_basis(M, M)
    if not ends:
        return False
    p = M.alg.field.characteristic
    n = len(ends)
    if p ** n > 4096:
        raise UnsupportedCandidateSet("endomorphism ring too large to enumerate")
    import itertools
    total = M.total_dim()
    for coeffs in itertools.product(range(p), repeat=n):
        f = None
        for c, e in zip(coeffs, ends):
            part = e.scale(M.alg.field.from_int(c))
            f = part if f is None else f + part
        # nilpotency / invertibility vertexwise
        from .linalg import rank as _rank
        ranks = {v: _rank(f.mats[v]) for v in M.dims}
        invertible = all(ranks[v] == M.dims[v] for v in M.dims)
        if invertible:
            continue
        g = f
        for _ in range(total):
            g = g.compose(f)
        if not all(g.mats[v].is_zero() for v in M.dims):
            return False
    return True


def _iso_modules_finite(M, N):
    if M.dims != N.dims:
        return False
    homs = hom_basis(M, N)
    if not homs:
        return False
    p = M.alg.field.characteristic
    if p ** len(homs) > 4096:
        raise UnsupportedCandidateSet("hom space too large to enumerate")
    import itertools
    from .linalg import rank as _rank
    for coeffs in itertools.product(range(p), repeat=len(homs)):
        f = None
        for c, e in zip(coeffs, homs):
            part = e.scale(M.alg.field.from_int(c))
            f = part if f is None else f + part
        if all(_rank(f.mats[v]) == M.dims[v] for v in M.dims):
            return True
    return False


def scan(alg, descriptor, dim_bound=None, explicit=None, bound=DEFAULT_BOUND):
    """Classify every candidate; deterministic order; unresolvable
    candidates are reported as skipped, not fatal."""
    out = []
    for desc, M in candidate_list(alg, descriptor, dim_bound, explicit):
        try:
            out.append(classify_spherelike(M, desc=desc, bound=bound))
        except GlobalDimensionExceeded:
            r = SpherelikeReport(desc, {}, "skipped",
                                 note="resolution exceeded bound %d" % bound)
            out.append(r)
    return out


def fractional_cy_check(F, r, s, bound=DEFAULT_BOUND):
    """True iff nu^r F is isomorphic to F[s] (re-resolving between steps)."""
    F = resolve(F, bound)
    G = F
    for _ in range(r):
        G = perfectify(nakayama(G).to_rep(), bound)
    return iso_up_to_shift(F, G.to_rep(), s) is True
