"""Grothendieck-group utilities: Cartan and Euler matrices, classes of
complexes, and orthogonal sublattices of the Euler form."""

from .derived import (BoundedComplex, LabeledComplex,
                      minimal_projective_resolution, hom_profile, resolve)
from .reps import Representation, hom_basis, projective_module, simple_module
from .spherelike import certify_finite_gldim


def vertex_order(alg):
    return list(alg.quiver.vertices)


def dim_vector(M):
    return [M.dims[v] for v in vertex_order(M.alg)]


def k_class(X):
    """Class in K_0 in the basis of simples (alternating sum of dimension
    vectors for complexes)."""
    if isinstance(X, Representation):
        return dim_vector(X)
    if isinstance(X, LabeledComplex):
        X = X.to_rep()
    order = vertex_order(X.alg)
    out = [0] * len(order)
    for n in X.degrees():
        sign = (-1) ** (n % 2)
        dv = dim_vector(X.piece(n))
        out = [a + sign * b for a, b in zip(out, dv)]
    return out


def cartan_matrix(alg):
    """C[x][y] = dim Hom(P(x), P(y)), vertices in quiver order."""
    order = vertex_order(alg)
    projs = {v: projective_module(alg, v) for v in order}
    return [[len(hom_basis(projs[x], projs[y])) for y in order] for x in order]


def euler_matrix(alg, bound=40):
    """E[x][y] = sum_i (-1)^i dim Ext^i(S(x), S(y)); needs finite global
    dimension."""
    certify_finite_gldim(alg, bound)
    order = vertex_order(alg)
    E = []
    for x in order:
        R = minimal_projective_resolution(simple_module(alg, x), bound)
        row = []
        for y in order:
            prof = hom_profile(R, simple_module(alg, y))
            row.append(sum(((-1) ** (i % 2)) * d for i, d in prof.items()))
        E.append(row)
    return E


def euler_pairing(E, x, y):
    return sum(x[i] * E[i][j] * y[j] for i in range(len(E)) for j in range(len(E)))


def integer_kernel(rows, n):
    """Basis of {x in Z^n : A x = 0} via unimodular column reduction."""
    A = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap(c1, c2):
        for row in A:
            row[c1], row[c2] = row[c2], row[c1]
        for row in U:
            row[c1], row[c2] = row[c2], row[c1]

    def addmul(c, c0, q):
        for row in A:
            row[c] -= q * row[c0]
        for row in U:
            row[c] -= q * row[c0]

    cur = 0
    for i in range(len(A)):
        while True:
            nz = [c for c in range(cur, n) if A[i][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: (abs(A[i][c]), c))
            if c0 != cur:
                swap(cur, c0)
            if A[i][cur] < 0:
                for row in A:
                    row[cur] = -row[cur]
                for row in U:
                    row[cur] = -row[cur]
            done = True
            for c in range(cur + 1, n):
                if A[i][c] != 0:
                    addmul(c, cur, A[i][c] // A[i][cur])
                    if A[i][c] != 0:
                        done = False
            if done:
                cur += 1
                break
        if cur >= n:
            break
    return [[U[r][c] for r in range(n)] for c in range(cur, n)]


def _hnf_rows(basis):
    """Row-style Hermite normal form of a lattice basis (integer rows)."""
    rows = [list(r) for r in basis]
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i if piv is None or abs(rows[i][c]) < abs(rows[piv][c]) else piv
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        while True:
            again = False
            for i in range(r + 1, m):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        rows[r], rows[i] = rows[i], rows[r]
                        again = True
            if not again:
                break
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows[:r]]


def perp_lattice(E, classes):
    """Left orthogonal {x : chi(x, c) = 0 for all given classes c}.

    Returns (basis, gram, antisymmetric) where gram[i][j] = chi(b_i, b_j)
    restricted to the sublattice.  For a rank-2 antisymmetric restriction
    the basis is oriented so that gram[0][1] >= 0.
    """
    n = len(E)
    rows = []
    for c in classes:
        rows.append([sum(E[i][j] * c[j] for j in range(n)) for i in range(n)])
    basis = integer_kernel(rows, n) if rows else \
        [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    basis = _hnf_rows(basis) if basis else []
    gram = [[euler_pairing(E, b1, b2) for b2 in basis] for b1 in basis]
    anti = all(gram[i][j] == -gram[j][i]
               for i in range(len(basis)) for j in range(len(basis)))
    if anti and len(basis) == 2 and gram[0][1] < 0:
        basis = [basis[1], basis[0]]
        gram = [[gram[1][1], gram[1][0]], [gram[0][1], gram[0][0]]]
    return basis, gram, anti


def same_lattice(b1, b2):
    return _hnf_rows(b1) == _hnf_rows(b2)
