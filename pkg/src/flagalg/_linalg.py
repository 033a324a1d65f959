"""
Exact linear algebra kernels used across the package.

Two arithmetic worlds live here:

* dense linear algebra over a prime field F_p, done on numpy int64 arrays
  with entries reduced to [0, p);
* exact arithmetic over the l-local integers Z_(l) (rationals whose
  denominator is prime to l), done with Fraction entries.

Nothing in this module knows about Weyl groups or graded algebras; it is
only pivoting, kernels, minimal polynomials, an l-local echelon form and
the Jacobson radical of a small F_p-algebra.
"""

from fractions import Fraction

import numpy as np

# ---------------------------------------------------------------------------
# prime field F_p


def mod_mat(rows, p):
    """Build an int64 matrix with entries reduced mod p."""
    a = np.array(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return np.mod(a, p)


def mod_matmul(a, b, p):
    # entries < p, so dot products stay below 2**63 for all our sizes
    if a.shape[1] > 0 and int(a.shape[1]) * (p - 1) * (p - 1) >= 2**62:
        raise OverflowError("modulus too large for int64 matmul")
    return np.mod(a @ b, p)


def mod_rref(a, p):
    """Row-reduce a copy of `a` mod p; return (rref, pivot column list)."""
    m = np.mod(np.array(a, dtype=np.int64), p)
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def mod_rank(a, p):
    a = np.array(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(mod_rref(a, p)[1])


def mod_nullspace(a, p):
    """Rows of the result span {x : a @ x = 0} over F_p."""
    a = np.mod(np.array(a, dtype=np.int64), p)
    nrows, ncols = a.shape
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    r, pivots = mod_rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, c])) % p
    return basis


def mod_nullspace_chunked(a, p, chunk=4096):
    """Nullspace of a tall constraint matrix: deduplicate rows, then fold
    chunks into a growing row-space basis, stopping early at full column
    rank.  Same answer as mod_nullspace."""
    a = np.mod(np.array(a, dtype=np.int64), p)
    nrows, ncols = a.shape
    if nrows <= chunk:
        return mod_nullspace(a, p)
    a = np.unique(a, axis=0)
    basis = np.zeros((0, ncols), dtype=np.int64)
    for start in range(0, a.shape[0], chunk):
        stack = np.concatenate([basis, a[start: start + chunk]], axis=0)
        r, piv = mod_rref(stack, p)
        basis = r[: len(piv)]
        if basis.shape[0] == ncols:
            return np.zeros((0, ncols), dtype=np.int64)
    return mod_nullspace(basis, p)


def mod_solve(a, b, p):
    """One solution x of a @ x = b mod p, or None."""
    a = np.mod(np.array(a, dtype=np.int64), p)
    b = np.mod(np.array(b, dtype=np.int64), p).reshape(-1)
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots = mod_rref(aug, p)
    ncols = a.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, ncols]
    return x


def mod_inv_matrix(a, p):
    a = np.mod(np.array(a, dtype=np.int64), p)
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = mod_rref(aug, p)
    if pivots[:n] != list(range(n)):
        return None
    return r[:, n:]


def mod_det(a, p):
    m = np.mod(np.array(a, dtype=np.int64), p)
    n = m.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            det = (-det) % p
        det = (det * int(m[c, c])) % p
        inv = pow(int(m[c, c]), p - 2, p)
        m[c] = (m[c] * inv) % p
        if c + 1 < n:
            col = m[c + 1:, c].copy()
            m[c + 1:] = (m[c + 1:] - np.outer(col, m[c])) % p
    return det % p


class _Echelon:
    """Incremental row echelon over F_p, remembering how each echelon row
    was combined from the inserted rows."""

    def __init__(self, ncols, p):
        self.p = p
        self.ncols = ncols
        self.rows = []      # echelon rows
        self.combos = []    # same combination applied to inserted rows
        self.pivots = []
        self.count = 0

    def reduce(self, v):
        p = self.p
        v = np.mod(np.array(v, dtype=np.int64), p)
        combo = np.zeros(self.count, dtype=np.int64)
        for i, c in enumerate(self.pivots):
            f = int(v[c])
            if f:
                v = (v - f * self.rows[i]) % p
                combo = (combo - f * _pad(self.combos[i], self.count)) % p
        return v, combo

    def insert(self, v):
        """Insert a row; return None if independent, else the coefficient
        vector expressing v as a combination of previously inserted rows."""
        p = self.p
        v, combo = self.reduce(v)
        self.count += 1
        if not np.any(v):
            return np.mod(-combo, p)
        c = int(np.nonzero(v)[0][0])
        inv = pow(int(v[c]), p - 2, p)
        v = (v * inv) % p
        combo = _pad(combo, self.count).copy()
        combo[self.count - 1] = 1
        combo = (combo * inv) % p
        self.rows.append(v)
        self.combos.append(combo)
        self.pivots.append(c)
        return None

    @property
    def rank(self):
        return len(self.rows)


def _pad(v, n):
    if len(v) == n:
        return v
    out = np.zeros(n, dtype=np.int64)
    out[: len(v)] = v
    return out


def mod_minpoly(a, p):
    """Minimal polynomial of a square matrix over F_p, as a monic
    coefficient list (low degree first)."""
    a = np.mod(np.array(a, dtype=np.int64), p)
    n = a.shape[0]
    if n == 0:
        return [1]
    g = [1]
    for start in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[start] = 1
        ech = _Echelon(n, p)
        w = v
        while True:
            dep = ech.insert(w)
            if dep is not None:
                # w = sum dep[i] * a^i v
                mp = [(-int(c)) % p for c in dep] + [1]
                break
            w = mod_matmul(a, w.reshape(-1, 1), p).reshape(-1)
        g = poly_lcm(g, mp, p)
        if len(g) == n + 1:
            break
    assert not np.any(poly_eval_matrix(g, a, p)), "minimal polynomial failed"
    return g


def poly_eval_matrix(f, a, p):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(f):
        out = mod_matmul(out, a, p)
        out = (out + (int(c) % p) * eye) % p
    return out


# --- polynomial arithmetic over F_p (dense coefficient lists, low first) ---


def poly_trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def poly_monic(f, p):
    f = poly_trim(f)
    if f == [0]:
        return f
    inv = pow(f[-1], p - 2, p)
    return [(c * inv) % p for c in f]


def poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def poly_divmod(f, g, p):
    f = [c % p for c in f]
    g = poly_trim([c % p for c in g])
    if g == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(1, len(f) - len(g) + 1)
    while len(poly_trim(f)) >= len(g) and poly_trim(f) != [0]:
        f = poly_trim(f)
        d = len(f) - len(g)
        c = (f[-1] * inv) % p
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = (f[d + i] - c * b) % p
        f.pop()
    return poly_trim(q), poly_trim(f if f else [0])


def poly_gcd(f, g, p):
    f, g = poly_trim(list(f)), poly_trim(list(g))
    while g != [0]:
        f, g = g, poly_divmod(f, g, p)[1]
    return poly_monic(f, p)


def poly_lcm(f, g, p):
    if poly_trim(f) == [0] or poly_trim(g) == [0]:
        return [0]
    d = poly_gcd(f, g, p)
    q, r = poly_divmod(poly_mul(f, g, p), d, p)
    assert r == [0]
    return poly_monic(q, p)


def poly_pow(f, e, p):
    out = [1]
    base = list(f)
    while e:
        if e & 1:
            out = poly_mul(out, base, p)
        base = poly_mul(base, base, p)
        e >>= 1
    return out


def poly_powmod(f, e, mod, p):
    out = [1]
    base = poly_divmod(f, mod, p)[1]
    while e:
        if e & 1:
            out = poly_divmod(poly_mul(out, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def poly_derivative(f, p):
    d = [(i * c) % p for i, c in enumerate(f)][1:]
    return poly_trim(d if d else [0])


def squarefree_split(f, p):
    """Pairwise coprime (g, e) with f = prod g^e up to a scalar, each g
    monic squarefree.  Classical char-p algorithm with p-th root descent."""
    f = poly_monic(f, p)
    if len(f) <= 1:
        return []
    fp = poly_derivative(f, p)
    if fp == [0]:
        # f = h(X^p) = h1(X)^p over the prime field
        h = poly_trim([f[i] for i in range(0, len(f), p)])
        return [(g, e * p) for g, e in squarefree_split(h, p)]
    out = []
    c = poly_gcd(f, fp, p)
    w = poly_divmod(f, c, p)[0]
    i = 1
    while poly_trim(w) != [1]:
        y = poly_gcd(w, c, p)
        fac = poly_divmod(w, y, p)[0]
        if len(poly_trim(fac)) > 1:
            out.append((poly_monic(fac, p), i))
        w = y
        c = poly_divmod(c, y, p)[0]
        i += 1
    if len(poly_trim(c)) > 1:
        # leftover factors whose multiplicity is divisible by p
        h = poly_trim([c[i] for i in range(0, len(c), p)])
        out.extend((g, e * p) for g, e in squarefree_split(h, p))
    return out


def distinct_degree_split(f, p):
    """Split a monic squarefree f into (f_d, d), f_d the product of all
    irreducible factors of degree d."""
    f = poly_monic(f, p)
    out = []
    d = 0
    xq = [0, 1]
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            out.append((f, len(f) - 1))
            break
        xq = poly_powmod(xq, p, f, p)
        diff = list(xq) + [0, 0]
        diff[1] = (diff[1] - 1) % p
        g = poly_gcd(poly_trim(diff), f, p)
        if poly_trim(g) != [1]:
            out.append((g, d))
            f = poly_divmod(f, g, p)[0]
    return out


def poly_roots(f, p):
    """All roots of f in F_p, found by enumeration."""
    roots = []
    for a in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * a + c) % p
        if acc == 0:
            roots.append(a)
    return roots


def coprime_power_split(f, p):
    """Pairwise coprime monic factors with product f (up to scalar):
    squarefree split, then distinct-degree split, then root extraction
    for the linear parts.  Factors of degree >= 2 of the same distinct
    degree are not separated further (that would need randomness)."""
    parts = []
    for g, e in squarefree_split(f, p):
        for h, d in distinct_degree_split(g, p):
            if d == 1:
                for r in poly_roots(h, p):
                    parts.append(poly_pow([(-r) % p, 1], e, p))
            else:
                parts.append(poly_pow(h, e, p))
    return parts


# ---------------------------------------------------------------------------
# Jacobson radical of a finite dimensional F_p-algebra


def algebra_radical(mult, p):
    """Radical of the unital algebra with basis e_0..e_{n-1} and products
    mult[i][j] = coefficient vector of e_i e_j.  Returns rows spanning rad
    as a subspace of F_p^n.

    The core is the trace-of-p-power-lifts chain, which is valid in small
    characteristic; the result is checked to be a nilpotent two-sided
    ideal, and the computation is iterated on the quotient until the
    quotient is semisimple.
    """
    n = len(mult)
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    total = np.zeros((0, n), dtype=np.int64)
    for _ in range(n + 1):
        qmult, lift = _algebra_quotient(mult, total, p)
        j = _radical_chain(qmult, p)
        if j.shape[0] == 0:
            _check_nilpotent_ideal(mult, total, p)
            return total
        back = np.mod(j @ lift, p) if j.size else j
        total = _row_space(np.concatenate([total, back]), p)
    raise AssertionError("radical computation did not stabilize")


def _row_space(rows, p):
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    r, piv = mod_rref(rows, p)
    return r[: len(piv)]


def _algebra_quotient(mult, ideal_rows, p):
    """Structure constants of A / span(ideal_rows) on a complement basis,
    plus the matrix lifting quotient basis vectors back to A."""
    n = len(mult)
    r, piv = mod_rref(ideal_rows, p) if ideal_rows.size else (ideal_rows, [])
    red_rows = r[: len(piv)]
    comp = [c for c in range(n) if c not in piv]
    lift = np.zeros((len(comp), n), dtype=np.int64)
    for k, c in enumerate(comp):
        lift[k, c] = 1

    def project(vec):
        v = np.mod(np.array(vec, dtype=np.int64), p)
        for i, c in enumerate(piv):
            f = int(v[c])
            if f:
                v = (v - f * red_rows[i]) % p
        return v[comp]

    qmult = [[project(_mult_vec(mult, lift[i], lift[j], p))
              for j in range(len(comp))] for i in range(len(comp))]
    return qmult, lift


def _radical_chain(mult, p):
    n = len(mult)
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    left = [np.array([[int(mult[i][j][k]) % p for j in range(n)]
                      for k in range(n)], dtype=np.int64) for i in range(n)]

    def rep(vec):
        m = np.zeros((n, n), dtype=object)
        for i, c in enumerate(vec):
            c = int(c) % p
            if c:
                m = m + c * left[i].astype(object)
        return m

    space = np.eye(n, dtype=np.int64)
    j = 0
    pj = 1
    while True:
        mod = pj * p
        k = space.shape[0]
        if k == 0:
            break
        rows = []
        for xb in range(k):
            row = []
            for yb in range(k):
                prod = _mult_vec(mult, space[xb], space[yb], p)
                m = rep(prod) % mod
                t = int(np.trace(_int_matpow(m, pj, mod))) % mod
                assert t % pj == 0, "radical chain: unexpected trace"
                row.append((t // pj) % p)
            rows.append(row)
        ker = mod_nullspace(np.array(rows, dtype=np.int64).T, p)
        space = np.mod(ker @ space, p) if ker.size else \
            np.zeros((0, n), dtype=np.int64)
        if pj >= n:
            break
        j += 1
        pj *= p
    return space


def _mult_vec(mult, a, b, p):
    n = len(mult)
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        ai = int(a[i]) % p
        if ai == 0:
            continue
        for j in range(n):
            bj = int(b[j]) % p
            if bj == 0:
                continue
            out = (out + ai * bj * np.array(mult[i][j], dtype=np.int64)) % p
    return out


def _int_matpow(m, e, mod):
    n = m.shape[0]
    out = np.eye(n, dtype=object)
    base = m % mod
    while e:
        if e & 1:
            out = (out @ base) % mod
        base = (base @ base) % mod
        e >>= 1
    return out


def _check_nilpotent_ideal(mult, rad, p):
    n = len(mult)
    if rad.shape[0] == 0:
        return
    for k in range(rad.shape[0]):
        for i in range(n):
            ei = np.zeros(n, dtype=np.int64)
            ei[i] = 1
            for prod in (_mult_vec(mult, ei, rad[k], p),
                         _mult_vec(mult, rad[k], ei, p)):
                aug = np.concatenate([rad, prod.reshape(1, -1)])
                assert mod_rank(aug, p) == rad.shape[0], \
                    "computed radical is not an ideal"
    cur = rad
    for _ in range(n + 1):
        if cur.shape[0] == 0:
            return
        nxt = [_mult_vec(mult, a, b, p) for a in cur for b in rad]
        cur = _row_space(np.array(nxt, dtype=np.int64), p)
    raise AssertionError("computed radical is not nilpotent")


# ---------------------------------------------------------------------------
# exact arithmetic over Q and over the l-local integers


def frac_mat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def frac_identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def frac_matmul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0))
             for j in range(m)] for i in range(n)]


def frac_scalar_shift(a, c):
    """a - c * identity"""
    n = len(a)
    c = Fraction(c)
    return [[a[i][j] - (c if i == j else 0) for j in range(n)]
            for i in range(n)]


def frac_matpow(a, e):
    out = frac_identity(len(a))
    base = [row[:] for row in a]
    while e:
        if e & 1:
            out = frac_matmul(out, base)
        base = frac_matmul(base, base)
        e >>= 1
    return out


def frac_is_zero(a):
    return all(x == 0 for row in a for x in row)


def frac_det(a):
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def frac_rref(a):
    m = [[Fraction(x) for x in row] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def frac_kernel(a):
    """Rows spanning {x : a x = 0} over Q."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [[Fraction(int(i == j)) for j in range(ncols)]
                for i in range(ncols)]
    r, pivots = frac_rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for c in free:
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][c]
        out.append(v)
    return out


def frac_solve(a, b):
    """One solution of a x = b over Q, or None."""
    aug = [list(map(Fraction, row)) + [Fraction(bb)] for row, bb in zip(a, b)]
    r, pivots = frac_rref(aug)
    ncols = len(a[0]) if a else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = r[i][ncols]
    return x


def lval(x, ell):
    """l-adic valuation of a Fraction; None stands for +infinity (x = 0)."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


def is_l_integral(x, ell):
    return Fraction(x).denominator % ell != 0


def frac_mod_ell(x, ell):
    """Residue in F_ell of an l-integral Fraction."""
    x = Fraction(x)
    if x.denominator % ell == 0:
        raise ValueError("fraction is not l-integral")
    return (x.numerator * pow(x.denominator, -1, ell)) % ell


def lloc_saturate(rows, ell):
    """Basis over Z_(l) of (Q-span of rows) intersected with Z_(l)^n.

    Start from a Q-basis scaled to unit content, then repeatedly divide an
    l-divisible combination by l; each step shrinks the index, so this
    terminates with the saturated lattice.
    """
    basis, _ = _rref_rows(rows)
    basis = [_unit_content(row, ell) for row in basis]
    if not basis:
        return []
    while True:
        red = np.array([[frac_mod_ell(x, ell) for x in row] for row in basis],
                       dtype=np.int64)
        dep = mod_nullspace(red.T, ell)
        if dep.shape[0] == 0:
            return basis
        c = dep[0]
        j = int(np.nonzero(c)[0][0])
        comb = [sum(Fraction(int(c[i])) * basis[i][k] for i in range(len(basis)))
                for k in range(len(basis[0]))]
        comb = [x / ell for x in comb]
        basis[j] = _unit_content(comb, ell)


def _rref_rows(rows):
    if not rows:
        return [], []
    r, piv = frac_rref(rows)
    return [r[i] for i in range(len(piv))], piv


def _unit_content(row, ell):
    vals = [lval(x, ell) for x in row]
    vmin = min(v for v in vals if v is not None)
    if vmin == 0:
        return list(row)
    f = Fraction(ell) ** vmin
    return [x / f for x in row]


def lloc_membership(vec, basis, ell):
    """Is vec in the Z_(l)-span of the basis rows?"""
    if not basis:
        return all(Fraction(x) == 0 for x in vec)
    sol = frac_solve([list(col) for col in zip(*basis)], list(vec))
    if sol is None:
        return False
    return all(is_l_integral(c, ell) for c in sol)


def lloc_elementary_exponents(rows, ell):
    """Exponents of the elementary divisors l^e of the Z_(l)-span of the
    rows inside Z_(l)^n (Smith reduction over the local PID Z_(l))."""
    m = [[Fraction(x) for x in row] for row in rows]
    for row in m:
        for x in row:
            if not is_l_integral(x, ell):
                raise ValueError("matrix is not l-integral")
    exps = []
    while m and any(any(x != 0 for x in row) for row in m):
        best = None
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x != 0:
                    v = lval(x, ell)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        v, i, j = best
        exps.append(v)
        piv = m[i][j]
        # clear column j with row operations, then row i with column ops
        for k in range(len(m)):
            if k != i and m[k][j] != 0:
                f = m[k][j] / piv
                m[k] = [x - f * y for x, y in zip(m[k], m[i])]
        for jj in range(len(m[i])):
            if jj != j and m[i][jj] != 0:
                f = m[i][jj] / piv
                for k in range(len(m)):
                    m[k][jj] -= f * m[k][j]
        m = [[x for jj, x in enumerate(row) if jj != j]
             for ii, row in enumerate(m) if ii != i]
    return sorted(exps)


def frac_charpoly(a):
    """Characteristic polynomial of a rational square matrix, monic, as a
    low-degree-first coefficient list (Faddeev-LeVerrier)."""
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    cs = [Fraction(1)] + [Fraction(0)] * n
    mk = frac_identity(n)
    for k in range(1, n + 1):
        amk = frac_matmul(a, mk)
        tr = sum(amk[i][i] for i in range(n))
        ck = -tr / k
        cs[k] = ck
        mk = [[amk[i][j] + (ck if i == j else 0) for j in range(n)]
              for i in range(n)]
    return list(reversed(cs))
