"""
Point counts and Frobenius weight envelopes for intersections of Bruhat
cells with opposite Bruhat cells, and the induced Ext-degree/weight
profiles between standard objects.

The point-count polynomial R(u, v) of X_v intersected with the opposite
cell of u satisfies the cell-decomposition recursion: pick a simple s with
vs < v; then

    R(u, v) = R(us, vs)                       if us < u,
    R(u, v) = (q - 1) R(u, vs) + q R(us, vs)  if us > u,

with R(u, u) = 1 and R(u, v) = 0 unless u <= v.  The recursion is
independent of the choice of descent (tested exhaustively).

Weight conventions: the Frobenius acts on the top compactly-supported
cohomology of the affine line by q^{-1}, so "weight m" means eigenvalue
q^m and all envelope entries are <= 0.  Point-count exponents are the
negatives of weights.

An independent oracle `flag_count` enumerates complete flags over small
finite fields (type A only) and counts those in prescribed relative
positions to the standard and opposite coordinate flags.
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

from .coxeter import LETTERS as _LETTERS
from .coxeter import bruhat_leq, build_group, coset_reps

__all__ = [
    "IntPolynomial", "WeightProfile", "r_polynomial", "weight_envelope",
    "ext_profile_standard", "ext_profile_parabolic",
    "projective_weight_certificate", "flag_count",
]


@dataclass(frozen=True)
class IntPolynomial:
    """Sparse integer polynomial in the fixed variable q."""

    coeffs: tuple  # sorted tuple of (exponent, nonzero coefficient)

    @staticmethod
    def from_dict(d):
        return IntPolynomial(tuple(sorted((e, c) for e, c in d.items() if c)))

    @staticmethod
    def zero():
        return IntPolynomial(())

    @staticmethod
    def one():
        return IntPolynomial(((0, 1),))

    def to_dict(self):
        return dict(self.coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        if not self.coeffs:
            return None
        return self.coeffs[-1][0]

    @property
    def leading_coefficient(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1][1]

    def __add__(self, other):
        d = self.to_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return IntPolynomial.from_dict(d)

    def __mul__(self, other):
        d = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return IntPolynomial.from_dict(d)

    def scale(self, c):
        return IntPolynomial.from_dict({e: c * a for e, a in self.coeffs})

    def shift(self, k):
        """Multiply by q^k."""
        return IntPolynomial(tuple((e + k, c) for e, c in self.coeffs))

    def __call__(self, q):
        return sum(c * q ** e for e, c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                head = "q" if e == 1 else f"q^{e}"
                mono = head if abs(c) == 1 else f"{abs(c)}*{head}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+ {mono}" if c > 0 else f"- {mono}")
        return " ".join(parts)


@dataclass(frozen=True)
class WeightProfile:
    """Closed integer intervals of allowed Frobenius q-weights, one per
    cohomological degree."""

    entries: tuple  # sorted tuple of (degree, (lo, hi))
    label: str = field(default="", compare=False)

    @staticmethod
    def from_dict(d, label=""):
        for lo, hi in d.values():
            if lo > hi:
                raise ValueError("empty interval in weight profile")
        return WeightProfile(tuple(sorted(d.items())), label)

    def to_dict(self):
        return dict(self.entries)

    @property
    def degrees(self):
        return [n for n, _ in self.entries]

    def interval(self, n):
        return dict(self.entries).get(n)

    @property
    def is_empty(self):
        return not self.entries


_R_MEMO = {}


def r_polynomial(W, u, v):
    """Point-count polynomial of the intersection of the v-cell with the
    opposite u-cell, by the descent recursion.  Memoized per (type, u, v);
    recomputation is idempotent so the cache is safe under concurrency."""
    key = (W.cartan_type, u.word, v.word)
    if key in _R_MEMO:
        return _R_MEMO[key]
    if u == v:
        out = IntPolynomial.one()
    elif not bruhat_leq(W, u, v):
        out = IntPolynomial.zero()
    else:
        s = W.right_descents(v)[0]
        vs = W.mult(v, s)
        us = W.mult(u, s)
        if us.length < u.length:
            out = r_polynomial(W, us, vs)
        else:
            q_minus_1 = IntPolynomial.from_dict({1: 1, 0: -1})
            q = IntPolynomial.from_dict({1: 1})
            out = q_minus_1 * r_polynomial(W, u, vs) \
                + q * r_polynomial(W, us, vs)
    _R_MEMO[key] = out
    return out


def r_polynomial_with_descent(W, u, v, s):
    """Same recursion but forcing the first descent choice; used to test
    that the result does not depend on it."""
    if u == v:
        return IntPolynomial.one()
    if not bruhat_leq(W, u, v):
        return IntPolynomial.zero()
    if W.mult(v, s).length >= v.length:
        raise ValueError("s is not a right descent of v")
    vs = W.mult(v, s)
    us = W.mult(u, s)
    if us.length < u.length:
        return r_polynomial(W, us, vs)
    q_minus_1 = IntPolynomial.from_dict({1: 1, 0: -1})
    q = IntPolynomial.from_dict({1: 1})
    return q_minus_1 * r_polynomial(W, u, vs) + q * r_polynomial(W, us, vs)


def weight_envelope(W, u, v):
    """Per-degree weight intervals for the compactly supported cohomology
    of the intersection of the v-cell with the opposite u-cell.

    Degrees run from d to 2d where d = l(v) - l(u); the interval in degree
    n is [-floor(n/2), -n + d].  Empty when u is not below v.
    """
    label = f"H_c(X_{v.serialize()} ∩ X_{u.serialize()}^-)"
    if not bruhat_leq(W, u, v):
        return WeightProfile.from_dict({}, label)
    d = v.length - u.length
    return WeightProfile.from_dict(
        {n: (-(n // 2), -n + d) for n in range(d, 2 * d + 1)}, label)


def ext_profile_standard(W, u, v):
    """Degree/weight profile of Ext between the standard objects attached
    to u and v: the envelope shifted by d = l(v) - l(u), so Ext^n carries
    weights in [-floor((n + d)/2), -n] for n in [0, d]."""
    label = f"Ext(Δ_{u.serialize()}, Δ_{v.serialize()})"
    if not bruhat_leq(W, u, v):
        return WeightProfile.from_dict({}, label)
    d = v.length - u.length
    return WeightProfile.from_dict(
        {n: (-((n + d) // 2), -n) for n in range(0, d + 1)}, label)


def ext_profile_parabolic(W, u, v, s):
    """Ext bounds between standard objects on the s-wall quotient; defined
    for u, v in the minimal coset representatives W^s, with the same
    interval shape as the full-flag profile (bounds only)."""
    reps = coset_reps(W, s)
    if u not in reps or v not in reps:
        raise ValueError(
            f"{u.serialize()} or {v.serialize()} is not a minimal coset "
            f"representative for {s.serialize()}")
    prof = ext_profile_standard(W, u, v)
    return WeightProfile(
        prof.entries,
        f"Ext^s(Δ_{u.serialize()}, Δ_{v.serialize()})")


@dataclass(frozen=True)
class ProjectiveWeightReport:
    """Per-standard-subquotient weight intervals in the filtration of a
    projective cover, the global endomorphism weight window, and the
    decomposability hypothesis for a supplied (ell, q)."""

    u: str
    flag_intervals: tuple      # ((v, (1, l(v)-l(u))), ...) for v > u
    end_window: tuple          # (-l(w0), l(w0))
    ell: int
    q: int
    q_order: int
    threshold: int             # 2 l(w0)
    hypothesis_holds: bool


def projective_weight_certificate(W, u, ell, q):
    """Weight bookkeeping for the projective cover of the standard object
    at u: each v > u contributes multiplicity-space weights in
    [1, l(v) - l(u)]; endomorphism weights live in [-l(w0), l(w0)]; and
    the splitting hypothesis asks ord(q mod ell) > 2 l(w0)."""
    if ell < 2 or any(ell % d == 0 for d in range(2, int(ell ** 0.5) + 1)):
        raise ValueError(f"ell = {ell} is not prime")
    if q % ell == 0:
        raise ValueError("q must be invertible mod ell")
    flags = tuple(
        (v.serialize(), (1, v.length - u.length))
        for v in W.elements
        if v != u and bruhat_leq(W, u, v))
    lw0 = W.longest_element.length
    order = multiplicative_order(q, ell)
    return ProjectiveWeightReport(
        u=u.serialize(),
        flag_intervals=flags,
        end_window=(-lw0, lw0),
        ell=ell,
        q=q,
        q_order=order,
        threshold=2 * lw0,
        hypothesis_holds=order > 2 * lw0,
    )


def multiplicative_order(q, ell):
    q = q % ell
    if q == 0:
        raise ValueError("q is not a unit mod ell")
    order = 1
    acc = q
    while acc != 1:
        acc = (acc * q) % ell
        order += 1
    return order


# ---------------------------------------------------------------------------
# the flag-enumeration oracle (type A, small fields)

# GF(4) = F_2[x]/(x^2+x+1), elements 0,1,2=x,3=x+1
_GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
_GF4_ADD = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]


class _SmallField:
    def __init__(self, q):
        if q not in (2, 3, 4):
            raise ValueError("flag oracle supports field sizes 2, 3, 4 only")
        self.q = q

    def add(self, a, b):
        return _GF4_ADD[a][b] if self.q == 4 else (a + b) % self.q

    def mul(self, a, b):
        return _GF4_MUL[a][b] if self.q == 4 else (a * b) % self.q

    def neg(self, a):
        if self.q == 4:
            return a
        return (-a) % self.q

    def inv(self, a):
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError


def _row_reduce(field, rows):
    """Row echelon over the small field; returns reduced rows (basis)."""
    rows = [list(r) for r in rows]
    out = []
    pivots = []
    for r in rows:
        for prow, pc in zip(out, pivots):
            if r[pc] != 0:
                f = r[pc]
                r = [field.add(x, field.neg(field.mul(f, y)))
                     for x, y in zip(r, prow)]
        nz = next((i for i, x in enumerate(r) if x != 0), None)
        if nz is None:
            continue
        inv = field.inv(r[nz])
        r = [field.mul(inv, x) for x in r]
        out.append(r)
        pivots.append(nz)
    return out, pivots


def _subspace_dim_sum(field, rows_a, rows_b):
    return len(_row_reduce(field, list(rows_a) + list(rows_b))[0])


def _all_flags(field, n):
    """All complete flags in field^n.  Each flag is a tuple whose i-th entry
    is the canonical (row reduced) basis of V_{i+1}; subspaces are deduped
    at every level so each flag appears exactly once."""
    vectors = [v for v in iproduct(range(field.q), repeat=n)
               if any(v)]

    def normalize(v):
        lead = next(x for x in v if x != 0)
        inv = field.inv(lead)
        return tuple(field.mul(inv, x) for x in v)

    lines = sorted({normalize(v) for v in vectors})

    def canonical(rows):
        red, _ = _row_reduce(field, rows)
        return tuple(sorted(tuple(r) for r in red))

    def extend(chain):
        if len(chain) == n - 1:
            yield tuple(chain)
            return
        current = list(chain[-1]) if chain else []
        bigger = {}
        for line in lines:
            if len(_row_reduce(field, current + [line])[0]) == len(current) + 1:
                bigger.setdefault(canonical(current + [line]), None)
        for sub in bigger:
            yield from extend(chain + [sub])

    if n == 1:
        return [()]
    return list(extend([]))


def _relative_position(field, flag, ref, n):
    """Permutation w (one-line, 1-based values) with
    dim(V_i /\\ F_j) = #{k <= i : w(k) <= j}.

    `flag` is a chain of canonical bases (V_1, ..., V_{n-1}); `ref` is a
    chain of reference subspace bases of the same shape."""
    full = [tuple(int(a == b) for b in range(n)) for a in range(n)]

    def rows_of(chain, i):
        if i == 0:
            return []
        return list(chain[i - 1]) if i <= n - 1 else list(full)

    dims = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        rows_v = rows_of(flag, i)
        for j in range(1, n + 1):
            rows_f = rows_of(ref, j)
            # dim(V_i) + dim(F_j) - dim(V_i + F_j)
            dims[i][j] = i + j - _subspace_dim_sum(field, rows_v, rows_f)
    w = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if dims[i][j] - dims[i - 1][j] > dims[i][j - 1] - dims[i - 1][j - 1]:
                w.append(j)
                break
    return tuple(w)


def _perm_to_element(W, w_oneline):
    """Convert a one-line permutation of {1..n} to an element of the type A
    group via bubble-sort factorization into adjacent swaps (letter i is
    the transposition of i and i+1)."""
    w = list(w_oneline)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i)
                changed = True
    return W.element("".join(_LETTERS[i] for i in reversed(word)))


def flag_count(rank, q_prime, u, v):
    """Number of complete flags over the field with q_prime elements that
    are in position v to the standard flag and position u to the opposite
    flag.  Pure enumeration; this is the oracle for `r_polynomial`.

    `u` and `v` are elements of the type-A group of the given rank
    (rank <= 3, q_prime in {2, 3, 4})."""
    if rank > 3:
        raise ValueError("flag oracle is limited to rank <= 3")
    _SmallField(q_prime)  # validates the field size
    table = flag_position_table(rank, q_prime)
    return table.get((u.word, v.word), 0)


_TABLE_MEMO = {}


def flag_position_table(rank, q_prime):
    """Counts of flags bucketed by (position to opposite flag, position to
    standard flag), keyed by canonical words."""
    key = (rank, q_prime)
    if key in _TABLE_MEMO:
        return _TABLE_MEMO[key]
    W = build_group(f"A{rank}")
    field = _SmallField(q_prime)
    n = rank + 1
    std_rows = [tuple(int(a == b) for b in range(n)) for a in range(n - 1)]
    opp_rows = [tuple(int(a == n - 1 - b) for b in range(n))
                for a in range(n - 1)]
    std = [tuple(std_rows[: j + 1]) for j in range(n - 1)]
    opp = [tuple(opp_rows[: j + 1]) for j in range(n - 1)]
    w0 = W.longest_element
    counts = {}
    for flag in _all_flags(field, n):
        pos_v = _perm_to_element(W, _relative_position(field, flag, std, n))
        pos_u_tw = _perm_to_element(W, _relative_position(field, flag, opp, n))
        # position w to the opposite flag means the w0-twisted cell index
        pos_u = W.mult(w0, pos_u_tw)
        k = (pos_u.word, pos_v.word)
        counts[k] = counts.get(k, 0) + 1
    _TABLE_MEMO[key] = counts
    return counts
