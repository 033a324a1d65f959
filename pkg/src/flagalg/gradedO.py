"""
The graded module category over the endomorphism algebra E: graded
translation to and from the wall, graded standard modules with their
embeddings, Hom tables between standards, and graded composition
multiplicities.

Translation to the wall is the induction M -> M (x)_E E^s, computed from a
projective presentation of M (so the quotient stays small); translation
from the wall is restriction along the embedding E -> E^s.  The graded
standard module of the identity is e_() E; for xs > x the next standard
is the cokernel of the unit M_x -> (M_x (x) E^s) restricted, shifted up
by one.  The unit must be injective: that is exactly the short exact
sequence the construction rides on, and its failure would falsify the
model, so it raises StructuralError rather than ValueError.
"""

from dataclasses import dataclass

import numpy as np

from . import _linalg as la
from .coxeter import LETTERS
from .galgebra import (RightModule, StructuralError, hom_all, hom_dims,
                       module_presentation, quotient_module, regular_module,
                       shift_module, submodule, _projective_rows,
                       graded_projectives, simple_dims)
from .soergel import endomorphism_algebra, wall_algebra

__all__ = [
    "TranslationData", "translation_data", "translate_to_wall",
    "translate_from_wall", "graded_standard", "standard_embedding",
    "hom_standard_table", "graded_multiplicities", "standard_modules",
    "projectives_for", "wall_module_projective_certificate",
]


@dataclass
class TranslationData:
    """Everything needed to translate between E and E^s modules: the two
    algebras and the unital degree-0 embedding E -> E^s."""

    C: object
    s: int
    e_data: object
    wall_data: object
    emb: np.ndarray


def translation_data(C, s):
    if isinstance(s, str):
        s = LETTERS.index(s)
    e_data = endomorphism_algebra(C)
    wall_data, emb = wall_algebra(C, s)
    return TranslationData(C, s, e_data, wall_data, emb)


def translate_from_wall(td, N):
    """Restriction along E -> E^s: the same space, with a in E acting as
    emb(a)."""
    E = td.e_data.algebra
    Es = td.wall_data.algebra
    p = E.p
    action = []
    for a in range(E.dim):
        avec = td.emb[:, a] % p
        m = np.zeros((N.dim, N.dim), dtype=np.int64)
        for k in np.nonzero(avec)[0]:
            m = (m + int(avec[k]) * N.action[int(k)]) % p
        action.append(m)
    return RightModule(E, list(N.degrees), action)


def translate_to_wall(td, M):
    """Induction M (x)_E E^s, via a projective presentation of M.

    Writing P = sum of e_h E over the module generators of M, with
    relation kernel R, the induced module is (sum of e_h E^s) divided by
    the E^s-submodule generated by the embedded relations.  Returns
    (module over E^s, unit matrix M -> restriction of the result)."""
    E = td.e_data.algebra
    Es = td.wall_data.algebra
    p = E.p
    gens, idems, proj_rows_e, raw_meta, pi, rel, sect = \
        module_presentation(M)
    col_meta = [(gi, gens[gi][1], t) for gi, t in raw_meta]

    # wall-side projective sum: blocks e_h E^s
    proj_rows_s = {}
    for _, h in gens:
        if h not in proj_rows_s:
            proj_rows_s[h] = _projective_rows(Es, _idem_vec(Es, h))
    blocks = []
    offsets = []
    total = 0
    for gi, (g, h) in enumerate(gens):
        rows = proj_rows_s[h]
        sub_degs = _rows_degrees(rows, Es.degrees)
        blocks.append((h, rows, sub_degs))
        offsets.append(total)
        total += rows.shape[0]
    # the element g (x) r has degree deg(g) + deg(r)
    degrees = []
    for gi, (g, h) in enumerate(gens):
        gdeg = int(M.degrees[int(np.nonzero(g)[0][0])])
        _, rows, sub_degs = blocks[gi]
        degrees.extend(d + gdeg for d in sub_degs)

    # big module: product of the blocks with the right E^s action
    action = []
    for a in range(Es.dim):
        m = np.zeros((total, total), dtype=np.int64)
        for gi, (h, rows, _) in enumerate(blocks):
            off = offsets[gi]
            k = rows.shape[0]
            # action of e_a on the row space of e_h E^s
            sub = np.zeros((k, k), dtype=np.int64)
            for j in range(k):
                img = Es.mul_vec(rows[j], Es.basis_vec(a))
                sub[:, j] = _coords_in_rows(img, rows, p)
            m[off: off + k, off: off + k] = sub
        action.append(m)
    big = RightModule(Es, degrees, action)

    # embedded relations and their E^s-span
    rel_rows = []
    for kvec in rel:
        v = np.zeros(total, dtype=np.int64)
        for c, coeff in enumerate(kvec):
            if coeff % p == 0:
                continue
            gi, h, t = col_meta[c]
            evec = (td.emb @ proj_rows_e[h][t]) % p
            v[offsets[gi]: offsets[gi] + blocks[gi][1].shape[0]] = (
                v[offsets[gi]: offsets[gi] + blocks[gi][1].shape[0]]
                + int(coeff) * _coords_in_rows(evec, blocks[gi][1], p)) % p
        if np.any(v):
            rel_rows.append(v)
    span = _spin_rows(big, rel_rows)
    quot, proj = quotient_module(big, span)

    # the unit M -> res(M (x) E^s): m = pi(xi) maps to class of embedded xi
    emb_cols = np.zeros((total, len(col_meta)), dtype=np.int64)
    for c, (gi, h, t) in enumerate(col_meta):
        evec = (td.emb @ proj_rows_e[h][t]) % p
        off = offsets[gi]
        k = blocks[gi][1].shape[0]
        emb_cols[off: off + k, c] = _coords_in_rows(evec, blocks[gi][1], p)
    unit = (proj @ emb_cols @ sect) % p
    return quot, unit


def _idem_vec(alg, h):
    labels = sorted(alg.idempotents, key=str)
    v = np.zeros(alg.dim, dtype=np.int64)
    v[alg.idempotents[labels[h]]] = 1
    return v


def _rows_degrees(rows, degrees):
    out = []
    for r in rows:
        supp = np.nonzero(r)[0]
        ds = {degrees[int(j)] for j in supp}
        assert len(ds) == 1
        out.append(ds.pop())
    return out


def _coords_in_rows(vec, rows, p):
    """Coordinates of vec in the echelon row basis `rows`."""
    out = np.zeros(rows.shape[0], dtype=np.int64)
    v = vec.copy() % p
    for i in range(rows.shape[0]):
        c = int(np.nonzero(rows[i])[0][0])
        f = int(v[c])
        if f:
            out[i] = f
            v = (v - f * rows[i]) % p
    assert not np.any(v), "vector not in the row space"
    return out


def _spin_rows(module, rows):
    """Smallest action-stable row space containing the rows."""
    p = module.algebra.p
    if not len(rows):
        return np.zeros((0, module.dim), dtype=np.int64)
    ech = la._Echelon(module.dim, p)
    frontier = []
    for r in rows:
        if ech.insert(np.array(r, dtype=np.int64)) is None:
            frontier.append(np.array(r, dtype=np.int64))
    while frontier:
        new = []
        for v in frontier:
            for a in range(module.algebra.dim):
                img = (module.action[a] @ v) % p
                if np.any(img) and ech.insert(img) is None:
                    new.append(img)
        frontier = new
    return np.array(ech.rows, dtype=np.int64) if ech.rows else \
        np.zeros((0, module.dim), dtype=np.int64)


# ---------------------------------------------------------------------------
# graded standard modules


def standard_modules(C):
    """All graded standard modules, built along the canonical reduced word
    of each element; memoized on C.  Returns {element: RightModule}."""
    if not hasattr(C, "_standards"):
        C._standards = {}
        C._standard_units = {}
    key = "all"
    if key in C._standards:
        return C._standards[key]
    W = C.group
    e_data = endomorphism_algebra(C)
    E = e_data.algebra
    reg = regular_module(E)
    idx = E.idempotents[""]
    rows = []
    for b in range(E.dim):
        prod = E.mult.get((idx, b))
        v = np.zeros(E.dim, dtype=np.int64)
        if prod:
            for k, c in prod.items():
                v[k] = c % E.p
        if np.any(v):
            rows.append(v)
    m_e, _ = submodule(reg, np.array(rows, dtype=np.int64))
    out = {W.identity: m_e}
    tds = {}
    for x in sorted(W.elements, key=lambda w: (w.length, w.word)):
        if x.length == 0:
            continue
        word = x.word
        prev = W.element(word[:-1])
        s = LETTERS.index(word[-1])
        if s not in tds:
            tds[s] = translation_data(C, s)
        out[x] = _standard_step(tds[s], out[prev])
    C._standards[key] = out
    return out


def _standard_step(td, m_prev):
    induced, unit = translate_to_wall(td, m_prev)
    back = translate_from_wall(td, induced)
    if la.mod_rank(unit, td.e_data.algebra.p) != m_prev.dim:
        raise StructuralError(
            "adjunction unit of a standard module is not injective; "
            "the standard recursion is falsified")
    img_rows = unit.T % td.e_data.algebra.p
    coker, _ = quotient_module(back, img_rows)
    return shift_module(coker, 1)


def graded_standard(C, x):
    """The graded standard module attached to x."""
    return standard_modules(C)[x]


def standard_embedding(C, x, s):
    """The injective degree-0 map from the standard at xs into the
    standard at x shifted down by one; unique up to scalar.

    `s` is a simple reflection (letter, index or element) with xs > x.  A
    degree-0 map into M_x<-1> raises the underlying internal degree by 1,
    so this is the space of degree +1 homs into the unshifted standard."""
    W = C.group
    if isinstance(s, int):
        s = W.element(LETTERS[s])
    elif isinstance(s, str):
        s = W.element(s)
    xs = W.mult(x, s)
    if xs.length <= x.length:
        raise ValueError("need xs > x")
    std = standard_modules(C)
    homs = hom_all(std[xs], std[x])
    mats = homs.get(1, [])
    if len(mats) != 1:
        raise StructuralError(
            f"expected a one-dimensional space of maps from the standard "
            f"at {xs.serialize()} into the shifted standard at "
            f"{x.serialize()}; got {len(mats)}")
    phi = mats[0]
    if la.mod_rank(phi, C.ell) != std[xs].dim:
        raise StructuralError("standard embedding is not injective")
    return phi


def hom_standard_table(C):
    """For each ordered pair (x, y): (total Hom dimension between the
    standards, the degree shifts carrying it).  The expected pattern is
    dimension 1 concentrated in degree l(y) - l(x) exactly when y <= x."""
    W = C.group
    std = standard_modules(C)
    table = {}
    for x in W.elements:
        for y in W.elements:
            homs = hom_dims(std[x], std[y])
            table[(x, y)] = (sum(homs.values()), sorted(homs))
    return table


def projectives_for(C):
    """Normalized graded projectives for the endomorphism algebra of C,
    keyed by group element; memoized on C."""
    if not hasattr(C, "_projectives"):
        e_data = endomorphism_algebra(C)
        W = C.group
        fam = C.family()
        family_words = {x: fam[x] for x in W.elements}
        lengths = {x: x.length for x in W.elements}
        C._projectives = graded_projectives(e_data.algebra, family_words,
                                            lengths)
    return C._projectives


def graded_multiplicities(C, M):
    """Graded composition multiplicities {(y, k): [M : L_y<k>]}, computed
    as dim Hom(P_y<k>, M); checked against dim M via the simple
    dimensions."""
    projs = projectives_for(C)
    mult = {}
    for y, P in projs.items():
        for k, v in hom_dims(P, M).items():
            mult[(y, k)] = v
    dims = simple_dims(projs)
    total = sum(v * dims[y] for (y, k), v in mult.items())
    assert total == M.dim, \
        f"multiplicity count {total} does not match dim M = {M.dim}"
    return mult


def wall_module_projective_certificate(C, s):
    """Certify that E^s, as a module over E on either side, is projective:
    every indecomposable summand of every idempotent slice is isomorphic,
    up to shift, to a summand of the regular module on the same side."""
    from .galgebra import decompose_module, is_iso_up_to_shift
    from .soergel import wall_row_block_modules
    td = translation_data(C, s)
    E = td.e_data.algebra
    Es = td.wall_data.algebra
    p = E.p
    sides = {}
    for side in ("right", "left"):
        if side == "right":
            alg = E
            blocks = wall_row_block_modules(C, td.s)
        else:
            alg = E.opposite()
            alg.idempotents = E.idempotents
            # left module = right module over the opposite algebra; slice
            # by the column blocks E^s e_f, which are stable under left
            # multiplication
            blocks = []
            for f in td.wall_data.words:
                idx = [k for k, (_, src, _) in
                       enumerate(td.wall_data.basis_blocks) if src == f]
                back = {b: i for i, b in enumerate(idx)}
                degrees = [Es.degrees[b] for b in idx]
                action = []
                for a in range(alg.dim):
                    avec = td.emb[:, a] % p
                    m = np.zeros((len(idx), len(idx)), dtype=np.int64)
                    for i, b in enumerate(idx):
                        prod = np.zeros(Es.dim, dtype=np.int64)
                        for k in np.nonzero(avec)[0]:
                            pr = Es.mult.get((int(k), b))
                            if pr:
                                for kk, c in pr.items():
                                    prod[kk] = (prod[kk]
                                                + int(avec[k]) * c) % p
                        for kk in np.nonzero(prod)[0]:
                            m[back[int(kk)], i] = prod[kk]
                    action.append(m)
                blocks.append(RightModule(alg, degrees, action))
        reg = regular_module(alg)
        reg_classes = []
        for piece in decompose_module(reg):
            if not any(is_iso_up_to_shift(piece, q) is not None
                       for q in reg_classes):
                reg_classes.append(piece)
        ok = True
        for sub in blocks:
            for piece in decompose_module(sub):
                if not any(is_iso_up_to_shift(piece, q) is not None
                           for q in reg_classes):
                    ok = False
        sides[side] = ok
    return sides
