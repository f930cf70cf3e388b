"""Modules over a group algebra and their category.

A ModuleRep stores one invertible matrix per group generator; the action of
arbitrary elements is built on demand by walking the multiplication table.
The decomposition machinery splits the endomorphism algebra (idempotent
style): compute its radical via a composition series of the underlying
module, find a separating element of the semisimple quotient, lift an
idempotent with the repeated-squaring device, and recurse on both summands.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg, polys
from .field import FieldCtx, make_field
from .group import GroupTable, Subgroup
from .linalg import Subspace, eye, mat_mul, mat_vec, zeros


class ModuleRep:
    def __init__(
        self,
        group: GroupTable,
        F: FieldCtx,
        gen_matrices: list[np.ndarray],
        check: bool = True,
    ):
        self.group = group
        self.F = F
        if len(gen_matrices) != len(group.generators):
            raise ValueError("one matrix per group generator required")
        self.gen_matrices = [np.asarray(A, dtype=np.int64) for A in gen_matrices]
        self.dim = self.gen_matrices[0].shape[0] if self.gen_matrices else 0
        if not self.gen_matrices:
            raise ValueError("groups must have at least one generator")
        self._action: dict[int, np.ndarray] | None = None
        if check:
            self._validate()

    def _validate(self) -> None:
        for A in self.gen_matrices:
            if A.shape != (self.dim, self.dim):
                raise ValueError("generator matrices must be square, same size")
            if not linalg.is_invertible(self.F, A):
                raise ValueError("generator matrix is singular")
        act = self.full_action()
        rng = random.Random(987)
        n = self.group.order
        for _ in range(min(24, n * n)):
            a, b = rng.randrange(n), rng.randrange(n)
            if (act[self.group.mul(a, b)] != mat_mul(self.F, act[a], act[b])).any():
                raise ValueError("matrices do not satisfy the group relations")

    def full_action(self) -> dict[int, np.ndarray]:
        if self._action is None:
            G, F = self.group, self.F
            act = {0: eye(self.dim)}
            frontier = [0]
            while frontier:
                nxt = []
                for x in frontier:
                    for g, Ag in zip(G.generators, self.gen_matrices):
                        y = G.mul(x, g)
                        if y not in act:
                            act[y] = mat_mul(F, act[x], Ag)
                            nxt.append(y)
                frontier = nxt
            if len(act) != G.order:
                raise ValueError("generators do not generate the group")
            self._action = act
        return self._action

    def action(self, x: int) -> np.ndarray:
        return self.full_action()[x]

    def action_inv(self, x: int) -> np.ndarray:
        return self.full_action()[self.group.inverse(x)]

    def __repr__(self) -> str:
        return f"ModuleRep(dim={self.dim}, |G|={self.group.order})"


# -- constructors ---------------------------------------------------------


def trivial_module(G: GroupTable, F: FieldCtx) -> ModuleRep:
    one = eye(1)
    return ModuleRep(G, F, [one.copy() for _ in G.generators], check=False)


def regular_module(G: GroupTable, F: FieldCtx) -> ModuleRep:
    """Left regular module: g sends basis vector e_x to e_{gx}."""
    mats = []
    for g in G.generators:
        A = zeros(G.order, G.order)
        for x in range(G.order):
            A[G.mul(g, x), x] = 1
        mats.append(A)
    return ModuleRep(G, F, mats, check=False)


def permutation_module(G: GroupTable, F: FieldCtx) -> ModuleRep:
    """Natural permutation module (groups loaded from permutations only)."""
    if G.perms is None:
        raise ValueError("group has no permutation labels")
    pts = len(G.perms[0])
    mats = []
    for g in G.generators:
        p = G.perms[g]
        A = zeros(pts, pts)
        for i in range(pts):
            A[p[i], i] = 1
        mats.append(A)
    return ModuleRep(G, F, mats, check=False)


def from_matrices(G: GroupTable, F: FieldCtx, mats) -> ModuleRep:
    return ModuleRep(G, F, mats)


def dual(M: ModuleRep) -> ModuleRep:
    mats = []
    for g in M.group.generators:
        mats.append(M.action_inv(g).T.copy())
    return ModuleRep(M.group, M.F, mats, check=False)


def direct_sum(mods: list[ModuleRep]) -> ModuleRep:
    G, F = mods[0].group, mods[0].F
    mats = []
    for i, g in enumerate(G.generators):
        blocks = [m.gen_matrices[i] for m in mods]
        d = sum(b.shape[0] for b in blocks)
        A = zeros(d, d)
        off = 0
        for b in blocks:
            k = b.shape[0]
            A[off : off + k, off : off + k] = b
            off += k
        mats.append(A)
    return ModuleRep(G, F, mats, check=False)


def restrict(M: ModuleRep, H: Subgroup) -> ModuleRep:
    """M as a module for H (over H's own standalone table)."""
    Ht, elems = subgroup_table(H)
    mats = [M.action(elems[g]) for g in Ht.generators]
    return ModuleRep(Ht, M.F, mats, check=False)


_sub_table_cache: dict[tuple, tuple] = {}


def subgroup_table(H: Subgroup) -> tuple[GroupTable, list[int]]:
    key = (id(H.parent), H.elements)
    if key not in _sub_table_cache:
        _sub_table_cache[key] = H.as_table()
    return _sub_table_cache[key]


def induce(L: ModuleRep, H: Subgroup) -> tuple[ModuleRep, list[int]]:
    """Induced module over H's parent; returns it with the transversal used.

    Block structure: coset block for transversal element t holds t(x)L; the
    action of g sends block t to block t' where g t = t' h, acting by L(h).
    """
    G = H.parent
    Ht, elems = subgroup_table(H)
    if L.group.order != Ht.order:
        raise ValueError("module is not over the given subgroup")
    idx_in_H = {x: i for i, x in enumerate(elems)}
    trans = G.left_transversal(H)
    pos = {t: i for i, t in enumerate(trans)}
    dl = L.dim
    d = len(trans) * dl
    # decompose any group element as t*h
    tcos = np.zeros(G.order, dtype=np.int64)
    hpart = np.zeros(G.order, dtype=np.int64)
    for t in trans:
        for h in H.elements:
            x = G.mul(t, h)
            tcos[x] = t
            hpart[x] = h
    Lact = L.full_action()
    mats = []
    for g in G.generators:
        A = zeros(d, d)
        for j, t in enumerate(trans):
            gt = G.mul(g, t)
            t2 = int(tcos[gt])
            h = int(hpart[gt])
            i = pos[t2]
            A[i * dl : (i + 1) * dl, j * dl : (j + 1) * dl] = Lact[idx_in_H[h]]
        mats.append(A)
    return ModuleRep(G, L.F, mats, check=False), trans


def sub_module(M: ModuleRep, S: Subspace) -> tuple[ModuleRep, np.ndarray, np.ndarray]:
    """Compress a G-stable subspace; returns (module, incl d x c, proj c x d)."""
    pivots = [int(np.nonzero(r)[0][0]) for r in S.basis]
    incl = S.basis.T.copy()
    proj = zeros(S.dim, M.dim)
    for i, p in enumerate(pivots):
        proj[i, p] = 1
    mats = []
    for A in (M.action(g) for g in M.group.generators):
        mats.append(mat_mul(M.F, proj, mat_mul(M.F, A, incl)))
    return ModuleRep(M.group, M.F, mats, check=False), incl, proj


def quotient_module(M: ModuleRep, S: Subspace) -> tuple[ModuleRep, np.ndarray]:
    """M/S; returns (module, projection c x d sending v to its coordinates)."""
    comp = linalg.pivot_complement(S)
    c = comp.shape[0]
    # projection: reduce mod S, then read off the complement coordinates
    # (complement rows are unit vectors by construction)
    red = _reducer(M.F, S)
    proj = zeros(c, M.dim)
    for i, row in enumerate(comp):
        proj[i, int(np.nonzero(row)[0][0])] = 1
    proj = mat_mul(M.F, proj, red)
    incl = comp.T
    mats = []
    for A in (M.action(g) for g in M.group.generators):
        mats.append(mat_mul(M.F, proj, mat_mul(M.F, A, incl)))
    return ModuleRep(M.group, M.F, mats, check=False), proj


def _reducer(F: FieldCtx, S: Subspace) -> np.ndarray:
    """Matrix of the canonical-representative map v -> v mod S.

    For an rref basis the per-row reductions are independent, so the map is
    I + basis^T . P with P the pivot-coordinate selector.
    """
    n = S.ambient
    R = eye(n)
    if S.dim:
        P = zeros(S.dim, n)
        for i, row in enumerate(S.basis):
            P[i, int(np.nonzero(row)[0][0])] = 1
        R ^= mat_mul(F, S.basis.T, P)
    return R


# -- hom spaces and endomorphism algebras ---------------------------------


def hom_space(
    M: ModuleRep, N: ModuleRep, H: Subgroup | None = None
) -> list[np.ndarray]:
    """Basis of {X : X rho_M(h) = rho_N(h) X for h in H} (H=None: all of G)."""
    F = M.F
    if H is None:
        gen_pairs = [
            (M.gen_matrices[i], N.gen_matrices[i])
            for i in range(len(M.group.generators))
        ]
    else:
        Ht, elems = subgroup_table(H)
        gen_pairs = [
            (M.action(elems[g]), N.action(elems[g])) for g in Ht.generators
        ]
        if not gen_pairs:  # trivial subgroup
            out = []
            for i in range(N.dim):
                for j in range(M.dim):
                    E = zeros(N.dim, M.dim)
                    E[i, j] = 1
                    out.append(E)
            return out
    dm, dn = M.dim, N.dim
    if F.m == 1 and dm * dn >= 4096:
        # streaming bit-packed path: never materializes the Kronecker blocks
        def _rows():
            for Am, An in gen_pairs:
                colmask = [
                    sum(int(Am[q, j]) << q for q in range(dm)) for j in range(dm)
                ]
                rowspread = [
                    sum(int(An[i, p]) << (p * dm) for p in range(dn))
                    for i in range(dn)
                ]
                for i in range(dn):
                    rs = rowspread[i]
                    base = i * dm
                    for j in range(dm):
                        yield (colmask[j] << base) ^ (rs << j)

        ker = linalg.kernel_gf2_stream(_rows(), dn * dm)
        return [v.reshape(dn, dm) for v in ker]
    blocks = []
    for Am, An in gen_pairs:
        # row-major vec(X): X@Am -> (I (x) Am^T) x ; An@X -> (An (x) I) x
        blocks.append(
            linalg.kron(F, eye(dn), Am.T) ^ linalg.kron(F, An, eye(dm))
        )
    sys = np.concatenate(blocks, axis=0)
    ker = linalg.kernel(F, sys)
    return [v.reshape(dn, dm) for v in ker]


@dataclass
class EndoAlgebra:
    """Endomorphism algebra of a module (over a subgroup's action)."""

    module: ModuleRep
    basis: list[np.ndarray]
    gens: list[np.ndarray] = field(default_factory=list)
    subgroup: Subgroup | None = None

    def __post_init__(self):
        if not self.gens:
            self.gens = list(self.basis)
        flat = np.array([b.ravel() for b in self.basis])
        R, pivots, T = linalg.rref(self.module.F, flat, record_transform=True)
        if len(pivots) != len(self.basis):
            raise ValueError("endomorphism basis is linearly dependent")
        self._flat = flat
        self._rref = R[: len(pivots)]
        self._pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: np.ndarray) -> np.ndarray:
        """Coordinates of f in the basis; raises if f is outside the span."""
        x, cert = linalg.solve(self.module.F, self._flat.T, f.ravel())
        if x is None:
            raise ValueError("matrix not in the algebra")
        return x

    def contains(self, f: np.ndarray) -> bool:
        x, _ = linalg.solve(self.module.F, self._flat.T, f.ravel())
        return x is not None

    def element(self, coeffs: np.ndarray) -> np.ndarray:
        F = self.module.F
        out = zeros(self.module.dim, self.module.dim)
        for c, b in zip(coeffs, self.basis):
            if c:
                out ^= F.vscale(int(c), b)
        return out

    def check_closure(self) -> bool:
        for a in self.basis:
            for b in self.basis:
                if not self.contains(mat_mul(self.module.F, a, b)):
                    return False
        return True


def end_algebra(
    M: ModuleRep,
    H: Subgroup | None = None,
    basis: list[np.ndarray] | None = None,
    gens: list[np.ndarray] | None = None,
) -> EndoAlgebra:
    if basis is None:
        basis = hom_space(M, M, H)
    return EndoAlgebra(M, basis, gens=gens or [], subgroup=H)


def regular_end_algebra(G: GroupTable, F: FieldCtx, M: ModuleRep) -> EndoAlgebra:
    """E_G(kG) = all right multiplications r(x): v -> v.x (basis for free)."""
    n = G.order
    basis = []
    for x in range(n):
        R = zeros(n, n)
        for y in range(n):
            R[G.mul(y, x), y] = 1
        basis.append(R)
    gens = [basis[g] for g in G.generators]
    return EndoAlgebra(M, basis, gens=gens)


def right_mult_matrix(G: GroupTable, F: FieldCtx, vec: np.ndarray) -> np.ndarray:
    """Right multiplication by a group-algebra element on the regular basis."""
    n = G.order
    R = zeros(n, n)
    for x in range(n):
        c = int(vec[x])
        if c:
            for y in range(n):
                R[G.mul(y, x), y] ^= c
    return R


def left_mult_matrix(G: GroupTable, F: FieldCtx, vec: np.ndarray) -> np.ndarray:
    """Left multiplication by a group-algebra element on the regular basis."""
    n = G.order
    L = zeros(n, n)
    for x in range(n):
        c = int(vec[x])
        if c:
            for y in range(n):
                L[G.mul(x, y), y] ^= c
    return L


# -- MeatAxe-style chop ---------------------------------------------------


def spin(F: FieldCtx, vecs: np.ndarray, gens: list[np.ndarray]) -> Subspace:
    """Smallest gens-stable subspace containing the given row vectors."""
    n = gens[0].shape[0] if gens else vecs.shape[1]
    rows: list[np.ndarray] = []
    pivs: list[int] = []

    def insert(w: np.ndarray) -> bool:
        w = w.copy()
        for row, p in zip(rows, pivs):
            if w[p]:
                w ^= F.vscale(int(w[p]), row)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        p = int(nz[0])
        rows.append(F.vscale(F.inv(int(w[p])), w))
        pivs.append(p)
        return True

    queue = [np.asarray(v, dtype=np.int64) for v in np.atleast_2d(vecs)]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        if insert(v):
            src = rows[-1]
            for A in gens:
                queue.append(mat_vec(F, A, src))
    return Subspace(F, n, np.array(rows) if rows else None)


def chop(
    F: FieldCtx, gens: list[np.ndarray], dim: int, seed: int = 0
) -> list[Subspace]:
    """Composition series 0 < V_1 < ... < V_t = k^dim under the algebra
    generated by gens; returned as the increasing chain (without 0)."""
    chain: list[np.ndarray] = []  # bases of factors, lifted to the ambient

    def rec(gens_c: list[np.ndarray], d: int, lift: np.ndarray, seed: int):
        # lift: d x dim matrix embedding current space into the ambient
        if d == 0:
            return
        W = _proper_submodule(F, gens_c, d, seed)
        if W is None:
            chain.append(lift)
            return
        sub = Subspace(F, d, W)
        subM, incl, proj = _compress_action(F, gens_c, sub)
        quoM, qproj, qincl = _quotient_action(F, gens_c, sub)
        rec(subM, sub.dim, mat_mul(F, sub.basis, lift), seed + 1)
        rec(quoM, d - sub.dim, mat_mul(F, qincl, lift), seed + 1)

    rec(gens, dim, eye(dim), seed)
    out = []
    acc = None
    for piece in chain:
        acc = piece if acc is None else np.concatenate([acc, piece], axis=0)
        out.append(Subspace(F, dim, acc))
    assert out[-1].dim == dim
    return out


def _compress_action(F, gens, sub: Subspace):
    pivots = [int(np.nonzero(r)[0][0]) for r in sub.basis]
    incl = sub.basis.T
    proj = zeros(sub.dim, sub.ambient)
    for i, p in enumerate(pivots):
        proj[i, p] = 1
    mats = [mat_mul(F, proj, mat_mul(F, A, incl)) for A in gens]
    return mats, incl, proj


def _quotient_action(F, gens, sub: Subspace):
    comp = linalg.pivot_complement(sub)
    red = _reducer(F, sub)
    proj = zeros(comp.shape[0], sub.ambient)
    for i, row in enumerate(comp):
        proj[i, int(np.nonzero(row)[0][0])] = 1
    proj = mat_mul(F, proj, red)
    incl = comp.T
    mats = [mat_mul(F, proj, mat_mul(F, A, incl)) for A in gens]
    return mats, proj, comp


def _random_algebra_element(F, gens, rng, pool: list[np.ndarray]) -> np.ndarray:
    n = gens[0].shape[0]
    if rng.random() < 0.5 and len(pool) >= 2:
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        x = mat_mul(F, a, b)
    else:
        x = zeros(n, n)
        for g in gens:
            c = rng.randrange(F.q)
            if c:
                x ^= F.vscale(c, g)
        if rng.random() < 0.5:
            x ^= F.vscale(rng.randrange(1, F.q), eye(n))
    pool.append(x)
    if len(pool) > 16:
        pool.pop(0)
    return x


def _proper_submodule(
    F: FieldCtx, gens: list[np.ndarray], d: int, seed: int
) -> np.ndarray | None:
    """A basis of a proper nonzero submodule, or None when irreducible."""
    if d == 1:
        return None
    if not gens:
        e = zeros(1, d)
        e[0, 0] = 1
        return e
    rng = random.Random(seed)
    pool = list(gens)
    gensT = [A.T.copy() for A in gens]
    for attempt in range(500):
        a = _random_algebra_element(F, gens, rng, pool)
        mu = linalg.min_poly(F, a)
        for p, _mult in polys.factor(F, mu, seed=seed + attempt):
            pa = polys.eval_matrix(F, p, a)
            ker = linalg.kernel(F, pa)
            if ker.shape[0] == 0:
                continue
            for v in ker:
                S = spin(F, v.reshape(1, -1), gens)
                if S.dim < d:
                    return S.basis
            # all null vectors generate; apply the dual test when the
            # nullity is minimal (one-dimensional over k[x]/p)
            if ker.shape[0] == polys.deg(p):
                kerT = linalg.kernel(F, pa.T)
                w = kerT[0]
                ST = spin(F, w.reshape(1, -1), gensT)
                if ST.dim == d:
                    return None  # certified irreducible
                # perp of the dual submodule is a proper submodule
                perp = linalg.kernel(F, ST.basis)
                if 0 < perp.shape[0] < d:
                    return perp
    raise AssertionError("chop failed to make progress")


# -- radical and decomposition --------------------------------------------


def radical(E: EndoAlgebra, seed: int = 0) -> list[np.ndarray]:
    """Basis of the Jacobson radical of E (as matrices).

    Uses a composition series of the module under E's action: the radical is
    exactly the set of algebra elements pushing each term of the series into
    the previous one.
    """
    F = E.module.F
    d = E.module.dim
    chain = chop(F, E.gens, d, seed=seed)
    levels = []
    prev: Subspace | None = None
    for S in chain:
        if prev is None:
            new_vecs = S.basis
        else:
            prev_pivs = {int(np.nonzero(r)[0][0]) for r in prev.basis}
            new_vecs = np.array(
                [r for r in S.basis if int(np.nonzero(r)[0][0]) not in prev_pivs]
            )
        levels.append((new_vecs, prev))
        prev = S
    # unknowns: coordinates over E.basis; equations: each composition-series
    # term must be pushed into the previous one
    cols = []
    for b in E.basis:
        eqs = []
        for new_vecs, below in levels:
            img = mat_mul(F, b, new_vecs.T).T  # images of the lifted vectors
            if below is not None:
                img = linalg.reduce_mod(F, below, img)
            eqs.append(img.ravel())
        cols.append(np.concatenate(eqs))
    sys = np.array(cols).T
    ker = linalg.kernel(F, sys)
    return [E.element(c) for c in ker]


def semisimple_quotient(E: EndoAlgebra, J: list[np.ndarray]):
    """Returns (lift basis matrices, coords map to E/J coordinates)."""
    F = E.module.F
    n2 = E.module.dim ** 2
    jflat = np.array([j.ravel() for j in J]) if J else zeros(0, n2)
    JS = Subspace(F, n2, jflat)
    reduced = linalg.reduce_mod(F, JS, np.array([b.ravel() for b in E.basis]))
    # echelon of the reduced lifts with coefficient tracking, so expressing
    # a quotient element later is a single reduction pass
    nb = len(E.basis)
    rows: list[np.ndarray] = []
    pivs: list[int] = []
    coefs: list[np.ndarray] = []
    lifts = []
    for b, r in zip(E.basis, reduced):
        w = r.copy()
        c = zeros(1, nb).ravel()
        c[len(lifts)] = 1
        for row, p, cc in zip(rows, pivs, coefs):
            if w[p]:
                f = int(w[p])
                w ^= F.vscale(f, row)
                c ^= F.vscale(f, cc)
        nz = np.nonzero(w)[0]
        if nz.size:
            p = int(nz[0])
            s = F.inv(int(w[p]))
            rows.append(F.vscale(s, w))
            pivs.append(p)
            coefs.append(F.vscale(s, c))
            lifts.append(b)
    r_dim = len(lifts)

    def quo_coords(f: np.ndarray) -> np.ndarray:
        v = linalg.reduce_mod(F, JS, f.ravel()).ravel()
        out = zeros(1, nb).ravel()
        for row, p, cc in zip(rows, pivs, coefs):
            if v[p]:
                fct = int(v[p])
                v ^= F.vscale(fct, row)
                out ^= F.vscale(fct, cc)
        if v.any():
            raise ValueError("element not in the algebra")
        return out[:r_dim]

    return lifts, quo_coords


@dataclass
class Component:
    subspace: Subspace
    idempotent: np.ndarray
    module: ModuleRep
    incl: np.ndarray
    proj: np.ndarray
    iso_class: int = -1


@dataclass
class DecompositionCert:
    module: ModuleRep
    components: list[Component]
    multiplicities: list[int]  # per iso class

    def verify(self) -> bool:
        F = self.module.F
        total = eye(self.module.dim)
        s = zeros(self.module.dim, self.module.dim)
        for c in self.components:
            e = c.idempotent
            if (mat_mul(F, e, e) != e).any():
                return False
            s ^= e
        if (s != total).any():
            return False
        for i, a in enumerate(self.components):
            for j, b in enumerate(self.components):
                if i != j and mat_mul(F, a.idempotent, b.idempotent).any():
                    return False
        return sum(c.module.dim for c in self.components) == self.module.dim


def idempotent_power_exponent(dim: int) -> int:
    return max(dim, 2).bit_length() + 1


def lift_idempotent(F: FieldCtx, a: np.ndarray, s: int) -> np.ndarray:
    """a idempotent modulo a nil ideal -> a^(2^s) idempotent on the nose."""
    e = a
    for _ in range(s):
        e = mat_mul(F, e, e)
    return e


def _split_once(E: EndoAlgebra, seed: int) -> np.ndarray | None:
    """A nontrivial idempotent of E, or None when E is local."""
    F = E.module.F
    J = radical(E, seed=seed)
    lifts, quo_coords = semisimple_quotient(E, J)
    r = len(lifts)
    if r == 1:
        return None
    # multiplication-by-a matrix on E/J for deterministic seeded elements
    rng = random.Random(seed)
    s = idempotent_power_exponent(E.dim)
    for attempt in range(400):
        if attempt < len(lifts):
            a = lifts[attempt]
        else:
            a = zeros(E.module.dim, E.module.dim)
            for b in lifts:
                c = rng.randrange(F.q)
                if c:
                    a ^= F.vscale(c, b)
        La = np.array(
            [quo_coords(mat_mul(F, a, b)) for b in lifts]
        ).T  # columns: a*lift_j in quotient coords
        mu = linalg.min_poly(F, La)
        fac = polys.factor(F, mu, seed=seed + attempt)
        sqfree = [p for p, _ in fac]
        if len(sqfree) < 2:
            # a primitive element with irreducible minimal polynomial of
            # full degree certifies that E/J is a field, i.e. E is local
            if len(fac) == 1 and fac[0][1] == 1 and polys.deg(mu) == r:
                return None
            continue
        # u = 1 mod p1, 0 mod the rest
        p1 = sqfree[0]
        rest = [1]
        for p in sqfree[1:]:
            rest = polys.mul(F, rest, p)
        inv_rest = _poly_inverse_mod(F, rest, p1)
        u = polys.mod(F, polys.mul(F, rest, inv_rest), _prod(F, sqfree))
        c = polys.eval_matrix(F, u, a)
        e = lift_idempotent(F, c, s)
        if (mat_mul(F, e, e) != e).any():
            continue
        if not e.any() or not (e ^ eye(E.module.dim)).any():
            continue
        return e
    raise AssertionError("failed to split a non-local endomorphism algebra")


def _prod(F, ps):
    out = [1]
    for p in ps:
        out = polys.mul(F, out, p)
    return out


def _poly_inverse_mod(F, a, m):
    """Inverse of a modulo m (coprime)."""
    # extended Euclid
    r0, r1 = list(m), polys.mod(F, a, m)
    s0, s1 = [], [1]
    while r1:
        q, r2 = polys.divmod_(F, r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, polys.add(F, s0, polys.mul(F, q, s1))
    if polys.deg(r0) != 0:
        raise ValueError("not coprime")
    return polys.scale(F, F.inv(r0[0]), polys.mod(F, s0, m))


def _compress_endo(E: EndoAlgebra, e: np.ndarray, comp_mod, incl, proj):
    """e E e compressed to the component's coordinates."""
    F = E.module.F
    seen = linalg.Echelon(F, comp_mod.dim ** 2)
    basis = []
    for b in E.basis:
        c = mat_mul(F, proj, mat_mul(F, e, mat_mul(F, b, mat_mul(F, e, incl))))
        if c.any() and seen.insert(c.ravel()):
            basis.append(c)
    # compression is not multiplicative, so compressed generators of E need
    # not generate the corner algebra; the basis always does
    return EndoAlgebra(comp_mod, basis)


def decompose(
    M: ModuleRep, seed: int = 0, endo: EndoAlgebra | None = None
) -> DecompositionCert:
    F = M.F
    E = endo if endo is not None else end_algebra(M)
    comps: list[Component] = []

    def rec(E: EndoAlgebra, lift_incl, lift_proj, outer_e, seed: int):
        # lift_incl/lift_proj: maps between component coords and ambient M;
        # outer_e: the ambient idempotent projecting onto this component
        e = _split_once(E, seed)
        if e is None:
            comps.append(
                Component(
                    subspace=linalg.col_space(F, mat_mul(F, outer_e, eye(M.dim))),
                    idempotent=outer_e,
                    module=E.module,
                    incl=lift_incl,
                    proj=lift_proj,
                )
            )
            return
        for part in (e, e ^ eye(E.module.dim)):
            S = linalg.col_space(F, part)
            comp_mod, incl, proj = sub_module(E.module, S)
            Ec = _compress_endo(E, part, comp_mod, incl, proj)
            # ambient inclusion/projection/idempotent
            amb_incl = mat_mul(F, lift_incl, incl)
            amb_proj = mat_mul(F, proj, mat_mul(F, part, lift_proj))
            amb_e = mat_mul(
                F, lift_incl, mat_mul(F, part, lift_proj)
            )
            amb_e = mat_mul(F, amb_e, outer_e)
            rec(Ec, amb_incl, amb_proj, amb_e, seed + 1)

    rec(E, eye(M.dim), eye(M.dim), eye(M.dim), seed)
    comps.sort(key=lambda c: (c.module.dim, c.subspace.basis.tobytes()))
    # group by isomorphism class
    mults: list[int] = []
    reps: list[ModuleRep] = []
    for c in comps:
        for i, r in enumerate(reps):
            if module_iso(c.module, r) is not None:
                c.iso_class = i
                mults[i] += 1
                break
        else:
            c.iso_class = len(reps)
            reps.append(c.module)
            mults.append(1)
    return DecompositionCert(M, comps, mults)


def is_indecomposable(M: ModuleRep, endo: EndoAlgebra | None = None) -> bool:
    E = endo if endo is not None else end_algebra(M)
    # indecomposable iff the endomorphism algebra is local, i.e. unsplittable
    # (the residue algebra may be a proper field extension of the base field)
    return _split_once(E, 0) is None


# -- isomorphism ----------------------------------------------------------


def module_iso(M: ModuleRep, N: ModuleRep, seed: int = 0) -> np.ndarray | None:
    if M.dim != N.dim:
        return None
    F = M.F
    homs = hom_space(M, N)
    if not homs:
        return None
    for h in homs:
        if linalg.is_invertible(F, h):
            return h
    h = len(homs)
    if F.q ** h <= 4096:
        for mask in range(1, F.q ** h):
            coeffs = []
            x = mask
            for _ in range(h):
                coeffs.append(x % F.q)
                x //= F.q
            cand = zeros(M.dim, M.dim)
            for c, b in zip(coeffs, homs):
                if c:
                    cand ^= F.vscale(c, b)
            if linalg.is_invertible(F, cand):
                return cand
        return None
    rng = random.Random(seed)
    for _ in range(500):
        cand = zeros(M.dim, M.dim)
        for b in homs:
            c = rng.randrange(F.q)
            if c:
                cand ^= F.vscale(c, b)
        if linalg.is_invertible(F, cand):
            return cand
    return None


def is_selfdual(M: ModuleRep) -> bool:
    return module_iso(M, dual(M)) is not None


# -- irreducibles, PIMs ---------------------------------------------------


def irreducible_modules(G: GroupTable, F: FieldCtx, seed: int = 0) -> list[ModuleRep]:
    """All irreducible modules, from a composition series of the regular one."""
    M = regular_module(G, F)
    gens = [M.action(g) for g in G.generators]
    chain = chop(F, gens, G.order, seed=seed)
    out: list[ModuleRep] = []
    prev: Subspace | None = None
    for S in chain:
        if prev is None:
            comp_mod, _, _ = sub_module(M, S)
        else:
            sub_m, incl, proj = sub_module(M, S)
            # factor = S / prev: compress S then quotient by prev's image
            prev_in_S = Subspace(
                F, S.dim, np.array([mat_vec(F, proj, r) for r in prev.basis])
            )
            comp_mod, _ = quotient_module(sub_m, prev_in_S)
        prev = S
        if all(module_iso(comp_mod, r) is None for r in out):
            out.append(comp_mod)
    out.sort(key=lambda m: m.dim)
    return out


def group_algebra_radical(G: GroupTable, F: FieldCtx, seed: int = 0) -> Subspace:
    """J(kG) as a subspace of kG (coordinates over the group-element basis)."""
    irreps = irreducible_modules(G, F, seed=seed)
    cols = []
    for x in range(G.order):
        vecs = []
        for S in irreps:
            vecs.append(S.action(x).ravel())
        cols.append(np.concatenate(vecs))
    sys = np.array(cols).T
    return Subspace(F, G.order, linalg.kernel(F, sys))


@dataclass
class PimInfo:
    pim: ModuleRep
    head: ModuleRep
    multiplicity: int
    component: Component


def pims(G: GroupTable, F: FieldCtx, seed: int = 0) -> list[PimInfo]:
    M = regular_module(G, F)
    E = regular_end_algebra(G, F, M)
    cert = decompose(M, seed=seed, endo=E)
    J = group_algebra_radical(G, F, seed=seed)
    # left-multiplication matrices for a basis of J
    Jmats = [left_mult_matrix(G, F, v) for v in J.basis]
    out: list[PimInfo] = []
    seen: list[tuple[ModuleRep, int]] = []
    for ci, c in enumerate(cert.components):
        if c.iso_class in [s[1] for s in seen]:
            continue
        # head = P / J.P
        radP_vecs = []
        for L in Jmats:
            img = mat_mul(F, L, c.incl)  # J * (basis of P)
            radP_vecs.append(mat_mul(F, c.proj, img).T)
        if radP_vecs:
            radP = Subspace(F, c.module.dim, np.concatenate(radP_vecs, axis=0))
        else:
            radP = Subspace(F, c.module.dim, None)
        head, _ = quotient_module(c.module, radP)
        out.append(
            PimInfo(
                pim=c.module,
                head=head,
                multiplicity=cert.multiplicities[c.iso_class],
                component=c,
            )
        )
        seen.append((c.module, c.iso_class))
    return out


# -- serialization --------------------------------------------------------


def matrix_to_hex(F: FieldCtx, A: np.ndarray) -> list[str]:
    return [F.elem_to_hex(int(x)) for x in np.asarray(A).ravel()]


def matrix_from_hex(F: FieldCtx, data: list[str], rows: int, cols: int) -> np.ndarray:
    vals = [F.elem_from_hex(s) for s in data]
    if len(vals) != rows * cols:
        raise ValueError("matrix entry count mismatch")
    return np.array(vals, dtype=np.int64).reshape(rows, cols)


def module_to_dict(M: ModuleRep) -> dict:
    return {
        "field_degree": M.F.m,
        "dim": M.dim,
        "matrices": [matrix_to_hex(M.F, A) for A in M.gen_matrices],
    }


def load_module(path: str, G: GroupTable) -> ModuleRep:
    with open(path) as fh:
        data = json.load(fh)
    return module_from_dict(data, G)


def module_from_dict(data: dict, G: GroupTable) -> ModuleRep:
    F = make_field(int(data["field_degree"]))
    d = int(data["dim"])
    mats = [matrix_from_hex(F, m, d, d) for m in data["matrices"]]
    return ModuleRep(G, F, mats)
