"""Relative projectivity: Green vertices, sources, and symmetric vertices.

The classic machinery (relative trace maps, the projectivity criterion via
"identity is a relative trace", Green vertices and sources) is extended to
forms: a nondegenerate symmetric invariant form is H-projective when its
defining endomorphism is the relative trace of a self-adjoint one, and a
module is symmetrically H-projective when that trace subspace contains a
unit.  Symmetric vertices — minimal subgroups for the latter — always
contain a Green vertex with index at most two, which prunes their search,
and the way they sit over the Green vertex splits into three cases driven
by the self-duality and symmetric type of the sources.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import forms, linalg, rep
from .forms import Adjoint, GForm
from .group import GroupTable, Subgroup
from .linalg import Subspace, eye, mat_mul, zeros
from .rep import ModuleRep


def transversal_in(G: GroupTable, H: Subgroup, K: Subgroup) -> list[int]:
    """Left transversal of H in K (both subgroups of G, H <= K)."""
    if not G.is_subgroup_of(H, K):
        raise ValueError("H is not contained in K")
    seen: set[int] = set()
    reps = []
    for t in K.elements:
        if t not in seen:
            reps.append(t)
            for h in H.elements:
                seen.add(G.mul(t, h))
    return reps


def rel_trace(
    M: ModuleRep, f: np.ndarray, H: Subgroup, K: Subgroup | None = None
) -> np.ndarray:
    """tr_H^K(f) = sum of rho(t).f.rho(t)^-1 over a transversal of H in K."""
    return rel_trace_batch(M, [f], H, K)[0]


def rel_trace_batch(
    M: ModuleRep, fs: list[np.ndarray], H: Subgroup, K: Subgroup | None = None
) -> list[np.ndarray]:
    """Relative traces of several endomorphisms at once (shared transversal)."""
    G = M.group
    F = M.F
    if K is None:
        K = Subgroup(G, tuple(range(G.order)), tuple(G.generators))
    trans = transversal_in(G, H, K)
    d = M.dim
    h = len(fs)
    C = np.concatenate(fs, axis=1)  # d x (h d)
    acc = zeros(d, h * d)
    for t in trans:
        X = mat_mul(F, M.action(t), C)
        # right-multiply each d-column block by rho(t)^-1
        X = X.reshape(d, h, d).transpose(1, 0, 2).reshape(h * d, d)
        X = mat_mul(F, X, M.action(G.inverse(t)))
        acc ^= X.reshape(h, d, d).transpose(1, 0, 2).reshape(d, h * d)
    return [acc[:, i * d : (i + 1) * d].copy() for i in range(h)]


# -- relative projectivity ------------------------------------------------


@dataclass
class ProjectivityCert:
    projective: bool
    alpha: np.ndarray | None  # H-endomorphism with tr_H^G(alpha) = identity


def is_projective(M: ModuleRep, H: Subgroup) -> ProjectivityCert:
    """Whether M is H-projective: identity in tr_H^G(E_H(M)).

    The trace image is a two-sided ideal of E_G(M), so it contains a unit
    exactly when it contains the identity — a linear system.
    """
    F = M.F
    basis = rep.hom_space(M, M, H)
    if not basis:
        return ProjectivityCert(False, None)
    traces = rel_trace_batch(M, basis, H)
    A = np.array([t.ravel() for t in traces]).T
    x, _ = linalg.solve(F, A, eye(M.dim).ravel())
    if x is None:
        return ProjectivityCert(False, None)
    alpha = zeros(M.dim, M.dim)
    for c, b in zip(x, basis):
        if c:
            alpha ^= F.vscale(int(c), b)
    return ProjectivityCert(True, alpha)


def is_summand(M: ModuleRep, N: ModuleRep) -> bool:
    """Whether M is a direct summand of N.

    The span of all compositions M -> N -> M is the trace ideal of N in
    E_G(M); M is a summand exactly when it contains the identity.
    """
    F = M.F
    phis = rep.hom_space(M, N)
    psis = rep.hom_space(N, M)
    if not phis or not psis:
        return False
    seen = linalg.Echelon(F, M.dim**2)
    cols = []
    target = eye(M.dim).ravel()
    for p in psis:
        for q in phis:
            v = mat_mul(F, p, q).ravel()
            if v.any() and seen.insert(v):
                cols.append(v)
                if seen.contains(target):
                    return True
    return False


# -- Green vertices and sources -------------------------------------------


@dataclass
class SourceInfo:
    module: ModuleRep
    self_dual: bool
    symmetric_type: bool


@dataclass
class GreenVertexInfo:
    vertex: Subgroup
    cert: ProjectivityCert
    sources: list[SourceInfo]


def green_vertex(
    M: ModuleRep, with_sources: bool = True, seed: int = 0
) -> GreenVertexInfo:
    """The vertex of an indecomposable module: a minimal 2-subgroup H with
    M relatively H-projective, found ascending the 2-subgroup classes.
    Sources are the components Z of Res_V M with M a summand of Ind_V^G Z."""
    G = M.group
    classes = sorted(G.two_subgroups_up_to_conjugacy(), key=lambda s: s.order)
    V = None
    cert = None
    for H in classes:
        c = is_projective(M, H)
        if c.projective:
            V, cert = H, c
            break
    if V is None:
        raise AssertionError("module not projective relative to a Sylow 2-subgroup")
    sources: list[SourceInfo] = []
    if with_sources:
        res = rep.restrict(M, V)
        dec = rep.decompose(res, seed=seed)
        for i, mult in enumerate(dec.multiplicities):
            Z = next(c.module for c in dec.components if c.iso_class == i)
            ind, _ = rep.induce(Z, V)
            if is_summand(M, ind):
                sources.append(
                    SourceInfo(
                        Z,
                        rep.module_iso(Z, rep.dual(Z)) is not None,
                        forms.base_form(Z) is not None,
                    )
                )
    return GreenVertexInfo(V, cert, sources)


# -- projectivity of forms ------------------------------------------------


def sigma_fixed_basis(
    M: ModuleRep, sigma: Adjoint, H: Subgroup | None
) -> list[np.ndarray]:
    """Basis of the self-adjoint part of E_H(M)."""
    F = M.F
    basis = rep.hom_space(M, M, H)
    if not basis:
        return []
    cols = [(b ^ sigma(b)).ravel() for b in basis]
    ker = linalg.kernel(F, np.array(cols).T)
    out = []
    for c in ker:
        u = zeros(M.dim, M.dim)
        for ci, b in zip(c, basis):
            if ci:
                u ^= F.vscale(int(ci), b)
        out.append(u)
    return out


@dataclass
class FormProjectivityCert:
    projective: bool
    alpha: np.ndarray | None = None  # self-adjoint with tr_H^G(alpha) = theta
    isometry: np.ndarray | None = None  # phi: M -> Ind_H^G(alpha.M)
    target_module: ModuleRep | None = None
    target_form: GForm | None = None
    verified: bool = False


def form_is_H_projective(
    B: GForm, theta: np.ndarray, H: Subgroup
) -> FormProjectivityCert:
    """Whether B_theta is H-projective: theta = tr_H^G(alpha) for some
    self-adjoint alpha in E_H(M).  On success the explicit isometric
    embedding of (M, B_theta) into Ind_H^G(alpha.M, B-hat) is built and
    verified, including nondegeneracy of B-hat on alpha.M."""
    F = B.F
    M = B.module
    sigma = Adjoint(B)
    Btheta = forms.form_from_endo(B, theta)
    if not Btheta.symmetric or not Btheta.nondegenerate:
        raise ValueError("the form to test must be symmetric and nondegenerate")
    fixed = sigma_fixed_basis(M, sigma, H)
    if not fixed:
        return FormProjectivityCert(False)
    traces = rel_trace_batch(M, fixed, H)
    A = np.array([t.ravel() for t in traces]).T
    x, _ = linalg.solve(F, A, theta.ravel())
    if x is None:
        return FormProjectivityCert(False)
    alpha = zeros(M.dim, M.dim)
    for c, u in zip(x, fixed):
        if c:
            alpha ^= F.vscale(int(c), u)
    cert = FormProjectivityCert(True, alpha)
    _build_form_isometry(B, theta, alpha, H, cert)
    return cert


def _build_form_isometry(B, theta, alpha, H, cert):
    """phi(m) = sum over the transversal of t tensor alpha.t^-1.m, an
    isometry (M, B_theta) -> Ind_H^G(alpha.M, B-hat)."""
    F = B.F
    M = B.module
    G = M.group
    res = rep.restrict(M, H)
    S = linalg.col_space(F, alpha)
    Lmod, incl, proj = rep.sub_module(res, S)
    # B-hat(u, alpha.m) = B(u, m) on alpha.M, in the basis given by incl
    d = Lmod.dim
    bhat = zeros(d, d)
    for j in range(d):
        m, _ = linalg.solve(F, alpha, incl[:, j])
        bhat[:, j] = linalg.mat_vec(F, mat_mul(F, incl.T, B.gram), m)
    ind, trans = rep.induce(Lmod, H)
    gram_ind = linalg.kron(F, eye(len(trans)), bhat)
    ind_form = GForm(ind, gram_ind, check=False)
    blocks = [
        mat_mul(F, proj, mat_mul(F, alpha, M.action(G.inverse(t))))
        for t in trans
    ]
    phi = np.concatenate(blocks, axis=0)
    ok = linalg.is_invertible(F, bhat)  # B-hat nondegenerate on alpha.M
    for i, g in enumerate(G.generators):
        if (mat_mul(F, phi, M.gen_matrices[i]) != mat_mul(F, ind.action(g), phi)).any():
            ok = False
    pulled = mat_mul(F, phi.T, mat_mul(F, gram_ind, phi))
    if (pulled != mat_mul(F, theta.T, B.gram)).any():
        ok = False
    cert.isometry = phi
    cert.target_module = ind
    cert.target_form = ind_form
    cert.verified = ok


# -- symmetric projectivity and symmetric vertices ------------------------


@dataclass
class SymProjectivityCert:
    projective: bool
    alpha: np.ndarray | None = None  # self-adjoint with tr_H^G(alpha) a unit
    theta: np.ndarray | None = None  # the unit trace
    base: GForm | None = None


def is_sym_projective(
    M: ModuleRep, H: Subgroup, base: GForm | None = None
) -> SymProjectivityCert:
    """Whether M is symmetrically H-projective: tr_H^G of the self-adjoint
    part of E_H(M) contains a unit of E_G(M).

    For indecomposable M the endomorphism algebra is local, so a subspace
    avoids the radical exactly when some basis vector is a unit; a
    non-nilpotent basis vector is then automatically invertible.  A
    combination search backs this up when locality fails.
    """
    if base is None:
        base = forms.base_form(M)
        if base is None:
            raise ValueError("module has no nondegenerate symmetric form")
    F = M.F
    sigma = Adjoint(base)
    fixed = sigma_fixed_basis(M, sigma, H)
    if not fixed:
        return SymProjectivityCert(False, base=base)
    traces = rel_trace_batch(M, fixed, H)
    all_nilpotent = True
    for u, t in zip(fixed, traces):
        if linalg.is_invertible(F, t):
            return SymProjectivityCert(True, u, t, base)
        if not linalg.is_nilpotent(F, t):
            all_nilpotent = False
    if all_nilpotent:
        # every basis trace lies in the nilpotent radical, hence so does the
        # whole traced subspace
        return SymProjectivityCert(False, base=base)
    # E_G(M) not local (or base pathology): search combinations
    h = len(fixed)
    if F.q**h <= 65536:
        for mask in range(1, F.q**h):
            coeffs, x = [], mask
            for _ in range(h):
                coeffs.append(x % F.q)
                x //= F.q
            t = zeros(M.dim, M.dim)
            a = zeros(M.dim, M.dim)
            for c, (u, tu) in zip(coeffs, zip(fixed, traces)):
                if c:
                    t ^= F.vscale(c, tu)
                    a ^= F.vscale(c, u)
            if linalg.is_invertible(F, t):
                return SymProjectivityCert(True, a, t, base)
        return SymProjectivityCert(False, base=base)
    raise AssertionError("unit search space too large for a non-local algebra")


@dataclass
class SymVertexClass:
    subgroup: Subgroup
    cert: SymProjectivityCert

    @property
    def form(self) -> GForm:
        """The certified (T, sigma)-projective nondegenerate symmetric form."""
        return forms.form_from_endo(self.cert.base, self.cert.theta)


def symmetric_vertices(
    M: ModuleRep, base: GForm | None = None, green: GreenVertexInfo | None = None
) -> list[SymVertexClass]:
    """All minimal classes of subgroups T with M symmetrically T-projective.

    Every such class contains a conjugate of the Green vertex V with index
    at most 2, so only V-conjugates and their index-2 overgroups inside a
    fixed Sylow 2-subgroup are searched.
    """
    G = M.group
    if green is None:
        green = green_vertex(M, with_sources=False)
    V = green.vertex
    cands = [
        T
        for T in G.two_subgroups_up_to_conjugacy()
        if (T.order == V.order and G.subgroup_conjugate(T, V) is not None)
        or (T.order == 2 * V.order and G.conjugate_into(V, T) is not None)
    ]
    hits = []
    for T in cands:
        c = is_sym_projective(M, T, base)
        if c.projective:
            hits.append(SymVertexClass(T, c))
    out = []
    for t in hits:
        dominated = any(
            s.subgroup.order < t.subgroup.order
            and G.conjugate_into(s.subgroup, t.subgroup) is not None
            for s in hits
        )
        if not dominated:
            out.append(t)
    return out


# -- the case classification ----------------------------------------------


@dataclass
class VertexReport:
    module: ModuleRep
    green: GreenVertexInfo
    sym_vertices: list[SymVertexClass]
    case: str  # "I", "II" or "III"
    principal_block: bool | None
    checks: dict[str, bool] = field(default_factory=dict)


def classify_case(
    M: ModuleRep, base: GForm | None = None, seed: int = 0,
    check_principal: bool = True,
) -> VertexReport:
    """How the symmetric vertices of M sit over its Green vertex V:
    case III when the sources are not self-dual; case I when a source Z has
    symmetric type and M appears as a nondegenerate component of the induced
    form on Ind_V^G Z (then V itself is a symmetric vertex and M lies in
    the principal block); case II otherwise."""
    G = M.group
    if base is None:
        base = forms.base_form(M)
        if base is None:
            raise ValueError("module has no nondegenerate symmetric form")
    green = green_vertex(M, seed=seed)
    sym = symmetric_vertices(M, base, green)
    V = green.vertex
    src = green.sources[0]
    checks: dict[str, bool] = {}
    if not src.self_dual:
        case = "III"
    else:
        case = "II"
        if src.symmetric_type:
            B0 = forms.base_form(src.module)
            _, indB, _ = forms.induce_form(B0, V)
            for piece in forms.orth_decompose(indB, seed=seed):
                if piece.kind != "indecomposable":
                    continue
                if rep.module_iso(piece.modules[0], M) is not None:
                    case = "I"
                    break
    if case == "I":
        checks["sym_vertex_equals_green_vertex"] = any(
            G.subgroup_conjugate(t.subgroup, V) is not None for t in sym
        )
    else:
        checks["all_sym_vertices_index_2_over_green"] = all(
            t.subgroup.order == 2 * V.order for t in sym
        )
    principal = None
    if check_principal and case == "I":
        from . import blocks

        principal = blocks.block_of_module(M).principal
        checks["principal_block"] = principal
    return VertexReport(M, green, sym, case, principal, checks)


# -- the distinguished multiplicity-one component -------------------------


@dataclass
class ScottComponentCert:
    module: ModuleRep
    induced: rep.DecompositionCert
    multiplicity: int
    checks: dict[str, bool]


def scott_component(
    V: Subgroup, Z: ModuleRep, seed: int = 0
) -> ScottComponentCert:
    """The unique vertex-V component M of Ind_V^G Z with odd multiplicity
    (for Z indecomposable with vertex V and symmetric type), certified:
    (a) the multiplicity is 1; (b) all other vertex-V components occur with
    even multiplicity; (c) Z is a component of an orthogonal decomposition
    of Res_V M under a nondegenerate symmetric form on M; (d) every
    nondegenerate V-projective form on the induced module restricts
    nondegenerately to the M-component."""
    B0 = forms.base_form(Z)
    if B0 is None:
        raise ValueError("Z has no nondegenerate symmetric form")
    G = V.parent
    F = Z.F
    ind, indB, _ = forms.induce_form(B0, V)
    dec = rep.decompose(ind, seed=seed)
    vertexV: list[int] = []
    for i in range(len(dec.multiplicities)):
        comp = next(c for c in dec.components if c.iso_class == i)
        gv = green_vertex(comp.module, with_sources=False)
        if G.subgroup_conjugate(gv.vertex, V) is not None:
            vertexV.append(i)
    odd = [i for i in vertexV if dec.multiplicities[i] % 2 == 1]
    if len(odd) != 1:
        raise AssertionError("distinguished component is not unique")
    cls = odd[0]
    comp = next(c for c in dec.components if c.iso_class == cls)
    M = comp.module
    checks = {
        "multiplicity_one": dec.multiplicities[cls] == 1,
        "others_even": all(
            dec.multiplicities[i] % 2 == 0 for i in vertexV if i != cls
        ),
    }
    # (c): Z is a component of an orthogonal decomposition of Res_V M
    BM = forms.base_form(M)
    resM = rep.restrict(M, V)
    resB = GForm(resM, BM.gram, check=False)
    found = False
    for piece in forms.orth_decompose(resB, seed=seed):
        if (
            piece.kind == "indecomposable"
            and rep.module_iso(piece.modules[0], Z) is not None
        ):
            found = True
            break
    checks["source_is_form_component"] = found
    # (d): nondegenerate V-projective forms are nondegenerate on the
    # M-component of the induced module
    sigma = Adjoint(indB)
    fixed = sigma_fixed_basis(ind, sigma, V)
    traces = rel_trace_batch(ind, fixed, V)
    comp_space = comp.subspace
    ok = True
    for t in traces:
        Bt = forms.form_from_endo(indB, t)
        if Bt.nondegenerate and not forms.is_nondegenerate_on(Bt, comp_space):
            ok = False
    checks["V_projective_forms_nondegenerate_on_component"] = ok
    return ScottComponentCert(M, dec, dec.multiplicities[cls], checks)


# -- Theorem-style cross-check: T-projective forms detect T up to conjugacy


def verify_TleqH(B: GForm, theta: np.ndarray, T: Subgroup) -> dict:
    """For every 2-subgroup class H: the form B_theta is H-projective
    exactly when a conjugate of T lies in H.  Returns the per-class results
    and any violations (none expected)."""
    G = B.module.group
    results = []
    violations = []
    for H in G.two_subgroups_up_to_conjugacy():
        got = form_is_H_projective(B, theta, H).projective
        expect = G.conjugate_into(T, H) is not None
        results.append((H, got, expect))
        if got != expect:
            violations.append(H)
    return {"results": results, "violations": violations, "ok": not violations}


# -- serialization --------------------------------------------------------


def _hash_matrix(A: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(A).tobytes()).hexdigest()[:16]


def report_to_dict(r: VertexReport) -> dict:
    return {
        "green_vertex": {
            "order": r.green.vertex.order,
            "generators": list(r.green.vertex.gens),
        },
        "sources": [
            {
                "dim": s.module.dim,
                "self_dual": s.self_dual,
                "symmetric_type": s.symmetric_type,
            }
            for s in r.green.sources
        ],
        "symmetric_vertices": [
            {
                "order": t.subgroup.order,
                "generators": list(t.subgroup.gens),
                "form_hash": _hash_matrix(t.form.gram),
            }
            for t in r.sym_vertices
        ],
        "case": r.case,
        "principal_block": r.principal_block,
        "checks": r.checks,
    }
