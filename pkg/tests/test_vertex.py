"""Relative projectivity, Green vertices, symmetric vertices."""

import numpy as np
import pytest

from symvert import catalog, forms, linalg, rep, vertex
from symvert.field import make_field
from symvert.linalg import mat_mul

F2 = make_field(1)
S3 = catalog.suite_group("S3")
S4 = catalog.suite_group("S4")
D12 = catalog.suite_group("D12")


def two_dim_simple(G):
    return [m for m in rep.irreducible_modules(G, F2) if m.dim == 2][0]


def test_transversal_in():
    P = S4.sylow2()
    H = [K for K in S4.two_subgroups_up_to_conjugacy()
         if K.order == 4 and S4.is_subgroup_of(K, P)][0]
    T = vertex.transversal_in(S4, H, P)
    assert len(T) == 2
    with pytest.raises(ValueError):
        vertex.transversal_in(S4, P, H)


def test_rel_trace_transitivity():
    M = rep.regular_module(S4, F2)
    P = S4.sylow2()
    H = [K for K in S4.two_subgroups_up_to_conjugacy()
         if K.order == 2 and S4.is_subgroup_of(K, P)][0]
    f = rep.hom_space(M, M, H)[3]
    via = vertex.rel_trace(M, vertex.rel_trace(M, f, H, P), P)
    direct = vertex.rel_trace(M, f, H)
    assert (via == direct).all()


def test_rel_trace_frobenius_identity():
    # tr_H^G(alpha . res(phi)) = tr_H^G(alpha) . phi for phi in E_G(M)
    M = rep.regular_module(S3, F2)
    H = S3.sylow2()
    alphas = rep.hom_space(M, M, H)
    phis = rep.hom_space(M, M)
    for alpha in alphas[:4]:
        for phi in phis[:4]:
            lhs = vertex.rel_trace(M, mat_mul(F2, alpha, phi), H)
            rhs = mat_mul(F2, vertex.rel_trace(M, alpha, H), phi)
            assert (lhs == rhs).all()


def test_is_projective_trivial_module():
    k = rep.trivial_module(S3, F2)
    assert not vertex.is_projective(k, S3.trivial_subgroup()).projective
    cert = vertex.is_projective(k, S3.sylow2())
    assert cert.projective
    assert (vertex.rel_trace(k, cert.alpha, S3.sylow2())
            == np.eye(1, dtype=np.int64)).all()


def test_is_projective_certificate():
    M = rep.regular_module(S3, F2)
    cert = vertex.is_projective(M, S3.trivial_subgroup())
    assert cert.projective  # free modules are projective
    tr = vertex.rel_trace(M, cert.alpha, S3.trivial_subgroup())
    assert (tr == np.eye(6, dtype=np.int64)).all()


def test_is_summand():
    M = two_dim_simple(S3)
    reg = rep.regular_module(S3, F2)
    assert vertex.is_summand(M, reg)
    assert not vertex.is_summand(rep.trivial_module(S3, F2), M)


def test_green_vertex_projective_simple():
    M = two_dim_simple(S3)
    gv = vertex.green_vertex(M)
    assert gv.vertex.order == 1
    # the source of a projective module is the trivial module of the
    # trivial subgroup
    assert len(gv.sources) == 1 and gv.sources[0].module.dim == 1


def test_green_vertex_trivial_module_is_sylow():
    k = rep.trivial_module(S4, F2)
    gv = vertex.green_vertex(k)
    assert gv.vertex.order == 8
    assert gv.sources[0].module.dim == 1


def test_green_vertex_intermediate():
    # the 2-dim simple of D12 = C2 x S3 has the central involution as vertex:
    # non-projective (|G|_2 = 4) but projective relative to the centre
    M = two_dim_simple(D12)
    gv = vertex.green_vertex(M)
    assert gv.vertex.order == 2
    z = gv.vertex.gens[0]
    assert D12.centralizer(z).order == 12  # central involution
    assert [s.module.dim for s in gv.sources] == [1]
    assert gv.sources[0].self_dual and gv.sources[0].symmetric_type


def test_form_projectivity_regular_b1_and_bt():
    M = rep.regular_module(S3, F2)
    B1 = forms.standard_form(M)
    one = np.eye(6, dtype=np.int64)
    triv = S3.trivial_subgroup()
    c = vertex.form_is_H_projective(B1, one, triv)
    assert c.projective and c.verified
    t = S3.involutions()[0]
    Bt = forms.involution_form(M, t)
    theta_t = forms.endo_from_form(B1, Bt)
    c2 = vertex.form_is_H_projective(B1, theta_t, triv)
    assert not c2.projective
    T = S3.closure([t])
    c3 = vertex.form_is_H_projective(B1, theta_t, T)
    assert c3.projective and c3.verified
    # the certificate really traces to theta
    tr = vertex.rel_trace(M, c3.alpha, T)
    assert (tr == theta_t).all()
    sigma = forms.Adjoint(B1)
    assert (sigma(c3.alpha) == c3.alpha).all()


def test_verify_TleqH():
    M = rep.regular_module(S3, F2)
    B1 = forms.standard_form(M)
    t = S3.involutions()[0]
    theta_t = forms.endo_from_form(B1, forms.involution_form(M, t))
    out = vertex.verify_TleqH(B1, theta_t, S3.closure([t]))
    assert out["ok"] and not out["violations"]


def test_is_sym_projective_basics():
    M = two_dim_simple(S3)
    base = forms.base_form(M)
    assert not vertex.is_sym_projective(M, S3.trivial_subgroup(), base).projective
    c = vertex.is_sym_projective(M, S3.sylow2(), base)
    assert c.projective
    assert linalg.is_invertible(F2, c.theta)
    sigma = forms.Adjoint(base)
    assert (sigma(c.alpha) == c.alpha).all()
    assert (vertex.rel_trace(M, c.alpha, S3.sylow2()) == c.theta).all()


def test_is_sym_projective_base_form_independent():
    # the answer cannot depend on which nondegenerate symmetric form is used
    M = rep.regular_module(S3, F2)
    pieces = forms.orth_decompose(forms.standard_form(M))
    ind = [p for p in pieces if p.kind == "indecomposable"][0]
    P, _, _ = rep.sub_module(M, ind.space)
    inv = forms.invariant_forms(P)
    bases = []
    for g in inv.symmetric:
        if linalg.is_invertible(F2, g):
            bases.append(forms.GForm(P, g))
    assert len(bases) >= 2
    for H in S3.two_subgroups_up_to_conjugacy():
        answers = {vertex.is_sym_projective(P, H, b).projective for b in bases}
        assert len(answers) == 1


def test_sym_projective_implies_projective():
    for M in (two_dim_simple(S3), rep.trivial_module(S3, F2)):
        base = forms.base_form(M)
        for H in S3.two_subgroups_up_to_conjugacy():
            if vertex.is_sym_projective(M, H, base).projective:
                assert vertex.is_projective(M, H).projective


def test_symmetric_vertices_s3_simple():
    M = two_dim_simple(S3)
    sv = vertex.symmetric_vertices(M, forms.base_form(M))
    assert len(sv) == 1 and sv[0].subgroup.order == 2
    assert sv[0].form.nondegenerate and sv[0].form.symmetric


def test_classify_case_II_s3():
    M = two_dim_simple(S3)
    r = vertex.classify_case(M, forms.base_form(M))
    assert r.case == "II"
    assert r.green.vertex.order == 1
    assert all(t.subgroup.order == 2 for t in r.sym_vertices)
    assert r.checks["all_sym_vertices_index_2_over_green"]


def test_classify_case_I_trivial_module():
    k = rep.trivial_module(S3, F2)
    r = vertex.classify_case(k, forms.base_form(k))
    assert r.case == "I"
    assert r.green.vertex.order == 2
    assert r.checks["sym_vertex_equals_green_vertex"]
    assert r.principal_block is True


def test_scott_component_s3():
    V = S3.sylow2()
    Vt, _ = rep.subgroup_table(V)
    Z = rep.trivial_module(Vt, F2)
    cert = vertex.scott_component(V, Z)
    assert cert.multiplicity == 1
    assert all(cert.checks.values())
    # for a Sylow 2-subgroup of odd index the trivial module itself is a
    # summand of the induced module and is the distinguished component
    assert cert.module.dim == 1
    assert rep.module_iso(cert.module, rep.trivial_module(S3, F2)) is not None


def test_report_to_dict_shape():
    M = two_dim_simple(S3)
    r = vertex.classify_case(M, forms.base_form(M))
    d = vertex.report_to_dict(r)
    assert d["case"] == "II"
    assert d["green_vertex"]["order"] == 1
    assert len(d["symmetric_vertices"]) == 1
    assert isinstance(d["symmetric_vertices"][0]["form_hash"], str)
