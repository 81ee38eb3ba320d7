"""Module constructors, exact relation checking, simplicity certification."""

import pytest

from schurq import (
    build_simple,
    check_relations,
    is_simple,
    kostant,
    qint,
    trivial_module,
    truncated_verma,
)
from schurq.modules import GradedModule, ModuleError, perturb_entry
from schurq.presentation import FSpec
from schurq.qfield import QScalar


# -- trivial modules -------------------------------------------------------


def test_trivial_module_valid(a1, a2, f_classical, f_qinteger):
    for c, n0 in ((a1, (0,)), (a2, (0, 0))):
        for f in (f_classical, f_qinteger):
            M = trivial_module(c, f, n0)
            assert M.total_dim() == 1
            assert M.dim(n0) == 1
            assert check_relations(c, f, M).passed


def test_trivial_module_rejected_off_kernel(a1, f_classical):
    f_affine = FSpec.affine([[2]], [1])  # f(0) = 1 != 0
    with pytest.raises(ModuleError):
        trivial_module(a1, f_affine, (0,))
    with pytest.raises(ModuleError):
        trivial_module(a1, f_classical, (1,))


# -- simple highest-weight modules ----------------------------------------


def test_a1_classical_three_dimensional_simple(a1, f_classical):
    M = build_simple(a1, f_classical, (1,))
    assert {n: d for n, d in M.dims} == {(1,): 1, (0,): 1, (-1,): 1}
    one = QScalar.one()
    two = QScalar.from_rational(2)
    assert M.matrix(("y", 0), (1,)) == ((one,),)
    assert M.matrix(("y", 0), (0,)) == ((one,),)
    assert M.matrix(("x", 0), (0,)) == ((two,),)
    assert M.matrix(("x", 0), (-1,)) == ((two,),)
    assert check_relations(a1, f_classical, M).passed
    assert is_simple(a1, f_classical, M)


def test_a1_quantum_three_dimensional_simple(a1, f_qinteger):
    M = build_simple(a1, f_qinteger, (1,))
    assert M.total_dim() == 3
    assert M.matrix(("x", 0), (0,)) == ((qint(2),),)
    assert M.matrix(("x", 0), (-1,)) == ((qint(2),),)
    assert check_relations(a1, f_qinteger, M).passed


def test_simple_at_zero_is_trivial(a1, f_classical, f_qinteger):
    for f in (f_classical, f_qinteger):
        M = build_simple(a1, f, (0,))
        assert M.total_dim() == 1


@pytest.mark.parametrize("k", range(5))
def test_a1_simple_dimension_2k_plus_1(a1, f_classical, f_qinteger, k):
    for f in (f_classical, f_qinteger):
        M = build_simple(a1, f, (k,))
        assert M.total_dim() == 2 * k + 1
        # weight symmetry under n -> -n
        for n, d in M.dims:
            assert M.dim(tuple(-x for x in n)) == d


def test_q_one_specialization_matches_classical(a1, f_classical):
    f1 = FSpec.qinteger("one")
    for k in (1, 2, 3):
        Mq = build_simple(a1, f1, (k,))
        Mc = build_simple(a1, f_classical, (k,))
        assert dict(Mq.dims) == dict(Mc.dims)
        assert dict(Mq.xmat) == dict(Mc.xmat)
        assert dict(Mq.ymat) == dict(Mc.ymat)


def test_a2_adjoint_simple(a2, f_classical):
    M = build_simple(a2, f_classical, (1, 1), depth_cap=6)
    assert M.total_dim() == 8
    assert M.dim((0, 0)) == 2
    assert check_relations(a2, f_classical, M).passed
    assert is_simple(a2, f_classical, M)


def test_non_dominant_weight_rejected(a2, f_classical):
    with pytest.raises(ModuleError):
        build_simple(a2, f_classical, (1, 0))


# -- truncated Verma modules ----------------------------------------------


def test_a1_truncated_verma(a1, f_classical):
    M = truncated_verma(a1, f_classical, (0,), 3)
    assert {n: d for n, d in M.dims} == {(0,): 1, (-1,): 1, (-2,): 1, (-3,): 1}
    assert M.truncated and M.trunc_depth == 3
    assert check_relations(a1, f_classical, M).passed


def test_a2_verma_weight_dims_match_kostant(a2, f_classical, f_qinteger):
    for f in (f_classical, f_qinteger):
        M = truncated_verma(a2, f, (0, 0), 2)
        assert M.dim((-1, -1)) == kostant(a2, (1, 1))  # = 2
        assert M.dim((-2, 0)) == 1
        assert check_relations(a2, f, M).passed


def test_depth_zero_verma(a1, f_classical):
    M = truncated_verma(a1, f_classical, (2,), 0)
    assert M.total_dim() == 1
    assert M.xmat == () and M.ymat == ()


def test_deep_verma_contains_invariant_tail(a1, f_classical):
    M = truncated_verma(a1, f_classical, (1,), 5)
    assert check_relations(a1, f_classical, M).passed
    assert not is_simple(a1, f_classical, M)


def test_verma_depth_rejection(a1, f_classical):
    with pytest.raises(ModuleError):
        truncated_verma(a1, f_classical, (0,), -1)


# -- relation checking -----------------------------------------------------


def test_constructor_outputs_pass(a1, a2, b2, f_classical, f_qinteger):
    cases = [
        (a1, f_classical, build_simple(a1, f_classical, (2,))),
        (a1, f_qinteger, truncated_verma(a1, f_qinteger, (0,), 4)),
        (a2, f_qinteger, truncated_verma(a2, f_qinteger, (0, 0), 3)),
        (b2, f_classical, truncated_verma(b2, f_classical, (0, 0), 2)),
    ]
    for c, f, M in cases:
        assert check_relations(c, f, M).passed


def test_perturbed_module_fails_with_witness(a1, f_classical):
    M = build_simple(a1, f_classical, (1,))
    bad = perturb_entry(M, "x", 0, (0,), 0, 0, QScalar.one())  # x v0 = 3 v1
    report = check_relations(a1, f_classical, bad)
    assert not report.passed
    names = {name for name, _n, _res in report.witnesses}
    assert any(name.startswith("comm") for name in names)
    # the residual is the off-by-one scalar
    witness = next(w for w in report.witnesses if w[0].startswith("comm"))
    assert any(any(entry for entry in row) for row in witness[2])


def test_empty_module_passes_vacuously(a1, f_classical):
    M = GradedModule.make(1, {}, {}, {})
    assert check_relations(a1, f_classical, M).passed
    assert not is_simple(a1, f_classical, M)


def test_direct_sum_not_simple(a1, f_classical):
    M = GradedModule.make(1, {(0,): 2}, {}, {})
    assert check_relations(a1, f_classical, M).passed
    assert not is_simple(a1, f_classical, M)


def test_weight_length_validation(a2, f_classical):
    with pytest.raises(ModuleError):
        trivial_module(a2, f_classical, (0,))
    with pytest.raises(ModuleError):
        build_simple(a2, f_classical, (1, 1, 0))
