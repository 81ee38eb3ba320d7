"""Windowed Ext engine: resolutions, stability, Yoneda structure, verdicts."""

import pytest

from schurq import (
    build_algebra,
    build_simple,
    ext_dims,
    ext_table,
    euler_check,
    koszul_check,
    low_degree_ext,
    minimal_resolution,
    schur_check,
    trivial_module,
    truncated_verma,
    yoneda_product,
    yoneda_square,
)
from schurq.ext import (
    ExtError,
    ExtTable,
    InstabilityError,
    MarginError,
    ext_cocycle_basis,
    _cocycle_components,
)
from schurq.presentation import instantiate_window


@pytest.fixture(scope="module")
def a1_setup(a1, f_classical):
    algebra = build_algebra(a1, f_classical, 6, margin=4)
    triv = trivial_module(a1, f_classical, (0,))
    simple = build_simple(a1, f_classical, (1,))
    res = minimal_resolution(algebra, triv, 4)
    return algebra, triv, simple, res


# -- resolutions and Ext dimensions ---------------------------------------


def test_resolution_dd_and_margin(a1_setup):
    _algebra, _triv, _simple, res = a1_setup
    assert res.dd_verified
    assert res.margin_ok


def test_trivial_module_ext_dims(a1_setup):
    _algebra, triv, _simple, res = a1_setup
    assert ext_dims(res, triv, 4) == (1, 0, 1, 0, 0)


def test_simple_module_ext_dims(a1_setup):
    algebra, _triv, simple, _res = a1_setup
    res = minimal_resolution(algebra, simple, 4)
    assert res.dd_verified
    assert ext_dims(res, simple, 4) == (1, 0, 1, 0, 0)


def test_ext0_schur_lemma(a1_setup):
    """Ext^0 between simples: 1 on the diagonal, 0 across."""
    algebra, triv, simple, res = a1_setup
    res_simple = minimal_resolution(algebra, simple, 2)
    assert ext_dims(res, triv, 0)[0] == 1
    assert ext_dims(res_simple, simple, 0)[0] == 1
    assert ext_dims(res, simple, 0)[0] == 0
    assert ext_dims(res_simple, triv, 0)[0] == 0


def test_terminated_resolution_pads_zeros(a1, f_classical):
    algebra = build_algebra(a1, f_classical, 6, margin=2)
    triv = trivial_module(a1, f_classical, (0,))
    res = minimal_resolution(algebra, triv, 2)
    dims = ext_dims(res, triv, 2)
    assert dims == (1, 0, 1)


# -- presentation-complex cross-check -------------------------------------


def test_low_degree_matches_resolution(a1, f_classical, a1_setup):
    _algebra, triv, simple, res = a1_setup
    Q = instantiate_window(a1, f_classical, 6)
    e0, e1, h2 = low_degree_ext(Q, triv, triv)
    assert (e0, e1) == ext_dims(res, triv, 4)[:2]
    assert h2 >= ext_dims(res, triv, 4)[2]
    # distinct simples live in different blocks: everything vanishes, and the
    # presentation complex agrees with the resolution on that
    assert low_degree_ext(Q, triv, simple)[:2] == (0, 0)
    assert low_degree_ext(Q, simple, triv)[:2] == (0, 0)
    res_simple = minimal_resolution(_algebra, simple, 4)
    assert ext_dims(res, simple, 4) == (0, 0, 0, 0, 0)
    assert ext_dims(res_simple, triv, 4) == (0, 0, 0, 0, 0)


def test_low_degree_interior_verma(a1, f_classical):
    """Interior truncated Verma against the trivial module: (0, 1) both ways."""
    Q = instantiate_window(a1, f_classical, 6)
    triv = trivial_module(a1, f_classical, (0,))
    M = truncated_verma(a1, f_classical, (-1,), 3)
    assert low_degree_ext(Q, M, triv)[:2] == (0, 1)
    assert low_degree_ext(Q, triv, M)[:2] == (0, 1)


def test_low_degree_margin_error(a1, f_classical):
    Q = instantiate_window(a1, f_classical, 2)
    M = build_simple(a1, f_classical, (1,))
    with pytest.raises(MarginError):
        low_degree_ext(Q, M, M)


# -- Yoneda products -------------------------------------------------------


def test_yoneda_unit_law(a1_setup):
    _algebra, triv, _simple, res = a1_setup
    r0, _ = ext_cocycle_basis(res, triv, 0)
    r2, _ = ext_cocycle_basis(res, triv, 2)
    assert len(r0) == 1 and len(r2) == 1
    p0 = _cocycle_components(res, 0, triv, r0[0])
    p2 = _cocycle_components(res, 2, triv, r2[0])
    assert tuple(yoneda_product(res, res, triv, 0, p0, 2, p2)) == tuple(r2[0])
    assert tuple(yoneda_product(res, res, triv, 2, p2, 0, p0)) == tuple(r2[0])


def test_yoneda_square_zero(a1_setup):
    _algebra, triv, _simple, res = a1_setup
    assert yoneda_square(res, triv, 2)


def test_yoneda_square_needs_one_dimensional_class(a1_setup):
    _algebra, triv, _simple, res = a1_setup
    with pytest.raises(ExtError):
        yoneda_square(res, triv, 1)  # Ext^1 vanishes here


# -- tables, stabilization, Euler ------------------------------------------


def test_ext_table_stability(a1, f_classical):
    triv = trivial_module(a1, f_classical, (0,))
    tab = ext_table(a1, f_classical, [triv], 4, windows=(4, 6))
    assert tab.diagonal(0) == (1, 0, 1, 0, 0)
    assert tab.diagonal_stable(0)
    assert tab.windows == (4, 6)


def test_ext_table_requires_two_windows(a1, f_classical):
    triv = trivial_module(a1, f_classical, (0,))
    with pytest.raises(ExtError):
        ext_table(a1, f_classical, [triv], 2, windows=(6,))


def test_ext_table_labels_required_for_factories(a1, f_classical):
    factory = lambda radius: truncated_verma(a1, f_classical, (-1,), radius - 1)
    with pytest.raises(ExtError):
        ext_table(a1, f_classical, [factory], 2, windows=(4, 6))


def test_euler_characteristic(a1, f_classical):
    triv = trivial_module(a1, f_classical, (0,))
    tab = ext_table(a1, f_classical, [triv], 4, windows=(4, 6))
    assert euler_check(tab) == 2


def test_euler_refuses_unstable_or_open_tail():
    unstable = ExtTable(
        labels=("V",),
        dims=({(0, 0): 1}, {(0, 0): 0}, {(0, 0): 1}),
        stable=({(0, 0): True}, {(0, 0): False}, {(0, 0): True}),
        homcap=2,
        windows=(4, 6),
    )
    with pytest.raises(InstabilityError):
        euler_check(unstable)
    open_tail = ExtTable(
        labels=("V",),
        dims=({(0, 0): 1}, {(0, 0): 0}, {(0, 0): 1}),
        stable=({(0, 0): True}, {(0, 0): True}, {(0, 0): True}),
        homcap=2,
        windows=(4, 6),
    )
    with pytest.raises(InstabilityError):
        euler_check(open_tail)


# -- verdict-level checks --------------------------------------------------


def test_schur_check_classical_trivial(a1, f_classical):
    triv = trivial_module(a1, f_classical, (0,))
    rep = schur_check(a1, f_classical, triv, homcap=4, windows=(4, 6))
    assert rep.verdict == "match"
    assert rep.computed_betti == (1, 0, 1, 0, 0)
    assert rep.target_betti == (1, 0, 1, 0, 0)
    assert all(rep.stable)
    assert rep.ring_comparison["compared"]
    assert rep.ring_comparison["square_zero_computed"]
    assert rep.ring_comparison["square_zero_target"]
    assert rep.assumptions  # change-of-scalars note travels with the report


def test_schur_report_serializes(a1, f_classical):
    triv = trivial_module(a1, f_classical, (0,))
    rep = schur_check(a1, f_classical, triv, homcap=2, windows=(4, 6),
                      check_ring=False)
    d = rep.to_dict()
    assert d["verdict"] in ("match", "mismatch", "inconclusive")
    assert d["computed_betti"] == list(rep.computed_betti)
    assert "assumptions" in d


def test_koszul_pair_generated(a1, f_classical):
    triv = lambda radius: trivial_module(a1, f_classical, (0,))
    verma = lambda radius: truncated_verma(a1, f_classical, (-1,), radius - 1)
    rep = koszul_check(
        a1, f_classical, [triv, verma], labels=("L0", "M"), homcap=2,
        windows=(4, 6),
    )
    assert rep["verdict"] == "generated"
    assert rep["ext1"]["L0->M"] == 1
    assert rep["ext1"]["M->L0"] == 1
    assert rep["list_sufficient"]


def test_koszul_single_list_insufficient(a1, f_classical):
    triv = lambda radius: trivial_module(a1, f_classical, (0,))
    rep = koszul_check(a1, f_classical, [triv], labels=("L0",), homcap=2,
                       windows=(4, 6))
    assert rep["verdict"] == "list-insufficient"
    assert not rep["list_sufficient"]
    statuses = {entry["status"] for entry in rep["classes"]}
    assert statuses == {"list-insufficient"}
