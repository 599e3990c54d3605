from __future__ import annotations

import pytest

from mfres import (
    FactorizationError,
    MatrixFactorization,
    cokernel_presentation,
    dual,
    hom_complex,
    homology_dimensions,
    shift,
    tor_lengths,
    validate_mf,
)
from conftest import XY, make_mf, make_module, matrix, poly


class TestValidation:
    def test_accepts_real_factorization(self, node_mf):
        assert node_mf.rank == 1

    def test_rejects_wrong_product_with_entry_coordinates(self):
        bad = MatrixFactorization(potential=poly("x*y"),
                                  A=matrix([["x"]]), B=matrix([["x"]]))
        with pytest.raises(FactorizationError) as info:
            validate_mf(bad)
        message = str(info.value)
        assert "entry (1,1)" in message
        assert "expected x*y" in message
        assert "found x^2" in message

    def test_rejects_zero_potential(self):
        zero = poly("0")
        with pytest.raises(FactorizationError):
            validate_mf(MatrixFactorization(zero, matrix([["x"]]), matrix([["0"]])))

    def test_rejects_nonsquare(self):
        with pytest.raises(FactorizationError):
            validate_mf(MatrixFactorization(poly("x*y"),
                                            matrix([["x", "y"]]),
                                            matrix([["y"], ["x"]])))


class TestInvolutions:
    def test_shift_swaps_and_relabels(self, node_mf):
        s = shift(node_mf)
        assert s.A == node_mf.B and s.B == node_mf.A
        assert s.label == "N1[1]"
        assert shift(s) == node_mf
        assert shift(s).label == "N1"

    def test_dual_transposes(self, cubic_mf):
        d = dual(cubic_mf)
        assert d.A == cubic_mf.A.transpose()
        assert d.label == "C1*"
        assert dual(d) == cubic_mf


class TestHomComplex:
    def test_composites_vanish(self, node_mf, cubic_mf):
        for mf in (node_mf, cubic_mf):
            c = hom_complex(mf, mf)
            assert c.is_complex()
            assert c.rank_even == 2 * mf.rank * mf.rank

    def test_potential_mismatch_rejected(self, node_mf, cubic_mf):
        with pytest.raises(FactorizationError):
            hom_complex(node_mf, cubic_mf)

    def test_endomorphism_dimensions(self, node_mf, cubic_mf, plane_mf):
        assert homology_dimensions(hom_complex(node_mf, node_mf)) == (1, 0)
        assert homology_dimensions(hom_complex(cubic_mf, cubic_mf)) == (2, 0)
        h_even, h_odd = homology_dimensions(hom_complex(plane_mf, plane_mf))
        assert h_even == h_odd  # chi(S, S) = 0 since S[1] = S

    def test_shift_swaps_parity(self, node_mf, cubic_mf):
        for mf in (node_mf, cubic_mf):
            base = homology_dimensions(hom_complex(mf, mf))
            shifted = homology_dimensions(hom_complex(mf, shift(mf)))
            assert shifted == (base[1], base[0])

    def test_relabeling_variables_preserves_dimensions(self):
        # same geometry written in swapped variables
        original = make_mf("x^3 + y^3", [["x + y"]], [["x^2 - x*y + y^2"]])
        swapped = make_mf("y^3 + x^3", [["y + x"]], [["y^2 - y*x + x^2"]])
        assert (homology_dimensions(hom_complex(original, original)) ==
                homology_dimensions(hom_complex(swapped, swapped)))


class TestTor:
    def test_node_lengths(self, node_mf):
        rx = make_module("x*y", [["x"]], label="Rx")
        ry = make_module("x*y", [["y"]], label="Ry")
        assert tor_lengths(node_mf, rx) == (0, 1)
        assert tor_lengths(node_mf, ry) == (1, 0)

    def test_self_tor_symmetric_when_matrices_agree(self, cusp_mf):
        m = cokernel_presentation(cusp_mf)
        even, odd = tor_lengths(cusp_mf, m)
        assert even == odd

    def test_requires_matching_potential(self, node_mf):
        other = make_module("x^3 + y^3", [["x + y"]])
        with pytest.raises(ValueError):
            tor_lengths(node_mf, other)

    def test_requires_hypersurface_module(self, node_mf):
        flat = make_module("x*y", [["x"]])
        q_version = flat.__class__(ambient_rank=1, relations=flat.relations,
                                   over="Q", potential=None)
        with pytest.raises(ValueError):
            tor_lengths(node_mf, q_version)

    def test_cokernel_presentation_columns(self, cubic_mf):
        pres = cokernel_presentation(cubic_mf)
        assert pres.ambient_rank == 1
        assert pres.over == "R"
        assert pres.relations[0].components[0] == poly("x + y")
