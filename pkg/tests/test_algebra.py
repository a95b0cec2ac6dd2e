import pytest

from conftest import load_fixture
from plausible.algebra import (
    AlgebraFormatError,
    FinitePlausibilityAlgebra,
    InvalidAlgebraError,
    agreement_report,
    alg_eval,
    alg_validates,
    check_algebra,
    check_derived_laws,
    iter_sharp_maps,
    iter_valid_algebras,
    plausible_elements,
)
from plausible.syntax import DialectError, parse


def algebra(base, sharp):
    return FinitePlausibilityAlgebra(base, tuple(sharp))


IDENTITY_K1 = algebra(1, [0, 1])
ZERO_K1 = algebra(1, [0, 0])
# unit maps to unit, everything else collapses to zero
UNIT_ONLY_K2 = algebra(2, [0, 0, 0, 3])
IDENTITY_K2 = algebra(2, [0, 1, 2, 3])


class TestCheckAlgebra:
    def test_identity_valid(self):
        assert check_algebra(IDENTITY_K1).valid

    def test_constant_zero_fails_a4(self):
        report = check_algebra(ZERO_K1)
        assert not report.a4_holds
        assert report.a4_witness == 0
        assert report.a1_holds and report.a2_holds and report.a3_holds

    def test_unit_only_k2_valid(self):
        assert check_algebra(UNIT_ONLY_K2).valid

    def test_a3_witness(self):
        report = check_algebra(algebra(1, [1, 1]))
        assert not report.a3_holds and report.a3_witness == 0

    def test_witnesses_revalidate(self):
        for a in iter_sharp_maps(2):
            report = check_algebra(a)
            s = a.sharp
            if report.a1_witness:
                x, y = report.a1_witness
                assert s[x] & s[y] & ~s[x & y]
            if report.a2_witness:
                x, y = report.a2_witness
                assert s[x] & ~s[x | y]
            if report.a3_witness is not None:
                x = report.a3_witness
                assert s[x] & ~x
            if report.a4_witness is not None:
                assert s[a.unit] != a.unit


class TestPlausibleElements:
    def test_identity_all_nonzero(self):
        assert plausible_elements(IDENTITY_K2) == {1, 2, 3}

    def test_unit_only(self):
        assert plausible_elements(UNIT_ONLY_K2) == {3}

    def test_zero_never_plausible(self):
        for a in iter_valid_algebras(2):
            assert 0 not in plausible_elements(a)
            assert a.sharp[0] == 0  # forced by a3

    def test_invalid_algebra_rejected(self):
        with pytest.raises(InvalidAlgebraError):
            plausible_elements(ZERO_K1)


class TestDerivedLaws:
    def test_all_valid_algebras_k_le_2(self):
        for k in (1, 2):
            for a in iter_valid_algebras(k):
                report = check_derived_laws(a)
                assert not report.contradiction

    def test_monotonicity_for_identity(self):
        report = check_derived_laws(IDENTITY_K2)
        assert report.law_ii_holds

    def test_unit_only_sixteen_pairs(self):
        assert check_derived_laws(UNIT_ONLY_K2).law_i_holds

    def test_invalid_algebra_rejected(self):
        with pytest.raises(InvalidAlgebraError):
            check_derived_laws(ZERO_K1)


class TestEvaluation:
    def test_ax3_always_unit(self):
        f = parse("nabla p0 -> p0")
        for a in iter_valid_algebras(2):
            for x in range(a.carrier_size):
                assert alg_eval(a, {0: x}, f) == a.unit

    def test_ax2_unit_by_a4(self):
        f = parse("nabla(p0 | ~p0)")
        for a in iter_valid_algebras(2):
            for x in range(a.carrier_size):
                assert alg_eval(a, {0: x}, f) == a.unit

    def test_not_nabla_bottom(self):
        f = parse("~nabla false")
        assert alg_eval(IDENTITY_K2, {0: 2}, f) == IDENTITY_K2.unit

    def test_box_rejected(self):
        with pytest.raises(DialectError):
            alg_eval(IDENTITY_K1, {}, parse("[]p0"))

    def test_validates_axioms(self):
        formulas = [
            parse("nabla p0 & nabla p1 -> nabla(p0 & p1)"),
            parse("nabla(p0 | ~p0)"),
            parse("nabla p0 -> p0"),
        ]
        for k in (1, 2):
            for a in iter_valid_algebras(k):
                for f in formulas:
                    assert alg_validates(a, f)

    def test_refutes_nontheorem(self):
        assert not alg_validates(UNIT_ONLY_K2, parse("p0 -> nabla p0"))


class TestGeneration:
    def test_counts_at_k2(self):
        candidates = list(iter_sharp_maps(2))
        assert len(candidates) == 256
        valid = [a for a in candidates if check_algebra(a).valid]
        # a3 forces sharp(0)=0, a4 forces sharp(3)=3; sharp(1) and sharp(2)
        # may each keep or drop their point, and a1/a2 then always hold
        assert len(valid) == 4
        assert {a.sharp for a in valid} == {
            (0, 0, 0, 3),
            (0, 1, 0, 3),
            (0, 0, 2, 3),
            (0, 1, 2, 3),
        }

    def test_counts_at_k1(self):
        valid = list(iter_valid_algebras(1))
        assert len(valid) == 1
        assert valid[0].sharp == (0, 1)


class TestSerialization:
    def test_round_trip(self):
        data = IDENTITY_K2.to_data()
        assert FinitePlausibilityAlgebra.from_data(data) == IDENTITY_K2

    def test_fixture_files(self):
        a = FinitePlausibilityAlgebra.from_data(load_fixture("algebras", "identity_k2.json"))
        assert check_algebra(a).valid
        z = FinitePlausibilityAlgebra.from_data(load_fixture("algebras", "zero_k1.json"))
        assert not check_algebra(z).a4_holds

    def test_bad_data(self):
        with pytest.raises(AlgebraFormatError):
            FinitePlausibilityAlgebra.from_data({"base": 2, "sharp": [0, 1]})
        with pytest.raises(AlgebraFormatError):
            FinitePlausibilityAlgebra.from_data({"base": 1, "sharp": [0, 9]})


class TestAgreement:
    def test_report_on_theorems_and_nontheorems(self):
        formulas = [
            parse("nabla p0 -> p0"),
            parse("nabla(p0 | ~p0)"),
            parse("p0 -> nabla p0"),
            parse("nabla p0 -> nabla(p0 | p1)"),
        ]
        report = agreement_report(formulas, max_base=2, max_worlds=2)
        assert report["algebras"] == 5
        by_formula = {row["formula"]: row for row in report["formulas"]}
        assert by_formula["nabla p0 -> p0"]["algebra_valid"]
        assert by_formula["nabla p0 -> p0"]["constrained_exhausted_valid"]
        assert not by_formula["p0 -> nabla p0"]["algebra_valid"]
        assert not by_formula["p0 -> nabla p0"]["constrained_exhausted_valid"]
        assert report["agreements"] + report["disagreements"] == len(formulas)
