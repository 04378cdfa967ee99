import itertools
import random
from fractions import Fraction

import pytest

from qgforms import catalog, linalg
from qgforms.forms import (FIRST, LAST, DegenerateFormError, FormError,
                           MultilinearForm, TwistMatrix, all_tuples,
                           check_preregular, dualize, find_twist,
                           is_twisted_superpotential, nondegeneracy, odot,
                           polar, polar_variants, star, verify_polar)
from conftest import random_form


def brute_rank(rows):
    """Independent plain Gaussian elimination, no scaling tricks."""
    rows = [list(map(Fraction, r)) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col] / pr[col]
                rows[i] = [a - c * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


class TestNondegeneracy:
    def test_signature_first_slot(self, eps3):
        ok, witness = nondegeneracy(eps3, FIRST)
        assert ok and witness is None

    def test_zero_form(self):
        zero = MultilinearForm(3, 2, {})
        ok, witness = nondegeneracy(zero, FIRST)
        assert not ok
        assert witness == (Fraction(1), Fraction(0), Fraction(0))

    def test_singular_bilinear(self):
        e = MultilinearForm(2, 2, {(0, 0): 1})
        ok, witness = nondegeneracy(e, FIRST)
        assert not ok and witness == (Fraction(0), Fraction(1))

    def test_agrees_with_brute_force_rank(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(1, 3)
            m = rng.randint(2, 4)
            form = random_form(rng, n, m)
            for slot in (FIRST, LAST):
                rows = []
                for i in range(n):
                    row = []
                    for rest in all_tuples(n, m - 1):
                        idx = (i,) + rest if slot == FIRST else rest + (i,)
                        row.append(form.coeff(idx))
                    rows.append(row)
                expected = brute_rank(rows) == n if any(map(any, rows)) else n == 0
                assert nondegeneracy(form, slot)[0] == expected


class TestTwist:
    def test_eps2_twist_is_minus_identity(self, eps2):
        tw = find_twist(eps2)
        assert tw.entries == ((Fraction(-1), Fraction(0)),
                              (Fraction(0), Fraction(-1)))

    def test_polynomial_superpotential_identity_twist(self, eps3):
        tw = find_twist(eps3)
        assert tw.entries == linalg.identity(3)

    def test_rotation_identity_holds_everywhere(self):
        for form in (catalog.signature_form(4), catalog.sklyanin3(1, 2, 3)):
            tw = find_twist(form)
            n, m = form.dim, form.arity
            for rest in all_tuples(n, m - 1):
                for ell in range(n):
                    assert sum(tw.entries[k][ell] * form.coeff((k,) + rest)
                               for k in range(n)) == form.coeff(rest + (ell,))

    def test_degenerate_first_row_rejected(self):
        e = MultilinearForm(2, 2, {(1, 0): 1, (1, 1): 1})
        assert find_twist(e) is None

    def test_check_preregular_aggregates(self, eps2):
        report = check_preregular(eps2)
        assert report.preregular and report.failure_witness is None
        bad = check_preregular(MultilinearForm(2, 2, {(0, 0): 1}))
        assert not bad.nondegenerate_first_slot
        assert not bad.nondegenerate_last_slot
        assert bad.failure_witness is not None


class TestTwistedSuperpotential:
    def test_cyclic_with_identity(self, eps3):
        ident = TwistMatrix.from_entries(linalg.identity(3))
        assert is_twisted_superpotential(eps3, ident)
        assert is_twisted_superpotential(catalog.sklyanin3(1, 2, 3), ident)

    def test_scaled_twist_fails(self, eps3):
        two = TwistMatrix.from_entries(
            [[2 if i == j else 0 for j in range(3)] for i in range(3)])
        assert not is_twisted_superpotential(eps3, two)

    def test_dimension_mismatch(self, eps3):
        ident2 = TwistMatrix.from_entries(linalg.identity(2))
        with pytest.raises(FormError):
            is_twisted_superpotential(eps3, ident2)


class TestDualize:
    def test_involution_on_random_tensors(self):
        rng = random.Random(17)
        for _ in range(100):
            x = random_form(rng, rng.randint(1, 3), rng.randint(1, 4))
            assert dualize(dualize(x)) == x

    def test_zero(self):
        z = MultilinearForm(2, 3, {})
        assert dualize(z) == z


class TestPolar:
    def test_bilinear_polar_is_inverse(self, eps2):
        companion = polar(eps2, FIRST)
        inv = linalg.mat_inv([[eps2.coeff((i, j)) for j in range(2)]
                              for i in range(2)])
        assert companion == MultilinearForm(
            2, 2, {(i, j): inv[i][j] for i in range(2) for j in range(2)
                   if inv[i][j]})
        assert verify_polar(eps2, companion, FIRST)

    def test_polar_of_signature3(self, eps3):
        companion = polar(eps3, FIRST)
        assert verify_polar(eps3, companion, FIRST)
        assert verify_polar(eps3, polar(eps3, LAST), LAST)

    def test_polar_deterministic(self, eps3):
        assert polar(eps3, FIRST) == polar(eps3, FIRST)

    def test_polar_variants_distinct_above_arity_two(self, eps3):
        variants = polar_variants(eps3, FIRST, 2)
        assert len(variants) == 2 and variants[0] != variants[1]
        for v in variants:
            assert verify_polar(eps3, v, FIRST)

    def test_bilinear_polar_unique(self, eps2):
        assert len(polar_variants(eps2, FIRST, 2)) == 1

    def test_eps_is_not_its_own_polar(self, eps2):
        assert not verify_polar(eps2, eps2, FIRST)

    def test_zero_form_raises(self):
        with pytest.raises(DegenerateFormError):
            polar(MultilinearForm(2, 2, {}), FIRST)

    def test_catalog_forms_pass_verify_polar(self):
        forms = [catalog.signature_form(3), catalog.sklyanin3(1, 2, 3),
                 catalog.yang_mills([[1, 0], [0, 1]])]
        for form in forms:
            assert verify_polar(form, polar(form, FIRST), FIRST)
            assert verify_polar(form, polar(form, LAST), LAST)


class TestContractions:
    def test_odot_signature(self, eps2):
        assert odot(eps2, eps2) == 2

    def test_odot_zero(self, eps2):
        assert odot(eps2, MultilinearForm(2, 2, {})) == 0

    def test_odot_sklyanin_duals(self):
        a, b, c = Fraction(1), Fraction(2), Fraction(3)
        a2, b2, c2 = Fraction(2), Fraction(1), Fraction(5)
        s = catalog.sklyanin3(a, b, c)
        t = catalog.sklyanin3(a2, b2, c2)
        assert odot(s, t) == 3 * (a * a2 + b * b2 + c * c2)

    def test_odot_symmetric(self):
        rng = random.Random(23)
        for _ in range(30):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            x, y = random_form(rng, n, m), random_form(rng, n, m)
            assert odot(x, y) == odot(y, x)

    def test_star_signature(self, eps2):
        assert star(eps2, eps2) == ((Fraction(-1), Fraction(0)),
                                    (Fraction(0), Fraction(-1)))

    def test_star_zero(self, eps2):
        zero = MultilinearForm(2, 2, {})
        assert star(eps2, zero) == ((0, 0), (0, 0))

    def test_star_rotation_identity(self):
        pairs = [
            (catalog.signature_form(2), catalog.signature_form(2)),
            (catalog.signature_form(3), catalog.sklyanin3(1, 2, 3)),
            catalog.takeuchi_forms(2, 3),
            catalog.ast_forms({(0, 1): Fraction(2)}, Fraction(3)),
        ]
        for e, f in pairs:
            p = find_twist(e)
            q = find_twist(f)
            lhs = star(f, e)
            ef_t = linalg.mat_transpose(star(e, f))
            rhs = linalg.mat_mul(linalg.mat_mul(
                linalg.mat_transpose(q.inverse), ef_t), p.entries)
            assert lhs == rhs

    def test_shape_mismatch(self, eps2, eps3):
        with pytest.raises(FormError):
            odot(eps2, eps3)
        with pytest.raises(FormError):
            star(eps2, eps3)


def test_form_validation():
    with pytest.raises(FormError):
        MultilinearForm(2, 2, {(0, 1, 0): Fraction(1)})
    with pytest.raises(FormError):
        MultilinearForm(2, 2, {(0, 5): Fraction(1)})
    with pytest.raises(FormError):
        MultilinearForm(0, 2, {})
    # explicit zeros are dropped, not stored
    assert MultilinearForm(2, 2, {(0, 1): Fraction(0)}).is_zero()
