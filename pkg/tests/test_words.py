import random

import pytest

from lefcalc import symplectic as sp
from lefcalc.words import (
    Factorization,
    Stabilizer,
    StabilizerError,
    TwistLetter,
    WordError,
    boundary_relation_check,
    global_conjugate,
    hurwitz_move,
    intersection_pairing,
    monodromy_fingerprint,
    partial_conjugate,
    stabilizer_type,
    subword_product,
    transvection,
    word_product,
)

from conftest import E1, E2, elliptic, fixed_class, random_class, random_sp, random_word

I2 = sp.identity(2)
MINUS_I2 = ((-1, 0), (0, -1))


def order(m, cap=50):
    p = m
    for k in range(1, cap):
        if p == sp.identity(len(m)):
            return k
        p = sp.matmul(p, m)
    return None


class TestPairing:
    def test_basis(self):
        e1, e3 = (1, 0, 0, 0), (0, 0, 1, 0)
        assert intersection_pairing(e1, e3) == 1
        assert intersection_pairing(e1, e1) == 0
        assert intersection_pairing(e3, e1) == -1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            intersection_pairing((1, 0), (1, 0, 0, 0))

    def test_matches_matrix_form(self, rng):
        for g in (1, 2, 3):
            Jm = sp.J(2 * g)
            for _ in range(20):
                x, y = random_class(rng, g, 3), random_class(rng, g, 3)
                assert intersection_pairing(x, y) == sum(
                    x[i] * Jm[i][j] * y[j] for i in range(2 * g) for j in range(2 * g))
                assert intersection_pairing(x, y) == -intersection_pairing(y, x)


class TestTransvection:
    def test_e1(self):
        T = transvection(E1)
        assert T == ((1, -1), (0, 1))
        assert sp.apply(T, E2) == (-1, 1)
        assert sp.apply(T, E1) == E1

    def test_e2(self):
        assert sp.apply(transvection(E2), E1) == (1, 1)

    def test_zero_class(self):
        assert transvection((0, 0, 0, 0)) == sp.identity(4)

    def test_symplectic_and_fixes_own_class(self, rng):
        for g in (1, 2, 3):
            for _ in range(30):
                a = random_class(rng, g, 3)
                T = transvection(a)
                assert sp.is_symplectic(T)
                assert sp.apply(T, a) == a
                assert sp.matmul(T, sp.sp_inverse(T)) == sp.identity(2 * g)
                assert transvection(a, -1) == sp.sp_inverse(T)
                assert transvection(a, 3) == sp.matpow(T, 3)

    def test_conjugation_convention(self, rng):
        # T_{phi(c)} = phi T_c phi^{-1}
        for g in (1, 2, 3):
            for _ in range(20):
                phi = random_sp(rng, g)
                c = random_class(rng, g)
                lhs = transvection(sp.apply(phi, c))
                rhs = sp.matmul(sp.matmul(phi, transvection(c)), sp.sp_inverse(phi))
                assert lhs == rhs


class TestProduct:
    def test_empty(self):
        assert word_product(Factorization(2)) == sp.identity(4)

    def test_order_six(self):
        P = word_product(Factorization.from_classes(1, [E1, E2]))
        assert P[0][0] + P[1][1] == 1
        assert order(P) == 6

    def test_sixth_power(self):
        assert word_product(elliptic()) == I2

    def test_cube_is_minus_identity(self):
        assert word_product(Factorization.from_classes(1, [E1, E2] * 3)) == MINUS_I2

    def test_letter_order(self):
        f = Factorization.from_classes(1, [E1, E2])
        assert word_product(f) == sp.matmul(transvection(E1), transvection(E2))


class TestHurwitz:
    def test_right_example(self):
        f = Factorization.from_classes(1, [E1, E2])
        assert hurwitz_move(f, 1, "right").classes == [E2, (1, -1)]

    def test_commuting_is_swap(self):
        a, b = (1, 0, 0, 0), (0, 1, 0, 0)
        f = Factorization.from_classes(2, [a, b])
        assert hurwitz_move(f, 1, "right").classes == [b, a]
        assert hurwitz_move(f, 1, "left").classes == [b, a]

    def test_index_range(self):
        f = Factorization.from_classes(1, [E1, E2])
        with pytest.raises(WordError):
            hurwitz_move(f, 2)
        with pytest.raises(WordError):
            hurwitz_move(f, 0)
        with pytest.raises(WordError):
            hurwitz_move(f, 1, "up")

    def test_inverse_and_product(self, rng):
        for _ in range(200):
            g = rng.randint(1, 3)
            f = random_word(rng, g, rng.randint(2, 8))
            P = word_product(f)
            for i in range(1, len(f)):
                r = hurwitz_move(f, i, "right")
                l = hurwitz_move(f, i, "left")
                assert hurwitz_move(r, i, "left") == f
                assert hurwitz_move(l, i, "right") == f
                assert word_product(r) == P == word_product(l)
                assert len(r) == len(f)

    def test_generated_subgroup_preserved(self, rng):
        # the new letter is a conjugate of the old one by a letter of the word, both ways
        for _ in range(100):
            g = rng.randint(1, 3)
            f = random_word(rng, g, rng.randint(2, 6))
            i = rng.randint(1, len(f) - 1)
            r = hurwitz_move(f, i, "right")
            a, b = transvection(f.classes[i - 1]), transvection(f.classes[i])
            new = transvection(r.classes[i])
            assert new == sp.matmul(sp.matmul(sp.sp_inverse(b), a), b)
            assert a == sp.matmul(sp.matmul(b, new), sp.sp_inverse(b))


class TestConjugation:
    def test_identity(self):
        f = elliptic()
        assert global_conjugate(f, I2) == f

    def test_example(self):
        f = Factorization.from_classes(1, [E2])
        g = global_conjugate(f, transvection(E1))
        assert g.classes == [sp.act_transvection(E1, E2)] == [(-1, 1)]

    def test_product_conjugated(self, rng):
        for _ in range(100):
            g = rng.randint(1, 3)
            f = random_word(rng, g, rng.randint(0, 6))
            phi = random_sp(rng, g)
            assert word_product(global_conjugate(f, phi)) == sp.matmul(
                sp.matmul(phi, word_product(f)), sp.sp_inverse(phi))

    def test_rejects_non_symplectic(self):
        with pytest.raises(WordError):
            global_conjugate(elliptic(), ((2, 0), (0, 1)))
        with pytest.raises(WordError):
            global_conjugate(elliptic(), sp.identity(4))


class TestStabilizer:
    def test_fixes_own_class(self):
        f = Factorization.from_classes(1, [E1])
        assert stabilizer_type(f, 1, 1, E1) is Stabilizer.FIXES

    def test_reverses(self):
        f = Factorization.from_classes(1, [E1, E2] * 3)
        for alpha in (E1, E2, (3, -5)):
            assert stabilizer_type(f, 1, 6, alpha) is Stabilizer.REVERSES

    def test_neither(self):
        f = Factorization.from_classes(1, [E1])
        assert stabilizer_type(f, 1, 1, E2) is Stabilizer.NEITHER

    def test_errors(self):
        f = Factorization.from_classes(1, [E1])
        with pytest.raises(WordError):
            stabilizer_type(f, 1, 2, E1)
        with pytest.raises(WordError):
            stabilizer_type(f, 1, 1, (0, 0))


class TestPartialConjugate:
    def test_single_letter_unchanged(self):
        f = Factorization.from_classes(1, [E1, E2])
        for q in (1, -2, 5):
            assert partial_conjugate(f, 1, 1, E1, q) == f

    def test_whole_relation(self):
        f = elliptic()
        g = partial_conjugate(f, 1, 12, E2, 1)
        assert g != f
        assert word_product(g) == I2

    def test_strict_refuses_neither(self):
        f = Factorization.from_classes(1, [E1, E2])
        with pytest.raises(StabilizerError) as exc:
            partial_conjugate(f, 1, 1, E2)
        assert exc.value.kind is Stabilizer.NEITHER
        partial_conjugate(f, 1, 1, E2, strict=False)

    def test_twisted_needs_flag(self):
        f = Factorization.from_classes(1, [E1, E2] * 3 + [E1])
        with pytest.raises(StabilizerError):
            partial_conjugate(f, 1, 6, E1)
        g = partial_conjugate(f, 1, 6, E1, allow_twisted=True)
        assert word_product(g) == word_product(f)

    def test_zero_q(self):
        with pytest.raises(WordError):
            partial_conjugate(elliptic(), 1, 2, E1, 0)

    def test_untwisted_preserves_product(self, rng):
        done = 0
        while done < 100:
            g = rng.randint(1, 3)
            f = random_word(rng, g, rng.randint(1, 8))
            lo = rng.randint(1, len(f))
            hi = rng.randint(lo, len(f))
            alpha = fixed_class(rng, f, lo, hi)
            if alpha is None:
                continue
            q = rng.choice((1, -1, 2))
            h = partial_conjugate(f, lo, hi, alpha, q)
            assert word_product(h) == word_product(f)
            assert h.letters[:lo - 1] == f.letters[:lo - 1]
            assert h.letters[hi:] == f.letters[hi:]
            done += 1

    def test_twisted_commutation_at_matrix_level(self, rng):
        # P T_alpha P^{-1} = T_{P alpha} = T_{-alpha} = T_alpha
        f = Factorization.from_classes(1, [E1, E2] * 3)
        P = subword_product(f, 1, 6)
        for _ in range(10):
            alpha = random_class(rng, 1, 4)
            Ta = transvection(alpha)
            assert sp.matmul(sp.matmul(P, Ta), sp.sp_inverse(P)) == Ta


class TestSeparating:
    def test_flag_required(self):
        with pytest.raises(WordError):
            TwistLetter((0, 0), separating=False)
        with pytest.raises(WordError):
            TwistLetter((1, 0), separating=True)

    def test_identity_action(self, rng):
        sep = TwistLetter.of((0, 0, 0, 0))
        assert sep.separating
        f = Factorization(2, 0, (sep,) + tuple(TwistLetter.of(random_class(rng, 2)) for _ in range(3)))
        phi = random_sp(rng, 2)
        assert global_conjugate(f, phi).letters[0] == sep
        assert hurwitz_move(f, 1, "right").letters[1].cls == (0, 0, 0, 0)
        assert partial_conjugate(f, 1, 1, (1, 0, 0, 0), strict=False).letters[0] == sep


class TestBoundaryRelation:
    def test_examples(self):
        assert boundary_relation_check(elliptic())
        assert not boundary_relation_check(Factorization.from_classes(1, [E1]))
        assert boundary_relation_check(Factorization(3, 0, ()))


class TestFingerprint:
    def test_single(self):
        fp = monodromy_fingerprint(Factorization.from_classes(1, [E1]), 10)
        assert fp.rank == 1
        assert fp.classes == ((E1, 1),)
        assert (fp.orbit_size, fp.truncated) == (1, False)

    def test_sign_merged(self):
        fp = monodromy_fingerprint(Factorization.from_classes(1, [E1, (-1, 0)]), 10)
        assert fp.classes == ((E1, 2),)

    def test_rank_two(self):
        assert monodromy_fingerprint(Factorization.from_classes(1, [E1, E2]), 10).rank == 2

    def test_torus_orbit(self):
        # SL(2,Z) acting on primitive vectors up to sign: infinite, so the cap fires
        fp = monodromy_fingerprint(Factorization.from_classes(1, [E1, E2]), 50)
        assert fp.truncated and fp.orbit_size == 50

    def test_hurwitz_invariance(self, rng):
        for _ in range(60):
            g = rng.randint(1, 3)
            f = random_word(rng, g, rng.randint(2, 5))
            fp = monodromy_fingerprint(f, 200)
            h = f
            for _ in range(4):
                h = hurwitz_move(h, rng.randint(1, len(h) - 1), rng.choice(("left", "right")))
            fh = monodromy_fingerprint(h, 200)
            assert fh.rank == fp.rank
            if not fp.truncated:
                assert (fh.orbit_size, fh.truncated) == (fp.orbit_size, False)
            phi = random_sp(rng, g)
            assert monodromy_fingerprint(global_conjugate(f, phi), 1).rank == fp.rank

    def test_finite_orbit_commuting(self):
        f = Factorization.from_classes(2, [(1, 0, 0, 0), (0, 1, 0, 0)])
        assert monodromy_fingerprint(f, 100).orbit_size == 2


class TestFactorization:
    def test_class_length(self):
        with pytest.raises(WordError, match="letter 1"):
            Factorization.from_classes(2, [(1, 0, 0, 0), (1, 0, 0)])

    def test_empty(self):
        assert len(Factorization(2, 1, ())) == 0
