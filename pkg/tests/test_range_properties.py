"""Range-property suite at the full published instance counts."""

import property_checks as pc


def test_master_identity():
    pc.check_master_identity(n=1000)


def test_containment():
    pc.check_containment(n=1000)


def test_negation_symmetry():
    pc.check_n4_negation(n=1000)


def test_swap_symmetry():
    pc.check_n5_swap(n=1000)


def test_constraint_shift_invariance():
    pc.check_n6_shift(n=1000)


def test_traceless_nonempty():
    pc.check_n7_traceless_nonempty(n=1000)


def test_positive_definite_empty():
    pc.check_n2_posdef_empty(n=1000)


def test_opposite_sign_nonempty():
    pc.check_n9_opposite_signs(n=1000)


def test_every_state_lands_on_its_curve():
    pc.check_n10_pointwise(n=1000)


def test_discriminant_negative():
    pc.check_n8_discriminant(n=1000)


def test_affine_and_unitary_covariance():
    pc.check_p1_p2(n=1000)


def test_rank_k_intervals_bulk():
    pc.check_rank_k_bruteforce(n=1000)
