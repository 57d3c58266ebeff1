"""First-occurrence ordering encodings vs the consistency oracle."""
import itertools
import random

import pytest

from valprec.engine import Model, PropagationStatus
from valprec.oracle import (
    SetBounds,
    all_precedence_holds,
    bc_by_definition,
    gac_by_definition,
    increasing_seq_holds,
    iterated_gac,
    pair_precedence_holds,
    partition_precedence_holds,
    set_precedence_holds,
    wreath_precedence_holds,
)
from valprec.precedence import (
    encode_all_precedence,
    encode_increasing_seq,
    encode_matrix_precedence,
    encode_pair_precedence,
    encode_partial_precedence,
    encode_puget_surjection,
    encode_reflection_lex,
    encode_rotation_lex,
    encode_set_precedence,
    encode_wreath_precedence,
)
from valprec.search import solve
from valprec.symmetry import WreathInterchange

FAILED = PropagationStatus.FAILED
AT_FIXPOINT = PropagationStatus.AT_FIXPOINT


def domains_of(xs):
    return [set(x.domain) for x in xs]


def fixpoint(encode, doms, *args, **kwargs):
    """Build a model over doms, run the encoding, return domains or None."""
    m = Model()
    xs = [m.add_fd_var(d, name=f"X{i + 1}") for i, d in enumerate(doms)]
    encode(m, *args, xs=xs, **kwargs)
    if m.propagate() is FAILED:
        return None
    return domains_of(xs)


# ------------------------------------------------------------ pair precedence


def test_pair_first_position_cannot_take_second_value():
    got = fixpoint(encode_pair_precedence, [{1, 2}, {1, 2}], 1, 2)
    assert got == [{1}, {1, 2}]


def test_pair_single_variable_second_value_fails():
    assert fixpoint(encode_pair_precedence, [{2}], 1, 2) is None


def test_pair_other_values_pass_through():
    got = fixpoint(encode_pair_precedence, [{3, 4}, {2, 3}], 1, 2)
    assert got == [{3, 4}, {3}]


def test_pair_identical_values_rejected():
    m = Model()
    xs = [m.add_fd_var({1, 2})]
    with pytest.raises(ValueError):
        encode_pair_precedence(m, 5, 5, xs)


def test_pair_chain_matches_oracle_300_cases():
    rng = random.Random(31)
    for _ in range(300):
        n = rng.randint(1, 6)
        d = rng.randint(2, 5)
        doms = [set(rng.sample(range(1, d + 1), rng.randint(1, d)))
                for _ in range(n)]
        vj, vk = rng.sample(range(1, d + 1), 2)
        got = fixpoint(encode_pair_precedence, doms, vj, vk)
        want = gac_by_definition(
            lambda t: pair_precedence_holds(vj, vk, t), doms)
        if want is None:
            assert got is None
        else:
            assert got == want


# ------------------------------------------------------------- all precedence


def test_all_precedence_prunes_beyond_pairwise():
    doms = [{1}, {1, 2}, {1, 3}, {3, 4}]
    values = [1, 2, 3, 4]
    got = fixpoint(encode_all_precedence, doms, values)
    assert got == [{1}, {2}, {1, 3}, {3, 4}]

    # every pairwise ordering alone leaves the domains untouched
    m = Model()
    xs = [m.add_fd_var(d) for d in doms]
    for j in range(len(values)):
        for k in range(j + 1, len(values)):
            encode_pair_precedence(m, values[j], values[k], xs)
    assert m.propagate() is AT_FIXPOINT
    assert domains_of(xs) == doms


def test_all_precedence_forces_first_variable():
    got = fixpoint(encode_all_precedence, [{1, 2, 3}] * 3, [1, 2, 3])
    assert got is not None
    assert got[0] == {1}


def test_all_precedence_validates_values():
    m = Model()
    xs = [m.add_fd_var({1, 2})]
    with pytest.raises(ValueError):
        encode_all_precedence(m, [], xs)
    with pytest.raises(ValueError):
        encode_all_precedence(m, [1, 1], xs)


def test_all_chain_matches_oracle_300_cases():
    rng = random.Random(47)
    for _ in range(300):
        n = rng.randint(1, 6)
        d = rng.randint(2, 5)
        m_vals = rng.randint(1, min(4, d))
        values = rng.sample(range(1, d + 1), m_vals)
        doms = [set(rng.sample(range(1, d + 1), rng.randint(1, d)))
                for _ in range(n)]
        got = fixpoint(encode_all_precedence, doms, values)
        want = gac_by_definition(
            lambda t: all_precedence_holds(values, t), doms)
        if want is None:
            assert got is None
        else:
            assert got == want


# --------------------------------------------------------- partition classes


def test_partition_fails_where_per_class_chains_do_not():
    doms = [{1, 2, 3, 4, 5, 6}] * 3 + [{3}, {6}]
    classes = [[1, 2, 3], [4, 5, 6]]
    assert fixpoint(encode_partial_precedence, doms, classes) is None

    m = Model()
    xs = [m.add_fd_var(d) for d in doms]
    for cls in classes:
        encode_all_precedence(m, cls, xs)
    assert m.propagate() is AT_FIXPOINT
    want = iterated_gac(
        [lambda t, c=cls: all_precedence_holds(c, t) for cls in classes], doms)
    assert domains_of(xs) == want


def test_partition_single_class_equals_all_precedence():
    rng = random.Random(99)
    for _ in range(50):
        n = rng.randint(1, 5)
        doms = [set(rng.sample(range(1, 5), rng.randint(1, 4)))
                for _ in range(n)]
        values = rng.sample(range(1, 5), rng.randint(2, 4))
        a = fixpoint(encode_partial_precedence, doms, [values])
        b = fixpoint(encode_all_precedence, doms, values)
        assert a == b


def test_partition_singleton_classes_post_nothing():
    m = Model()
    xs = [m.add_fd_var({1, 2, 3}) for _ in range(3)]
    enc = encode_partial_precedence(m, [[1], [2], [3]], xs)
    assert m.posted_total() == 0
    assert enc.state_vars == [] and enc.propagators == []
    assert m.propagate() is AT_FIXPOINT
    assert domains_of(xs) == [{1, 2, 3}] * 3


def test_partition_state_cap_refused():
    m = Model()
    xs = [m.add_fd_var({1, 2}) for _ in range(2)]
    with pytest.raises(ValueError, match="per class"):
        encode_partial_precedence(m, [[1, 2, 3], [4, 5, 6]], xs, state_cap=10)


def test_partition_validates_classes():
    m = Model()
    xs = [m.add_fd_var({1, 2})]
    with pytest.raises(ValueError):
        encode_partial_precedence(m, [[1], []], xs)
    with pytest.raises(ValueError):
        encode_partial_precedence(m, [[1, 2], [2, 3]], xs)


def test_partition_chain_matches_oracle_200_cases():
    rng = random.Random(140)
    for _ in range(200):
        n = rng.randint(1, 5)
        d = rng.randint(2, 5)
        vals = rng.sample(range(1, d + 1), rng.randint(2, min(4, d)))
        cut = rng.randint(1, len(vals) - 1)
        classes = [vals[:cut], vals[cut:]]
        doms = [set(rng.sample(range(1, d + 1), rng.randint(1, d)))
                for _ in range(n)]
        got = fixpoint(encode_partial_precedence, doms, classes)
        want = gac_by_definition(
            lambda t: partition_precedence_holds(classes, t), doms)
        if want is None:
            assert got is None
        else:
            assert got == want


# --------------------------------------------------------------------- wreath


def test_wreath_first_variable_forced_to_least_pair():
    spec = WreathInterchange(outer=(1, 2), inner=(3, 4))
    got = fixpoint(encode_wreath_precedence, [set(spec.codes)] * 2,
                   [1, 2], [3, 4])
    assert got is not None
    assert got[0] == {spec.code(1, 3)}


def test_wreath_out_of_range_codes_pruned():
    got = fixpoint(encode_wreath_precedence, [{0, 7}], [1, 2], [3, 4])
    assert got == [{0}]


def test_wreath_chain_matches_oracle_200_cases():
    spec = WreathInterchange(outer=(1, 2), inner=(3, 4))
    rng = random.Random(555)
    for _ in range(200):
        n = rng.randint(1, 5)
        doms = [set(rng.sample(spec.codes, rng.randint(1, 4)))
                for _ in range(n)]
        got = fixpoint(encode_wreath_precedence, doms, [1, 2], [3, 4])
        want = gac_by_definition(
            lambda t: wreath_precedence_holds(spec, t), doms)
        if want is None:
            assert got is None
        else:
            assert got == want


def test_wreath_larger_inner_group():
    spec = WreathInterchange(outer=(1, 2), inner=(3, 4, 5))
    rng = random.Random(556)
    for _ in range(40):
        n = rng.randint(1, 4)
        doms = [set(rng.sample(spec.codes, rng.randint(1, 6)))
                for _ in range(n)]
        got = fixpoint(encode_wreath_precedence, doms, [1, 2], [3, 4, 5])
        want = gac_by_definition(
            lambda t: wreath_precedence_holds(spec, t), doms)
        if want is None:
            assert got is None
        else:
            assert got == want


# ------------------------------------------------------------ matrix encoding


def test_matrix_column_ordering_prunes_middle_variable():
    # ground neighbours squeeze the middle variable through the bit columns
    doms = [{1}, {1, 2, 3}, {3}]
    m = Model()
    xs = [m.add_fd_var(d) for d in doms]
    encode_matrix_precedence(m, [1, 2, 3], xs)
    assert m.propagate() is AT_FIXPOINT
    assert xs[1].domain == {2}


def test_matrix_weaker_than_chain_on_open_prefix():
    # genuine gap: the bit-matrix decomposition keeps everything while the
    # automaton chain prunes
    doms = [{1, 2}, {1, 2, 3}]
    m = Model()
    xs = [m.add_fd_var(d) for d in doms]
    encode_matrix_precedence(m, [1, 2, 3], xs)
    assert m.propagate() is AT_FIXPOINT
    assert domains_of(xs) == doms

    got = fixpoint(encode_all_precedence, doms, [1, 2, 3])
    assert got == [{1}, {1, 2}]


def test_matrix_single_row_is_unit_vector():
    m = Model()
    x = m.add_fd_var({1, 2, 3})
    enc = encode_matrix_precedence(m, [1, 2, 3], [x])
    assert m.propagate() is AT_FIXPOINT
    assert m.assign(x, 1)
    assert m.propagate() is AT_FIXPOINT
    assert [b.value() for b in enc.bits[0]] == [1, 0, 0]
    # the only full solution is x = 1: larger values break the column order
    m2 = Model()
    x2 = m2.add_fd_var({1, 2, 3})
    encode_matrix_precedence(m2, [1, 2, 3], [x2])
    assert [s for s in solve(m2, [x2]).solutions] == [(1,)]


def test_matrix_solution_set_equals_chain():
    values = [1, 2, 3]
    for n in (1, 2, 3, 4):
        for doms in itertools.product([frozenset({1, 2, 3}), frozenset({1, 2})],
                                      repeat=n):
            m1 = Model()
            xs1 = [m1.add_fd_var(d) for d in doms]
            encode_matrix_precedence(m1, values, xs1)
            got = {s for s in solve(m1, xs1).solutions}
            want = {t for t in itertools.product(*map(sorted, doms))
                    if all_precedence_holds(values, t)}
            assert got == want


# ----------------------------------------------------------- puget surjection


def test_puget_identity_surjection_consistent():
    m = Model()
    xs = [m.add_fd_var({i}) for i in (1, 2, 3)]
    enc = encode_puget_surjection(m, xs, [1, 2, 3])
    assert m.propagate() is AT_FIXPOINT
    assert [z.value() for z in enc.first_index] == [1, 2, 3]


def test_puget_implications_alone_miss_chain_pruning():
    doms = [{1}, {1, 2}, {1, 3}, {3, 4}, {2}, {3}, {4}]
    m = Model()
    xs = [m.add_fd_var(d) for d in doms]
    enc = encode_puget_surjection(m, xs, [1, 2, 3, 4])
    assert m.propagate() is AT_FIXPOINT
    assert domains_of(xs) == doms
    assert domains_of(enc.first_index) == [{1}, {2, 5}, {3, 4, 6}, {4, 7}]

    got = fixpoint(encode_all_precedence, doms, [1, 2, 3, 4])
    assert got is not None
    assert got[1] == {2}


def test_puget_ground_solutions_match_surjective_precedence():
    values = [1, 2, 3]
    n = 4
    for t in itertools.product(values, repeat=n):
        m = Model()
        xs = [m.add_fd_var({v}) for v in t]
        encode_puget_surjection(m, xs, values)
        ok = m.propagate() is AT_FIXPOINT
        surjective = set(t) == set(values)
        assert ok == (surjective and all_precedence_holds(values, t))


# ----------------------------------------------------------------- set chains


def set_fixpoint(values, bounds):
    m = Model()
    sets = [m.add_set_var(lb, ub) for lb, ub in bounds]
    encode_set_precedence(m, values, sets)
    if m.propagate() is FAILED:
        return None
    return [(set(s.lb), set(s.ub)) for s in sets]


def test_set_chain_tightens_first_bound():
    bounds = [(set(), {0}), (set(), {1}), (set(), {1}), (set(), {0}), ({2}, {2})]
    got = set_fixpoint([0, 1, 2], bounds)
    assert got is not None
    assert got[0] == ({0}, {0})


def test_set_ground_equal_rows_entail_everything():
    # equal ground rows satisfy the ordering only when the common set holds
    # a prefix of the value order; {0, 1} does, {0, 2} skips 1 and fails
    m = Model()
    sets = [m.add_set_var({0, 1}, {0, 1}) for _ in range(3)]
    enc = encode_set_precedence(m, [0, 1, 2], sets)
    assert m.propagate() is AT_FIXPOINT
    assert all(p.entailed for p in enc.propagators)

    m2 = Model()
    sets2 = [m2.add_set_var({0, 2}, {0, 2}) for _ in range(3)]
    encode_set_precedence(m2, [0, 1, 2], sets2)
    assert m2.propagate() is FAILED


def test_set_chain_matches_bc_oracle_200_cases():
    rng = random.Random(808)
    universe = [0, 1, 2]
    for _ in range(200):
        n = rng.randint(1, 4)
        bounds = []
        for _ in range(n):
            ub = {v for v in universe if rng.random() < 0.7}
            lb = {v for v in ub if rng.random() < 0.3}
            bounds.append((lb, ub))
        values = rng.sample(universe, rng.randint(2, 3))
        got = set_fixpoint(values, bounds)
        want = bc_by_definition(
            lambda ints, sets: set_precedence_holds(values, sets),
            [], [SetBounds(frozenset(lb), frozenset(ub)) for lb, ub in bounds])
        if want is None:
            assert got is None
        else:
            assert got is not None
            _, new_sets = want
            assert got == [(set(sb.lb), set(sb.ub)) for sb in new_sets]


# ------------------------------------------------------- increasing sequences


def ground_ok(encode, t, *args, **kwargs):
    m = Model()
    xs = [m.add_fd_var({v}) for v in t]
    encode(m, *args, xs=xs, **kwargs)
    return m.propagate() is AT_FIXPOINT


def test_increasing_seq_ground_members():
    assert ground_ok(encode_increasing_seq, (1, 2, 2), values=[1, 2, 3])
    assert ground_ok(encode_increasing_seq, (1, 1, 1), values=[1, 2, 3])
    assert ground_ok(encode_increasing_seq, (1, 1, 2, 2), values=[1, 2, 3])
    assert not ground_ok(encode_increasing_seq, (1, 1, 2), values=[1, 2, 3])
    assert not ground_ok(encode_increasing_seq, (2, 2, 2), values=[1, 2, 3])
    assert not ground_ok(encode_increasing_seq, (1, 3, 3), values=[1, 2, 3])


def test_increasing_seq_matches_oracle_200_cases():
    rng = random.Random(2718)
    for _ in range(200):
        n = rng.randint(1, 5)
        values = [1, 2, 3][:rng.randint(2, 3)]
        doms = [set(rng.sample(values, rng.randint(1, len(values))))
                for _ in range(n)]
        got = fixpoint(encode_increasing_seq, doms, values=values)
        want = gac_by_definition(
            lambda t: increasing_seq_holds(values, t), doms)
        if want is None:
            assert got is None
        else:
            assert got == want


def test_increasing_seq_unlisted_value_fails():
    assert fixpoint(encode_increasing_seq, [{9}], values=[1, 2]) is None


# --------------------------------------------- reflection and rotation orders


def test_reflection_compares_halves_outside_in():
    assert ground_ok(encode_reflection_lex, (1, 9, 2))
    assert not ground_ok(encode_reflection_lex, (2, 9, 1))
    assert ground_ok(encode_reflection_lex, (1, 2, 2, 1))
    assert not ground_ok(encode_reflection_lex, (2, 1, 1, 1))


def test_reflection_plus_precedence_keeps_known_symmetric_pair():
    for t in ((1, 2, 1, 1, 2), (1, 2, 2, 1, 2)):
        m = Model()
        xs = [m.add_fd_var({v}) for v in t]
        encode_reflection_lex(m, xs)
        encode_pair_precedence(m, 1, 2, xs)
        assert m.propagate() is AT_FIXPOINT


def test_rotation_plus_precedence_keeps_known_symmetric_pair():
    for t in ((1, 1, 2, 1, 2), (1, 2, 1, 2, 2)):
        m = Model()
        xs = [m.add_fd_var({v}) for v in t]
        encode_rotation_lex(m, xs)
        encode_pair_precedence(m, 1, 2, xs)
        assert m.propagate() is AT_FIXPOINT


def test_rotation_accepts_constant_sequence():
    assert ground_ok(encode_rotation_lex, (5, 5, 5, 5))


def test_rotation_rejects_smaller_rotation():
    assert not ground_ok(encode_rotation_lex, (2, 1, 3))
    assert ground_ok(encode_rotation_lex, (1, 3, 2))


# --------------------------------------------------------- functional chains


@pytest.mark.parametrize("encode,args,values_pool", [
    (encode_pair_precedence, (1, 2), [1, 2, 3]),
    (encode_all_precedence, ([1, 2, 3],), [1, 2, 3]),
    (encode_partial_precedence, ([[1, 2], [3, 4]],), [1, 2, 3, 4]),
    (encode_wreath_precedence, ([1, 2], [3, 4]), [0, 1, 2, 3]),
    (encode_increasing_seq, None, [1, 2, 3]),
])
def test_ground_prefix_grounds_chain_states(encode, args, values_pool):
    rng = random.Random(1234)
    grounded = 0
    for _ in range(60):
        n = rng.randint(1, 5)
        t = tuple(rng.choice(values_pool) for _ in range(n))
        m = Model()
        xs = [m.add_fd_var({v}) for v in t]
        if encode is encode_increasing_seq:
            enc = encode(m, xs, [1, 2, 3])
        else:
            enc = encode(m, *args, xs=xs)
        if m.propagate() is FAILED:
            continue
        assert all(sv.is_assigned() for sv in enc.state_vars)
        grounded += 1
    assert grounded > 0
