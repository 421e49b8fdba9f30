import itertools

import pytest

from src.arithmetic.field import enumerate_elements, validate_field
from src.arithmetic.linalg import (
    Operator,
    StateVector,
    apply,
    find_isotropic_vector,
    identity,
    inner_product,
    is_hermitian,
    is_invertible,
    is_unitary,
    matmul,
)
from src.errors import (
    BadResidue,
    ContextMismatch,
    DimensionMismatch,
    ImpossibleOutcome,
    IsotropicVector,
    NotCanonical,
    NotTwoByTwo,
    NotUnitNorm,
    TooLarge,
    ZeroVector,
)
from src.theories.discrete import (
    DiscreteState,
    PauliCoefficients,
    bloch_census,
    canonicalize,
    equivalent,
    hadamard,
    hermitian_census,
    measure_standard,
    no_cloning_witness,
    normalize,
    pauli_compose,
    pauli_decompose,
    pauli_matrices,
    phase_group,
    post_state,
    unit_vectors,
    unitary_group_2x2,
)
from src.theories.modal import modal_gate

F9 = validate_field(3, 2)
F49 = validate_field(7, 2)


@pytest.mark.parametrize("p", [3, 7, 11])
def test_phase_group(p):
    group = phase_group(p)
    assert group.order == p + 1
    assert group.is_closed()
    assert validate_field(p, 2).one in group


@pytest.mark.parametrize("p,expected", [(3, (24, 6, 4)), (7, (336, 42, 8)), (11, (1320, 110, 12))])
def test_bloch_census(p, expected):
    census = bloch_census(p)
    assert (census.unit_vectors, census.classes, census.phases) == expected
    assert census.formula_matches
    assert len(census.class_reps) == census.classes
    for rep in census.class_reps:
        assert rep.canonical
        assert canonicalize(DiscreteState(rep.vector)).vector == rep.vector


def test_bloch_census_json_and_csv():
    census = bloch_census(3)
    payload = census.to_json()
    assert (payload["unit_vectors"], payload["classes"], payload["phases"]) == (24, 6, 4)
    assert len(payload["reps"]) == 6
    assert all(len(rep) == 2 and len(rep[0]) == 2 for rep in payload["reps"])
    rows = census.csv_rows()
    assert len(rows) == 6
    assert set(rows[0]) == {"p", "class", "a_re", "a_im", "b_re", "b_im"}


def test_bloch_census_workers_agree():
    single = bloch_census(7)
    parallel = bloch_census(7, workers=2)
    assert parallel.to_json() == single.to_json()


def test_bloch_census_guards():
    with pytest.raises(DimensionMismatch):
        bloch_census(3, d=3)
    with pytest.raises(TooLarge):
        bloch_census(43)
    with pytest.raises(BadResidue):
        bloch_census(5)


def test_census_matches_direct_enumeration():
    states = unit_vectors(3)
    assert len(states) == 24
    classes = {canonicalize(DiscreteState(v)).key for v in states}
    assert len(classes) == 6


def test_normalize_basis_vector():
    v = StateVector.from_values(F9, [1, 0])
    state = normalize(v)
    assert state.canonical
    assert inner_product(state.vector, state.vector) == 1
    assert equivalent(state, DiscreteState(v))
    # канонический представитель |0⟩ над F_9 - это i|0⟩
    assert state.vector == v.scale(F9.i)


def test_normalize_scales_to_unit_norm():
    v = StateVector.from_values(F49, [1, 1])
    state = normalize(v, canonical=False)
    assert not state.canonical
    assert inner_product(state.vector, state.vector) == 1
    assert equivalent(state, normalize(v))


def test_normalize_errors():
    with pytest.raises(ZeroVector):
        normalize(StateVector.from_values(F9, [0, 0]))
    with pytest.raises(IsotropicVector) as excinfo:
        normalize(find_isotropic_vector(F9, 2))
    assert excinfo.value.witness is not None
    with pytest.raises(ContextMismatch):
        normalize(StateVector.from_values(validate_field(3, 1), [1, 0]))


def test_discrete_state_requires_unit_norm():
    with pytest.raises(NotUnitNorm):
        DiscreteState(StateVector.from_values(F9, [1, 1]))


def test_equivalence_under_phases():
    state = normalize(StateVector.from_values(F49, [1, [1, 2]]))
    for u in phase_group(7).elements:
        assert equivalent(state, DiscreteState(state.vector.scale(u)))
    zero = DiscreteState(StateVector.basis(F49, 2, 0))
    one = DiscreteState(StateVector.basis(F49, 2, 1))
    assert not equivalent(zero, one)


def test_hadamard_f9():
    H = hadamard(3)
    s = F9.element(1, 1)
    assert H == Operator.from_rows(F9, [[1, 1], [1, -1]]).scale(s)
    assert is_unitary(H)
    # H² = s²·2·I = i·I
    assert matmul(H, H) == identity(F9, 2).scale(F9.i)


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_hadamard_is_unitary(p):
    assert is_unitary(hadamard(p))


def test_hadamard_requires_admissible_p():
    with pytest.raises(BadResidue):
        hadamard(5)


def test_modal_s_gate_is_not_unitary():
    assert not is_unitary(modal_gate("S", F9))


def test_unitary_group_p3():
    unitaries = unitary_group_2x2(3)
    assert len(unitaries) == 96
    assert all(is_invertible(U) for U in unitaries)
    with pytest.raises(TooLarge):
        unitary_group_2x2(7)


def test_unitaries_preserve_unit_states():
    states = unit_vectors(3)
    for U in unitary_group_2x2(3):
        for v in states:
            w = apply(U, v)
            assert inner_product(w, w) == 1


def test_pauli_round_trip():
    elements = enumerate_elements(F9)
    for cells in itertools.product(elements[::2], repeat=4):
        O = Operator(2, 2, cells, F9)
        assert pauli_compose(pauli_decompose(O)) == O


def test_pauli_basis():
    X = pauli_matrices(F9)
    zero, one = F9.zero, F9.one
    for k, M in enumerate(X):
        coeffs = pauli_decompose(M).as_tuple()
        assert coeffs == tuple(one if j == k else zero for j in range(4))
        assert is_hermitian(M)
        assert is_unitary(M)
    with pytest.raises(NotTwoByTwo):
        pauli_decompose(identity(F9, 3))


def test_hermitian_coefficients_are_real():
    for cells in itertools.product(enumerate_elements(F9), repeat=4):
        O = Operator(2, 2, cells, F9)
        if is_hermitian(O):
            assert all(a.im == 0 for a in pauli_decompose(O).as_tuple())


def test_pauli_compose_builds_hermitian_from_real_coefficients():
    real = [F9.element(v) for v in (0, 1, -1)]
    for a in itertools.product(real, repeat=4):
        assert is_hermitian(pauli_compose(PauliCoefficients(*a)))


def test_hermitian_census_p3():
    census = hermitian_census(3)
    assert census.total == 81
    assert census.diagonal_values == [-1, 0, 1]
    assert census.off_diagonal_choices == 9
    assert census.exhaustive_total == 81
    assert census.diagonals_in_base_field
    assert census.off_diagonal_free


def test_hermitian_census_p7():
    census = hermitian_census(7)
    assert census.total == 7 * 7 * 49
    assert census.exhaustive_total is None
    with pytest.raises(TooLarge):
        hermitian_census(19)


def test_measurement_and_post_state():
    state = normalize(StateVector.from_values(F49, [1, 1]))
    assert measure_standard(state).sorted() == [0, 1]
    after = post_state(state, 0)
    assert measure_standard(after).sorted() == [0]
    assert equivalent(after, DiscreteState(StateVector.basis(F49, 2, 0)))
    basis = DiscreteState(StateVector.basis(F49, 2, 0))
    with pytest.raises(ImpossibleOutcome):
        post_state(basis, 1)
    with pytest.raises(ImpossibleOutcome):
        post_state(basis, 5)


@pytest.mark.parametrize("p", [3, 7, 11])
def test_no_cloning_witness(p):
    report = no_cloning_witness(p)
    assert report.basis_clones
    assert report.witness
    assert report.produced != report.required
    assert report.to_json()["witness"] is True


def test_no_cloning_guard():
    with pytest.raises(TooLarge):
        no_cloning_witness(19)


def test_canonical_flag_is_checked():
    zero = StateVector.basis(F9, 2, 0)
    with pytest.raises(NotCanonical):
        DiscreteState(zero, canonical=True)
    rep = DiscreteState(zero.scale(F9.i), canonical=True)
    assert equivalent(rep, DiscreteState(zero))
    assert canonicalize(DiscreteState(zero)).vector == rep.vector
