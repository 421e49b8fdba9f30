"""
Именованные проверки для verify-paper.

Каждая проверка возвращает пару (ожидаемое, наблюдаемое) в JSON-совместимом
виде; проверка пройдена при их равенстве. Проверки вида "hypothesis" только
сообщают результат и не влияют на код возврата.
"""
import itertools
import logging
import math
import traceback
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from ..algorithms.deutsch_jozsa import deutsch_jozsa
from ..algorithms.grover import GroverConfig, grover, iteration_supports
from ..algorithms.unique_sat import pad_database, supernatural_condition, unique_sat_discrete
from ..arithmetic.field import conj, enumerate_elements, frobenius, primitive_element, validate_field
from ..arithmetic.linalg import (
    Operator,
    OracleTable,
    StateVector,
    apply,
    find_isotropic_vector,
    inner_product,
    is_invertible,
    is_unitary,
    tensor,
)
from ..storage.models import CheckResult, CheckSuiteResult
from ..theories.discrete import (
    bloch_census,
    hadamard,
    hermitian_census,
    no_cloning_witness,
    unit_vectors,
    unitary_group_2x2,
)
from ..theories.modal import database_search_modal, modal_gate, modal_gates_1q, modal_states_1q, unique_sat_modal
from ..theories.outcomes import Verdict

logger = logging.getLogger(__name__)

CheckFunc = Callable[[], Tuple[Any, Any]]


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    group: str
    kind: str
    func: CheckFunc

    def run(self) -> CheckResult:
        try:
            expected, observed = self.func()
        except Exception as e:
            logger.error(f"Проверка {self.name} завершилась ошибкой: {e}")
            logger.error(traceback.format_exc())
            return CheckResult(name=self.name, group=self.group, kind=self.kind, passed=False, error=str(e))
        passed = expected == observed
        if not passed and self.kind == "claim":
            logger.warning(f"Проверка {self.name} не пройдена: ожидалось {expected}, получено {observed}")
        return CheckResult(
            name=self.name,
            group=self.group,
            kind=self.kind,
            expected=expected,
            observed=observed,
            passed=passed,
        )


CHECKS: List[ClaimCheck] = []


def check(name: str, group: str, kind: str = "claim") -> Callable[[CheckFunc], CheckFunc]:
    def register(func: CheckFunc) -> CheckFunc:
        CHECKS.append(ClaimCheck(name=f"{group}.{name}", group=group, kind=kind, func=func))
        return func
    return register


def _rows(M: Operator) -> List[List[Any]]:
    return [[a.to_json() for a in row] for row in M.to_rows()]


# Модальная теория

@check("plus_state_self_orthogonal", "modal")
def _plus_state():
    ctx = validate_field(2, 1)
    plus = StateVector.from_values(ctx, [1, 1])
    return 0, inner_product(plus, plus).to_json()


@check("gl2_f2_is_six_maps", "modal")
def _gl2_f2():
    listed = [
        [[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]],
        [[1, 0], [1, 1]], [[0, 1], [1, 1]], [[1, 1], [1, 0]],
    ]
    return sorted(listed), sorted(_rows(g) for g in modal_gates_1q(2))


@check("three_states_1q", "modal")
def _three_states():
    return 3, len(modal_states_1q(2))


@check("unique_sat_exhaustive", "modal")
def _modal_unique_sat():
    expected, observed = {}, {}
    for n in (1, 2, 3):
        tables = OracleTable.all_unique_sat(n)
        expected[str(n)] = len(tables)
        correct = 0
        for f in tables:
            result = unique_sat_modal(f)
            truth = Verdict.SAT if f.satisfying() else Verdict.UNSAT
            if result.verdict == truth and result.oracle_evals == 1:
                correct += 1
        observed[str(n)] = correct
    return expected, observed


@check("database_search_log_evaluations", "modal")
def _modal_search():
    expected, observed = {}, {}
    for N in (2, 4, 8, 16):
        n = N.bit_length() - 1
        expected[str(N)] = N
        found = 0
        for marked in range(N):
            result = database_search_modal(OracleTable.unique_sat(n, marked))
            if result.index == marked and result.oracle_evals <= n:
                found += 1
        observed[str(N)] = found
    return expected, observed


# Поле и линейная алгебра

@check("frobenius_is_conjugation", "field")
def _frobenius():
    expected, observed = {}, {}
    for p in (3, 7, 11):
        elements = enumerate_elements(validate_field(p, 2))
        expected[str(p)] = len(elements)
        observed[str(p)] = sum(1 for a in elements if frobenius(a) == conj(a))
    return expected, observed


@check("condition_c_violated", "linalg")
def _condition_c():
    # над F_p при p ≡ 3 (mod 4) изотропный вектор появляется лишь в размерности 3
    cases = [(2, 1, 2), (3, 2, 2), (7, 2, 2), (11, 2, 2), (3, 1, 3), (7, 1, 3)]
    observed = {
        f"F_{p}^{degree}, d={dim}": find_isotropic_vector(validate_field(p, degree), dim) is not None
        for p, degree, dim in cases
    }
    return {key: True for key in observed}, observed


# Дискретная теория

def _census_check(p: int, expected: List[int]) -> CheckFunc:
    def run():
        census = bloch_census(p)
        return expected, [census.unit_vectors, census.classes, census.phases]
    return run


for _p, _expected in ((3, [24, 6, 4]), (7, [336, 42, 8]), (11, [1320, 110, 12])):
    check(f"bloch_census_p{_p}", "discrete")(_census_check(_p, _expected))


@check("census_formula_beyond_tested_primes", "discrete", kind="hypothesis")
def _census_formula():
    primes = (3, 7, 11, 19, 23)
    expected = {str(p): [p * (p - 1), p + 1] for p in primes}
    observed = {}
    for p in primes:
        census = bloch_census(p)
        observed[str(p)] = [census.classes, census.phases]
    return expected, observed


@check("hadamard_f9", "discrete")
def _hadamard_f9():
    ctx = validate_field(3, 2)
    H = hadamard(3)
    S = modal_gate("S", ctx)
    expected = {"hadamard": [[[1, 1], [1, 1]], [[1, 1], [-1, -1]]], "unitary": True, "s_unitary": False}
    return expected, {"hadamard": _rows(H), "unitary": is_unitary(H), "s_unitary": is_unitary(S)}


@check("hermitian_census_p3", "discrete")
def _hermitian_p3():
    census = hermitian_census(3)
    expected = {"total": 81, "diagonal_values": [-1, 0, 1], "off_diagonal_choices": 9, "exhaustive_total": 81}
    observed = {
        "total": census.total,
        "diagonal_values": census.diagonal_values,
        "off_diagonal_choices": census.off_diagonal_choices,
        "exhaustive_total": census.exhaustive_total,
    }
    return expected, observed


@check("no_cloning_witness", "discrete")
def _no_cloning():
    observed = {}
    for p in (3, 7, 11):
        report = no_cloning_witness(p)
        observed[str(p)] = report.basis_clones and report.witness
    return {key: True for key in observed}, observed


# Алгоритмы

@check("deutsch_jozsa_exhaustive", "algorithms")
def _deutsch_jozsa():
    expected, observed = {}, {}
    for n in (1, 2, 3):
        tables = [OracleTable.constant(n, False), OracleTable.constant(n, True)] + OracleTable.all_balanced(n)
        expected[str(n)] = len(tables)
        correct = 0
        for f in tables:
            result = deutsch_jozsa(f, 3)
            truth = Verdict.CONSTANT if f.is_constant() else Verdict.BALANCED
            if result.verdict == truth and result.oracle_evals == 1:
                correct += 1
        observed[str(n)] = correct
    return expected, observed


def _grover_supports(p: int) -> Dict[str, List[int]]:
    cfg = GroverConfig(N=4, p=p, iterations=1)
    return {str(m): grover(m, cfg).final_support for m in range(4)}


@check("grover_n4_f49", "algorithms")
def _grover_f49():
    return {str(m): [m] for m in range(4)}, _grover_supports(7)


@check("grover_n4_f9", "algorithms")
def _grover_f9():
    return {str(m): [m] for m in range(4)}, _grover_supports(3)


@check("grover_n4_f9_fails", "algorithms", kind="hypothesis")
def _grover_f9_fails():
    supports = _grover_supports(3)
    return True, any(len(s) != 1 for s in supports.values())


@check("grover_default_iterations_overshoot", "algorithms")
def _grover_overshoot():
    observed = {str(p): iteration_supports(4, p, 0, round(math.sqrt(4)))[-1] for p in (3, 7)}
    return {key: [0, 1, 2, 3] for key in observed}, observed


@check("unique_sat_discrete_exhaustive", "algorithms")
def _usat_discrete():
    expected, observed = {}, {}
    for p, n in ((3, 2), (7, 3)):
        tables = OracleTable.all_unique_sat(n)
        expected[f"{p},{n}"] = len(tables)
        correct = 0
        for f in tables:
            result = unique_sat_discrete(f, p)
            truth = Verdict.SAT if f.satisfying() else Verdict.UNSAT
            if result.verdict == truth and result.oracle_evals == 1:
                correct += 1
        observed[f"{p},{n}"] = correct
    return expected, observed


@check("unique_sat_discrete_inconclusive", "algorithms")
def _usat_inconclusive():
    verdicts = [unique_sat_discrete(OracleTable.unique_sat(3, x), 3).verdict.value for x in range(8)]
    return [Verdict.INCONCLUSIVE.value] * 8, verdicts


@check("pad_database", "algorithms")
def _pad_database():
    padded_ok = all(
        pad_database(p, N) >= N and supernatural_condition(p, pad_database(p, N)).divides
        for p in (3, 7, 11, 19, 23)
        for N in range(1, 21)
    )
    return {"7,4": 6, "3,3": 4, "divisible": True}, {
        "7,4": pad_database(7, 4),
        "3,3": pad_database(3, 3),
        "divisible": padded_ok,
    }


# Свойства

def _field_axioms(p: int, degree: int) -> bool:
    ctx = validate_field(p, degree)
    elements = enumerate_elements(ctx)
    zero, one = ctx.zero, ctx.one
    for a in elements:
        if a + zero != a or a * one != a or a + (-a) != zero:
            return False
        if a and a * a.inverse() != one:
            return False
    for a, b in itertools.product(elements, repeat=2):
        if a + b != b + a or a * b != b * a:
            return False
    for a, b, c in itertools.product(elements, repeat=3):
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            return False
    return True


@check("field_axioms", "properties")
def _axioms():
    cases = [(2, 1), (3, 1), (7, 1), (3, 2), (7, 2)]
    observed = {f"{p},{degree}": _field_axioms(p, degree) for p, degree in cases}
    return {key: True for key in observed}, observed


@check("conjugation_automorphism", "properties")
def _conjugation():
    observed = {}
    for p in (3, 7):
        elements = enumerate_elements(validate_field(p, 2))
        observed[str(p)] = all(a.conj().conj() == a for a in elements) and all(
            (a + b).conj() == a.conj() + b.conj() and (a * b).conj() == a.conj() * b.conj()
            for a, b in itertools.product(elements, repeat=2)
        )
    return {key: True for key in observed}, observed


@check("norm_multiplicative_surjective", "properties")
def _norm():
    observed = {}
    for p in (3, 7):
        ctx = validate_field(p, 2)
        elements = enumerate_elements(ctx)
        multiplicative = all((a * b).norm() == a.norm() * b.norm() for a, b in itertools.product(elements, repeat=2))
        image = {a.norm().value for a in elements}
        observed[str(p)] = multiplicative and image == set(range(p))
    return {key: True for key in observed}, observed


def _all_vectors(ctx, dim: int = 2) -> List[StateVector]:
    return [StateVector(values, ctx) for values in itertools.product(enumerate_elements(ctx), repeat=dim)]


def _sesquilinear_holds(phis: List[StateVector], psis: List[StateVector], scalars: List[Any]) -> bool:
    for phi in phis:
        for psi in psis:
            ip = inner_product(phi, psi)
            if ip != inner_product(psi, phi).conj():
                return False
            for c in scalars:
                if inner_product(phi, psi.scale(c)) != c * ip or inner_product(phi.scale(c), psi) != c.conj() * ip:
                    return False
        basis = [StateVector.basis(phi.ctx, phi.dim, k) for k in range(phi.dim)]
        for psi1, psi2 in itertools.product(psis, basis):
            if inner_product(phi, psi1 + psi2) != inner_product(phi, psi1) + inner_product(phi, psi2):
                return False
    return True


@check("sesquilinearity", "properties")
def _sesquilinear():
    observed = {}
    for p, degree in ((2, 1), (3, 1), (7, 1), (3, 2)):
        ctx = validate_field(p, degree)
        vectors = _all_vectors(ctx)
        observed[str(ctx)] = _sesquilinear_holds(vectors, vectors, enumerate_elements(ctx))
    # F_49: все φ, ψ из базиса; скаляры 0, 1 и порождающий F*, его степени дают остальные
    ctx = validate_field(7, 2)
    basis = [StateVector.basis(ctx, 2, 0), StateVector.basis(ctx, 2, 1)]
    scalars = [ctx.zero, ctx.one, primitive_element(ctx)]
    observed[str(ctx)] = _sesquilinear_holds(_all_vectors(ctx), basis, scalars)
    return {key: True for key in observed}, observed


@check("unitary_implies_invertible", "properties")
def _unitary_invertible():
    unitaries = unitary_group_2x2(3)
    return {"count": 96, "invertible": True}, {
        "count": len(unitaries),
        "invertible": all(is_invertible(U) for U in unitaries),
    }


@check("unitaries_preserve_unit_states", "properties")
def _unitary_states():
    states = unit_vectors(3)
    preserved = all(inner_product(apply(U, v), apply(U, v)) == 1 for U in unitary_group_2x2(3) for v in states)
    return {"unit_vectors": 24, "preserved": True}, {"unit_vectors": len(states), "preserved": preserved}


def _elementary_matrices(ctx) -> List[Operator]:
    zero, one = ctx.zero, ctx.one
    return [Operator(2, 2, tuple(one if k == j else zero for k in range(4)), ctx) for j in range(4)]


def _tensor_compatible(pairs, vectors: List[StateVector]) -> bool:
    for A, B in pairs:
        AB = tensor(A, B)
        for u, v in itertools.product(vectors, repeat=2):
            if apply(AB, tensor(u, v)) != tensor(apply(A, u), apply(B, v)):
                return False
    return True


@check("tensor_apply_compatibility", "properties")
def _tensor_apply():
    observed = {}
    f2 = validate_field(2, 1)
    matrices = [Operator(2, 2, cells, f2) for cells in itertools.product(enumerate_elements(f2), repeat=4)]
    observed["F_2"] = _tensor_compatible(itertools.product(matrices, repeat=2), _all_vectors(f2))
    # над F_3 и F_7 пары элементарных матриц E_jk со всеми векторами; по билинейности
    # это покрывает любую пару операторов
    for p in (3, 7):
        ctx = validate_field(p, 1)
        pairs = itertools.product(_elementary_matrices(ctx), repeat=2)
        observed[f"F_{p}"] = _tensor_compatible(pairs, _all_vectors(ctx))
    gates = modal_gates_1q(3)
    basis = [StateVector.basis(validate_field(3, 1), 2, k) for k in range(2)]
    observed["GL(2, F_3)"] = _tensor_compatible(itertools.product(gates, repeat=2), basis)
    return {key: True for key in observed}, observed



def select_checks(name_filter: Optional[str] = None) -> List[ClaimCheck]:
    """Проверки, у которых группа совпадает с фильтром или имя содержит его"""
    if not name_filter:
        return list(CHECKS)
    return [c for c in CHECKS if c.group == name_filter or name_filter in c.name]


def run_checks(name_filter: Optional[str] = None, progress: bool = False) -> CheckSuiteResult:
    """
    Запуск выбранных проверок

    Args:
        name_filter: имя группы или подстрока имени проверки
        progress: показывать индикатор tqdm

    Returns:
        CheckSuiteResult в порядке регистрации проверок
    """
    selected = select_checks(name_filter)
    logger.info(f"Запуск {len(selected)} проверок (фильтр: {name_filter or 'нет'})")
    results = [c.run() for c in tqdm(selected, desc="Проверки", disable=not progress)]
    suite = CheckSuiteResult(checks=results)
    logger.info(f"Проверки завершены: не пройдено {len(suite.failed)}")
    return suite
