"""Эксперименты для каждого алгоритма и реестр по имени."""
from typing import Any, Dict, Type

from ..algorithms.deutsch_jozsa import deutsch_jozsa
from ..algorithms.grover import GroverConfig, grover
from ..algorithms.unique_sat import unique_sat_discrete
from ..storage.models import ExperimentDescriptor, ExperimentResult
from ..theories.modal import database_search_modal, unique_sat_modal
from .base_experiment import BaseExperiment


class GroverExperiment(BaseExperiment):
    name = "grover"

    def run(self, descriptor: ExperimentDescriptor) -> Dict[str, Any]:
        cfg = GroverConfig(N=descriptor.N, p=descriptor.p, iterations=descriptor.iterations)
        return grover(descriptor.marked, cfg).to_json()


class DeutschJozsaExperiment(BaseExperiment):
    name = "dj"

    def run(self, descriptor: ExperimentDescriptor) -> Dict[str, Any]:
        return deutsch_jozsa(descriptor.oracle_table(), descriptor.p).to_json()


class ModalUniqueSatExperiment(BaseExperiment):
    name = "usat-modal"

    def run(self, descriptor: ExperimentDescriptor) -> Dict[str, Any]:
        return unique_sat_modal(descriptor.oracle_table(), strict=descriptor.strict).to_json()


class DiscreteUniqueSatExperiment(BaseExperiment):
    name = "usat-discrete"

    def run(self, descriptor: ExperimentDescriptor) -> Dict[str, Any]:
        return unique_sat_discrete(descriptor.oracle_table(), descriptor.p, strict=descriptor.strict).to_json()


class DatabaseSearchExperiment(BaseExperiment):
    name = "db-search"

    def run(self, descriptor: ExperimentDescriptor) -> Dict[str, Any]:
        return database_search_modal(descriptor.oracle_table(), strict=descriptor.strict).to_json()


EXPERIMENTS: Dict[str, Type[BaseExperiment]] = {
    cls.name: cls
    for cls in (
        GroverExperiment,
        DeutschJozsaExperiment,
        ModalUniqueSatExperiment,
        DiscreteUniqueSatExperiment,
        DatabaseSearchExperiment,
    )
}


def run_descriptor(descriptor: ExperimentDescriptor) -> ExperimentResult:
    """Выполнение дескриптора подходящим экспериментом"""
    return EXPERIMENTS[descriptor.algorithm]().execute(descriptor)
