import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List

from ..errors import DQSimError
from ..storage.models import ExperimentDescriptor, ExperimentResult

logger = logging.getLogger(__name__)


class BaseExperiment(ABC):
    """
    Абстрактный базовый класс для экспериментов
    """
    name: str = ""

    def __init__(self):
        self.errors = []

    @abstractmethod
    def run(self, descriptor: ExperimentDescriptor) -> Dict[str, Any]:
        """
        Запуск алгоритма

        Args:
            descriptor: проверенный дескриптор

        Returns:
            JSON-представление результата
        """
        pass

    def execute(self, descriptor: ExperimentDescriptor) -> ExperimentResult:
        """
        Запуск с учетом ошибок: ошибка запоминается и пробрасывается дальше

        Args:
            descriptor: дескриптор эксперимента

        Returns:
            ExperimentResult
        """
        if descriptor.algorithm != self.name:
            raise ValueError(f"Эксперимент {self.name} не выполняет {descriptor.algorithm}")
        logger.info(f"Запуск {self.name}: {descriptor.to_json()}")
        try:
            payload = self.run(descriptor)
        except DQSimError as e:
            self.errors.append(f"{self.name}: {e}")
            raise
        return ExperimentResult(descriptor=descriptor, result=payload)

    def get_errors(self) -> List[str]:
        """
        Получение списка ошибок запусков

        Returns:
            список ошибок
        """
        return self.errors

    def clear_errors(self):
        """Очистка списка ошибок"""
        self.errors = []
