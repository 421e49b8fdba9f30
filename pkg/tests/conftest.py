import sys
from pathlib import Path

import pytest

# Добавляем путь к корневой директории проекта в PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from src.theories.discrete import hadamard, phase_group  # noqa: E402


@pytest.fixture
def clean_caches():
    """Сброс кэшей, зависящих от арифметики поля"""
    yield
    hadamard.cache_clear()
    phase_group.cache_clear()


@pytest.fixture
def log_file(tmp_path):
    return str(tmp_path / "dqsim.log")
