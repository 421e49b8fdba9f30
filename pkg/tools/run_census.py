#!/usr/bin/env python3
import sys
from pathlib import Path
import logging
import argparse
import traceback

import psutil
from tqdm import tqdm

# Добавляем путь к корневой директории проекта в PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from src.errors import DQSimError
from src.storage.result_writer import ResultWriter
from src.theories.discrete import CENSUS_MAX_P, bloch_census
from src.utils.number_theory import is_prime

# Настройка логирования
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stdout),
        logging.FileHandler('census.log')
    ]
)
logger = logging.getLogger(__name__)


def get_system_info() -> dict:
    """
    Получение информации о системе

    Returns:
        словарь с информацией о системе
    """
    return {
        "cpu_count": psutil.cpu_count(),
        "memory_total": psutil.virtual_memory().total // (1024 * 1024),  # MB
        "memory_available": psutil.virtual_memory().available // (1024 * 1024),  # MB
    }


def admissible_primes(limit: int) -> list:
    """Простые p ≡ 3 (mod 4), не превышающие limit"""
    return [p for p in range(3, limit + 1) if is_prime(p) and p % 4 == 3]


def main():
    parser = argparse.ArgumentParser(description="Перепись сферы Блоха для ряда характеристик")
    parser.add_argument("out_dir", help="Каталог для JSON и CSV результатов")
    parser.add_argument("--max-p", type=int, default=CENSUS_MAX_P, help="Наибольшая характеристика")
    parser.add_argument("--workers", type=int, default=None, help="Число процессов (по умолчанию число CPU)")
    args = parser.parse_args()

    try:
        sys_info = get_system_info()
        logger.info("Системная информация:")
        logger.info(f"CPU cores: {sys_info['cpu_count']}")
        logger.info(f"Memory total: {sys_info['memory_total']} MB")
        logger.info(f"Memory available: {sys_info['memory_available']} MB")

        workers = args.workers or sys_info["cpu_count"] or 1
        primes = admissible_primes(min(args.max_p, CENSUS_MAX_P))
        logger.info(f"Характеристики: {primes}, процессов: {workers}")

        writer = ResultWriter(args.out_dir)
        summary = []
        errors = []
        for p in tqdm(primes, desc="Перепись", unit="p"):
            try:
                census = bloch_census(p, workers=workers)
            except DQSimError as e:
                logger.error(f"Ошибка при переписи p={p}: {e}")
                errors.append(f"p={p}: {e}")
                continue
            writer.write_json(census.to_json(), f"census_p{p}.json")
            writer.write_csv(census.csv_rows(), f"census_p{p}.csv")
            summary.append({
                "p": p,
                "unit_vectors": census.unit_vectors,
                "classes": census.classes,
                "phases": census.phases,
                "formula_matches": census.formula_matches,
            })

        writer.write_csv(summary, "census_summary.csv")
        mismatches = [row["p"] for row in summary if not row["formula_matches"]]
        if mismatches:
            logger.warning(f"Число классов отличается от p(p-1) для p = {mismatches}")
        if errors:
            logger.error(f"Ошибок: {len(errors)}")
            for error in errors:
                logger.error(f"  {error}")
            sys.exit(1)
        logger.info("Перепись успешно завершена")

    except KeyboardInterrupt:
        logger.info("\nПерепись прервана пользователем")
        sys.exit(0)
    except Exception as e:
        logger.error(f"Критическая ошибка: {e}")
        logger.error(traceback.format_exc())
        sys.exit(1)


if __name__ == "__main__":
    main()
