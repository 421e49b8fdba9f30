#!/usr/bin/env python3
"""
dqsim: точная симуляция модальной и дискретной квантовой теории над конечными полями.

Подкоманды: field-info, census, run, verify-paper.
Коды возврата: 0 - успех, 1 - проверка не пройдена, 2 - некорректный ввод.
"""
import argparse
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional

import psutil
from pydantic import ValidationError
from tabulate import tabulate
from tqdm import tqdm

from src.arithmetic.field import validate_field
from src.errors import DQSimError
from src.experiments.runners import run_descriptor
from src.storage.models import ExperimentDescriptor
from src.storage.result_writer import ResultWriter
from src.theories.discrete import CENSUS_MAX_P, bloch_census, phase_group
from src.utils.check_report import build_report
from src.verification.claim_checks import run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2


def setup_logging(log_file: str = "dqsim.log", verbose: bool = False, quiet: bool = False):
    """
    Настройка логирования

    Args:
        log_file: файл журнала
        verbose: уровень DEBUG
        quiet: только предупреждения и ошибки
    """
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler(log_file, encoding='utf-8')
        ],
        force=True
    )


def _emit(text: str, out: Optional[str]):
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Результат записан: {path}")
    else:
        sys.stdout.write(text)


def cmd_field_info(args) -> int:
    ctx = validate_field(args.p, args.degree)
    info: Dict[str, Any] = {
        "field": str(ctx),
        "p": ctx.p,
        "degree": ctx.degree,
        "elements": ctx.order,
        "degree2_admissible": ctx.p % 4 == 3,
    }
    if ctx.degree == 2:
        info["phases"] = phase_group(ctx.p).order
    if args.format == "json":
        _emit(ResultWriter.dumps(info), args.out)
    elif args.format == "csv":
        _emit(ResultWriter.csv_text([info]), args.out)
    else:
        rows = [[key, value] for key, value in info.items()]
        print(tabulate(rows, headers=["Параметр", "Значение"], tablefmt="grid"))
    return EXIT_OK


def cmd_census(args) -> int:
    if args.workers > 1:
        logger.info(f"CPU: {psutil.cpu_count()}, рабочих процессов: {args.workers}")
    censuses = []
    errors: List[str] = []
    for p in tqdm(args.p, desc="Перепись", disable=args.quiet or len(args.p) == 1 or not sys.stderr.isatty()):
        try:
            censuses.append(bloch_census(p, workers=args.workers))
        except DQSimError as e:
            logger.error(f"Ошибка переписи для p={p}: {e}")
            errors.append(f"p={p}: {e}")

    if censuses:
        if args.format == "csv":
            rows = [row for census in censuses for row in census.csv_rows()]
            _emit(ResultWriter.csv_text(rows), args.out)
        else:
            payload = censuses[0].to_json() if len(censuses) == 1 else {"censuses": [c.to_json() for c in censuses]}
            _emit(ResultWriter.dumps(payload), args.out)
        if args.out:
            table = [[c.p, c.unit_vectors, c.classes, c.phases, c.formula_matches] for c in censuses]
            print(tabulate(table, headers=["p", "unit_vectors", "classes", "phases", "p(p-1)"], tablefmt="grid"))

    if errors:
        logger.error(f"Перепись завершена с ошибками: {len(errors)}")
        return EXIT_INVALID_INPUT
    return EXIT_OK


def cmd_run(args) -> int:
    data = json.loads(Path(args.descriptor).read_text(encoding="utf-8"))
    if args.format:
        data["format"] = args.format
    if args.n is not None:
        data["n"] = args.n
    descriptor = ExperimentDescriptor.model_validate(data)
    result = run_descriptor(descriptor)
    if descriptor.format == "csv":
        _emit(ResultWriter.csv_text(result.csv_rows()), args.out)
    else:
        _emit(ResultWriter.dumps(result.to_json()), args.out)
    verdict = result.result.get("verdict")
    logger.info(f"{descriptor.algorithm}: вердикт {verdict}, вычислений оракула {result.result.get('oracle_evals')}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    suite = run_checks(args.filter, progress=not args.quiet and sys.stderr.isatty())
    if not suite.checks:
        logger.error(f"Нет проверок, подходящих под фильтр {args.filter!r}")
        return EXIT_INVALID_INPUT

    table = [
        [c.name, c.kind, "OK" if c.passed else ("ERROR" if c.error else "FAIL")]
        for c in suite.checks
    ]
    print(tabulate(table, headers=["Проверка", "Вид", "Итог"], tablefmt="grid"))
    if args.out:
        _emit(ResultWriter.dumps(suite.to_json()), args.out)
    if args.report_dir:
        path = build_report(suite.checks).save_report(args.report_dir)
        logger.info(f"Отчет сохранен: {path}")
    for failed in suite.failed:
        print(f"FAILED: {failed.name}")
    return suite.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Точная симуляция квантовых теорий над конечными полями")
    parser.add_argument("--verbose", action="store_true", help="Подробный журнал (DEBUG)")
    parser.add_argument("--quiet", action="store_true", help="Только предупреждения, без индикаторов")
    parser.add_argument("--log-file", default="dqsim.log", help="Файл журнала")
    subparsers = parser.add_subparsers(dest="command", required=True)

    field_info = subparsers.add_parser("field-info", help="Сведения о поле")
    field_info.add_argument("--p", type=int, required=True, help="Характеристика")
    field_info.add_argument("--degree", type=int, default=1, help="Степень расширения (1 или 2)")
    field_info.add_argument("--format", choices=["table", "json", "csv"], default="table")
    field_info.add_argument("--out", help="Файл для вывода")
    field_info.set_defaults(handler=cmd_field_info)

    census = subparsers.add_parser("census", help="Перепись сферы Блоха над F_p²")
    census.add_argument("--p", type=int, nargs="+", required=True, help=f"Характеристики (не больше {CENSUS_MAX_P})")
    census.add_argument("--workers", type=int, default=1, help="Число процессов")
    census.add_argument("--format", choices=["json", "csv"], default="json")
    census.add_argument("--out", help="Файл для вывода")
    census.set_defaults(handler=cmd_census)

    run = subparsers.add_parser("run", help="Запуск эксперимента по дескриптору")
    run.add_argument("descriptor", help="JSON-файл дескриптора")
    run.add_argument("--format", choices=["json", "csv"], help="Переопределить формат вывода")
    run.add_argument("--n", type=int, help="Переопределить арность оракула n")
    run.add_argument("--out", help="Файл для вывода")
    run.set_defaults(handler=cmd_run)

    verify = subparsers.add_parser("verify-paper", help="Воспроизведение всех утверждений")
    verify.add_argument("--filter", help="Группа или подстрока имени проверки")
    verify.add_argument("--out", help="JSON-сводка")
    verify.add_argument("--report-dir", help="Каталог для текстового отчета")
    verify.set_defaults(handler=cmd_verify_paper)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_file, args.verbose, args.quiet)

    try:
        return args.handler(args)
    except (DQSimError, ValidationError) as e:
        logger.error(f"Некорректный ввод: {e}")
        return EXIT_INVALID_INPUT
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Ошибка чтения входных данных: {e}")
        return EXIT_INVALID_INPUT
    except Exception as e:
        logger.error(f"Критическая ошибка: {e}")
        logger.error(traceback.format_exc())
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
