#!/usr/bin/env python3
import sys
import json
import argparse
from pathlib import Path

from tabulate import tabulate

project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from src.storage.result_writer import ResultWriter


def summarize(payload: dict) -> list:
    """
    Строка сводки для одного файла результата

    Args:
        payload: содержимое JSON-файла

    Returns:
        [вид, алгоритм/p, вердикт, носитель, вычислений оракула]
    """
    if "unit_vectors" in payload:
        return ["census", f"p={payload['p']}", "-", f"{payload['unit_vectors']}/{payload['classes']}/{payload['phases']}", "-"]
    if "checks" in payload:
        failed = payload.get("failed", [])
        return ["verify-paper", "-", "OK" if not failed else f"FAILED: {', '.join(failed)}", len(payload["checks"]), "-"]
    result = payload.get("result", payload)
    algorithm = payload.get("descriptor", {}).get("algorithm", result.get("algorithm", "?"))
    verdict = result.get("verdict", result.get("index", "-"))
    support = result.get("final_support", "-")
    return ["run", algorithm, verdict, support, result.get("oracle_evals", "-")]


def check_results(results_dir: str):
    """
    Вывод таблицы по всем JSON-результатам каталога

    Args:
        results_dir: каталог с результатами
    """
    writer = ResultWriter(results_dir)
    rows = []
    for path in writer.list_results():
        try:
            rows.append([path.name] + summarize(writer.load_json(path.name)))
        except (json.JSONDecodeError, KeyError, AttributeError) as e:
            rows.append([path.name, "ошибка", str(e), "-", "-", "-"])

    if not rows:
        print(f"В каталоге {results_dir} нет результатов")
        return
    print("\nРезультаты:")
    print(tabulate(rows, headers=["File", "Kind", "Subject", "Verdict", "Support", "Oracle evals"], tablefmt="grid"))


def main():
    parser = argparse.ArgumentParser(description="Сводка по записанным результатам")
    parser.add_argument("results_dir", help="Каталог с JSON-результатами")
    args = parser.parse_args()
    check_results(args.results_dir)


if __name__ == "__main__":
    main()
