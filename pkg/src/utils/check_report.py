from collections import Counter
from pathlib import Path
from typing import Iterable

from ..storage.models import CheckResult


class CheckReport:
    """Текстовый отчет по набору проверок"""

    def __init__(self):
        self.total_checks = 0
        self.passed = Counter()
        self.failed = Counter()
        self.hypotheses = []
        self.errors = []

    def add_check(self, check: CheckResult):
        """
        Добавление результата проверки в статистику

        Args:
            check: результат одной проверки
        """
        self.total_checks += 1
        if check.kind == "hypothesis":
            verdict = "подтверждена" if check.passed else "опровергнута"
            self.hypotheses.append(f"{check.name}: {verdict} (ожидалось {check.expected}, получено {check.observed})")
        if check.passed:
            self.passed[check.group] += 1
        else:
            self.failed[check.group] += 1
        if check.error:
            self.errors.append(f"{check.name}: {check.error}")

    def _format_counter(self, counter: Counter, limit: int = 20) -> str:
        """
        Форматирование Counter в виде столбчатой диаграммы

        Args:
            counter: объект Counter
            limit: максимальное количество строк

        Returns:
            отформатированная строка
        """
        # по убыванию счета, затем по имени группы
        items = sorted(counter.items(), key=lambda item: (-item[1], item[0]))[:limit]
        if not items:
            return "Нет данных"

        max_count = max(count for _, count in items)
        bar_width = 30

        result = []
        for item, count in items:
            bar_length = int((count / max_count) * bar_width)
            bar = '█' * bar_length + '░' * (bar_width - bar_length)
            percentage = (count / self.total_checks) * 100 if self.total_checks > 0 else 0
            result.append(f"{str(item):20} [{bar}] {count:4} ({percentage:5.1f}%)")

        return '\n'.join(result)

    def get_report(self) -> str:
        """
        Получение полного отчета

        Returns:
            отформатированный отчет
        """
        sections = [
            ("Общая статистика", f"""
Всего проверок: {self.total_checks}
Пройдено: {sum(self.passed.values())}
Не пройдено: {sum(self.failed.values())}
            """),
            ("Пройдено по группам", self._format_counter(self.passed)),
            ("Не пройдено по группам", self._format_counter(self.failed)),
        ]
        if self.hypotheses:
            sections.append(("Гипотезы", '\n'.join(f"- {h}" for h in self.hypotheses)))
        if self.errors:
            sections.append(("Ошибки", '\n'.join(f"- {error}" for error in self.errors)))

        report = []
        for title, content in sections:
            report.extend([
                "\n" + "=" * 80,
                title,
                "=" * 80,
                content.strip()
            ])
        return '\n'.join(report)

    def save_report(self, output_dir: str, name: str = "verify_report.txt") -> Path:
        """
        Сохранение отчета в файл (без отметки времени, чтобы повторные запуски совпадали)

        Args:
            output_dir: каталог для отчета
            name: имя файла
        """
        report_path = Path(output_dir) / name
        report_path.parent.mkdir(parents=True, exist_ok=True)
        with open(report_path, 'w', encoding='utf-8') as f:
            f.write(self.get_report())
        return report_path


def build_report(checks: Iterable[CheckResult]) -> CheckReport:
    report = CheckReport()
    for check in checks:
        report.add_check(check)
    return report
