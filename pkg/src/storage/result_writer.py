import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class ResultWriter:
    def __init__(self, out_dir: Optional[str] = None):
        """
        Инициализация записи результатов

        Args:
            out_dir: каталог для относительных путей (по умолчанию текущий)
        """
        self.out_dir = Path(out_dir) if out_dir else Path(".")

    @staticmethod
    def dumps(payload: Any) -> str:
        """Детерминированный JSON: отступ 2, сортировка ключей, без ASCII-экранирования"""
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @staticmethod
    def csv_text(rows: List[Dict[str, Any]]) -> str:
        """CSV с заголовком из ключей первой строки"""
        if not rows:
            return ""
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()

    def _resolve(self, path: str) -> Path:
        target = Path(path)
        if not target.is_absolute():
            target = self.out_dir / target
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def write_json(self, payload: Any, path: str) -> Path:
        """
        Запись результата в JSON

        Args:
            payload: сериализуемый словарь
            path: путь к файлу

        Returns:
            путь к записанному файлу
        """
        target = self._resolve(path)
        target.write_text(self.dumps(payload), encoding="utf-8")
        logger.info(f"Результат записан: {target}")
        return target

    def write_csv(self, rows: List[Dict[str, Any]], path: str) -> Path:
        target = self._resolve(path)
        target.write_text(self.csv_text(rows), encoding="utf-8")
        logger.info(f"CSV записан: {target}")
        return target

    def load_json(self, path: str) -> Dict[str, Any]:
        target = Path(path)
        if not target.is_absolute():
            target = self.out_dir / target
        return json.loads(target.read_text(encoding="utf-8"))

    def list_results(self, pattern: str = "*.json") -> List[Path]:
        """Файлы результатов в каталоге, по имени"""
        return sorted(self.out_dir.glob(pattern))
