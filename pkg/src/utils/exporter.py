from typing import Any, Dict, Iterable, List, Optional
from pathlib import Path
import json
import logging

import pandas as pd

from src.estimate import COLUMNS, RunRecord

logger = logging.getLogger(__name__)


def records_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    """按固定列顺序构造 DataFrame; 没有记录时只有表头"""
    rows = [r.as_row() for r in records]
    return pd.DataFrame(rows, columns=COLUMNS)


class ResultExporter:
    """运行记录与报告的导出工具"""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def export_to_csv(self, records: List[RunRecord], filename: str) -> Path:
        """导出为CSV文件"""
        try:
            output_path = self.output_dir / f"{filename}.csv"
            write_records(records, output_path)
            logger.info(f"{len(records)} rows exported to {output_path}")
            return output_path
        except Exception as e:
            logger.error(f"Error exporting to CSV: {str(e)}")
            raise

    def export_to_json(self, results: Dict[str, Any], filename: str) -> Path:
        """导出为JSON文件"""
        try:
            output_path = self.output_dir / f"{filename}.json"
            with open(output_path, 'w') as f:
                json.dump(results, f, indent=2, default=str)
            logger.info(f"Results exported to {output_path}")
            return output_path
        except Exception as e:
            logger.error(f"Error exporting to JSON: {str(e)}")
            raise


def write_records(records: Iterable[RunRecord], path: Optional[Path] = None) -> str:
    """写出 CSV; path 为空时返回 CSV 文本"""
    frame = records_frame(records)
    if path is None:
        return frame.to_csv(index=False)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    return str(path)
