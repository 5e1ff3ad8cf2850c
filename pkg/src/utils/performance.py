from typing import Any, Callable, List, Optional
from concurrent.futures import ProcessPoolExecutor
import multiprocessing as mp
import logging

logger = logging.getLogger(__name__)


class ProcessingPool:
    """多进程处理池, 结果保持提交顺序"""

    def __init__(self, num_workers: Optional[int] = None):
        self.num_workers = num_workers or mp.cpu_count()

    def map_batch(self, func: Callable, items: List[Any], batch_size: int = 1) -> List[Any]:
        """批量处理数据"""
        batches = [items[i:i + batch_size] for i in range(0, len(items), batch_size)]
        if self.num_workers == 1 or len(batches) <= 1:
            return [r for batch in batches for r in self._process_batch(func, batch)]

        results: List[Any] = []
        with ProcessPoolExecutor(max_workers=self.num_workers) as executor:
            futures = [executor.submit(self._process_batch, func, batch) for batch in batches]
            for index, future in enumerate(futures):
                try:
                    results.extend(future.result())
                except Exception as e:
                    logger.error(f"Batch {index} processing error: {str(e)}")
                    raise
        return results

    @staticmethod
    def _process_batch(func: Callable, batch: List[Any]) -> List[Any]:
        """处理单个批次"""
        return [func(item) for item in batch]
