from pathlib import Path
from typing import Optional, Union
import logging

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(name: str = "src", log_file: Optional[Path] = None,
                 level: Union[int, str] = logging.INFO) -> logging.Logger:
    """配置日志系统: 标准错误输出, 可选再写入文件"""
    formatter = logging.Formatter(FORMAT)

    logger = logging.getLogger(name)
    logger.setLevel(level)
    for old in list(logger.handlers):
        logger.removeHandler(old)

    stream = logging.StreamHandler()
    stream.setFormatter(formatter)
    logger.addHandler(stream)

    if log_file is not None:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_file)
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger
