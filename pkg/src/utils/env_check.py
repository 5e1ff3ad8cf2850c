from typing import List
import logging

logger = logging.getLogger(__name__)

REQUIRED_PACKAGES = [
    "numpy",
    "scipy",
    "pandas",
    "networkx",
    "yaml",
    "tqdm",
]


def missing_dependencies(packages: List[str] = REQUIRED_PACKAGES) -> List[str]:
    missing = []
    for package in packages:
        try:
            __import__(package)
        except ImportError:
            missing.append(package)
    return missing


def check_dependencies() -> bool:
    """检查必要的依赖是否已安装"""
    missing = missing_dependencies()
    if missing:
        logger.error(f"Missing required packages: {', '.join(missing)}")
        return False
    return True
