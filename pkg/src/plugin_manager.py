from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Type, Union
from pathlib import Path
import importlib.util
import inspect
import logging

import yaml

from src.errors import BadParameters
from src.estimate import Estimate
from src.metric import Metric, WeightedGraph

logger = logging.getLogger(__name__)

Instance = Union[Metric, WeightedGraph]

BUILTIN_PLUGIN_DIR = Path(__file__).parent / "plugins"
BUILTIN_CONFIG_DIR = Path(__file__).resolve().parent.parent / "config" / "plugins"


class EstimatorPlugin(ABC):
    """估计算法插件基类"""

    plugin_type: str = ""  # 插件类型标识
    plugin_name: str = ""  # 插件名称
    version: str = "1.0.0"  # 插件版本

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self._validate_config()

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """输入模型与保证的说明"""
        pass

    @abstractmethod
    def estimate(self, instance: Instance, seed: int = 0, **options) -> Estimate:
        """在一个实例上运行估计"""
        pass

    def _validate_config(self):
        """验证插件配置"""
        required_configs = self.get_required_configs()
        missing = [key for key in required_configs if key not in self.config]
        if missing:
            raise BadParameters(f"Missing required configs for {self.plugin_name}: {missing}")

    @classmethod
    def get_required_configs(cls) -> List[str]:
        """获取必需的配置项"""
        return []

    def get_metadata(self) -> Dict[str, Any]:
        """获取插件元数据"""
        return {
            "type": self.plugin_type,
            "name": self.plugin_name,
            "version": self.version,
            "config": self.config
        }


def register_plugin(plugin_type: str, plugin_name: str):
    """插件注册装饰器"""
    def decorator(cls):
        cls.plugin_type = plugin_type
        cls.plugin_name = plugin_name
        return cls
    return decorator


class PluginManager:
    """插件注册, 默认配置加载与实例化"""

    def __init__(self):
        self.plugins: Dict[str, Type[EstimatorPlugin]] = {}
        self.plugin_instances: Dict[str, EstimatorPlugin] = {}
        self.defaults: Dict[str, Dict[str, Any]] = {}

    def register_plugin(self, plugin_class: Type[EstimatorPlugin]):
        """注册插件类"""
        key = f"{plugin_class.plugin_type}.{plugin_class.plugin_name}"
        self.plugins[key] = plugin_class
        logger.debug(f"Registered plugin: {key}")

    def create_plugin(self, plugin_type: str, plugin_name: str,
                      config: Optional[Dict[str, Any]] = None) -> EstimatorPlugin:
        """创建插件实例, config 覆盖 YAML 中的默认值"""
        key = f"{plugin_type}.{plugin_name}"
        if key not in self.plugins:
            raise BadParameters(f"Plugin not found: {key}")
        merged = dict(self.defaults.get(key, {}))
        merged.update(config or {})
        instance = self.plugins[key](merged)
        self.plugin_instances[key] = instance
        return instance

    def get_plugin(self, plugin_type: str, plugin_name: str) -> Optional[EstimatorPlugin]:
        """获取插件实例"""
        return self.plugin_instances.get(f"{plugin_type}.{plugin_name}")

    def load_plugins(self, plugin_dir: Path = BUILTIN_PLUGIN_DIR):
        """从目录加载插件"""
        plugin_dir = Path(plugin_dir)
        if not plugin_dir.exists():
            raise BadParameters(f"Plugin directory not found: {plugin_dir}")

        for plugin_file in sorted(plugin_dir.glob("*.py")):
            if plugin_file.name.startswith("_"):
                continue

            try:
                module_name = f"src.plugins.{plugin_file.stem}"
                spec = importlib.util.spec_from_file_location(module_name, plugin_file)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)

                # 查找模块中的插件类
                for name, obj in inspect.getmembers(module):
                    if (inspect.isclass(obj) and
                            issubclass(obj, EstimatorPlugin) and
                            obj is not EstimatorPlugin and obj.plugin_name):
                        self.register_plugin(obj)

            except Exception as e:
                logger.error(f"Error loading plugin {plugin_file}: {str(e)}")
                raise

    def load_configs(self, config_dir: Path):
        """读取 config/plugins/*.yaml 中的默认配置 (type, name, config), 后读入的同名项逐项覆盖"""
        config_dir = Path(config_dir)
        if not config_dir.exists():
            logger.warning(f"Plugin config directory not found: {config_dir}")
            return
        for path in sorted(config_dir.glob("*.yaml")):
            with open(path, 'r') as f:
                data = yaml.safe_load(f) or {}
            try:
                key = f"{data['type']}.{data['name']}"
            except KeyError as e:
                raise BadParameters(f"{path}: plugin config needs 'type' and 'name' ({str(e)})")
            self.defaults.setdefault(key, {}).update(data.get("config") or {})
            logger.debug(f"Loaded defaults for {key} from {path}")


def default_manager(config_dir: Optional[Path] = None) -> PluginManager:
    """加载内置插件及其默认配置, config_dir 中的同名配置覆盖内置值"""
    manager = PluginManager()
    manager.load_plugins(BUILTIN_PLUGIN_DIR)
    manager.load_configs(BUILTIN_CONFIG_DIR)
    if config_dir is not None and Path(config_dir).resolve() != BUILTIN_CONFIG_DIR:
        manager.load_configs(config_dir)
    return manager
