"""共享夹具: 小规模度量与有根树"""
import pytest

from src.generators import gen_cycle_metric, gen_path_metric, gen_random_metric, gen_star_metric
from src.tree import RootedTree


@pytest.fixture
def path_metric():
    return gen_path_metric(6)


@pytest.fixture
def star_metric():
    return gen_star_metric(6)


@pytest.fixture
def cycle_metric():
    return gen_cycle_metric(12)


@pytest.fixture(params=["graphic", "weighted-closure", "euclidean-rounded"])
def random_metric(request):
    return gen_random_metric(9, seed=7, style=request.param)


@pytest.fixture
def path_tree():
    """0-1-2-3, 单位边权, 以 0 为根"""
    return RootedTree(0, {0: None, 1: 0, 2: 1, 3: 2}, {1: 1, 2: 1, 3: 1})
