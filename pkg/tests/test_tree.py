import pytest

from src.errors import BadParameters
from src.tree import RootedTree, SubTree, read_tree, tree_from_parents, write_tree


@pytest.fixture
def spider():
    """根 0 下三条腿: 0-1-2, 0-3-4, 0-5"""
    return tree_from_parents([0, 0, 1, 0, 3, 0], [0, 1, 2, 3, 4, 5])


class TestRootedTree:
    def test_from_edges(self):
        tree = RootedTree.from_edges([(2, 1, 4), (0, 1, 3), (3, 1, 1)], root=0)
        assert tree.parent == {0: None, 1: 0, 2: 1, 3: 1}
        assert tree.total_weight() == 8
        assert tree.children[1] == [2, 3]

    def test_from_edges_rejects_cycles(self):
        with pytest.raises(BadParameters):
            RootedTree.from_edges([(0, 1, 1), (1, 2, 1), (2, 0, 1)], root=0)

    def test_paths(self, spider):
        assert spider.lca(2, 4) == 0
        assert sorted(spider.path_edges(2, 4)) == [1, 2, 3, 4]
        assert spider.path_vertices(2, 4) == [2, 1, 0, 3, 4]
        assert spider.path_weight(2, 5) == 1 + 2 + 5
        assert spider.is_ancestor(1, 2)
        assert not spider.is_ancestor(3, 2)

    def test_sizes_and_leaves(self, spider):
        assert spider.size[0] == 6
        assert spider.size[3] == 2
        assert spider.leaves() == [2, 4, 5]

    def test_file_round_trip(self, tmp_path, spider):
        path = tmp_path / "t.txt"
        write_tree(spider, path)
        back = read_tree(path)
        assert back.root == 0
        assert back.edges() == spider.edges()

    def test_two_roots(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("1 0 1\n3 2 1\n")
        with pytest.raises(BadParameters):
            read_tree(path)


class TestSubTree:
    def test_disconnected_edge_set(self, spider):
        with pytest.raises(BadParameters):
            SubTree(spider, [2, 4])

    def test_special_vertices(self, spider):
        sub = SubTree.from_vertices(spider, [0, 1, 3, 4])
        assert sub.top == 0
        assert sub.special_vertices() == [1, 4]

    def test_cover_mask_projects_outside_endpoints(self, spider):
        sub = SubTree.from_vertices(spider, [0, 1, 3, 4])
        mask = sub.cover_mask(2, 4)
        assert sorted(sub.mask_edges(mask)) == [1, 3, 4]
        assert sub.mask_weight(mask) == 1 + 3 + 4
        assert sub.cover_mask(2, 1) == 0

    def test_union(self, spider):
        left = SubTree(spider, [1, 2])
        right = SubTree(spider, [3])
        assert left.union(right).edges == [1, 2, 3]
