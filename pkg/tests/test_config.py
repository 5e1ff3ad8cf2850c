from pathlib import Path

import pytest

from src.config import Config, G1Config, MstQueryConfig
from src.errors import BadParameters

REPO_CONFIG = Path(__file__).resolve().parent.parent / "config.yaml"


class TestConfig:
    def test_repository_yaml(self):
        config = Config.from_file(str(REPO_CONFIG))
        assert config == Config()
        assert config.output_dir == Path("results")

    def test_key_value_file(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("# local run\nprofile = paper\nnum_workers = 4  # cores\n\nstream_order = ascending\n")
        config = Config.from_file(str(path))
        assert (config.profile, config.num_workers, config.stream_order) == ("paper", 4, "ascending")
        assert config.tsp_alpha == 0.715

    def test_bad_line(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("profile paper\n")
        with pytest.raises(BadParameters, match="expected .key = value."):
            Config.from_file(str(path))

    def test_unknown_keys_ignored(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("seed: 7\nbatch_size: 32\n")
        config = Config.from_file(str(path))
        assert config.seed == 7
        assert not hasattr(config, "batch_size")

    def test_invalid_values(self):
        with pytest.raises(BadParameters):
            Config(profile="fast")
        with pytest.raises(BadParameters):
            Config(num_workers=0)

    def test_merged_skips_unset(self):
        config = Config(seed=3).merged(seed=None, profile="paper", output_dir="out")
        assert (config.seed, config.profile, config.output_dir) == (3, "paper", Path("out"))


class TestG1Config:
    def test_desk_profile(self):
        config = G1Config.desk(100)
        assert (config.ell, config.h, config.q) == (10, 2, 5000)
        assert config.tour_factor == 5.0
        assert G1Config.paper(100).tour_factor == 100.0

    def test_paper_profile(self):
        config = G1Config.for_profile("paper", 100)
        assert config.ell == 1000
        assert config.eps_hat == 2.0 ** -40
        assert config.h == 1

    def test_overrides(self):
        assert G1Config.desk(16, q=7).q == 7

    def test_rejected_values(self):
        with pytest.raises(BadParameters):
            G1Config.for_profile("fast", 10)
        with pytest.raises(BadParameters):
            G1Config.desk(10, h=1)
        with pytest.raises(BadParameters):
            G1Config.desk(10, eps=1.0)
        with pytest.raises(BadParameters):
            G1Config.desk(10, q=0)
        with pytest.raises(BadParameters):
            G1Config.desk(10, tour_factor=0.5)


class TestMstQueryConfig:
    def test_desk_profile(self):
        config = MstQueryConfig.desk(100)
        assert (config.ell, config.k, config.c) == (10, 40, 4)
        assert config.eps1 == pytest.approx(0.005)
        assert config.eps2 == pytest.approx(0.02 / 1600)

    def test_paper_profile(self):
        config = MstQueryConfig.for_profile("paper", 100)
        assert config.c == 800
        assert config.k == 1000
        assert config.alpha_match < 1

    def test_rejected_values(self):
        with pytest.raises(BadParameters):
            MstQueryConfig.desk(10, eps=0.0)
        with pytest.raises(BadParameters):
            MstQueryConfig.desk(10, alpha_match=1.0)
        with pytest.raises(BadParameters):
            MstQueryConfig.desk(10, c=0)
        with pytest.raises(BadParameters):
            MstQueryConfig.for_profile("fast", 10)
