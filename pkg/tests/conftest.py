import numpy as np
import pytest

from src.applications.graphs import Digraph, cycle_digraph


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def triangle():
    return cycle_digraph(3)


@pytest.fixture
def single_arc():
    return Digraph.from_arcs(2, [(0, 1)])


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("# directed triangle\n1 2\n2 3\n3 1\n", encoding="utf-8")
    return str(path)
