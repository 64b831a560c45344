import pytest

from fairodds import GroupConfusion, stats_from_counts

# The worked example's confusion counts, cell order (tp, fn, fp, tn).
POINT_COUNTS = {
    "A": ((600, 1400, 1200, 2800), (60, 140, 540, 1260)),
    "B": ((1400, 600, 1200, 2800), (140, 60, 540, 1260)),
    "C": ((1400, 600, 400, 3600), (140, 60, 460, 1340)),
}


def point_confusions(point):
    cells0, cells1 = POINT_COUNTS[point]
    return GroupConfusion(*cells0), GroupConfusion(*cells1)


@pytest.fixture
def point_stats():
    def make(point):
        return stats_from_counts(*point_confusions(point))

    return make


@pytest.fixture(scope="session")
def api():
    from fastapi.testclient import TestClient

    from fairodds.service.app import create_app

    with TestClient(create_app()) as client:
        yield client
