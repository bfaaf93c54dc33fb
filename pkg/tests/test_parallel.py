import os

import pytest

from thetaphase._parallel import parallel_map, thread_count


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("THETA_PHASE_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("THETA_PHASE_THREADS", "0")
    assert thread_count() == min(8, os.cpu_count() or 1)
    monkeypatch.delenv("THETA_PHASE_THREADS")
    assert thread_count() >= 1
    for bad in ("-1", "two"):
        monkeypatch.setenv("THETA_PHASE_THREADS", bad)
        with pytest.raises(ValueError):
            thread_count()


@pytest.mark.parametrize("threads", ["1", "4"])
def test_parallel_map_preserves_order(monkeypatch, threads):
    monkeypatch.setenv("THETA_PHASE_THREADS", threads)
    assert parallel_map(lambda x: x * x, range(20)) == [x * x for x in range(20)]
