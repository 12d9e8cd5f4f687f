import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


finite = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


@st.composite
def state_vectors(draw):
    """Normalised 4-component complex vectors, bounded away from zero norm."""
    re = np.array(draw(st.lists(finite, min_size=4, max_size=4)))
    im = np.array(draw(st.lists(finite, min_size=4, max_size=4)))
    v = re + 1j * im
    n = np.linalg.norm(v)
    if n < 1e-3:
        v = np.array([1, 0, 0, 0], dtype=complex)
        n = 1.0
    return v / n


@st.composite
def density_matrices(draw, rank: int | None = None):
    k = draw(st.integers(1, 4)) if rank is None else rank
    vecs = [draw(state_vectors()) for _ in range(k)]
    w = np.array(draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k)))
    w = w / w.sum()
    m = sum(p * np.outer(v, v.conj()) for p, v in zip(w, vecs))
    m = (m + m.conj().T) / 2
    return m / np.trace(m).real


def random_density(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
