import numpy as np
import pytest

from farstate import codes


@pytest.fixture(scope="session")
def five_qubit_code():
    return codes.preset_code("five_qubit_513")


@pytest.fixture(scope="session")
def five_qubit_state(five_qubit_code):
    return codes.codeword(five_qubit_code, 0)


@pytest.fixture(scope="session")
def ghz5():
    from farstate.pauli import StateVector

    amps = np.zeros(32, dtype=complex)
    amps[0] = amps[31] = 1.0 / np.sqrt(2.0)
    return StateVector(5, amps)
