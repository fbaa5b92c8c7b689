# Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Walsh code matrix generation and row access.

Rows and columns are 1-based in the public helpers so that user K's two
candidate rows read directly as 2K (bit 0) and 2K - 1 (bit 1).
"""

import numpy as np
from awslabs.dcsk_cc_simulator.consts import WALSH_MAX_EXPONENT
from awslabs.dcsk_cc_simulator.models.modem_models import WalshMatrix
from scipy.linalg import hadamard
from typing import Tuple


def generate(n: int) -> WalshMatrix:
    """Build the Walsh matrix of order 2**n by the block recursion [[W, W], [W, -W]].

    Args:
        n: Exponent, 0 <= n <= WALSH_MAX_EXPONENT.

    Returns:
        The Walsh matrix with int8 entries.

    Raises:
        ValueError: If n is negative or too large to allocate.
    """
    if n < 0 or n > WALSH_MAX_EXPONENT:
        raise ValueError(f'Walsh exponent n must be in [0, {WALSH_MAX_EXPONENT}], got {n}')
    # Sylvester construction, identical to the block recursion seeded with W_1 = 1
    return WalshMatrix(n=n, entries=hadamard(2**n, dtype=np.int8))


def row(m: WalshMatrix, i: int) -> np.ndarray:
    """Return row i (1-based) of the matrix.

    Args:
        m: The Walsh matrix.
        i: Row index, 1 <= i <= 2N.

    Returns:
        A read-only int8 sign vector of length 2N.

    Raises:
        IndexError: If i is out of range.
    """
    if not 1 <= i <= m.order:
        raise IndexError(f'Walsh row index must be in [1, {m.order}], got {i}')
    return m.entries[i - 1]


def user_rows(m: WalshMatrix, user: int) -> Tuple[np.ndarray, np.ndarray]:
    """Return the (bit 0, bit 1) candidate rows of a user.

    Args:
        m: The Walsh matrix.
        user: 1-based user index, 1 <= user <= N.

    Returns:
        Rows 2K and 2K - 1.

    Raises:
        IndexError: If the user does not fit the matrix.
    """
    if not 1 <= user <= m.num_users:
        raise IndexError(f'User index must be in [1, {m.num_users}], got {user}')
    return row(m, 2 * user), row(m, 2 * user - 1)


def signature_table(m: WalshMatrix) -> np.ndarray:
    """Stack every user's candidate rows as a float array of shape (N, 2, 2N).

    Index [k, b] holds the row user k + 1 transmits for bit b.
    """
    entries = m.entries.astype(np.float64)
    # rows 2K (index 2K - 1) for bit 0 and 2K - 1 (index 2K - 2) for bit 1
    return np.stack([entries[1::2], entries[0::2]], axis=1)
