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
"""Common enums shared across the DCSK simulation and analysis modules."""

from enum import Enum


class SweepSystem(str, Enum):
    """System variants a sweep can evaluate.

    Attributes:
        CC_SIM: Monte Carlo simulation of the cooperative (decode-and-forward) system.
        NC_SIM: Monte Carlo simulation of the non-cooperative baseline.
        CC_ANALYTICAL: Published analysis (corrected conditional BER, all-or-nothing relays).
        CC_ANALYTICAL_EXACT: Exact receiver kernel with per-relay decode mixture and EGC branches.
    """
    CC_SIM = 'cc_sim'
    NC_SIM = 'nc_sim'
    CC_ANALYTICAL = 'cc_analytical'
    CC_ANALYTICAL_EXACT = 'cc_analytical_exact'

    @property
    def is_simulated(self) -> bool:
        """Whether the system is estimated by Monte Carlo simulation."""
        return self in (SweepSystem.CC_SIM, SweepSystem.NC_SIM)

    @property
    def is_cooperative(self) -> bool:
        """Whether the system uses the two-phase cooperative protocol."""
        return self is not SweepSystem.NC_SIM


class ThroughputSystem(str, Enum):
    """Systems with a normalized-throughput definition.

    Attributes:
        CC: Cooperative system, eta = 1 - BER.
        NC: Non-cooperative system, eta = 1 - BER.
        MIMO: Multi-antenna relay system, eta = (N - 1) / N * (1 - BER).
    """
    CC = 'cc'
    NC = 'nc'
    MIMO = 'mimo'


class BerKernel(str, Enum):
    """Conditional BER kernel used by the analysis.

    Attributes:
        GAUSSIAN: Gaussian-approximation conditional BER.
        EXACT: Exact non-central F error probability of the implemented GML receiver.
    """
    GAUSSIAN = 'gaussian'
    EXACT = 'exact'


class RelayModel(str, Enum):
    """How relay decoding failures enter the system BER.

    Attributes:
        ALL_OR_NOTHING: Published combination, relays succeed or fail together.
        PER_RELAY: Binomial mixture over how many relays decoded the user correctly.
    """
    ALL_OR_NOTHING = 'all_or_nothing'
    PER_RELAY = 'per_relay'


class RelayPolicy(str, Enum):
    """What a relay forwards in the second phase.

    Attributes:
        PER_USER: Forward every user decoded correctly, omit the others.
        ALL_OR_NOTHING: Stay idle if any user was decoded wrongly.
        IDLE: Never forward (diagnostic).
    """
    PER_USER = 'per_user'
    ALL_OR_NOTHING = 'all_or_nothing'
    IDLE = 'idle'


class Combining(str, Enum):
    """How the destination treats a user's second-phase metric.

    Attributes:
        BLIND: Always add it, as if every relay had forwarded.
        INFORMED: Drop it when no relay forwarded the user.
    """
    BLIND = 'blind'
    INFORMED = 'informed'


class Experiment(str, Enum):
    """Preset experiments of the `reproduce` command."""
    BER = 'ber'
    THROUGHPUT = 'throughput'
    FADING = 'fading'
