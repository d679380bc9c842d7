"""
Logging setup, custom events and the reduction-step trace.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from edgedecomp.config import Settings

logger = logging.getLogger(__name__)

SIMPLE_FORMAT = "%(levelname)s %(message)s"
DETAILED_FORMAT = "%(asctime)s %(levelname)s [%(name)s:%(lineno)d] %(message)s"


def configure_logging(settings: Settings, level: Optional[str] = None) -> None:
    """Configure the root logger from settings (``level`` overrides)."""
    fmt = DETAILED_FORMAT if settings.logging.format == "detailed" else SIMPLE_FORMAT
    logging.basicConfig(level=(level or settings.logging.level).upper(), format=fmt, force=True)


def log_custom_event(event_name: str, properties: dict = None, measurements: dict = None):
    """Log a structured event as a single INFO record."""
    logger.info(f"EVENT: {event_name} | Properties: {properties or {}} | Measurements: {measurements or {}}")


class ReductionStep(str, Enum):
    """Which case of the driver fired."""
    SMALL_CASE = "SmallCase"
    SPECIAL_GRAPH = "SpecialGraph"
    USEFUL_CUT_SPLIT = "UsefulCutSplit"
    DEGREE2_SUPPRESSION = "Degree2Suppression"
    TWO_EDGE_CUT_REDUCE = "TwoEdgeCutReduce"
    TERMINAL_DEGREE_CASE = "TerminalDegreeCase"
    PROPERTY1_CASE = "Property1Case"
    PROPERTY2_CASE = "Property2Case"
    PROPERTY3_CASE = "Property3Case"
    REDUCING_PATH_SEARCH = "ReducingPathSearch"
    ENDGAME_ODD = "EndgameOdd"
    ENDGAME_DOUBLE_CENTERED = "EndgameDoubleCentered"
    # cycle drivers and the degree-4 path driver
    BLOCK_SPLIT = "BlockSplit"
    REDUCING_CYCLE = "ReducingCycle"
    HAMILTONIAN_SMALL = "HamiltonianSmall"
    K4_FREE_ROUTE = "K4FreeRoute"
    K4_CASE = "K4Case"
    SIX_CIRCUIT = "SixCircuit"
    SIX_CIRCUIT_SPECIAL = "SixCircuitSpecial"
    LOW_DEGREE_PATH = "LowDegreePath"
    # bounded exhaustive search standing in for a construction that did not apply
    EXACT_FALLBACK = "ExactFallback"


@dataclass
class StepTrace:
    """Ordered record of the steps a driver call fired."""
    steps: list[str] = field(default_factory=list)

    def record(self, step: ReductionStep, case: Optional[str] = None) -> None:
        tag = step.value if case is None else f"{step.value}:{case}"
        self.steps.append(tag)
        logger.debug(f"reduction step {tag}")

    def histogram(self) -> Counter:
        return Counter(tag.split(":", 1)[0] for tag in self.steps)

    def __len__(self) -> int:
        return len(self.steps)
