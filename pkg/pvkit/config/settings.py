"""
Runtime configuration for pvkit.
"""

import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_ZETA_LEVEL = int(os.getenv("PVKIT_ZETA_LEVEL", "4"))
MAX_FACTOR_DEGREE = int(os.getenv("PVKIT_MAX_FACTOR_DEGREE", "12"))

H1_MAX_GROUP_ORDER = int(os.getenv("PVKIT_H1_MAX_GROUP_ORDER", "12"))
EQUIVALENCE_MAX_RANK = int(os.getenv("PVKIT_EQUIVALENCE_MAX_RANK", "2"))
EQUIVALENCE_MAX_ORDER = int(os.getenv("PVKIT_EQUIVALENCE_MAX_ORDER", "6"))

# bounds of the rational witness search for non-diagonal delta-CSAs
SPLIT_SEARCH_POLE_ORDER = int(os.getenv("PVKIT_SPLIT_SEARCH_POLE_ORDER", "2"))
SPLIT_SEARCH_DEGREE = int(os.getenv("PVKIT_SPLIT_SEARCH_DEGREE", "3"))

LOG_LEVEL = os.getenv("PVKIT_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
