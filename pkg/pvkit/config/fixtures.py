"""
Bundled fixture registry: Hopf-Galois extensions and group actions shipped with pvkit.
"""

from pathlib import Path
from typing import Dict, List, NamedTuple, Optional

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

EXTENSION = "extension"
ACTION = "action"


class FixtureInfo(NamedTuple):
    filename: str
    kind: str
    zeta_level: Optional[int]
    description: str


FIXTURES: Dict[str, FixtureInfo] = {
    # === EXTENSIONS ===
    "kummer-2": FixtureInfo("kummer-2.json", EXTENSION, 2, "F[t]/(t^2 - x) given by explicit tables"),
    "kummer-3": FixtureInfo("kummer-3.json", EXTENSION, 3, "F[t]/(t^3 - x), needs zeta_3"),
    "kummer-4": FixtureInfo("kummer-4.json", EXTENSION, 4, "F[t]/(t^4 - x), needs zeta_4"),
    "split-3": FixtureInfo("split-3.json", EXTENSION, None, "functions on mu_3 with the zero derivation"),
    "kummer-2-trivial-coaction": FixtureInfo(
        "kummer-2-trivial-coaction.json", EXTENSION, 2, "kummer-2 with the coaction s -> s (x) 1 (not Hopf-Galois)"
    ),
    # === ACTIONS ===
    "mu2-gm": FixtureInfo("mu2-gm.json", ACTION, 2, "mu_2 acting trivially on G_m"),
    "mu3-gm": FixtureInfo("mu3-gm.json", ACTION, 3, "mu_3 acting trivially on G_m"),
    "mu4-gm": FixtureInfo("mu4-gm.json", ACTION, 4, "mu_4 acting trivially on G_m"),
    "mu3-ga": FixtureInfo("mu3-ga.json", ACTION, None, "mu_3 acting trivially on G_a"),
}


def get_fixture_by_key(key: str) -> Optional[FixtureInfo]:
    """Get fixture info by key"""
    return FIXTURES.get(key)


def get_fixture_keys() -> List[str]:
    """Get all fixture keys"""
    return list(FIXTURES.keys())


def get_fixtures_by_kind(kind: str) -> Dict[str, FixtureInfo]:
    """Get fixtures of one kind (extension or action)"""
    return {key: info for key, info in FIXTURES.items() if info.kind == kind}


def fixture_path(key: str) -> Path:
    info = FIXTURES[key]
    return FIXTURE_DIR / info.filename
