import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from config.settings import FIXTURES_PATH
from src.errors import UnsupportedError, ValidationError

logger = logging.getLogger(__name__)

FIXTURES_VERSION = 1


@dataclass(frozen=True)
class Fixture:
    """Printed values for one reproducible example."""
    example_id: str
    location: str
    data: Dict[str, Any]

    def __getitem__(self, key: str) -> Any:
        return self.data[key]


@lru_cache(maxsize=4)
def _load(path: Path) -> Dict[str, Fixture]:
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError as e:
        raise ValidationError(f"fixtures file {path} not found") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"fixtures file {path} is not valid JSON: {e}") from e

    if raw.get("version") != FIXTURES_VERSION:
        raise ValidationError(f"fixtures file {path} has version {raw.get('version')}, expected {FIXTURES_VERSION}")
    fixtures = {}
    for example_id, block in raw.get("examples", {}).items():
        data = {k: v for k, v in block.items() if k != "location"}
        fixtures[example_id] = Fixture(example_id, block.get("location", ""), data)
    logger.debug(f"loaded {len(fixtures)} fixtures from {path}")
    return fixtures


def load_fixtures(path: Optional[Path] = None) -> Dict[str, Fixture]:
    return _load(Path(path) if path is not None else FIXTURES_PATH)


def get_fixture(example_id: str, path: Optional[Path] = None) -> Fixture:
    fixtures = load_fixtures(path)
    if example_id not in fixtures:
        raise UnsupportedError(f"unknown example id {example_id!r}; known ids: {', '.join(sorted(fixtures))}")
    return fixtures[example_id]
