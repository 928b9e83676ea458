import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
SCHEMA_DIR = REPO_ROOT / "schemas"


@pytest.fixture(scope="session")
def schema_loader():
    def load(name: str) -> dict:
        with open(SCHEMA_DIR / f"{name}.schema.json") as fh:
            return json.load(fh)

    return load
