from __future__ import annotations

import json
from pathlib import Path

import pytest

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "data" / "fixture"

# designed into the fixture corpus: a 1910s Balkans selection of 12 events
BALKANS_BBOX = (41.5, 17.0, 48.5, 27.5)
BALKANS_IDS = {
    "assassination_sarajevo", "balkan_league", "battle_of_cer", "bosnian_crisis",
    "budapest_unrest", "bulgarian_entry", "doiran_offensive", "first_balkan_war",
    "montenegrin_campaign", "romanian_campaign", "second_balkan_war", "sofia_mobilization",
}
BALKANS_COUNTRIES = {"RS": 4, "BG": 3, "BA": 2, "RO": 1, "ME": 1, "HU": 1}


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def fixture_config_file(tmp_path_factory) -> Path:
    """Config pointing at the shipped fixture inputs with a fresh out dir."""
    out = tmp_path_factory.mktemp("pipeline_out")
    base = json.loads((FIXTURE_DIR / "config.json").read_text())
    base["snapshot"] = str(FIXTURE_DIR / "snapshot.jsonl")
    base["gazetteer"] = str(FIXTURE_DIR / "gazetteer.tsv")
    base["clickstream"] = str(FIXTURE_DIR / "clickstream.tsv")
    base["out_dir"] = str(out)
    path = out / "config.json"
    path.write_text(json.dumps(base))
    return path


@pytest.fixture(scope="session")
def built_pipeline(fixture_config_file):
    """Run every stage once per session; returns the loaded config."""
    from eventatlas.config import load_config
    from eventatlas import pipeline

    cfg = load_config(fixture_config_file)
    pipeline.run_all(cfg)
    return cfg


@pytest.fixture(scope="session")
def engine(built_pipeline):
    from eventatlas.pipeline import build_engine

    return build_engine(built_pipeline)
