import json

import pytest

from growth.models import AutomationCost
from growth.scenario_file import bundled_scenario_path, load_document

from .factories import ScenarioFactory


@pytest.fixture
def baseline_scenario():
    return ScenarioFactory()


@pytest.fixture
def unautomatable_scenario():
    """Physical work can never be automated."""
    return ScenarioFactory(tasks__physical__cost=AutomationCost.infinite())


@pytest.fixture
def baseline_document():
    return load_document(bundled_scenario_path())


@pytest.fixture
def celery_eager(monkeypatch):
    from moravec_growth.celery import app

    monkeypatch.setattr(app.conf, 'task_always_eager', True)
    monkeypatch.setattr(app.conf, 'task_eager_propagates', True)
    return app


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario document to a JSON file and return its path."""
    def write(document, name='scenario.json'):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding='utf-8')
        return str(path)

    return write
