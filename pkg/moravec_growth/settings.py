"""Django settings for the moravec_growth project."""
from pathlib import Path
import os
from dotenv import load_dotenv
from typing import Any, Dict, List

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY: str = os.getenv('SECRET_KEY', 'django-insecure-growth-simulator')

DEBUG: bool = os.getenv('DEBUG', 'False') == 'True'

# Application definition
INSTALLED_APPS: List[str] = [
    'growth.apps.GrowthConfig',
]

# The simulator keeps no persistent state.
DATABASES: Dict[str, Dict[str, Any]] = {}

# Internationalization
LANGUAGE_CODE: str = 'en-us'
TIME_ZONE: str = 'UTC'
USE_I18N: bool = False
USE_TZ: bool = True

# Bundled scenario files
SCENARIO_DIR: Path = Path(os.getenv('SCENARIO_DIR', BASE_DIR / 'growth' / 'scenarios'))

# Numerical tolerances (see growth.conf.SolverSettings)
GROWTH_SOLVER: Dict[str, Any] = {
    'BISECTION_XTOL': float(os.getenv('GROWTH_BISECTION_XTOL', '1e-12')),
    'BISECTION_MAXITER': int(os.getenv('GROWTH_BISECTION_MAXITER', '1100')),
    'AUTOMATION_EPSILON': float(os.getenv('GROWTH_AUTOMATION_EPSILON', '1e-9')),
    'KKT_TOLERANCE': float(os.getenv('GROWTH_KKT_TOLERANCE', '1e-9')),
    'ORACLE_GRID_POINTS': int(os.getenv('GROWTH_ORACLE_GRID_POINTS', '101')),
}

# Celery Configuration
CELERY_BROKER_URL: str = os.getenv('REDIS_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND: str = os.getenv('CELERY_RESULT_BACKEND', CELERY_BROKER_URL)
CELERY_ACCEPT_CONTENT: List[str] = ['application/json']
CELERY_TASK_SERIALIZER: str = 'json'
CELERY_RESULT_SERIALIZER: str = 'json'
CELERY_TIMEZONE: str = TIME_ZONE
# Run tasks in-process (tests and single-machine sweeps)
CELERY_TASK_ALWAYS_EAGER: bool = os.getenv('CELERY_TASK_ALWAYS_EAGER', 'False') == 'True'
CELERY_TASK_EAGER_PROPAGATES: bool = True

# Worker Configuration
CELERY_WORKER_CONCURRENCY: int = int(os.getenv('CELERY_WORKER_CONCURRENCY', '4'))
CELERY_WORKER_PREFETCH_MULTIPLIER: int = 1
CELERY_WORKER_MAX_TASKS_PER_CHILD: int = 1000
# A single sweep row solves in milliseconds
CELERY_TASK_TIME_LIMIT: int = 5 * 60
CELERY_TASK_SOFT_TIME_LIMIT: int = 4 * 60

# Logging Configuration
# Everything goes to stderr so that CSV and JSON on stdout stay byte-identical.
LOGGING: Dict[str, Any] = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'INFO',
    },
    'loggers': {
        'growth': {
            'handlers': ['console'],
            'level': os.getenv('GROWTH_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
