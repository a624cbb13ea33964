"""Celery configuration for the growth simulator."""
import os
from celery import Celery  # type: ignore

# Set the default Django settings module for the 'celery' program.
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'moravec_growth.settings')

app = Celery('moravec_growth')

# Every CELERY_-prefixed setting (broker, serializers, worker limits, eager
# mode) is read from the Django settings when the app is first configured.
app.config_from_object('django.conf:settings', namespace='CELERY')

# Load task modules from all registered Django app configs.
app.autodiscover_tasks()
