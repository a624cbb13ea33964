"""Growth app configuration."""
from django.apps import AppConfig


class GrowthConfig(AppConfig):
    """Growth simulator app configuration."""
    name: str = 'growth'
    verbose_name: str = 'AGI growth simulator'

    def ready(self) -> None:
        """Import Celery tasks so that they are registered."""
        import growth.tasks  # noqa: F401
