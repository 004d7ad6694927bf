from django.apps import AppConfig


class ConfcatConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "confcat"
    verbose_name = "Configuration categories"
