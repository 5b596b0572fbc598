from django.apps import AppConfig


class IbodyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'ibody'
    verbose_name = 'Intersection Bodies'
