from hypothesis import HealthCheck, settings

# the random Elliott builders make many small draws per example
settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.large_base_example, HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")
