from hypothesis import HealthCheck, settings

# property suites run 200 seeded cases; quadrature-backed cases can be slow
# on cold caches, so the per-example deadline is off
settings.register_profile(
    "suite",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
