from hypothesis import settings

# exact arithmetic and the first sympy import make wall-clock deadlines meaningless
settings.register_profile("exact", deadline=None, derandomize=True)
settings.load_profile("exact")
