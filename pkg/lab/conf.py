from django.conf import settings

_DEFAULTS = {
    'MAX_STEPS': 1_000_000,
    'DEFAULT_BUDGET': 4096,
    'DEFAULT_DEPTH': 16,
    'DISPATCH_CACHE_SIZE': 65536,
    'FIXTURE_DIR': None,
}


def lab_setting(name):
    return getattr(settings, 'OMEGALAB', {}).get(name, _DEFAULTS[name])


# Every simulation runs under the global cap, whatever budget it was given
def clamp_budget(budget):
    if budget < 1:
        raise ValueError(f'budget must be at least 1, got {budget}')
    return min(budget, lab_setting('MAX_STEPS'))
