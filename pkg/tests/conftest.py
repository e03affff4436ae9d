import random

import pytest

from padiczeros import QuadraticForm, field
from padiczeros.pencils import Pencil


def random_form(spec, n, rng, density=0.6):
    coeffs = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if rng.random() < density:
                coeffs[(i, j)] = rng.randrange(spec.q)
    return QuadraticForm(spec, n, coeffs)


def random_pencil(spec, n, r, rng, density=0.6):
    return Pencil([random_form(spec, n, rng, density) for _ in range(r)])


def random_invertible(spec, n, rng):
    from padiczeros import linalg

    while True:
        rows = [[rng.randrange(spec.q) for _ in range(n)] for _ in range(n)]
        if linalg.is_invertible(spec, rows):
            return rows


def brute_zero_count(form):
    q, n = form.field.q, form.n
    count = 0
    x = [0] * n
    while True:
        if form.evaluate_repr(x) == 0:
            count += 1
        for i in range(n - 1, -1, -1):
            x[i] += 1
            if x[i] < q:
                break
            x[i] = 0
        else:
            return count


@pytest.fixture
def rng():
    return random.Random(20260809)


@pytest.fixture(params=[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def any_field(request):
    return field(*request.param)
