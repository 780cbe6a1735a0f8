import random

import pytest
from hypothesis import settings

from bezred import Integers, PolyRing, Product, Zmod, quotient_ring

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

Z = Integers()
F2 = PolyRing(2)
F3 = PolyRing(3)

# one representative per ring family, plus some with many zero divisors
FAMILIES = {
    "Z": Z,
    "GF(3)[x]": F3,
    "Zmod(12)": Zmod(12),
    "Zmod(36)": Zmod(36),
    "F2[x]/(x^2+x)": quotient_ring(F2, (0, 1, 1)),
    "F3[x]/(x^3)": quotient_ring(F3, (0, 0, 0, 1)),
    "Prod(Zmod(4),Zmod(6))": Product(Zmod(4), Zmod(6)),
    "Prod(Z,Zmod(4))": Product(Z, Zmod(4)),
}


def random_element(ring, rnd: random.Random, bound: int = 60):
    if isinstance(ring, Product):
        return (random_element(ring.left, rnd, bound), random_element(ring.right, rnd, bound))
    if ring.is_finite:
        return ring.element_at(rnd.randrange(ring.size()))
    if isinstance(ring, Integers):
        return rnd.randint(-bound, bound)
    return ring.element_at(rnd.randrange(ring.p ** 4))


@pytest.fixture(params=sorted(FAMILIES), ids=str)
def family(request):
    return FAMILIES[request.param]
