"""Independent brute-force oracles and small test utilities.

The oracles work on plain coefficient lists (Fractions or complex) with
full-degree polynomial arithmetic followed by a single truncation, so they
share no code path with the library's truncate-at-every-step jets.
"""

from fractions import Fraction

from coeffforge import EXACT, QComplex, SchwarzJet, TruncatedSeries


def poly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else 0
        y = b[k] if k < len(b) else 0
        out.append(x + y)
    return out


def poly_mul_full(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_compose_full(f, g):
    """f(g(x)) by explicit power accumulation, no truncation."""
    out = [f[0]]
    power = [1]
    for coeff in f[1:]:
        power = poly_mul_full(power, g)
        out = poly_add(out, [coeff * c for c in power])
    return out


def truncated(coeffs, order):
    coeffs = list(coeffs) + [0] * max(0, order + 1 - len(coeffs))
    return coeffs[:order + 1]


def floats(series):
    """Coefficients of a series as complex numbers."""
    return [complex(c.to_complex()) if isinstance(c, QComplex) else complex(c)
            for c in series.coeffs]


def assert_series_close(series, expected, tol=1e-12):
    got = floats(series)
    assert len(got) == len(expected), f"order mismatch: {got} vs {expected}"
    for k, (g, e) in enumerate(zip(got, expected)):
        assert abs(g - complex(e)) <= tol, f"coefficient {k}: {g} vs {e}"


def assert_series_exact(series, expected):
    assert series.mode == EXACT
    assert len(series.coeffs) == len(expected)
    for k, e in enumerate(expected):
        assert series[k] == e, f"coefficient {k}: {series[k]} vs {e}"


def q(re, im=0):
    return QComplex(Fraction(re), Fraction(im))


def random_exact_coeff(rng, max_num=6, max_den=5):
    return QComplex(Fraction(int(rng.integers(-max_num, max_num + 1)),
                             int(rng.integers(1, max_den + 1))),
                    Fraction(int(rng.integers(-max_num, max_num + 1)),
                             int(rng.integers(1, max_den + 1))))


def random_exact_normalized(rng, order):
    coeffs = [q(0), q(1)] + [random_exact_coeff(rng) for _ in range(order - 1)]
    from coeffforge import NormalizedSeries
    return NormalizedSeries(coeffs, EXACT)


def random_float_normalized(rng, order, bound=1.0):
    coeffs = [0.0j, 1.0 + 0.0j]
    for _ in range(order - 1):
        r = bound * rng.random() ** 0.5
        coeffs.append(r * complex(*_unit(rng)))
    from coeffforge import NormalizedSeries
    return NormalizedSeries(coeffs, "float")


def _unit(rng):
    import math
    t = 2.0 * math.pi * rng.random()
    return math.cos(t), math.sin(t)


def exact_jet(c1, c2, c3):
    return SchwarzJet(_as_q(c1), _as_q(c2), _as_q(c3))


def _as_q(x):
    if isinstance(x, QComplex):
        return x
    if isinstance(x, tuple):
        return QComplex(Fraction(x[0]), Fraction(x[1]))
    return QComplex(Fraction(x))
