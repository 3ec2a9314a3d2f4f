"""Smoke test for the Python extension: run after `maturin develop` or installing the wheel."""

import math

import ncbeta

b, bbar, method, err = ncbeta.evaluate(5, 5, 54, 0.864)
assert abs(b - 0.4563026193369792) < 1e-13, b
assert abs(b + bbar - 1) < 1e-15
assert err >= 0 and isinstance(method, str)

assert abs(ncbeta.cdf(10, 15, 0, 0.45) - 0.7008732675390894) < 1e-13
assert abs(ncbeta.sf(30, 30, 100, 0.1) - 1) < 1e-15
assert abs(ncbeta.cdf(30, 30, 100, 0.1) / 5.3412931617432743e-33 - 1) < 1e-11

route, member, _ = ncbeta.explain(30, 30, 100, 0.1)
assert (route, member) == ("saddle", "B"), (route, member)

x = ncbeta.invert_x(10, 15, 0.45, 0.5)
assert abs(ncbeta.cdf(10, 15, x, 0.45) - 0.5) < 1e-10
y = ncbeta.invert_y(10, 15, 4.5, 0.01)
assert abs(ncbeta.cdf(10, 15, 4.5, y) - 0.01) < 1e-12

# noncentral F with nu1 = 2p, nu2 = 2q and y = nu1 w / (nu1 w + nu2)
w = 1.7
yv = 20 * w / (20 * w + 30)
assert abs(ncbeta.noncentral_f_cdf(w, 20, 30, 4.5) - ncbeta.cdf(10, 15, 4.5, yv)) < 1e-15

for bad in (lambda: ncbeta.cdf(-1, 1, 1, 0.5), lambda: ncbeta.invert_x(10, 15, 0.45, 0.71)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

assert math.isclose(ncbeta.cdf(3, 4, 5, 1.0), 1.0)
print("python smoke test passed")
