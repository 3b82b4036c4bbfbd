"""Tour of the scalar layer: the three function kinds, the two-variable
kernel, and the cyclic sum identities that the matrix hierarchy shadows.

Run from the repository root:  python3 demos/01_scalar_identities.py
"""

import numpy as np

from rmx import (
    LatticeParams,
    eisenstein_e1,
    fay_check,
    kronecker_phi,
    scalar_cyclic_sum,
    theta,
    weierstrass_p,
)

KINDS = {
    "rational": LatticeParams(kind="rational"),
    "trigonometric": LatticeParams(kind="trigonometric"),
    "elliptic": LatticeParams(kind="elliptic", tau=0.21 + 1.3j),
}


def main():
    rng = np.random.default_rng(7)

    el = KINDS["elliptic"]
    z = 0.37 + 0.22j
    print("odd theta function at tau = 0.21+1.3i")
    print(f"  theta({z}) = {theta(z, el):.12f}")
    print(f"  theta'(0)  = {theta(0.0, el, deriv_order=1):.12f}")
    print(f"  oddness    |theta(z)+theta(-z)| = "
          f"{abs(theta(z, el) + theta(-z, el)):.2e}")
    print()

    print("logarithmic slope E1 and its square relation to wp")
    for name, par in KINDS.items():
        e1 = eisenstein_e1(z, par)
        wp = weierstrass_p(z, par)
        d1 = eisenstein_e1(z, par, deriv_order=1)
        # wp = -E1' up to the kind's additive constant
        print(f"  {name:<13} E1 = {e1: .6f}  wp = {wp: .6f}  "
              f"wp + E1' = {wp + d1: .6f}")
    print()

    print("two-variable kernel phi(eta, z) and its quadratic relation")
    eta = 0.29 + 0.14j
    for name, par in KINDS.items():
        val = kronecker_phi(eta, z, par)
        sym = kronecker_phi(z, eta, par)
        prod = val * kronecker_phi(eta, -z, par)
        want = weierstrass_p(eta, par) - weierstrass_p(z, par)
        print(f"  {name:<13} phi = {val: .6f}  symmetry gap "
              f"{abs(val - sym):.1e}  phi(eta,z)phi(eta,-z)-(wp(eta)-wp(z)) "
              f"= {abs(prod - want):.1e}")
    print()

    print("four-point quadratic identity residuals (random draws)")
    for name, par in KINDS.items():
        worst = 0.0
        for _ in range(50):
            if name == "elliptic":
                h, e, zz, w = (rng.uniform(0.1, 0.45)
                               + rng.uniform(0.05, 0.4) * par.tau
                               for _ in range(4))
            else:
                h, e, zz, w = (rng.uniform(0.3, 1.2)
                               + 1j * rng.uniform(0.1, 0.7)
                               for _ in range(4))
            if abs(h - e) < 1e-2:
                continue
            worst = max(worst, fay_check(h, e, zz, w, par))
        print(f"  {name:<13} worst residual {worst:.2e}")
    print()

    print("cyclic sums: (n-1)! ordered products collapse to one wp derivative")
    eta = 0.23 + 0.11j
    for name, par in KINDS.items():
        print(f"  {name}")
        for n in range(2, 6):
            if name == "elliptic":
                pts = list(rng.uniform(0.1, 0.9, n)
                           + rng.uniform(0.05, 0.45, n) * par.tau)
            else:
                pts = list(rng.uniform(0.2, 3.0, n)
                           + 1j * rng.uniform(0.1, 1.2, n))
            got = scalar_cyclic_sum(n, 1, eta, pts, par)
            if n == 2:
                want = weierstrass_p(eta, par) - weierstrass_p(
                    pts[0] - pts[1], par)
                label = "wp(eta) - wp(z12)"
            else:
                want = (-1) ** n * weierstrass_p(eta, par, deriv_order=n - 2)
                label = f"(-1)^{n} wp^({n - 2})(eta)"
            print(f"    n={n}: sum = {got: .10f}  vs {label:<20} "
                  f"gap {abs(got - want):.2e}")


if __name__ == "__main__":
    main()
