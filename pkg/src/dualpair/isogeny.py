"""Isogenies between short-Weierstrass curves as rational maps.

A separable isogeny in short-Weierstrass coordinates can be written as
phi(x, y) = (r(x), y*s(x)) with r, s rational functions of x alone.  Its
pullback of the invariant differential dx/y is (r'/s) * dx/y, so the
scalar m with (pullback of t2) = m*t1 + O(t1^2) (t = -x/y the uniformizer
at infinity) is just r'/s, a constant on the curve: m = 1 for a
normalized Velu isogeny, m = n for multiplication by n, and m = 0 exactly
for inseparable maps such as Frobenius.  m is multiplicative under
composition.

Construction routes:

* `velu` - Velu's formulas from a rational kernel subgroup given as a
  point list.
* `velu_from_kernel_polynomial` - the kernel-polynomial (Kohel) form for
  odd-degree kernels: anomalous curves have a rational point group of odd
  prime order p, so the kernel of a rational ell-isogeny (ell != p) never
  consists of rational points; it is only Galois-stable, and its monic
  kernel polynomial h(x) (degree (ell-1)/2) is what exists over F_p.
  The x-map is ell*x - 2*sigma - 2*f'*h'/h - 4*f*(h'/h)' with
  f = x^3 + Ax + B and sigma the sum of the kernel x-coordinates.
* `multiplication_isogeny` - multiplication by n through division
  polynomials: r_n = x - psi_{n-1}psi_{n+1}/psi_n^2 and s_n = r_n'/n.
* `frobenius_isogeny` - (x, y) -> (x^p, y^p), the inseparable test map.
* `find_cyclic_isogeny` - searches the ell-division polynomial for a
  Galois-stable kernel and validates each candidate against the curve
  identity (x^3 + A1*x + B1) * s^2 = r^3 + A2*r + B2.

The lift to the dual numbers sends O_k to O_{m*k} and evaluates the
rational maps with dual arithmetic on affine points; points reducing into
the kernel are routed around it by conjugating with translations,
phi_T = (translate by phi(-T)) o phi o (translate by T), which is
independent of the auxiliary T.
"""

from __future__ import annotations

import random

from .curve import INFINITY, Curve, Point
from .dual_curve import DualCurve, DualPoint
from .errors import BadInputError, NotASubgroupError, NotRationalError
from .fields import Fp, FpElement
from .pairing import lifted_pairing
from .poly import Polynomial


class RationalFunction:
    """A reduced fraction of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lead_inv = pow(den.lead(), -1, den.field.p)
        self.num = num * lead_inv
        self.den = den * lead_inv

    @staticmethod
    def from_poly(poly: Polynomial) -> "RationalFunction":
        return RationalFunction(poly, Polynomial.constant(poly.field, 1), reduce=False)

    @property
    def field(self) -> Fp:
        return self.num.field

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den, self.den * other.num)

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(self.num * int(self.field(c)), self.den, reduce=False)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def defined_at(self, x: FpElement) -> bool:
        return not self.den(x).is_zero()

    def __call__(self, x):
        """Evaluate at FpElement (den must be nonzero) or DualNumber (den a unit)."""
        return self.num(x) / self.den(x)

    def compose_poly(self, poly: Polynomial) -> "RationalFunction":
        """poly(self): substitute this fraction into a polynomial."""
        f = self.field
        num_acc = Polynomial.zero(f)
        den_pow = Polynomial.constant(f, 1)
        d = len(poly.coeffs) - 1
        powers = [Polynomial.constant(f, 1)]
        for _ in range(d):
            powers.append(powers[-1] * self.num)
        den_powers = [Polynomial.constant(f, 1)]
        for _ in range(d):
            den_powers.append(den_powers[-1] * self.den)
        for i, c in enumerate(poly.coeffs):
            if c:
                num_acc = num_acc + powers[i] * den_powers[d - i] * c
        return RationalFunction(num_acc, den_powers[d])

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """self(inner(x))."""
        return inner.compose_poly(self.num) / inner.compose_poly(self.den)

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


class Isogeny:
    """phi(x, y) = (r(x), y*s(x)) between two short-Weierstrass curves."""

    __slots__ = ("source", "target", "r", "s", "degree", "m", "kernel_points")

    def __init__(self, source: Curve, target: Curve, r: RationalFunction, s: RationalFunction,
                 degree: int, m: FpElement, kernel_points=()):
        self.source = source
        self.target = target
        self.r = r
        self.s = s
        self.degree = degree
        self.m = m
        self.kernel_points = tuple(kernel_points)

    # -- structure ------------------------------------------------------

    def kernel_polynomial(self) -> Polynomial:
        """Monic polynomial whose roots are the affine kernel x-coordinates."""
        den = self.r.den
        if den.degree <= 0:
            return Polynomial.constant(self.source.field, 1)
        rad = den.exact_div(den.gcd(den.derivative()))
        return rad.monic()

    def in_kernel(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return self.r.den(P.x).is_zero()

    def curve_identity_holds(self) -> bool:
        """(x^3 + A1 x + B1) * s^2 == r^3 + A2 r + B2 as rational functions."""
        f = self.source.field
        fx = Polynomial(f, (int(self.source.B), int(self.source.A), 0, 1))
        lhs = RationalFunction.from_poly(fx) * self.s * self.s
        rhs = self.r * self.r * self.r + self.r.scale(int(self.target.A)) + RationalFunction.from_poly(
            Polynomial.constant(f, int(self.target.B))
        )
        return lhs == rhs

    # -- evaluation -------------------------------------------------------

    def __call__(self, P: Point) -> Point:
        self.source._require_on_curve(P)
        if self.in_kernel(P):
            return INFINITY
        x = self.r(P.x)
        y = P.y * self.s(P.x)
        out = Point(x, y)
        self.target._require_on_curve(out)
        return out

    def eval_lifted(self, Pt: DualPoint, T: Point | None = None, rng: random.Random | None = None) -> DualPoint:
        """The extension to the canonical lifts: O_k -> O_{m*k}, rational maps
        with dual arithmetic elsewhere, and translation around the kernel."""
        src = DualCurve.canonical(self.source)
        tgt = DualCurve.canonical(self.target)
        src._require_valid(Pt)
        if Pt.is_infinity:
            return DualPoint.infinity(self.m * Pt.k)
        P0 = Pt.reduction()
        if not self.in_kernel(P0):
            x = self.r(Pt.x)
            y = Pt.y * self.s(Pt.x)
            out = DualPoint.affine(x, y)
            tgt._require_valid(out)
            return out
        T = T if T is not None else self._translation_point(rng)
        shifted = src._add_raw(Pt, src.embed(T))
        image = self.eval_lifted(shifted, T=T)  # reduction P0 + T is outside the kernel
        back = self(self.source.neg(T))
        return tgt._add_raw(image, tgt.embed(back))

    def _translation_point(self, rng: random.Random | None) -> Point:
        """A deterministic rational point outside the kernel."""
        if rng is not None:
            while True:
                T = self.source.random_point(rng)
                if not self.in_kernel(T):
                    return T
        f = self.source.field
        for v in range(self.source.p):
            x = f(v)
            if self.r.den(x).is_zero():
                continue
            y = f.sqrt(self.source.rhs(x))
            if y is not None:
                return Point(x, y)
        raise NotRationalError("no rational point outside the kernel")

    # -- composition --------------------------------------------------------

    def compose(self, inner: "Isogeny") -> "Isogeny":
        """self o inner (apply inner first)."""
        if inner.target != self.source:
            raise BadInputError("isogenies do not chain: inner target differs from outer source")
        r = self.r.compose(inner.r)
        s = self.s.compose(inner.r) * inner.s
        return Isogeny(inner.source, self.target, r, s,
                       self.degree * inner.degree, self.m * inner.m)

    def __repr__(self):
        return f"Isogeny(deg={self.degree}, m={self.m}, {self.source!r} -> {self.target!r})"

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "r_num": [str(c) for c in self.r.num.coeffs],
            "r_den": [str(c) for c in self.r.den.coeffs],
            "s_num": [str(c) for c in self.s.num.coeffs],
            "s_den": [str(c) for c in self.s.den.coeffs],
            "degree": str(self.degree),
            "m": str(self.m.value),
        }


def compute_m(phi: Isogeny) -> FpElement:
    """The differential coefficient r'/s, recomputed from the rational maps.

    r'/s is a constant function for any isogeny written as (r, y*s), so the
    reduced quotient must be a constant rational function; its value is m
    (0 for inseparable maps, where r' vanishes identically).
    """
    f = phi.source.field
    rp = phi.r.derivative()
    if rp.num.is_zero():
        return f.zero()
    quotient = rp / phi.s
    assert quotient.is_constant(), "r'/s is not constant: not an isogeny"
    return f(quotient.num[0]) / f(quotient.den[0])


# -- construction: Velu from rational kernel points -------------------------------


def _check_subgroup(curve: Curve, pts: list[Point]):
    ps = set(pts)
    if INFINITY not in ps:
        raise NotASubgroupError("kernel must contain the identity")
    for P in ps:
        if not curve.contains(P):
            raise NotASubgroupError(f"{P} is not on the curve")
        if curve.neg(P) not in ps:
            raise NotASubgroupError("kernel is not closed under negation")
    for P in ps:
        for Q in ps:
            if curve._add_raw(P, Q) not in ps:
                raise NotASubgroupError("kernel is not closed under addition")


def velu(curve: Curve, kernel: list[Point]) -> Isogeny:
    """The normalized (m = 1) separable isogeny with the given rational kernel."""
    _check_subgroup(curve, kernel)
    f = curve.field
    affine = [P for P in set(kernel) if not P.is_infinity]
    if not affine:
        return identity_isogeny(curve)
    reps: list[Point] = []
    seen: set[Point] = set()
    for P in affine:
        if P in seen:
            continue
        seen.add(P)
        seen.add(curve.neg(P))
        reps.append(P)
    x = Polynomial.x(f)
    r = RationalFunction.from_poly(x)
    v_sum = f.zero()
    w_sum = f.zero()
    for Q in reps:
        gx = 3 * Q.x**2 + curve.A
        gy = -2 * Q.y
        vq = gx if Q.y.is_zero() else 2 * gx
        uq = gy**2
        v_sum = v_sum + vq
        w_sum = w_sum + uq + Q.x * vq
        lin = Polynomial(f, (-int(Q.x), 1))
        r = r + RationalFunction(Polynomial.constant(f, int(vq)), lin)
        if not uq.is_zero():
            r = r + RationalFunction(Polynomial.constant(f, int(uq)), lin * lin)
    target = Curve(f, curve.A - 5 * v_sum, curve.B - 7 * w_sum)
    phi = Isogeny(curve, target, r, r.derivative(), len(kernel), f.one(), kernel)
    assert phi.curve_identity_holds(), "Velu construction left the target curve"
    return phi


def identity_isogeny(curve: Curve) -> Isogeny:
    f = curve.field
    one = RationalFunction.from_poly(Polynomial.constant(f, 1))
    return Isogeny(curve, curve, RationalFunction.from_poly(Polynomial.x(f)), one, 1, f.one(), (INFINITY,))


def velu_from_kernel_polynomial(curve: Curve, h: Polynomial) -> Isogeny:
    """The normalized isogeny with odd kernel of monic kernel polynomial h.

    h has degree d = (ell-1)/2 and roots the x-coordinates of the kernel's
    point pairs; it need not split over F_p, only have coefficients there.
    Raises BadInputError when h is not actually a kernel polynomial (the
    curve identity fails).
    """
    f = curve.field
    h = h.monic()
    d = int(h.degree)
    if d < 1:
        return identity_isogeny(curve)
    ell = 2 * d + 1
    e1 = f(-h[d - 1])
    e2 = f(h[d - 2]) if d >= 2 else f.zero()
    e3 = f(-h[d - 3]) if d >= 3 else f.zero()
    p1 = e1
    p2 = e1 * p1 - 2 * e2
    p3 = e1 * p2 - e2 * p1 + 3 * e3
    fx = Polynomial(f, (int(curve.B), int(curve.A), 0, 1))
    fpx = fx.derivative()
    hp = h.derivative()
    hpp = hp.derivative()
    # r = ell*x - 2*sigma - 2*f'*(h'/h) - 4*f*(h'/h)'
    num = (
        (Polynomial.x(f) * ell - 2 * int(e1)) * (h * h)
        - 2 * (fpx * hp * h)
        - 4 * (fx * (hpp * h - hp * hp))
    )
    r = RationalFunction(num, h * h)
    t_sum = 6 * p2 + 2 * curve.A * d
    w_sum = 10 * p3 + 6 * curve.A * p1 + 4 * curve.B * d
    target = Curve(f, curve.A - 5 * t_sum, curve.B - 7 * w_sum)
    phi = Isogeny(curve, target, r, r.derivative(), ell, f.one())
    if not phi.curve_identity_holds():
        raise BadInputError("not a kernel polynomial for this curve")
    return phi


# -- construction: division polynomials and multiplication by n --------------------


def _division_polynomials(curve: Curve, top: int):
    """Pairs (even(x), odd(x)) meaning even + y*odd, for indices 0..top.

    Powers y^2 are reduced by f = x^3 + Ax + B throughout.
    """
    f = curve.field
    fx = Polynomial(f, (int(curve.B), int(curve.A), 0, 1))
    A, B = int(curve.A), int(curve.B)

    def pmul(u, v):
        ue, uo = u
        ve, vo = v
        return (ue * ve + fx * (uo * vo), ue * vo + uo * ve)

    zero = Polynomial.zero(f)
    psi: list[tuple[Polynomial, Polynomial]] = [
        (zero, zero),  # psi_0 = 0
        (Polynomial.constant(f, 1), zero),  # psi_1 = 1
        (zero, Polynomial.constant(f, 2)),  # psi_2 = 2y
        (Polynomial(f, (-A * A % f.p, 12 * B, 6 * A, 0, 3)), zero),
        (zero, Polynomial(f, ((-A**3 - 8 * B * B) % f.p, -4 * A * B % f.p, -5 * A * A % f.p, 20 * B, 5 * A, 0, 1)) * 4),
    ]

    def get(i: int):
        if i == -1:
            return (Polynomial.constant(f, -1), zero)
        return psi[i]

    two_f = fx * 2
    while len(psi) <= top:
        n = len(psi)
        m = n // 2
        if n % 2 == 1:
            a = pmul(get(m + 2), pmul(get(m), pmul(get(m), get(m))))
            b = pmul(get(m - 1), pmul(get(m + 1), pmul(get(m + 1), get(m + 1))))
            val = (a[0] - b[0], a[1] - b[1])
            assert val[1].is_zero(), "odd-index division polynomial lost purity"
            psi.append(val)
        else:
            a = pmul(get(m + 2), pmul(get(m - 1), get(m - 1)))
            b = pmul(get(m - 2), pmul(get(m + 1), get(m + 1)))
            diff = (a[0] - b[0], a[1] - b[1])
            prod = pmul(get(m), diff)
            # prod = 2y * psi_n, and psi_n = y * (pure x part)
            assert prod[1].is_zero(), "even-index division polynomial lost purity"
            psi.append((zero, prod[0].exact_div(two_f)))
    return psi


def division_polynomial(curve: Curve, n: int) -> Polynomial:
    """The pure-x content of psi_n: psi_n itself for odd n, psi_n/y for even."""
    psi = _division_polynomials(curve, n)
    even, odd = psi[n]
    return even if odd.is_zero() else odd


def multiplication_isogeny(curve: Curve, n: int, bound: int = 7) -> Isogeny:
    """Multiplication by n as a rational map: degree n^2, m = n."""
    if not 1 <= n <= bound:
        raise BadInputError(f"multiplication maps are built for 1 <= n <= {bound}")
    if n % curve.p == 0:
        raise BadInputError("multiplication by a multiple of p is inseparable; use frobenius_isogeny")
    if n == 1:
        return identity_isogeny(curve)
    f = curve.field
    fx = Polynomial(f, (int(curve.B), int(curve.A), 0, 1))
    psi = _division_polynomials(curve, n + 1)

    def pure_sq(i: int) -> Polynomial:
        even, odd = psi[i]
        if odd.is_zero():
            return even * even
        return fx * (odd * odd)

    def pure_prod(i: int, j: int) -> Polynomial:
        # psi_{n-1} * psi_{n+1}: equal parity, so the product is y-free
        ei, oi = psi[i]
        ej, oj = psi[j]
        if oi.is_zero() and oj.is_zero():
            return ei * ej
        assert ei.is_zero() and ej.is_zero()
        return fx * (oi * oj)

    num = Polynomial.x(f) * pure_sq(n) - pure_prod(n - 1, n + 1)
    r = RationalFunction(num, pure_sq(n))
    s = r.derivative().scale(pow(n, -1, f.p))
    phi = Isogeny(curve, curve, r, s, n * n, f(n))
    assert phi.curve_identity_holds(), "division-polynomial maps left the curve"
    return phi


def frobenius_isogeny(curve: Curve) -> Isogeny:
    """(x, y) -> (x^p, y^p): inseparable, degree p, m = 0 (tiny p only)."""
    f = curve.field
    p = f.p
    r = RationalFunction.from_poly(Polynomial(f, [0] * p + [1]))
    fx = Polynomial(f, (int(curve.B), int(curve.A), 0, 1))
    s_poly = Polynomial.constant(f, 1)
    for _ in range((p - 1) // 2):
        s_poly = s_poly * fx
    phi = Isogeny(curve, curve, r, RationalFunction.from_poly(s_poly), p, f.zero())
    assert phi.curve_identity_holds()
    return phi


# -- search for rational cyclic isogenies ------------------------------------------


def find_cyclic_isogeny(curve: Curve, ell: int) -> Isogeny:
    """A rational ell-isogeny from `curve` for odd prime ell != p, or ell = 2.

    For ell = 2 a rational 2-torsion point is required.  For odd ell the
    ell-division polynomial is factored and candidate kernel polynomials
    of degree (ell-1)/2 are validated against the curve identity.  Raises
    NotRationalError when no Galois-stable kernel exists.
    """
    if ell == 2:
        pts = curve.two_torsion()
        if not pts:
            raise NotRationalError("no rational 2-torsion point")
        return velu(curve, [INFINITY, pts[0]])
    if ell % 2 == 0 or ell == curve.p:
        raise BadInputError("ell must be 2 or an odd prime different from p")
    d = (ell - 1) // 2
    psi = division_polynomial(curve, ell)
    factors = [g for g, _ in psi.factor()]
    candidates: list[Polynomial] = [g for g in factors if g.degree == d]
    linear = [g for g in factors if g.degree == 1]
    if d == 2:
        for i in range(len(linear)):
            for j in range(i + 1, len(linear)):
                candidates.append(linear[i] * linear[j])
    elif d == 1:
        pass  # linear factors are already the candidates
    for h in sorted(candidates, key=lambda g: g.coeffs):
        try:
            return velu_from_kernel_polynomial(curve, h)
        except BadInputError:
            continue
    raise NotRationalError(f"no rational {ell}-isogeny from this curve")


# -- pairing functoriality -----------------------------------------------------------


def check_functoriality(phi: Isogeny, Pt: DualPoint, Qt: DualPoint, method: str = "rueck", rng=None) -> bool:
    """Whether e_p(phi~(Pt), phi~(Qt)) = e_p(Pt, Qt)^(deg phi) holds exactly."""
    src = DualCurve.canonical(phi.source)
    tgt = DualCurve.canonical(phi.target)
    before = lifted_pairing(src, Pt, Qt, method=method, rng=rng)
    after = lifted_pairing(tgt, phi.eval_lifted(Pt, rng=rng), phi.eval_lifted(Qt, rng=rng), method=method, rng=rng)
    return after == before ** phi.degree
