"""Short-Weierstrass elliptic curves y^2 = x^3 + A*x + B over F_p.

Chord-and-tangent group law, double-and-add scalar multiplication, point
counting (quadratic-character tally for small p, baby-step/giant-step
order finding in the Hasse interval above that), a seeded search for
anomalous curves (#E(F_p) = p), and 2-torsion utilities.

A curve with #E = p has a rational point group that is cyclic of order p,
so every nonzero point generates and the whole group is p-torsion.  Those
are the attack targets of the rest of the package.
"""

from __future__ import annotations

import math
import random

from .errors import (
    OrderAmbiguousError,
    PointNotOnCurveError,
    SearchExhaustedError,
)
from .fields import Fp, FpElement
from .numbertheory import factorize, next_prime
from .poly import cubic_roots

#: Largest p counted by the exhaustive character sum; BSGS above.
COUNT_SCAN_LIMIT = 100_000


class Point:
    """A point of E(F_p): affine coordinates, or the point at infinity."""

    __slots__ = ("x", "y")

    def __init__(self, x: FpElement | None, y: FpElement | None):
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_infinity:
            return hash("inf")
        return hash((self.x.value, self.y.value))

    def __repr__(self):
        return "inf" if self.is_infinity else f"({self.x}, {self.y})"

    def to_json(self) -> dict:
        if self.is_infinity:
            return {"inf": True}
        return {"x": str(self.x.value), "y": str(self.y.value)}

    @staticmethod
    def from_json(field: Fp, obj: dict) -> "Point":
        if obj.get("inf"):
            return INFINITY
        return Point(field(int(obj["x"])), field(int(obj["y"])))


INFINITY = Point(None, None)


class Curve:
    """y^2 = x^3 + A*x + B over F_p with 4A^3 + 27B^2 != 0."""

    __slots__ = ("field", "A", "B")

    def __init__(self, field: Fp, a, b):
        self.field = field
        self.A = field(a)
        self.B = field(b)
        if self.discriminant_term().is_zero():
            raise ValueError("singular curve: 4A^3 + 27B^2 = 0")

    @property
    def p(self) -> int:
        return self.field.p

    def discriminant_term(self) -> FpElement:
        return 4 * self.A**3 + 27 * self.B**2

    def rhs(self, x: FpElement) -> FpElement:
        return x**3 + self.A * x + self.B

    def point(self, x, y) -> Point:
        pt = Point(self.field(x), self.field(y))
        self._require_on_curve(pt)
        return pt

    def contains(self, pt: Point) -> bool:
        if pt.is_infinity:
            return True
        return (pt.y**2) == self.rhs(pt.x)

    def _require_on_curve(self, pt: Point):
        if not self.contains(pt):
            raise PointNotOnCurveError(f"{pt} not on {self!r}")

    # -- group law ------------------------------------------------------

    def neg(self, pt: Point) -> Point:
        if pt.is_infinity:
            return INFINITY
        return Point(pt.x, -pt.y)

    def add(self, P: Point, Q: Point) -> Point:
        self._require_on_curve(P)
        self._require_on_curve(Q)
        return self._add_raw(P, Q)

    def _add_raw(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return INFINITY
            lam = (3 * P.x**2 + self.A) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam**2 - P.x - Q.x
        return Point(x3, lam * (P.x - x3) - P.y)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: Point) -> Point:
        """n*P by double-and-add; negative n allowed."""
        self._require_on_curve(P)
        if n < 0:
            n, P = -n, self.neg(P)
        acc = INFINITY
        base = P
        while n:
            if n & 1:
                acc = self._add_raw(acc, base)
            base = self._add_raw(base, base)
            n >>= 1
        return acc

    # -- point generation -------------------------------------------------

    def random_point(self, rng: random.Random) -> Point:
        """A uniformly-ish random affine point (never infinity)."""
        while True:
            x = self.field.random(rng)
            y = self.field.sqrt(self.rhs(x))
            if y is None:
                continue
            if not y.is_zero() and rng.getrandbits(1):
                y = -y
            return Point(x, y)

    def points(self):
        """All points, infinity first (small p only: O(p) memory)."""
        yield INFINITY
        for v in range(self.p):
            x = self.field(v)
            y = self.field.sqrt(self.rhs(x))
            if y is None:
                continue
            yield Point(x, y)
            if not y.is_zero():
                yield Point(x, -y)

    def two_torsion(self) -> list[Point]:
        """All rational points of order 2 (may be empty)."""
        return [Point(r, self.field.zero()) for r in cubic_roots(self.field, self.A, self.B)]

    # -- order machinery ---------------------------------------------------

    def order_of(self, P: Point) -> int:
        """Exact order of P in E(F_p)."""
        self._require_on_curve(P)
        if P.is_infinity:
            return 1
        n = _bsgs_annihilator(self, P)
        for q in factorize(n):
            while n % q == 0 and self.mul(n // q, P).is_infinity:
                n //= q
        return n

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return (self.p, self.A.value, self.B.value) == (other.p, other.A.value, other.B.value)

    def __hash__(self):
        return hash((self.p, self.A.value, self.B.value))

    def __repr__(self):
        return f"Curve(p={self.p}, A={self.A}, B={self.B})"

    def to_json(self) -> dict:
        return {"p": str(self.p), "A": str(self.A.value), "B": str(self.B.value)}

    @staticmethod
    def from_json(obj: dict) -> "Curve":
        field = Fp(int(obj["p"]))
        return Curve(field, int(obj["A"]), int(obj["B"]))


def hasse_interval(p: int) -> tuple[int, int]:
    """The integer interval [p+1-2*sqrt(p), p+1+2*sqrt(p)] containing #E."""
    w = math.isqrt(4 * p)
    return p + 1 - w, p + 1 + w


def _bsgs_annihilator(curve: Curve, P: Point) -> int:
    """Some n in the Hasse interval with n*P = infinity (P != infinity)."""
    lo, hi = hasse_interval(curve.p)
    m = math.isqrt(hi - lo) + 1
    table: dict[Point, int] = {}
    Q = INFINITY
    for j in range(m):
        table.setdefault(Q, j)  # Q = j*P
        Q = curve._add_raw(Q, P)
    step = curve.mul(m, P)
    walk = curve.mul(lo, P)
    for i in range(m + 1):
        match = table.get(curve.neg(walk))
        if match is not None and lo + i * m + match <= hi:
            return lo + i * m + match
        walk = curve._add_raw(walk, step)
    raise AssertionError("Hasse interval search found no annihilator")


def count_points(curve: Curve, scan_limit: int = COUNT_SCAN_LIMIT, rng: random.Random | None = None) -> int:
    """#E(F_p), infinity included.

    For p <= scan_limit this tallies the quadratic character of
    x^3 + Ax + B over all x.  Above that it accumulates the lcm of random
    point orders until a unique multiple lies in the Hasse interval,
    raising OrderAmbiguousError if that never happens (possible only for
    very non-cyclic groups, or tiny p where the interval is wide relative
    to the order).
    """
    p = curve.p
    if p <= scan_limit:
        count = p + 1
        a, b = curve.A.value, curve.B.value
        e = (p - 1) // 2
        for x in range(p):
            t = (x * x * x + a * x + b) % p
            if t == 0:
                continue
            count += 1 if pow(t, e, p) == 1 else -1
        return count
    rng = rng or random.Random(0xD1A7 ^ p)
    lo, hi = hasse_interval(p)
    acc = 1
    for _ in range(30):
        order = curve.order_of(curve.random_point(rng))
        acc = acc * order // math.gcd(acc, order)
        first = ((lo + acc - 1) // acc) * acc
        assert first <= hi, "the group order is a multiple of every point order"
        if first + acc > hi:
            return first
    raise OrderAmbiguousError("point orders did not determine a unique count in the Hasse interval")


def is_anomalous(curve: Curve, rng: random.Random | None = None) -> bool:
    """True iff #E(F_p) = p.

    For p >= 7 it suffices that some nonzero point is killed by p: the
    point then has exact order p, and p is the only multiple of p in the
    Hasse interval.  For p = 5 both 5 and 10 fit, so the count is checked
    directly.
    """
    rng = rng or random.Random(0xA20 ^ curve.p)
    P = curve.random_point(rng)
    if not curve.mul(curve.p, P).is_infinity:
        return False
    if curve.p >= 7:
        return True
    return count_points(curve) == curve.p


def find_anomalous(
    p_min: int,
    p_max: int,
    count: int = 1,
    seed: int = 0,
    budget: int = 2_000_000,
) -> list[Curve]:
    """`count` distinct anomalous curves with prime p in [p_min, p_max].

    Deterministic given `seed`: primes are drawn by re-sampling a PRNG and
    rounding up to the next prime; (A, B) are sampled uniformly per prime.
    Raises SearchExhaustedError when the trial budget runs out first.
    """
    if p_min <= 3:
        raise ValueError("p_min must exceed 3")
    if p_max < p_min:
        raise ValueError("empty prime range")
    rng = random.Random(seed)
    if next_prime(p_min) > p_max:
        raise SearchExhaustedError(f"no prime > 3 in [{p_min}, {p_max}]")
    found: list[Curve] = []
    seen: set[Curve] = set()
    trials = 0
    while len(found) < count:
        p = next_prime(rng.randint(p_min, p_max))
        if p > p_max:
            continue
        field = Fp(p)
        per_prime = max(32, 4 * math.isqrt(p))
        for _ in range(per_prime):
            trials += 1
            if trials > budget:
                raise SearchExhaustedError(
                    f"no anomalous curve found in [{p_min}, {p_max}] within {budget} trials"
                )
            a, b = rng.randrange(p), rng.randrange(p)
            if (4 * a * a * a + 27 * b * b) % p == 0:
                continue
            curve = Curve(field, a, b)
            if curve in seen:
                continue
            if is_anomalous(curve, rng):
                found.append(curve)
                seen.add(curve)
                if len(found) == count:
                    break
    return found
