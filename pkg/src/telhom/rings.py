"""Exact arithmetic over the supported base rings.

Every ring works on canonical *payloads*: plain ints for Z, Z/m and F_p,
``fractions.Fraction`` for Q, coefficient tuples (no trailing zeros) for
univariate polynomials, and coordinate tuples for finite commutative
algebras given by structure constants.  Canonical payloads compare with
``==``, so equality of ring elements is payload equality.
"""

from __future__ import annotations

import json
from fractions import Fraction


class RingError(Exception):
    pass


class UnsupportedRing(RingError):
    pass


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the base set covers every n < 3.3e24.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Base class; subclasses implement arithmetic on canonical payloads."""

    kind = "?"
    is_field = False
    is_domain = False
    # rings with a Smith normal form (elementary-divisor family)
    supports_snf = False

    zero = 0
    one = 1

    def canon(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def unit_inv(self, a):
        raise NotImplementedError

    def pow(self, a, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def from_int(self, n: int):
        out = self.zero
        one = self.one
        neg = n < 0
        for _ in range(abs(n)):
            out = self.add(out, one)
        return self.neg(out) if neg else out

    def nilpotency_exponent(self, a, cap: int = 64) -> int | None:
        """Smallest e >= 1 with a^e = 0, or None up to the cap."""
        x = self.canon(a)
        for e in range(1, cap + 1):
            if self.is_zero(x):
                return e
            x = self.mul(x, a)
        return None

    def parse(self, s: str):
        raise NotImplementedError

    def show(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class Integers(Ring):
    kind = "Z"
    is_domain = True
    supports_snf = True
    name = "Z"

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingError(f"not an integer payload: {x!r}")
        return x

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inv(self, a):
        if a in (1, -1):
            return a
        raise RingError(f"{a} is not a unit in Z")

    def from_int(self, n):
        return n

    def parse(self, s):
        return int(s.strip())


class IntegersMod(Ring):
    kind = "Z/m"
    supports_snf = True

    def __init__(self, m: int):
        if m < 2:
            raise RingError("modulus must be >= 2")
        self.m = m
        self.name = f"Z/{m}"
        self._prime_power = _prime_power(m)

    @property
    def prime_power(self):
        """(p, e) when m = p^e, else None; enables the fast chain-ring path."""
        return self._prime_power

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingError(f"not a residue payload: {x!r}")
        return x % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def is_unit(self, a):
        import math

        return math.gcd(a, self.m) == 1

    def unit_inv(self, a):
        return pow(a, -1, self.m)

    def from_int(self, n):
        return n % self.m

    def parse(self, s):
        return int(s.strip()) % self.m


class PrimeField(Ring):
    kind = "Fp"
    is_field = True
    is_domain = True
    supports_snf = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise RingError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingError(f"not a field payload: {x!r}")
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def unit_inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, s):
        return int(s.strip()) % self.p


class Rationals(Ring):
    kind = "Q"
    is_field = True
    is_domain = True
    supports_snf = True
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def canon(self, x):
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        raise RingError(f"not a rational payload: {x!r}")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a != 0

    def unit_inv(self, a):
        if a == 0:
            raise RingError("0 is not a unit")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, s):
        return Fraction(s.strip())


class UniPoly(Ring):
    """Univariate polynomials over a prime field or Q.

    Payload: tuple of base-field payloads (c0, c1, ...), no trailing zeros;
    the zero polynomial is the empty tuple.
    """

    kind = "poly"
    is_domain = True
    supports_snf = True
    zero = ()

    def __init__(self, base: Ring, var: str = "t"):
        if not base.is_field:
            raise RingError("polynomial coefficients must form a field")
        self.base = base
        self.var = var
        self.name = f"{base.name}[{var}]"
        self.one = (base.one,)

    def canon(self, x):
        if isinstance(x, int):
            c = self.base.from_int(x)
            return () if self.base.is_zero(c) else (c,)
        if not isinstance(x, tuple):
            raise RingError(f"not a polynomial payload: {x!r}")
        coeffs = [self.base.canon(c) for c in x]
        while coeffs and self.base.is_zero(coeffs[-1]):
            coeffs.pop()
        return tuple(coeffs)

    def degree(self, a) -> int:
        return len(a) - 1  # zero polynomial -> -1

    def add(self, a, b):
        n = max(len(a), len(b))
        bz = self.base.zero
        out = []
        for i in range(n):
            ca = a[i] if i < len(a) else bz
            cb = b[i] if i < len(b) else bz
            out.append(self.base.add(ca, cb))
        while out and self.base.is_zero(out[-1]):
            out.pop()
        return tuple(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        bz = self.base.zero
        out = [bz] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if self.base.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = self.base.add(out[i + j], self.base.mul(ca, cb))
        while out and self.base.is_zero(out[-1]):
            out.pop()
        return tuple(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(a)
        q = [self.base.zero] * max(len(a) - len(b) + 1, 0)
        inv_lead = self.base.unit_inv(b[-1])
        while len(r) >= len(b) and r:
            if self.base.is_zero(r[-1]):
                r.pop()
                continue
            shift = len(r) - len(b)
            f = self.base.mul(r[-1], inv_lead)
            q[shift] = f
            for i, cb in enumerate(b):
                r[shift + i] = self.base.sub(r[shift + i], self.base.mul(f, cb))
            r.pop()
        while r and self.base.is_zero(r[-1]):
            r.pop()
        return self.canon(tuple(q)), tuple(r)

    def is_unit(self, a):
        return len(a) == 1

    def unit_inv(self, a):
        if len(a) != 1:
            raise RingError(f"{self.show(a)} is not a unit")
        return (self.base.unit_inv(a[0]),)

    def from_int(self, n):
        return self.canon(n)

    def monic(self, a):
        if not a:
            return a
        inv = self.base.unit_inv(a[-1])
        return tuple(self.base.mul(c, inv) for c in a)

    def parse(self, s):
        return parse_poly(self, s)

    def show(self, a) -> str:
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if self.base.is_zero(c):
                continue
            if i == 0:
                terms.append(str(c))
            else:
                t = self.var if i == 1 else f"{self.var}^{i}"
                terms.append(t if c == self.base.one else f"{c}*{t}")
        return "+".join(terms)


class FiniteAlgebra(Ring):
    """Finite-dimensional commutative algebra over a field, given by
    structure constants: e_i * e_j = sum_k constants[i][j][k] e_k.

    Payload: tuple of base-field payloads of length dim.  Construction
    verifies commutativity, associativity and the unit law by exhaustive
    triple products.
    """

    kind = "algebra"
    supports_snf = False

    def __init__(self, base: Ring, dim: int, constants, unit, name: str | None = None):
        if not base.is_field:
            raise RingError("algebra base must be a field")
        if dim < 1:
            raise RingError("algebra dimension must be >= 1")
        self.base = base
        self.dim = dim
        self.constants = tuple(
            tuple(tuple(base.canon(c) for c in row) for row in plane) for plane in constants
        )
        if len(self.constants) != dim or any(
            len(p) != dim or any(len(r) != dim for r in p) for p in self.constants
        ):
            raise RingError("structure-constant tensor has wrong shape")
        self.unit = tuple(base.canon(c) for c in unit)
        if len(self.unit) != dim:
            raise RingError("unit vector has wrong length")
        self.name = name or f"algebra(dim={dim} over {base.name})"
        self.zero = (base.zero,) * dim
        self.one = self.unit
        self._check_axioms()

    def _basis(self):
        bz, bo = self.base.zero, self.base.one
        return [tuple(bo if k == i else bz for k in range(self.dim)) for i in range(self.dim)]

    def _check_axioms(self):
        basis = self._basis()
        for i in range(self.dim):
            for j in range(self.dim):
                if self.mul(basis[i], basis[j]) != self.mul(basis[j], basis[i]):
                    raise RingError(f"structure constants not commutative at ({i},{j})")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.mul(self.mul(basis[i], basis[j]), basis[k])
                    rhs = self.mul(basis[i], self.mul(basis[j], basis[k]))
                    if lhs != rhs:
                        raise RingError(f"structure constants not associative at ({i},{j},{k})")
        for i in range(self.dim):
            if self.mul(self.unit, basis[i]) != basis[i]:
                raise RingError("unit vector is not a unit")

    def canon(self, x):
        if isinstance(x, int):
            return self.scalar(self.base.from_int(x))
        if not isinstance(x, tuple) or len(x) != self.dim:
            raise RingError(f"not an algebra payload: {x!r}")
        return tuple(self.base.canon(c) for c in x)

    def scalar(self, c):
        return tuple(self.base.mul(c, u) for u in self.unit)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        bz = self.base.zero
        out = [bz] * self.dim
        for i, ca in enumerate(a):
            if self.base.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                if self.base.is_zero(cb):
                    continue
                f = self.base.mul(ca, cb)
                row = self.constants[i][j]
                for k in range(self.dim):
                    if not self.base.is_zero(row[k]):
                        out[k] = self.base.add(out[k], self.base.mul(f, row[k]))
        return tuple(out)

    def mult_matrix(self, a):
        """Rows of the multiplication-by-a operator on coordinates."""
        bz = self.base.zero
        rows = [[bz] * self.dim for _ in range(self.dim)]
        for s, cs in enumerate(a):
            if self.base.is_zero(cs):
                continue
            for j in range(self.dim):
                col = self.constants[s][j]
                for k in range(self.dim):
                    if not self.base.is_zero(col[k]):
                        rows[k][j] = self.base.add(rows[k][j], self.base.mul(cs, col[k]))
        return rows

    def is_unit(self, a):
        from . import linalg

        return linalg.field_rank(self.base, self.mult_matrix(a)) == self.dim

    def unit_inv(self, a):
        from . import linalg

        sol = linalg.field_solve(self.base, self.mult_matrix(a), list(self.unit))
        if sol is None:
            raise RingError("not a unit in the algebra")
        return tuple(sol)

    def from_int(self, n):
        return self.scalar(self.base.from_int(n))

    def parse(self, s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise RingError(f"algebra element literal must be [c0,...,c{self.dim-1}]: {s!r}")
        parts = [p.strip() for p in s[1:-1].split(",")]
        if len(parts) != self.dim:
            raise RingError(f"expected {self.dim} coordinates, got {len(parts)}")
        return tuple(self.base.from_int(int(p)) for p in parts)

    def show(self, a):
        return "[" + ",".join(str(c) for c in a) + "]"


def _prime_power(m: int):
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
        p += 1
    return (n, 1)  # n prime


class RingElement:
    """Thin wrapper pairing a payload with its ring; used at API edges."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        self.ring = ring
        self.payload = ring.canon(payload)

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingError("ring mismatch")
            return other.payload
        return self.ring.canon(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.payload, self._coerce(other)))

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.payload, self._coerce(other)))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.payload, self._coerce(other)))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __pow__(self, k):
        return RingElement(self.ring, self.ring.pow(self.payload, k))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.payload == other.payload
        return self.payload == self.ring.canon(other)

    def __hash__(self):
        return hash((self.ring, self.payload))

    def is_zero(self):
        return self.ring.is_zero(self.payload)

    def __repr__(self):
        return f"{self.ring.show(self.payload)} in {self.ring.name}"


def parse_poly(ring: UniPoly, s: str):
    """Parse sums of terms like '3', 't', '2*t^3', 't^2' into a payload."""
    s = s.strip().replace("-", "+-").replace(" ", "")
    if s.startswith("+"):
        s = s[1:]
    acc = ring.zero
    for term in s.split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        coeff, power = "1", 0
        if ring.var in term:
            head, _, tail = term.partition(ring.var)
            coeff = head.rstrip("*") or "1"
            power = int(tail[1:]) if tail.startswith("^") else (0 if tail else 1)
            if tail and not tail.startswith("^"):
                raise RingError(f"bad polynomial term: {term!r}")
        else:
            coeff = term
        c = ring.base.canon(ring.base.from_int(int(coeff))) if coeff.lstrip("-").isdigit() else None
        if c is None:
            raise RingError(f"bad coefficient in term {term!r}")
        if neg:
            c = ring.base.neg(c)
        mono = tuple([ring.base.zero] * power + [c])
        acc = ring.add(acc, ring.canon(mono))
    return acc


# ---------------------------------------------------------------------------
# ring-spec grammar: Z | Z/12 | F5 | Q | F2[t] | algebra:<path>

def parse_ring(spec: str, _loader=None) -> Ring:
    spec = spec.strip()
    if spec == "Z":
        return Integers()
    if spec == "Q":
        return Rationals()
    if spec.startswith("Z/"):
        return IntegersMod(int(spec[2:]))
    if spec.startswith("algebra:"):
        path = spec[len("algebra:"):]
        data = _loader(path) if _loader else json.load(open(path))
        return algebra_from_dict(data, name=f"algebra:{path}")
    if spec.startswith("F"):
        body = spec[1:]
        if "[" in body:
            p_str, _, var = body.partition("[")
            var = var.rstrip("]")
            return UniPoly(PrimeField(int(p_str)), var)
        return PrimeField(int(body))
    if spec.startswith("Q["):
        return UniPoly(Rationals(), spec[2:].rstrip("]"))
    raise RingError(f"unrecognized ring spec: {spec!r}")


def algebra_from_dict(data: dict, name: str | None = None) -> FiniteAlgebra:
    base = parse_ring(data.get("base", "F2"))
    return FiniteAlgebra(base, data["dim"], data["constants"], data["unit"], name=name)


# ---------------------------------------------------------------------------
# stock finite algebras used across tests and demos

def truncated_poly_algebra(p: int, e: int) -> FiniteAlgebra:
    """F_p[x] / (x^e) with basis 1, x, ..., x^{e-1}."""
    base = PrimeField(p)
    d = e
    constants = [
        [[1 if k == i + j else 0 for k in range(d)] for j in range(d)] for i in range(d)
    ]
    unit = [1] + [0] * (d - 1)
    return FiniteAlgebra(base, d, constants, unit, name=f"F{p}[x]/(x^{e})")


def square_zero_two_vars(p: int) -> FiniteAlgebra:
    """F_p[x, y] / (x^2, y^2, xy) with basis 1, x, y."""
    base = PrimeField(p)
    constants = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    # e0 = 1, e1 = x, e2 = y
    for i in range(3):
        constants[0][i][i] = 1
        constants[i][0][i] = 1
    unit = [1, 0, 0]
    return FiniteAlgebra(base, 3, constants, unit, name=f"F{p}[x,y]/(x^2,y^2,xy)")
