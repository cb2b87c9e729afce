"""Arithmetic in GF(2^m), 1 <= m <= 16.

Elements are represented by the bit-mask of their residue polynomial modulo a
fixed irreducible modulus.  Hot paths (geometry, search) work directly on those
ints through a :class:`FieldCtx`; :class:`FieldElem` wraps an int together with
its context for interactive use and operator syntax.

Polynomials over GF(2) (``Poly2``) are plain ints too: bit ``i`` is the
coefficient of ``x^i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

MAX_DEGREE = 16


class FieldError(ValueError):
    pass


# ---------- GF(2)[x] polynomials as int bit-masks


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        s = poly_degree(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def poly_str(p: int, var: str = "x") -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return " + ".join(terms)


def poly_from_exponents(*exps: int) -> int:
    """``poly_from_exponents(5, 4, 3, 1, 0)`` is x^5 + x^4 + x^3 + x + 1."""
    p = 0
    for e in exps:
        p ^= 1 << e
    return p


@lru_cache(maxsize=None)
def is_irreducible(p: int) -> bool:
    """Rabin-style test: p of degree d is irreducible over GF(2) iff
    x^(2^d) = x mod p and gcd(x^(2^(d/r)) - x, p) = 1 for every prime r | d.
    """
    d = poly_degree(p)
    if d < 1:
        raise FieldError("irreducibility is defined for degree >= 1")
    if d == 1:
        return True
    if not p & 1:
        return False
    # x^(2^i) mod p for i = 0..d
    powers = [2]
    for _ in range(d):
        powers.append(poly_mulmod(powers[-1], powers[-1], p))
    if powers[d] != 2 % p:
        return False
    for r in _prime_factors(d):
        if poly_gcd(p, powers[d // r] ^ 2) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def smallest_irreducible(m: int) -> int:
    # constant term required, which only rules out x itself
    for p in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------- field contexts


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^m) defined by ``modulus`` (an (m+1)-bit mask).

    Construct through :func:`make_ctx`; the log/antilog tables are filled in
    ``__post_init__`` and shared by every element of the field.
    """

    m: int
    modulus: int
    gen: int = field(init=False, compare=False, repr=False)
    _exp: list = field(init=False, compare=False, repr=False)
    _log: list = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        q = 1 << self.m
        n = q - 1
        gen = 1 if q == 2 else _find_generator(self.m, self.modulus)
        exp = [0] * (2 * n)
        log = [0] * q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = poly_mulmod(x, gen, self.modulus)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        object.__setattr__(self, "gen", gen)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

    def __reduce__(self):
        return make_ctx, (self.m, self.modulus)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        return self.q

    def header(self) -> str:
        return f"field m={self.m} mod={self.modulus:x}"

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, bits: int) -> "FieldElem":
        return FieldElem(bits, self)

    # int-level arithmetic; all inputs assumed reduced (< q)

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        n = self.q - 1
        return self._exp[(n - self._log[a]) % n]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        n = self.q - 1
        return self._exp[(self._log[a] - self._log[b]) % n]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        n = self.q - 1
        return self._exp[(self._log[a] * e) % n]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def trace(self, a: int) -> int:
        t = 0
        x = a
        for _ in range(self.m):
            t ^= x
            x = self.mul(x, x)
        if t not in (0, 1):
            raise AssertionError("trace left GF(2)")
        return t

    def mul_slow(self, a: int, b: int) -> int:
        """Shift-and-reduce product; independent of the log tables."""
        return poly_mulmod(a, b, self.modulus)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        for d in _divisors(n):
            if self.pow(a, d) == 1:
                return d
        raise AssertionError("unreachable")

    def eval_poly(self, p: int, x: int) -> int:
        """Evaluate a GF(2)[x] polynomial at a field element (Horner)."""
        r = 0
        for i in range(poly_degree(p), -1, -1):
            r = self.mul(r, x) ^ (p >> i & 1)
        return r

    def eval_coeffs(self, coeffs, x: int) -> int:
        """Evaluate a polynomial with GF(2^m) coefficients, lowest degree first."""
        r = 0
        for c in reversed(coeffs):
            r = self.mul(r, x) ^ c
        return r


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _find_generator(m: int, modulus: int) -> int:
    n = (1 << m) - 1
    primes = _prime_factors(n)
    for g in range(2, 1 << m):
        ok = True
        for r in primes:
            if _slow_pow(g, n // r, modulus) == 1:
                ok = False
                break
        if ok:
            return g
    raise AssertionError("multiplicative group of a finite field is cyclic")


def _slow_pow(a: int, e: int, modulus: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = poly_mulmod(r, a, modulus)
        a = poly_mulmod(a, a, modulus)
        e >>= 1
    return r


@lru_cache(maxsize=None)
def make_ctx(m: int, modulus: int | None = None) -> FieldCtx:
    """Return the context for GF(2^m).

    Without ``modulus`` the lexicographically smallest irreducible polynomial
    of degree ``m`` is used, so ``make_ctx(5).modulus == 0b100101``.
    """
    if not 1 <= m <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {m}")
    if modulus is None:
        modulus = smallest_irreducible(m)
    if poly_degree(modulus) != m:
        raise FieldError(f"modulus {modulus:#x} does not have degree {m}")
    if not is_irreducible(modulus) or not modulus & 1:
        raise FieldError(f"modulus {poly_str(modulus)} is reducible or lacks a constant term")
    return FieldCtx(m, modulus)


def parse_header(line: str) -> FieldCtx:
    """Inverse of :meth:`FieldCtx.header`."""
    parts = line.split()
    if not parts or parts[0] != "field":
        raise FieldError(f"not a field header: {line!r}")
    kv = dict(p.split("=", 1) for p in parts[1:])
    try:
        return make_ctx(int(kv["m"]), int(kv["mod"], 16))
    except KeyError as exc:
        raise FieldError(f"field header missing {exc}") from None


# ---------- user-facing element type


@dataclass(frozen=True)
class FieldElem:
    bits: int
    ctx: FieldCtx

    def __post_init__(self):
        if not 0 <= self.bits < self.ctx.q:
            raise FieldError(f"{self.bits:#x} is not an element of GF(2^{self.ctx.m})")

    def _check(self, other) -> "FieldElem":
        if isinstance(other, int):
            return FieldElem(other, self.ctx)
        if other.ctx != self.ctx:
            raise FieldError("operands come from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.bits ^ other.bits, self.ctx)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.ctx.mul(self.bits, other.bits), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElem(self.ctx.div(self.bits, other.bits), self.ctx)

    def __pow__(self, e: int):
        return FieldElem(self.ctx.pow(self.bits, e), self.ctx)

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx.inv(self.bits), self.ctx)

    def trace(self) -> int:
        return self.ctx.trace(self.bits)

    def min_poly(self) -> int:
        return min_poly(self.ctx, self.bits)

    def __bool__(self):
        return self.bits != 0

    def __int__(self):
        return self.bits

    def __format__(self, spec):
        return format(self.bits, spec or "x")

    def __repr__(self):
        return f"GF(2^{self.ctx.m})({self.bits:#x})"


# ---------- field-level operations


def trace(a: FieldElem | int, ctx: FieldCtx | None = None) -> int:
    if isinstance(a, FieldElem):
        return a.trace()
    return ctx.trace(a)


def roots(p: int, ctx: FieldCtx) -> list[int]:
    """All roots of the GF(2)[x] polynomial ``p`` in the field, by exhaustive evaluation."""
    if poly_degree(p) < 1:
        raise FieldError("roots() needs a polynomial of degree >= 1")
    return [x for x in ctx.elements() if ctx.eval_poly(p, x) == 0]


def conjugates(ctx: FieldCtx, a: int) -> list[int]:
    out = [a]
    x = ctx.mul(a, a)
    while x != a:
        out.append(x)
        x = ctx.mul(x, x)
    return out


def min_poly(ctx: FieldCtx, a: int) -> int:
    """Minimal polynomial of ``a`` over GF(2): the product of (x - c) over its conjugates."""
    coeffs = [1]  # GF(2^m) coefficients, lowest degree first
    for c in conjugates(ctx, a):
        nxt = [0] * (len(coeffs) + 1)
        for i, k in enumerate(coeffs):
            nxt[i + 1] ^= k
            nxt[i] ^= ctx.mul(k, c)
        coeffs = nxt
    p = 0
    for i, k in enumerate(coeffs):
        if k not in (0, 1):
            raise AssertionError("minimal polynomial has coefficients outside GF(2)")
        p |= k << i
    return p


def mult_subgroup(ctx: FieldCtx, d: int) -> list[int]:
    """The multiplicative subgroup of order ``d``, sorted: {x : x^d = 1}."""
    n = ctx.q - 1
    if d < 1 or n % d:
        raise FieldError(f"{d} does not divide q - 1 = {n}")
    step = n // d
    return sorted(ctx._exp[i * step] for i in range(d))


def has_quadratic_root(ctx: FieldCtx, b: int, c: int) -> bool:
    """Whether t^2 + b t + c has a root in the field (brute force)."""
    return any(ctx.mul(t, t) ^ ctx.mul(b, t) ^ c == 0 for t in ctx.elements())


def solve_quadratic(ctx: FieldCtx, b: int, c: int) -> list[int]:
    """Roots of t^2 + b t + c in the field.

    For b != 0 substitute t = b s, giving s^2 + s + c/b^2, which is solvable
    iff Tr(c/b^2) = 0; the half-trace gives a root directly when m is odd,
    otherwise we fall back to scanning.
    """
    if b == 0:
        # Frobenius is bijective: exactly one square root
        return [ctx.pow(c, ctx.q // 2)]
    k = ctx.div(c, ctx.mul(b, b))
    if ctx.trace(k):
        return []
    if ctx.m % 2:
        # half-trace H(k) = sum_{i=0}^{(m-1)/2} k^(4^i)
        s = 0
        x = k
        for _ in range((ctx.m + 1) // 2):
            s ^= x
            x = ctx.mul(ctx.mul(x, x), ctx.mul(x, x))
    else:
        s = next(t for t in ctx.elements() if ctx.mul(t, t) ^ t == k)
    r = ctx.mul(b, s)
    return sorted({r, r ^ b})
