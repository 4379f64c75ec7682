"""Finite-precision quadratic algebras over Z_p and the lattice-side oracle.

Everything here is desk-scale verification machinery.  A case instance
fixes a quadratic algebra O_K[Delta] with Delta^2 = tau*Delta - delta:

* ramified:   Delta^2 = -p          (Eisenstein, tau = 0)
* unramified: Delta^2 = epsilon     (smallest positive nonresidue mod p)
* split:      Delta^2 = (p+1)Delta - p,  realizing Delta = (1, p) in K x K

Elements x + y*Delta are held as residue pairs mod p^N.  Rank-2 lattices
are 2x2 column spans over Z_p in upper-triangular Hermite form; homothety
classes (vertices of the degree-(p+1) tree) are primitive Hermite forms.
Tree distance between classes is the gap of the elementary-divisor
valuations of the change-of-basis matrix.

The ideal enumeration below is an oracle: it lists every finite-index
sublattice of O_n = O_K[p^n Delta] up to the index bound, keeps the ones
closed under multiplication by p^n*Delta, and tests principality by brute
force over ideal elements reduced mod p^{k+1} (k the index exponent),
confirming a found generator alpha by comparing the Hermite form of
alpha*O_n with the ideal.  It never consults the type-counting formulas it
is used to check.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Optional

from .building import (
    BasinKind,
    TruncatedTree,
    VertexAddr,
    distance as tree_distance,
    way_out_vertex,
)
from .errors import (
    EnumerationOverflow,
    NotAnIdeal,
    NotAUnit,
    NotInOrderUnit,
    OutsideTruncation,
    PrecisionExhausted,
    PrecisionTooSmall,
    UnsupportedPrime,
)
from .orders import ExtensionCase, TypeVector, contribution, extension_case
from .report import CheckResult

MIN_PRECISION = 4
VAL_GUARD = 2
MAX_ENUMERATED_LATTICES = 2_000_000


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _smallest_nonresidue(p: int) -> int:
    squares = {(x * x) % p for x in range(1, p)}
    for eps in range(2, p):
        if eps not in squares:
            return eps
    raise AssertionError("odd primes always have a nonresidue")


@dataclass(frozen=True)
class CaseInstance:
    """A concrete (case, p, precision) quadratic algebra with fixed Delta."""

    case: ExtensionCase
    p: int
    precision: int
    tau: int
    delta: int
    epsilon: Optional[int] = None

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def tag(self) -> BasinKind:
        return self.case.tag


def make_case(tag: BasinKind, p: int, precision: int) -> CaseInstance:
    if not _is_prime(p):
        raise UnsupportedPrime(f"{p} is not prime")
    if precision < MIN_PRECISION:
        raise PrecisionTooSmall(f"need precision >= {MIN_PRECISION}")
    case = extension_case(tag)
    if tag is BasinKind.RAMIFIED:
        return CaseInstance(case, p, precision, tau=0, delta=p)
    if tag is BasinKind.UNRAMIFIED:
        if p == 2:
            raise UnsupportedPrime("p = 2 unramified is not supported")
        eps = _smallest_nonresidue(p)
        return CaseInstance(case, p, precision, tau=0, delta=-eps, epsilon=eps)
    return CaseInstance(case, p, precision, tau=p + 1, delta=p)


@dataclass(frozen=True)
class QuadElem:
    """x + y*Delta with both coordinates reduced mod p^N."""

    inst: CaseInstance = field(repr=False)
    x: int
    y: int

    def __post_init__(self):
        mod = self.inst.modulus
        object.__setattr__(self, "x", self.x % mod)
        object.__setattr__(self, "y", self.y % mod)

    def __add__(self, other: QuadElem) -> QuadElem:
        return QuadElem(self.inst, self.x + other.x, self.y + other.y)

    def __sub__(self, other: QuadElem) -> QuadElem:
        return QuadElem(self.inst, self.x - other.x, self.y - other.y)

    def __mul__(self, other) -> QuadElem:
        if isinstance(other, int):
            return QuadElem(self.inst, self.x * other, self.y * other)
        tau, delta = self.inst.tau, self.inst.delta
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return QuadElem(
            self.inst,
            x1 * x2 - delta * y1 * y2,
            x1 * y2 + y1 * x2 + tau * y1 * y2,
        )

    __rmul__ = __mul__

    def conj(self) -> QuadElem:
        """The algebra conjugate: x + y*(tau - Delta)."""
        return QuadElem(self.inst, self.x + self.inst.tau * self.y, -self.y)

    def norm(self) -> int:
        """N(x + y*Delta) = x^2 + tau*x*y + delta*y^2, as a residue."""
        tau, delta = self.inst.tau, self.inst.delta
        return (self.x * self.x + tau * self.x * self.y + delta * self.y * self.y) % self.inst.modulus

    def is_unit(self) -> bool:
        return self.norm() % self.inst.p != 0

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n % self.inst.p == 0:
            raise NotAUnit(f"{self} has non-unit norm")
        ninv = pow(n, -1, self.inst.modulus)
        c = self.conj()
        return QuadElem(self.inst, c.x * ninv, c.y * ninv)

    def components(self) -> tuple[int, int]:
        """Split case: the pair (x + y, x + p*y) under the factor map."""
        if self.inst.tag is not BasinKind.SPLIT:
            raise ValueError("component coordinates exist only in the split case")
        mod = self.inst.modulus
        return ((self.x + self.y) % mod, (self.x + self.inst.p * self.y) % mod)

    def __str__(self) -> str:
        return f"{self.x} + {self.y}*D"


def elem(inst: CaseInstance, x: int, y: int = 0) -> QuadElem:
    return QuadElem(inst, x, y)


def from_components(inst: CaseInstance, a1: int, a2: int) -> QuadElem:
    """Split case: the element with factor components (a1, a2)."""
    if inst.tag is not BasinKind.SPLIT:
        raise ValueError("component coordinates exist only in the split case")
    inv = pow(inst.p - 1, -1, inst.modulus)
    y = (a2 - a1) * inv
    x = a1 - y
    return QuadElem(inst, x, y)


def _val(p: int, r: int, cap: int) -> int:
    """p-adic valuation of a residue; `cap` stands in for `at least cap`."""
    if r == 0:
        return cap
    v = 0
    while r % p == 0:
        r //= p
        v += 1
    return min(v, cap)


def _guarded(inst: CaseInstance, v: int) -> int:
    if v >= inst.precision - VAL_GUARD:
        raise PrecisionExhausted(
            f"valuation {v} is not certified at precision {inst.precision}"
        )
    return v


def elem_type(inst: CaseInstance, a: QuadElem) -> TypeVector:
    """The type of a nonzero element: uniformizer valuation(s).

    Ramified: val_pi(x + y*Delta) = min(2 val(x), 2 val(y) + 1).
    Unramified: min(val(x), val(y)).  Split: componentwise val_p.
    """
    N = inst.precision
    p = inst.p
    if inst.tag is BasinKind.SPLIT:
        a1, a2 = a.components()
        return (_guarded(inst, _val(p, a1, N)), _guarded(inst, _val(p, a2, N)))
    vx = _val(p, a.x, N)
    vy = _val(p, a.y, N)
    if inst.tag is BasinKind.RAMIFIED:
        return _guarded(inst, min(2 * vx, 2 * vy + 1))
    return _guarded(inst, min(vx, vy))


def in_order(inst: CaseInstance, n: int, a: QuadElem) -> bool:
    """Membership in O_n = O_K[p^n Delta]: the Delta coordinate has val >= n."""
    return a.y % inst.p**n == 0


def in_order_unit(inst: CaseInstance, n: int, a: QuadElem) -> bool:
    return in_order(inst, n, a) and a.is_unit()


def slope_map(inst: CaseInstance, n: int, u: QuadElem) -> int:
    """z * w^{-1} mod p for a unit u = w + z p^n Delta of O_n (n >= 1)."""
    if n < 1:
        raise ValueError("the slope map is defined for n >= 1")
    if not in_order_unit(inst, n, u):
        raise NotInOrderUnit(f"{u} is not a unit of level {n}")
    z = (u.y // inst.p**n) % inst.p
    winv = pow(u.x % inst.p, -1, inst.p)
    return (z * winv) % inst.p


def level0_index(inst: CaseInstance) -> int:
    """[O_0^* : O_1^*]: p, p + 1, p - 1 for ramified/unramified/split."""
    if inst.tag is BasinKind.RAMIFIED:
        return inst.p
    if inst.tag is BasinKind.UNRAMIFIED:
        return inst.p + 1
    return inst.p - 1


@functools.lru_cache(maxsize=None)
def level0_reps(inst: CaseInstance) -> tuple[QuadElem, ...]:
    """Coset representatives of O_0^*/O_1^*.

    Ramified: 1 + t*Delta for t in 0..p-1 suffices.  Otherwise representatives
    are found by enumeration over small coordinates, keeping a candidate when
    its quotient against every kept one fails to land in O_1^*.
    """
    p = inst.p
    if inst.tag is BasinKind.RAMIFIED:
        return tuple(QuadElem(inst, 1, t) for t in range(p))
    want = level0_index(inst)
    reps: list[QuadElem] = []
    for x in range(p):
        for y in range(p):
            cand = QuadElem(inst, x, y)
            if not cand.is_unit():
                continue
            if any(in_order_unit(inst, 1, cand * r.inverse()) for r in reps):
                continue
            reps.append(cand)
            if len(reps) == want:
                return tuple(reps)
    raise AssertionError(f"found only {len(reps)} of {want} representatives")


def unit_rep(inst: CaseInstance, level: int, t: int) -> QuadElem:
    """The coset representative u_t at the given filtration level."""
    if level == 0:
        return level0_reps(inst)[t]
    if not 0 <= t < inst.p:
        raise ValueError("level >= 1 representatives are indexed by 0..p-1")
    return QuadElem(inst, 1, t * inst.p**level)


@dataclass(frozen=True)
class UnitRep:
    """A labelled coset representative of one filtration step."""

    level: int
    t: int
    element: QuadElem


def unit_representative(inst: CaseInstance, level: int, t: int) -> UnitRep:
    elem_ = unit_rep(inst, level, t)
    if not in_order_unit(inst, level, elem_):
        raise NotInOrderUnit(f"representative {elem_} is not a level-{level} unit")
    return UnitRep(level, t, elem_)


def coset_reps(inst: CaseInstance, n: int, d: int) -> list[QuadElem]:
    """Representatives of O_{n-d}^*/O_n^*: products over index tuples.

    The factors run over levels n-d .. n-1 (level-0 factors from the
    enumerated base set).  Pairwise inequivalence is verified by division:
    u * v^{-1} must not be a unit of O_n.
    """
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    ranges = []
    for level in range(n - d, n):
        size = level0_index(inst) if level == 0 else inst.p
        ranges.append([(level, t) for t in range(size)])
    count = 1
    for r in ranges:
        count *= len(r)
    if count > 100_000:
        raise EnumerationOverflow(f"{count} coset representatives requested")
    reps = []
    for combo in itertools.product(*ranges):
        u = QuadElem(inst, 1, 0)
        for level, t in combo:
            u = u * unit_rep(inst, level, t)
        reps.append(u)
    for i, u in enumerate(reps):
        for v in reps[:i]:
            if in_order_unit(inst, n, u * v.inverse()):
                raise AssertionError("coset representatives are not inequivalent")
    return reps


# -- lattices -----------------------------------------------------------


@dataclass(frozen=True)
class LatticeHNF:
    """Column span of [[p^a, c], [0, p^b]] with 0 <= c < p^a."""

    p: int
    a_exp: int
    c: int
    b_exp: int

    def __post_init__(self):
        if not 0 <= self.c < self.p**self.a_exp:
            raise ValueError("off-diagonal entry must be reduced")

    @property
    def index_exponent(self) -> int:
        return self.a_exp + self.b_exp

    def matrix(self) -> tuple[int, int, int, int]:
        """Entries (m00, m01, m10, m11) with m10 = 0."""
        return (self.p**self.a_exp, self.c, 0, self.p**self.b_exp)

    def key(self) -> tuple[int, int, int]:
        return (self.a_exp, self.c, self.b_exp)

    def __str__(self) -> str:
        return f"[[{self.p}^{self.a_exp},{self.c}],[0,{self.p}^{self.b_exp}]]"


def hnf_reduce(p: int, m00: int, m01: int, m10: int, m11: int, precision: int) -> LatticeHNF:
    """Canonical Hermite form of a full-rank integer column span over Z_p.

    Column operations only; valuations are extracted from residues mod p^W
    and must clear the guard margin.
    """
    W = precision
    mod = p**W
    m00, m01, m10, m11 = m00 % mod, m01 % mod, m10 % mod, m11 % mod
    v0 = _val(p, m10, W)
    v1 = _val(p, m11, W)
    if v0 < v1:
        m00, m01 = m01, m00
        m10, m11 = m11, m10
        v0, v1 = v1, v0
    if v1 >= W - VAL_GUARD:
        raise PrecisionExhausted("bottom row vanishes at working precision")
    unit = m11 // p**v1
    scale = p ** (W - v1)
    uinv = pow(unit % scale, -1, scale)
    f = ((m10 // p**v1) * uinv) % scale
    m00 = (m00 - f * m01) % mod
    # column 0 is now (m00, 0); normalize column 1 to (c, p^b).
    b = v1
    c_raw = (m01 * uinv) % mod
    a = _val(p, m00, W)
    if a >= W - VAL_GUARD:
        raise PrecisionExhausted("pivot vanishes at working precision")
    # c is only correct mod p^{W-b}, so the whole determinant valuation
    # must clear the guard, not just each diagonal exponent.
    if a + b > W - VAL_GUARD:
        raise PrecisionExhausted("determinant valuation exhausts working precision")
    return LatticeHNF(p, a, c_raw % p**a, b)


def hnf_exact(
    p: int, m00: int, m01: int, m10: int, m11: int, det_val_bound: int
) -> LatticeHNF:
    """Hermite form for exact integer columns.

    With exact entries the working precision is free, so it is derived from
    a bound on the determinant valuation (every valuation the reduction
    extracts is at most that).
    """
    return hnf_reduce(p, m00, m01, m10, m11, det_val_bound + VAL_GUARD + 2)


def class_rep(L: LatticeHNF) -> LatticeHNF:
    """Primitive representative of the homothety class (vertex) of L."""
    vals = [L.a_exp, L.b_exp]
    if L.c:
        vals.append(_val(L.p, L.c, L.a_exp))
    v = min(vals)
    return LatticeHNF(L.p, L.a_exp - v, L.c // L.p**v, L.b_exp - v)


def standard_lattice(p: int) -> LatticeHNF:
    return LatticeHNF(p, 0, 0, 0)


def order_lattice(p: int, n: int) -> LatticeHNF:
    """O_n in the coordinate basis {1, Delta}: span of (1,0) and (0, p^n)."""
    return LatticeHNF(p, 0, 0, n)


def second_anchor_lattice(p: int) -> LatticeHNF:
    """Ramified case: the class of Delta*O_0, adjacent to the standard class."""
    return LatticeHNF(p, 1, 0, 0)


def mult_matrix(inst: CaseInstance, a: QuadElem) -> tuple[int, int, int, int]:
    """Matrix of multiplication by a on {1, Delta} coordinates (columns)."""
    x, y = a.x, a.y
    return (x, (-inst.delta * y) % inst.modulus, y, (x + inst.tau * y) % inst.modulus)


def lattice_class_of_element_action(inst: CaseInstance, a: QuadElem, base: LatticeHNF) -> LatticeHNF:
    """Homothety class of a * (lattice spanned by base's columns)."""
    m00, m01, m10, m11 = mult_matrix(inst, a)
    b00, b01, b10, b11 = base.matrix()
    c00 = m00 * b00 + m01 * b10
    c10 = m10 * b00 + m11 * b10
    c01 = m00 * b01 + m01 * b11
    c11 = m10 * b01 + m11 * b11
    return class_rep(hnf_reduce(inst.p, c00, c01, c10, c11, inst.precision))


@functools.lru_cache(maxsize=None)
def apartment_lattice(inst: CaseInstance, j: int) -> LatticeHNF:
    """Split case: the class of the apartment vertex at position j.

    Position j is the class of (1, p^j) * O_0 under the factor coordinates;
    scaling makes both entries integral for either sign of j, and the
    element's norm has valuation |j|, which bounds the Hermite reduction.
    """
    if inst.tag is not BasinKind.SPLIT:
        raise ValueError("apartment lattices exist only in the split case")
    k = abs(j)
    y = (inst.p**k - 1) // (inst.p - 1)
    x = (1 - y) if j >= 0 else (inst.p**k - y)
    cols = (x, -inst.delta * y, y, x + inst.tau * y)
    return class_rep(hnf_exact(inst.p, *cols, det_val_bound=k))


def _minval_entries(p: int, entries, cap: int) -> int:
    vals = [_val(p, e, cap) for e in entries if e != 0]
    return min(vals) if vals else cap


def lattice_distance(inst: CaseInstance, A: LatticeHNF, B: LatticeHNF) -> int:
    """Tree distance between the classes of A and B.

    This is the gap |v2 - v1| of the elementary-divisor valuations of
    A^{-1} B, computed as val(det A) + val(det B) - 2 * minval(adj(A) * B);
    the value only depends on the homothety classes.
    """
    a00, a01, a10, a11 = A.matrix()
    b00, b01, b10, b11 = B.matrix()
    # adj(A) = [[a11, -a01], [-a10, a00]]
    c00 = a11 * b00 - a01 * b10
    c01 = a11 * b01 - a01 * b11
    c10 = -a10 * b00 + a00 * b10
    c11 = -a10 * b01 + a00 * b11
    cap = 4 * inst.precision
    det_val = A.index_exponent + B.index_exponent
    mv = _minval_entries(inst.p, (c00, c01, c10, c11), cap)
    if mv >= cap:
        raise PrecisionExhausted("degenerate change of basis")
    return det_val - 2 * mv


def neighbor_classes(inst: CaseInstance, L: LatticeHNF) -> list[LatticeHNF]:
    """The p + 1 classes at tree distance 1 from the class of L."""
    p = inst.p
    m00, m01, m10, m11 = L.matrix()
    bound = L.index_exponent + 1
    out = []
    seen = set()
    subs = [(1, 0, 0, p)] + [(p, t, 0, 1) for t in range(p)]
    for s00, s01, s10, s11 in subs:
        c00 = m00 * s00 + m01 * s10
        c10 = m10 * s00 + m11 * s10
        c01 = m00 * s01 + m01 * s11
        c11 = m10 * s01 + m11 * s11
        cls = class_rep(hnf_exact(p, c00, c01, c10, c11, bound))
        if cls.key() not in seen:
            seen.add(cls.key())
            out.append(cls)
    if len(out) != p + 1:
        raise AssertionError("index-p sublattices did not give p+1 classes")
    return out


class ClassAtlas:
    """Bijection between lattice classes and tree addresses.

    Built by breadth-first descent from the basin anchor classes, labelling
    children in sorted Hermite-key order except along the way out, where
    child 0 is forced to be the next main-sequence class O_{h+1}.
    """

    def __init__(self, inst: CaseInstance, tree: TruncatedTree):
        if tree.spec.m != inst.p or tree.spec.kind is not inst.tag:
            raise ValueError("tree and case instance do not match")
        self.inst = inst
        self.tree = tree
        self._by_key: dict[tuple[int, int, int], VertexAddr] = {}
        self._by_addr: dict[VertexAddr, LatticeHNF] = {}
        self._build()

    def _anchor_items(self):
        inst = self.inst
        p = inst.p
        if inst.tag is BasinKind.UNRAMIFIED:
            return [(0, standard_lattice(p), [])]
        if inst.tag is BasinKind.RAMIFIED:
            o0 = standard_lattice(p)
            pi = second_anchor_lattice(p)
            return [(0, o0, [pi]), (1, pi, [o0])]
        items = []
        hw = self.tree.halfwidth
        for j in range(-hw, hw + 1):
            basin_nbrs = [
                apartment_lattice(inst, j - 1),
                apartment_lattice(inst, j + 1),
            ]
            items.append((j, apartment_lattice(inst, j), basin_nbrs))
        return items

    def _build(self):
        anchors: list[tuple[VertexAddr, LatticeHNF, list[LatticeHNF]]] = []
        for anchor, lat, basin_nbrs in self._anchor_items():
            addr = VertexAddr(anchor)
            self._register(addr, lat)
            anchors.append((addr, lat, basin_nbrs))
        for addr, lat, excluded in anchors:
            self._descend(addr, lat, excluded)

    def _register(self, addr: VertexAddr, lat: LatticeHNF):
        if lat.key() in self._by_key:
            raise AssertionError(f"class {lat} registered twice")
        self._by_key[lat.key()] = addr
        self._by_addr[addr] = lat

    def _descend(self, addr: VertexAddr, lat: LatticeHNF, excluded: list[LatticeHNF]):
        if addr.height >= self.tree.radius:
            return
        skip = {e.key() for e in excluded}
        children = [
            c for c in neighbor_classes(self.inst, lat) if c.key() not in skip
        ]
        children.sort(key=lambda c: c.key())
        on_spine = addr.anchor == 0 and all(i == 0 for i in addr.word)
        if on_spine:
            nxt = class_rep(order_lattice(self.inst.p, addr.height + 1))
            if all(c.key() != nxt.key() for c in children):
                raise AssertionError("main-sequence class missing among children")
            children.sort(key=lambda c: (c.key() != nxt.key(), c.key()))
        for i, child in enumerate(children):
            child_addr = VertexAddr(addr.anchor, addr.word + (i,))
            self._register(child_addr, child)
            self._descend(child_addr, child, [lat])

    def locate(self, lat: LatticeHNF) -> VertexAddr:
        addr = self._by_key.get(class_rep(lat).key())
        if addr is None:
            raise OutsideTruncation(f"class {lat} not in the atlas")
        return addr

    def lattice_at(self, addr: VertexAddr) -> LatticeHNF:
        if addr not in self._by_addr:
            raise OutsideTruncation(str(addr))
        return self._by_addr[addr]


# -- ideal enumeration ---------------------------------------------------


@dataclass(frozen=True)
class IdealRecord:
    """One enumerated finite-index ideal of O_n (in the O_n basis)."""

    lattice: LatticeHNF
    n: int
    index_exponent: int
    principal: bool
    generator: Optional[QuadElem] = None
    type_eps: Optional[TypeVector] = None
    contribution: Optional[int] = None
    vertex: Optional[VertexAddr] = None
    distance_to_main: Optional[int] = None


def _module_action_matrix(inst: CaseInstance, n: int) -> tuple[int, int, int, int]:
    """Multiplication by p^n*Delta on the O_n basis {1, p^n*Delta}."""
    return (0, -inst.delta * inst.p ** (2 * n), 1, inst.tau * inst.p**n)


def _lattice_contains(L: LatticeHNF, w0: int, w1: int) -> bool:
    pa = L.p**L.a_exp
    pb = L.p**L.b_exp
    if w1 % pb != 0:
        return False
    return (w0 - L.c * (w1 // pb)) % pa == 0


def is_ideal(inst: CaseInstance, n: int, L: LatticeHNF) -> bool:
    """Closure of the sublattice under multiplication by p^n*Delta."""
    m00, m01, m10, m11 = _module_action_matrix(inst, n)
    for v0, v1 in ((L.p**L.a_exp, 0), (L.c, L.p**L.b_exp)):
        w0 = m00 * v0 + m01 * v1
        w1 = m10 * v0 + m11 * v1
        if not _lattice_contains(L, w0, w1):
            return False
    return True


def _find_generator(
    inst: CaseInstance, n: int, L: LatticeHNF
) -> Optional[tuple[int, int]]:
    """Brute-force search for a generator among I mod p^{k+1} O_n.

    An element alpha generates iff val_p(N(alpha)) equals the index
    exponent k (always >= k on I), so the scan walks the residues in a
    fixed order and stops at the first hit; exhausting the scan proves the
    ideal non-principal.  Returns O_n-basis coordinates of the generator.
    """
    p = inst.p
    k = L.index_exponent
    pk = p**k
    pk1 = pk * p
    pa = p**L.a_exp
    pb = p**L.b_exp
    tau_n = inst.tau * p**n
    delta_n = inst.delta * p ** (2 * n)
    for bcoef in range(pk1 // pb):
        v = bcoef * pb
        t1 = bcoef * L.c
        lin = tau_n * v
        quad = delta_n * v * v
        for acoef in range(pk1 // pa):
            u = acoef * pa + t1
            norm = u * u + lin * u + quad
            if norm % pk == 0 and norm % pk1 != 0:
                return (u, v)
    return None


@functools.lru_cache(maxsize=None)
def _enumerate_core(
    inst: CaseInstance, n: int, max_contribution: int
) -> tuple[IdealRecord, ...]:
    p = inst.p
    if inst.precision < max_contribution + 2 * n + 2:
        raise PrecisionTooSmall(
            f"need precision >= {max_contribution + 2 * n + 2} for this enumeration"
        )
    total = sum(
        p**a for k in range(max_contribution + 1) for a in range(k + 1)
    )
    if total > MAX_ENUMERATED_LATTICES:
        raise EnumerationOverflow(f"{total} candidate lattices")
    on_class = class_rep(order_lattice(p, n))
    records = []
    for k in range(max_contribution + 1):
        for a in range(k + 1):
            b = k - a
            for c in range(p**a):
                L = LatticeHNF(p, a, c, b)
                if not is_ideal(inst, n, L):
                    continue
                coords = _find_generator(inst, n, L)
                if coords is None:
                    # Distance still makes sense for the class of the lattice.
                    records.append(
                        IdealRecord(L, n, k, principal=False)
                    )
                    continue
                u, v = coords
                gen = QuadElem(inst, u, p**n * v)
                _confirm_generator(inst, n, L, u, v)
                eps = _exact_type(inst, u, p**n * v)
                contrib = contribution(inst.case, eps)
                if contrib != k:
                    raise AssertionError(
                        f"index exponent {k} disagrees with contribution {contrib}"
                    )
                dist = lattice_distance(
                    inst, _ideal_class(inst, n, L), on_class
                )
                records.append(
                    IdealRecord(
                        L,
                        n,
                        k,
                        principal=True,
                        generator=gen,
                        type_eps=eps,
                        contribution=contrib,
                        distance_to_main=dist,
                    )
                )
    return tuple(records)


def _confirm_generator(inst: CaseInstance, n: int, L: LatticeHNF, u: int, v: int):
    """Check alpha*O_n = I by Hermite-form comparison (exact integers)."""
    tau_n = inst.tau * inst.p**n
    delta_n = inst.delta * inst.p ** (2 * n)
    # Columns of multiplication by alpha on the O_n basis.
    c00, c10 = u, v
    c01, c11 = -delta_n * v, u + tau_n * v
    H = hnf_exact(inst.p, c00, c01, c10, c11, L.index_exponent)
    if H != L:
        raise AssertionError(f"claimed generator spans {H}, not {L}")


def _exact_type(inst: CaseInstance, x: int, y: int) -> TypeVector:
    """Type of x + y*Delta from exact integer coordinates."""
    p = inst.p
    cap = 8 * inst.precision
    if inst.tag is BasinKind.SPLIT:
        return (_val(p, x + y, cap), _val(p, x + p * y, cap))
    vx = _val(p, x, cap)
    vy = _val(p, y, cap)
    if inst.tag is BasinKind.RAMIFIED:
        return min(2 * vx, 2 * vy + 1)
    return min(vx, vy)


def _ideal_class(inst: CaseInstance, n: int, L: LatticeHNF) -> LatticeHNF:
    """Homothety class of the ideal in {1, Delta} coordinates.

    The O_n basis differs from {1, Delta} by diag(1, p^n), so the Hermite
    data only shifts in the second diagonal exponent.
    """
    return class_rep(LatticeHNF(L.p, L.a_exp, L.c, L.b_exp + n))


def enumerate_ideals(
    inst: CaseInstance,
    n: int,
    max_contribution: int,
    tree: Optional[TruncatedTree] = None,
) -> list[IdealRecord]:
    """All ideals of O_n with index exponent <= max_contribution.

    Records are ordered by Hermite key.  When a matching truncated tree is
    supplied, principal records additionally carry the tree address of
    their lattice class.
    """
    core = _enumerate_core(inst, n, max_contribution)
    if tree is None:
        return list(core)
    atlas = ClassAtlas(inst, tree)
    out = []
    for rec in core:
        if not rec.principal:
            out.append(rec)
            continue
        addr = atlas.locate(_ideal_class(inst, n, rec.lattice))
        out.append(
            IdealRecord(
                rec.lattice,
                rec.n,
                rec.index_exponent,
                True,
                rec.generator,
                rec.type_eps,
                rec.contribution,
                addr,
                rec.distance_to_main,
            )
        )
    return out


def ideal_vertex(
    inst: CaseInstance,
    rec: IdealRecord,
    tree: TruncatedTree,
    atlas: Optional[ClassAtlas] = None,
) -> VertexAddr:
    """Tree address of the homothety class of an enumerated ideal."""
    if atlas is None:
        atlas = ClassAtlas(inst, tree)
    return atlas.locate(_ideal_class(inst, rec.n, rec.lattice))


def traveling(inst: CaseInstance, n: int, J: LatticeHNF) -> LatticeHNF:
    """p*J as an ideal of O_{n+1} (in the O_{n+1} basis).

    An element u + v p^n Delta of O_n maps to pu + v p^{n+1} Delta, so the
    basis change is diag(p, 1) and the Hermite data shifts in the first
    diagonal exponent.
    """
    if not is_ideal(inst, n, J):
        raise NotAnIdeal(f"{J} is not an ideal of level {n}")
    out = LatticeHNF(J.p, J.a_exp + 1, J.p * J.c, J.b_exp)
    if not is_ideal(inst, n + 1, out):
        raise AssertionError("traveling image is not an ideal")
    return out


def source_and_distance_check(
    inst: CaseInstance,
    n: int,
    max_contribution: int,
    tree: TruncatedTree,
) -> list[CheckResult]:
    """Per-vertex structure of the enumerated principal ideals.

    Groups records by vertex and verifies: the types at a vertex are an
    arithmetic progression with step e_vec truncated by the contribution
    bound; the smallest contribution equals the lattice distance to O_n and
    the tree distance of the address to the way-out vertex.
    """
    records = enumerate_ideals(inst, n, max_contribution, tree)
    e_vec = inst.case.e_vec
    by_vertex: dict[VertexAddr, list[IdealRecord]] = {}
    for rec in records:
        if rec.principal:
            by_vertex.setdefault(rec.vertex, []).append(rec)
    results = []
    target = way_out_vertex(tree.spec, n)
    on_class = class_rep(order_lattice(inst.p, n))
    for addr in sorted(by_vertex, key=lambda v: (v.anchor, v.word)):
        group = by_vertex[addr]
        types = sorted(
            (t if isinstance(t, tuple) else (t,))
            for t in (r.type_eps for r in group)
        )
        base = types[0]
        min_contrib = min(r.contribution for r in group)
        expected_count = (max_contribution - min_contrib) // 2 + 1
        want = sorted(
            tuple(b + k * e for b, e in zip(base, e_vec))
            for k in range(expected_count)
        )
        progression_ok = types == want
        dist_ok = all(
            r.distance_to_main
            == lattice_distance(inst, _ideal_class(inst, n, r.lattice), on_class)
            for r in group
        )
        metric_ok = min_contrib == group[0].distance_to_main == tree_distance(
            tree, addr, target
        )
        results.append(
            CheckResult(
                f"source {inst.tag.value} p={inst.p} n={n} vertex={addr}",
                progression_ok and dist_ok and metric_ok,
                f"types={types} min_c={min_contrib}",
            )
        )
    return results
