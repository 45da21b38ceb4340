"""Finite groups as dense multiplication tables.

Groups are built from a small spec language (``Z6``, ``E3^2xQ8``, ...) or
imported from Cayley-table files.  Elements are dense indices ``0..n-1``
with the identity re-indexed to 0, so every downstream computation can use
flat arrays and bitmasks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from .errors import (
    InvalidQuaternionOrder,
    NotAGroup,
    NotNilpotent,
    OrderCapExceeded,
    SpecError,
)

DEFAULT_ORDER_CAP = 4096

# Above this order the O(n^3) associativity check is replaced by seeded
# random sampling; the switch is recorded in FiniteGroup.validation.
EXHAUSTIVE_VALIDATION_LIMIT = 512

_SAMPLED_TRIPLES = 8192


# ---------------------------------------------------------------------------
# Spec expression tree
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (orders are <= 4096)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SpecError(f"Z{self.n}: order must be >= 1")


@dataclass(frozen=True)
class Quaternion:
    """Generalized quaternion group of order 2**k, k >= 3."""

    k: int

    def __post_init__(self):
        if self.k < 3:
            raise InvalidQuaternionOrder(
                f"Q{2 ** self.k if self.k >= 0 else '?'}: order must be 2**k with k >= 3"
            )


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order 2n, n >= 3."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise SpecError(f"D{self.n}: parameter must be >= 3 (order 2n)")


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    d: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise SpecError(f"E{self.p}^{self.d}: base must be prime")
        if self.d < 1:
            raise SpecError(f"E{self.p}^{self.d}: rank must be >= 1")


@dataclass(frozen=True)
class Heisenberg:
    """Unitriangular 3x3 matrices over F_p, order p**3, odd prime p."""

    p: int

    def __post_init__(self):
        if self.p == 2 or not _is_prime(self.p):
            raise SpecError(f"H{self.p}: parameter must be an odd prime")


@dataclass(frozen=True)
class CayleyFile:
    path: str

    def __post_init__(self):
        if not self.path:
            raise SpecError("file: atom requires a path")


Atom = Union[Cyclic, Quaternion, Dihedral, ElementaryAbelian, Heisenberg, CayleyFile]


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple[Atom, ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise SpecError("direct product needs at least two factors")
        # file: paths swallow the rest of the spec string, so a Cayley file
        # can only sit in last position if the rendering is to round-trip.
        for f in self.factors[:-1]:
            if isinstance(f, CayleyFile):
                raise SpecError("file: atom is only allowed as the last factor")


GroupSpec = Union[Atom, DirectProduct]

_ATOM_RE = re.compile(r"Z(\d+)|Q(\d+)|D(\d+)|E(\d+)\^(\d+)|H(\d+)")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the mini-language: atoms Z<n>, Q<2^k>, D<n>, E<p>^<d>, H<p>,
    file:<path>, joined by ``x``.

    A ``file:`` atom consumes the remainder of the string (paths may contain
    ``x``), so it must come last in a product.
    """
    text = text.strip()
    if not text:
        raise SpecError("empty group spec")
    atoms: list[Atom] = []
    pos = 0
    while True:
        if text.startswith("file:", pos):
            path = text[pos + 5 :]
            atoms.append(CayleyFile(path))
            pos = len(text)
        else:
            m = _ATOM_RE.match(text, pos)
            if m is None:
                raise SpecError(f"malformed token at position {pos} in {text!r}")
            pos = m.end()
            zn, qm, dn, ep, ed, hp = m.groups()
            if zn is not None:
                atoms.append(Cyclic(int(zn)))
            elif qm is not None:
                order = int(qm)
                if order < 8 or order & (order - 1):
                    raise InvalidQuaternionOrder(
                        f"Q{order}: order must be 2**k with k >= 3"
                    )
                atoms.append(Quaternion(order.bit_length() - 1))
            elif dn is not None:
                atoms.append(Dihedral(int(dn)))
            elif ep is not None:
                atoms.append(ElementaryAbelian(int(ep), int(ed)))
            else:
                atoms.append(Heisenberg(int(hp)))
        if pos == len(text):
            break
        if text[pos] != "x":
            raise SpecError(f"expected 'x' separator at position {pos} in {text!r}")
        pos += 1
        if pos == len(text):
            raise SpecError(f"trailing separator in {text!r}")
    if len(atoms) == 1:
        return atoms[0]
    return DirectProduct(tuple(atoms))


def render_group_spec(spec: GroupSpec) -> str:
    """Canonical text form; parse(render(s)) == s."""
    if isinstance(spec, DirectProduct):
        return "x".join(render_group_spec(f) for f in spec.factors)
    if isinstance(spec, Cyclic):
        return f"Z{spec.n}"
    if isinstance(spec, Quaternion):
        return f"Q{2 ** spec.k}"
    if isinstance(spec, Dihedral):
        return f"D{spec.n}"
    if isinstance(spec, ElementaryAbelian):
        return f"E{spec.p}^{spec.d}"
    if isinstance(spec, Heisenberg):
        return f"H{spec.p}"
    if isinstance(spec, CayleyFile):
        return f"file:{spec.path}"
    raise TypeError(f"not a group spec: {spec!r}")


# ---------------------------------------------------------------------------
# FiniteGroup
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group on indices 0..order-1 with identity 0."""

    order: int
    mul: np.ndarray          # (n, n) mul[a, b] = a*b
    identity: int
    inv: np.ndarray          # (n,)
    elem_order: np.ndarray   # (n,)
    provenance: GroupSpec | str
    validation: str          # "exhaustive" | "sampled"

    def mult(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, g: int, m: int) -> int:
        """g**m for m >= 0 by binary exponentiation."""
        result = self.identity
        base = g
        while m > 0:
            if m & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            m >>= 1
        return result

    @property
    def source(self) -> str:
        if isinstance(self.provenance, str):
            return self.provenance
        return render_group_spec(self.provenance)


def _check_associativity(mul: np.ndarray) -> str:
    """Exhaustive up to EXHAUSTIVE_VALIDATION_LIMIT, seeded sampling above."""
    n = mul.shape[0]
    if n <= EXHAUSTIVE_VALIDATION_LIMIT:
        for a in range(n):
            left = mul[mul[a], :]      # (ab)c
            right = mul[a, mul]        # a(bc)
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise NotAGroup("non-associative triple (a,b,c)", (a, int(b), int(c)))
        return "exhaustive"
    rng = np.random.default_rng(0)
    triples = rng.integers(0, n, size=(_SAMPLED_TRIPLES, 3))
    for a, b, c in triples:
        if mul[mul[a, b], c] != mul[a, mul[b, c]]:
            raise NotAGroup("non-associative triple (a,b,c)", (int(a), int(b), int(c)))
    return "sampled"


def _element_orders(mul: np.ndarray, identity: int) -> np.ndarray:
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    cur = np.arange(n)
    gs = np.arange(n)
    p = 1
    while True:
        hit = (cur == identity) & (orders == 0)
        orders[hit] = p
        if orders.all():
            return orders
        if p > n:
            raise NotAGroup("element with order exceeding group order")
        cur = mul[cur, gs]
        p += 1


def _finalize(mul: np.ndarray, provenance: GroupSpec | str) -> FiniteGroup:
    """Validate a table whose identity is already at index 0."""
    n = mul.shape[0]
    arange = np.arange(n)
    # rows and columns must be permutations (cancellation laws)
    if not (np.array_equal(np.sort(mul, axis=1), np.broadcast_to(arange, mul.shape))
            and np.array_equal(np.sort(mul, axis=0), np.broadcast_to(arange[:, None], mul.shape))):
        raise NotAGroup("missing inverse")
    validation = _check_associativity(mul)
    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    if not (np.array_equal(mul[arange, inv], np.zeros(n, dtype=mul.dtype))
            and np.array_equal(mul[inv, arange], np.zeros(n, dtype=mul.dtype))):
        raise NotAGroup("missing inverse")
    orders = _element_orders(mul, 0)
    if (n % orders != 0).any():
        raise NotAGroup("element order does not divide group order")
    mul = np.ascontiguousarray(mul, dtype=np.int32)
    mul.flags.writeable = False
    inv.flags.writeable = False
    orders.flags.writeable = False
    return FiniteGroup(
        order=n, mul=mul, identity=0, inv=inv, elem_order=orders,
        provenance=provenance, validation=validation,
    )


# --- table builders for each family ----------------------------------------


def _cyclic_table(n: int) -> np.ndarray:
    r = np.arange(n)
    return (r[:, None] + r[None, :]) % n


def _quaternion_table(k: int) -> np.ndarray:
    # elements x^a (index a) and x^a y (index a + M), M = 2^{k-1};
    # relations x^{2^{k-2}} = y^2 and y x y^{-1} = x^{-1}
    m = 2 ** k
    half = m // 2
    idx = np.arange(m)
    a, e = idx % half, idx // half
    a1, e1 = a[:, None], e[:, None]
    a2, e2 = a[None, :], e[None, :]
    rot = np.where(e1 == 0, a1 + a2, a1 - a2)
    rot = rot + np.where((e1 == 1) & (e2 == 1), half // 2, 0)
    return (rot % half) + half * (e1 ^ e2)


def _dihedral_table(n: int) -> np.ndarray:
    # elements r^a (index a) and r^a s (index a + n)
    idx = np.arange(2 * n)
    a, e = idx % n, idx // n
    a1, e1 = a[:, None], e[:, None]
    a2, e2 = a[None, :], e[None, :]
    rot = np.where(e1 == 0, a1 + a2, a1 - a2)
    return (rot % n) + n * (e1 ^ e2)


def _elementary_abelian_table(p: int, d: int) -> np.ndarray:
    n = p ** d
    idx = np.arange(n)
    mul = np.zeros((n, n), dtype=np.int64)
    for i in range(d):
        w = p ** i
        digit = (idx // w) % p
        mul += ((digit[:, None] + digit[None, :]) % p) * w
    return mul


def _heisenberg_table(p: int) -> np.ndarray:
    # (a, b, c) <-> matrix [[1,a,c],[0,1,b],[0,0,1]]; index = a + p*b + p^2*c
    n = p ** 3
    idx = np.arange(n)
    a, b, c = idx % p, (idx // p) % p, idx // (p * p)
    aa = (a[:, None] + a[None, :]) % p
    bb = (b[:, None] + b[None, :]) % p
    cc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return aa + p * bb + p * p * cc


def _product_table(tables: list[np.ndarray]) -> np.ndarray:
    sizes = [t.shape[0] for t in tables]
    n = int(np.prod(sizes))
    idx = np.arange(n)
    mul = np.zeros((n, n), dtype=np.int64)
    weight = n
    rem = idx
    # first factor is the most significant digit
    for t, s in zip(tables, sizes):
        weight //= s
        comp = (idx // weight) % s
        mul += t[comp[:, None], comp[None, :]].astype(np.int64) * weight
    return mul


def _atom_table(atom: Atom, order_cap: int) -> np.ndarray:
    if isinstance(atom, Cyclic):
        order = atom.n
    elif isinstance(atom, Quaternion):
        order = 2 ** atom.k
    elif isinstance(atom, Dihedral):
        order = 2 * atom.n
    elif isinstance(atom, ElementaryAbelian):
        order = atom.p ** atom.d
    elif isinstance(atom, Heisenberg):
        order = atom.p ** 3
    elif isinstance(atom, CayleyFile):
        with open(atom.path, "r", encoding="utf-8") as fh:
            group = from_cayley_table(fh.read())
        if group.order > order_cap:
            raise OrderCapExceeded(group.order, order_cap)
        return np.asarray(group.mul, dtype=np.int64)
    else:
        raise TypeError(f"not an atom: {atom!r}")
    if order > order_cap:
        raise OrderCapExceeded(order, order_cap)
    if isinstance(atom, Cyclic):
        return _cyclic_table(order)
    if isinstance(atom, Quaternion):
        return _quaternion_table(atom.k)
    if isinstance(atom, Dihedral):
        return _dihedral_table(atom.n)
    if isinstance(atom, ElementaryAbelian):
        return _elementary_abelian_table(atom.p, atom.d)
    return _heisenberg_table(atom.p)


def construct_group(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build and validate the group described by ``spec``."""
    if isinstance(spec, DirectProduct):
        tables = [_atom_table(f, order_cap) for f in spec.factors]
        total = int(np.prod([t.shape[0] for t in tables]))
        if total > order_cap:
            raise OrderCapExceeded(total, order_cap)
        table = _product_table(tables)
    else:
        table = _atom_table(spec, order_cap)
    return _finalize(table, spec)


def from_cayley_table(text: str) -> FiniteGroup:
    """Import a group from text: first line n, then n rows of n indices.

    Lines starting with ``#`` are comments.  The identity is auto-detected
    and re-indexed to 0.
    """
    rows: list[list[int]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise NotAGroup(f"malformed table line: {line!r}") from exc
    if not rows or len(rows[0]) != 1:
        raise NotAGroup("first line must contain the order")
    n = rows[0][0]
    body = rows[1:]
    if n < 1 or len(body) != n or any(len(r) != n for r in body):
        raise NotAGroup(f"expected {n} rows of {n} entries")
    mul = np.array(body, dtype=np.int64)
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup(f"entries must lie in [0, {n})")
    arange = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(mul[e], arange) and np.array_equal(mul[:, e], arange):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no identity")
    if identity != 0:
        perm = arange.copy()
        perm[0], perm[identity] = identity, 0
        mul = perm[mul[perm][:, perm]]  # perm is an involution
    return _finalize(mul, "imported")


# ---------------------------------------------------------------------------
# Cyclic subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicSubgroup:
    generator: int
    elements: tuple[int, ...]  # sorted
    order: int


def cyclic_subgroup(group: FiniteGroup, g: int) -> CyclicSubgroup:
    """The set of powers of g."""
    elems = [group.identity]
    cur = g
    while cur != group.identity:
        elems.append(cur)
        cur = int(group.mul[cur, g])
    elems.sort()
    return CyclicSubgroup(generator=g, elements=tuple(elems), order=len(elems))


def distinct_cyclic_subgroups(group: FiniteGroup) -> list[CyclicSubgroup]:
    """One representative per distinct element set, with the least generator,
    sorted by (order, element set)."""
    seen: dict[tuple[int, ...], CyclicSubgroup] = {}
    for g in range(group.order):
        sub = cyclic_subgroup(group, g)
        if sub.elements not in seen:
            seen[sub.elements] = sub
    return sorted(seen.values(), key=lambda s: (s.order, s.elements))


def maximal_cyclic_subgroups(group: FiniteGroup) -> list[CyclicSubgroup]:
    """Cyclic subgroups not contained in any larger cyclic subgroup."""
    subs = distinct_cyclic_subgroups(group)
    masks = []
    for sub in subs:
        m = 0
        for e in sub.elements:
            m |= 1 << e
        masks.append(m)
    keep = []
    for i, sub in enumerate(subs):
        if not any(masks[i] != masks[j] and masks[i] & masks[j] == masks[i]
                   for j in range(len(subs))):
            keep.append(sub)
    return keep


def center(group: FiniteGroup) -> list[int]:
    """Elements commuting with everything."""
    mask = (group.mul == group.mul.T).all(axis=1)
    return [int(i) for i in np.flatnonzero(mask)]


# ---------------------------------------------------------------------------
# Sylow structure of nilpotent groups
# ---------------------------------------------------------------------------


class SylowClass(str, Enum):
    CYCLIC = "cyclic"
    GENERALIZED_QUATERNION = "generalized_quaternion"
    NEITHER = "neither"


@dataclass(frozen=True)
class SylowFactor:
    p: int
    t: int                       # factor order is p**t
    elements: tuple[int, ...]    # all p-elements, sorted, incl. identity
    classification: SylowClass
    r: int                       # number of distinct order-p subgroups
    k: int | None                # quaternion parameter, iff generalized quaternion
    num_order_p: int
    isolated_involution: bool    # p=2: some involution lies in no cyclic of order >= 4

    @property
    def order(self) -> int:
        return self.p ** self.t


@dataclass(frozen=True)
class NilpotentProfile:
    order: int
    factors: tuple[SylowFactor, ...]  # sorted by p
    m: int                            # count of "neither" factors
    n_cyclic: int                     # product of cyclic factor orders
    has_quaternion: bool
    r_sorted: tuple[int, ...]         # r of the "neither" factors, ascending

    @property
    def quaternion_factor(self) -> SylowFactor | None:
        for f in self.factors:
            if f.classification is SylowClass.GENERALIZED_QUATERNION:
                return f
        return None

    @property
    def neither_factors(self) -> tuple[SylowFactor, ...]:
        return tuple(f for f in self.factors
                     if f.classification is SylowClass.NEITHER)

    @property
    def is_p_group(self) -> bool:
        return len(self.factors) <= 1

    @property
    def purely_cyclic(self) -> bool:
        return all(f.classification is SylowClass.CYCLIC for f in self.factors)

    def summary(self) -> str:
        if not self.factors:
            return "trivial"
        parts = []
        for f in self.factors:
            tag = {SylowClass.CYCLIC: "C",
                   SylowClass.GENERALIZED_QUATERNION: f"Q(k={f.k})",
                   SylowClass.NEITHER: "N"}[f.classification]
            parts.append(f"{f.p}^{f.t}:{tag}:r={f.r}")
        return " ".join(parts)


def _sylow_factor(group: FiniteGroup, p: int, t: int) -> SylowFactor:
    orders = group.elem_order
    is_p_elem = np.ones(group.order, dtype=bool)
    for g in range(group.order):
        o = int(orders[g])
        while o % p == 0:
            o //= p
        is_p_elem[g] = o == 1
    elems = np.flatnonzero(is_p_elem)
    member = np.zeros(group.order, dtype=bool)
    member[elems] = True
    products = group.mul[np.ix_(elems, elems)]
    if not member[products].all():
        raise NotNilpotent(p)
    assert len(elems) == p ** t, "closed p-element set must be the Sylow subgroup"
    sub_orders = orders[elems]
    num_order_p = int((sub_orders == p).sum())
    assert num_order_p % (p - 1) == 0
    r = num_order_p // (p - 1)
    max_order = int(sub_orders.max())
    if max_order == p ** t:
        cls: SylowClass = SylowClass.CYCLIC
    elif p == 2 and num_order_p == 1:
        cls = SylowClass.GENERALIZED_QUATERNION
        assert t >= 3, "non-cyclic 2-group with a unique involution has order >= 8"
    else:
        cls = SylowClass.NEITHER
    isolated = False
    if p == 2:
        covered: set[int] = set()
        for g in elems:
            o = int(orders[g])
            if o >= 4:
                covered.add(group.power(int(g), o // 2))
        involutions = {int(g) for g in elems if orders[g] == 2}
        isolated = bool(involutions - covered)
    return SylowFactor(
        p=p, t=t, elements=tuple(int(g) for g in elems),
        classification=cls, r=r,
        k=t if cls is SylowClass.GENERALIZED_QUATERNION else None,
        num_order_p=num_order_p, isolated_involution=isolated,
    )


def nilpotent_profile(group: FiniteGroup) -> NilpotentProfile:
    """Decompose into Sylow factors via p-element subsets.

    Valid exactly for nilpotent groups: fails with the witness prime as
    soon as some p-element set is not closed under multiplication.
    """
    factors = []
    for p, t in sorted(_factorize(group.order).items()):
        factors.append(_sylow_factor(group, p, t))
    neither = [f for f in factors if f.classification is SylowClass.NEITHER]
    n_cyclic = 1
    for f in factors:
        if f.classification is SylowClass.CYCLIC:
            n_cyclic *= f.order
    return NilpotentProfile(
        order=group.order,
        factors=tuple(factors),
        m=len(neither),
        n_cyclic=n_cyclic,
        has_quaternion=any(
            f.classification is SylowClass.GENERALIZED_QUATERNION for f in factors
        ),
        r_sorted=tuple(sorted(f.r for f in neither)),
    )


def count_order_p_subgroups(group: FiniteGroup, factor: SylowFactor) -> int:
    """Recount r from the element census: (#order-p elements) / (p-1)."""
    count = sum(1 for g in factor.elements if group.elem_order[g] == factor.p)
    assert count % (factor.p - 1) == 0
    return count // (factor.p - 1)


def p_part(group: FiniteGroup, g: int, p: int) -> int:
    """The p-component of g: g raised to the CRT exponent that kills all
    other prime parts of o(g)."""
    o = int(group.elem_order[g])
    q = 1
    while o % p == 0:
        q *= p
        o //= p
    rest = o
    if q == 1:
        return group.identity
    if rest == 1:
        return g
    c = rest * pow(rest, -1, q)
    return group.power(g, c)
