"""Exact computation in the local ring of a node xy = 0.

Covers colength and normal forms of finite-colength ideals, the punctual
chain, deformation flatness over artinian test algebras (two independent
routes: staircase linear algebra and the closed-form coefficient relations),
and the small combinatorial consequences for nodal curves.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    ColengthMismatch,
    InconsistentVerdicts,
    IndexOutOfRange,
    InvalidAlgebra,
    NotFiniteColength,
)
from .qpoly import GroebnerBasis, Poly, Q0, Q1, in_span, rref, reduce_vector

Rat = Union[int, Fraction]


# ---------------------------------------------------------------------------
# the local ring R = Q[x,y]/(xy), truncated


@dataclass(frozen=True)
class LocalRingElement:
    """a + sum b_i x^i + sum c_i y^i, truncated beyond truncation_degree."""

    constant: Fraction
    x_coeffs: tuple
    y_coeffs: tuple
    truncation_degree: int

    @staticmethod
    def make(constant: Rat, x_coeffs: Sequence[Rat], y_coeffs: Sequence[Rat],
             truncation_degree: int) -> "LocalRingElement":
        if truncation_degree < 1:
            raise NotFiniteColength("truncation degree must be positive")
        xs = tuple(Fraction(c) for c in x_coeffs)
        ys = tuple(Fraction(c) for c in y_coeffs)
        if len(xs) > truncation_degree or len(ys) > truncation_degree:
            raise NotFiniteColength(
                "coefficients beyond the truncation degree are not representable")
        return LocalRingElement(Fraction(constant), xs, ys, truncation_degree)

    @staticmethod
    def monomial(axis: str, power: int, truncation_degree: int,
                 coeff: Rat = 1) -> "LocalRingElement":
        if power == 0:
            return LocalRingElement.make(coeff, (), (), truncation_degree)
        coeffs = [0] * power
        coeffs[power - 1] = Fraction(coeff)
        if axis == "x":
            return LocalRingElement.make(0, coeffs, (), truncation_degree)
        return LocalRingElement.make(0, (), coeffs, truncation_degree)

    def _xc(self, i: int) -> Fraction:
        return self.x_coeffs[i - 1] if 1 <= i <= len(self.x_coeffs) else Q0

    def _yc(self, i: int) -> Fraction:
        return self.y_coeffs[i - 1] if 1 <= i <= len(self.y_coeffs) else Q0

    def is_zero(self) -> bool:
        return not self.constant and not any(self.x_coeffs) and not any(self.y_coeffs)

    def __add__(self, other: "LocalRingElement") -> "LocalRingElement":
        n = min(self.truncation_degree, other.truncation_degree)
        xs = [self._xc(i) + other._xc(i) for i in range(1, n + 1)]
        ys = [self._yc(i) + other._yc(i) for i in range(1, n + 1)]
        return LocalRingElement.make(self.constant + other.constant, xs, ys, n)

    def __neg__(self) -> "LocalRingElement":
        return LocalRingElement(-self.constant, tuple(-c for c in self.x_coeffs),
                                tuple(-c for c in self.y_coeffs), self.truncation_degree)

    def __sub__(self, other: "LocalRingElement") -> "LocalRingElement":
        return self + (-other)

    def scale(self, c: Rat) -> "LocalRingElement":
        c = Fraction(c)
        return LocalRingElement(self.constant * c, tuple(v * c for v in self.x_coeffs),
                                tuple(v * c for v in self.y_coeffs), self.truncation_degree)

    def __mul__(self, other: "LocalRingElement") -> "LocalRingElement":
        # cross terms x^i * y^j vanish: the node relation xy = 0
        n = min(self.truncation_degree, other.truncation_degree)
        xs = [Q0] * n
        ys = [Q0] * n
        for k in range(1, n + 1):
            sx = self.constant * other._xc(k) + other.constant * self._xc(k)
            sy = self.constant * other._yc(k) + other.constant * self._yc(k)
            for i in range(1, k):
                sx += self._xc(i) * other._xc(k - i)
                sy += self._yc(i) * other._yc(k - i)
            xs[k - 1] = sx
            ys[k - 1] = sy
        return LocalRingElement.make(self.constant * other.constant, xs, ys, n)

    def vector(self, n: int):
        """Coordinates over the monomial basis 1, x..x^n, y..y^n."""
        return ([self.constant] + [self._xc(i) for i in range(1, n + 1)]
                + [self._yc(i) for i in range(1, n + 1)])

    def render(self) -> str:
        parts = []
        if self.constant:
            parts.append(str(self.constant))
        for i, c in enumerate(self.x_coeffs, start=1):
            if c:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        for i, c in enumerate(self.y_coeffs, start=1):
            if c:
                parts.append(f"{c}*y^{i}" if c != 1 else f"y^{i}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


# ---------------------------------------------------------------------------
# ideal normal forms


@dataclass(frozen=True)
class NodeIdealForm:
    """Curvilinear (y^i + a x^(m-i)) or Monomial (x^(m-i+1), y^i)."""

    kind: str  # "curvilinear" | "monomial"
    m: int
    i: int
    a: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == "curvilinear":
            if not (1 <= self.i <= self.m - 1):
                raise IndexOutOfRange(f"curvilinear index i={self.i} for m={self.m}")
            if self.a is None or self.a == 0:
                raise IndexOutOfRange("curvilinear parameter a must be nonzero")
        elif self.kind == "monomial":
            if not (1 <= self.i <= self.m):
                raise IndexOutOfRange(f"monomial index i={self.i} for m={self.m}")
            if self.a is not None:
                raise IndexOutOfRange("monomial form carries no parameter")
        else:
            raise IndexOutOfRange(f"unknown ideal kind {self.kind!r}")

    def render(self) -> str:
        if self.kind == "curvilinear":
            return f"I^{self.m}_{self.i}({self.a})"
        return f"Q^{self.m}_{self.i}"


def curvilinear(m: int, i: int, a: Rat) -> NodeIdealForm:
    return NodeIdealForm("curvilinear", m, i, Fraction(a))


def monomial_form(m: int, i: int) -> NodeIdealForm:
    return NodeIdealForm("monomial", m, i)


def generators_of(form: NodeIdealForm, truncation_degree: Optional[int] = None):
    """Expand a normal form back into explicit generators."""
    n = truncation_degree or form.m + 1
    if form.kind == "curvilinear":
        g = LocalRingElement.monomial("y", form.i, n) + \
            LocalRingElement.monomial("x", form.m - form.i, n, form.a)
        return [g]
    return [LocalRingElement.monomial("x", form.m - form.i + 1, n),
            LocalRingElement.monomial("y", form.i, n)]


def _ideal_span(generators, n):
    """rref basis of the ideal's image in R/(x,y)^(n+1)."""
    rows = []
    mults = [LocalRingElement.make(1, (), (), n)]
    for axis in ("x", "y"):
        mults.extend(LocalRingElement.monomial(axis, k, n) for k in range(1, n + 1))
    for g in generators:
        for u in mults:
            v = (g * u).vector(n)
            if any(v):
                rows.append(v)
    return rref(rows)


def colength(generators) -> int:
    """Dimension of R/I over Q for an ideal of finite colength.

    Row-reduces the ideal's image in the truncated ring; the answer is exact
    whenever it is at most truncation_degree - 1, otherwise the bound is too
    small to certify finiteness and NotFiniteColength is raised.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise NotFiniteColength("zero ideal has infinite colength")
    n = min(g.truncation_degree for g in gens)
    pivots, _ = _ideal_span(gens, n)
    d = (2 * n + 1) - len(pivots)
    if d > n - 1:
        raise NotFiniteColength(
            f"colength not certified below the bound (got {d} at truncation {n})")
    return d


def classify_ideal(generators, m: int) -> NodeIdealForm:
    """Normal form of a colength-m ideal: curvilinear or monomial type."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise NotFiniteColength("zero ideal")
    n = min(g.truncation_degree for g in gens)
    if n < m:
        raise NotFiniteColength(f"truncation degree {n} below colength {m}")
    d = colength(gens)
    if d != m:
        raise ColengthMismatch(f"ideal has colength {d}, expected {m}")
    pivots, rows = _ideal_span(gens, n)

    def member(axis, power):
        vec = LocalRingElement.monomial(axis, power, n).vector(n)
        return in_span(vec, pivots, rows)

    alpha = next(e for e in range(1, n + 1) if member("x", e))
    beta = next(e for e in range(1, n + 1) if member("y", e))
    if alpha + beta - 1 == m:
        return monomial_form(m, beta)
    if alpha + beta - 1 != m + 1:
        raise ColengthMismatch(
            f"minimal powers x^{alpha}, y^{beta} inconsistent with colength {m}")
    i = beta - 1
    # y^i = -a x^(m-i) mod I pins down the parameter
    v = reduce_vector(LocalRingElement.monomial("y", i, n).vector(n), pivots, rows)
    w = reduce_vector(LocalRingElement.monomial("x", m - i, n).vector(n), pivots, rows)
    k = next((t for t, c in enumerate(w) if c), None)
    if k is None:
        raise ColengthMismatch("curvilinear parameter extraction failed")
    a = -v[k] / w[k]
    if any(vv + a * ww for vv, ww in zip(v, w)):
        raise ColengthMismatch("ideal is not of curvilinear shape")
    return curvilinear(m, i, a)


def limit_of_curvilinear(m: int, i: int, direction: str) -> NodeIdealForm:
    """Flat limit of I^m_i(a) as a -> 0 or a -> infinity.

    Computed symbolically: rescale the generator (a -> 1/a' for the infinite
    limit), specialize the parameter to zero, and adjoin the parameter-free
    element of the family on the complementary branch; the classification of
    the resulting ideal is the limit.
    """
    if not (1 <= i <= m - 1):
        raise IndexOutOfRange(f"curvilinear index i={i} for m={m}")
    if direction not in ("to_zero", "to_infinity"):
        raise IndexOutOfRange(f"unknown direction {direction!r}")
    n = m + 1
    if direction == "to_zero":
        # generator -> y^i; x*(y^i + a x^(m-i)) rescaled by 1/a -> x^(m-i+1)
        gens = [LocalRingElement.monomial("y", i, n),
                LocalRingElement.monomial("x", m - i + 1, n)]
    else:
        # a = 1/a': a'*y^i + x^(m-i) -> x^(m-i); y*(generator) -> y^(i+1)
        gens = [LocalRingElement.monomial("x", m - i, n),
                LocalRingElement.monomial("y", i + 1, n)]
    return classify_ideal(gens, m)


@dataclass(frozen=True)
class ContainingIdeals:
    """All colength-(m-1) ideals containing a given colength-m ideal."""

    monomials: tuple
    curvilinear_family: Optional[tuple]  # (m-1, i-1) with a != 0, or None

    def render(self) -> str:
        parts = [f.render() for f in self.monomials]
        if self.curvilinear_family:
            mm, ii = self.curvilinear_family
            parts.insert(0, f"I^{mm}_{ii}(a), a != 0")
        return "{" + ", ".join(parts) + "}"


def containing_ideals(form: NodeIdealForm) -> ContainingIdeals:
    """Colength-(m-1) ideals containing the given form (Prop-level catalog)."""
    m, i = form.m, form.i
    if m < 2:
        raise IndexOutOfRange("need colength at least 2")
    if form.kind == "curvilinear":
        return ContainingIdeals((monomial_form(m - 1, i),), None)
    monos = []
    if 1 <= i <= m - 1:
        monos.append(monomial_form(m - 1, i))
    if 1 <= i - 1:
        monos.append(monomial_form(m - 1, i - 1))
    fam = (m - 1, i - 1) if 1 <= i - 1 <= m - 2 else None
    return ContainingIdeals(tuple(monos), fam)


def verify_containment(small: NodeIdealForm, big: NodeIdealForm,
                       truncation: Optional[int] = None) -> bool:
    """Check big contains small by membership linear algebra."""
    n = truncation or small.m + 2
    pivots, rows = _ideal_span(generators_of(big, n), n)
    return all(in_span(g.vector(n), pivots, rows) for g in generators_of(small, n))


# ---------------------------------------------------------------------------
# punctual chain and nodal-curve combinatorics


@dataclass(frozen=True)
class PunctualChain:
    """The punctual Hilbert scheme of colength m at a node as a chain."""

    m: int
    components: tuple  # labels C^m_1 .. C^m_(m-1)
    nodes: tuple       # interior nodes Q^m_2 .. Q^m_(m-1)
    endpoints: tuple   # Q^m_1 and Q^m_m


def punctual_chain(m: int) -> PunctualChain:
    if m < 1:
        raise IndexOutOfRange("length must be positive")
    if m == 1:
        return PunctualChain(1, (), (), ("Q^1_1",))
    comps = tuple(f"C^{m}_{i}" for i in range(1, m))
    nodes = tuple(f"Q^{m}_{i}" for i in range(2, m))
    return PunctualChain(m, comps, nodes, (f"Q^{m}_1", f"Q^{m}_{m}"))


def hilb_component_count(m: int, c: int) -> int:
    """Number of components of Hilb^m for a curve with c components."""
    if m < 0 or c < 1:
        raise IndexOutOfRange("need m >= 0 and c >= 1")
    return math.comb(m + c - 1, m)


@dataclass(frozen=True)
class CycleFibre:
    """Fibre of the cycle map over a cycle with given node multiplicities."""

    chain_lengths: tuple  # one entry per node: max(m_i - 1, 0)
    dimension: int


def cycle_fibre(multiplicities) -> CycleFibre:
    ms = list(multiplicities)
    if any(m < 0 for m in ms):
        raise IndexOutOfRange("multiplicities must be nonnegative")
    lengths = tuple(max(m - 1, 0) for m in ms)
    return CycleFibre(lengths, sum(1 for m in ms if m >= 2))


@dataclass(frozen=True)
class LocalModel:
    kind: str  # "smooth" | "normal_crossing_two_components"
    dim: int


def local_model(point: NodeIdealForm, relative: bool = False) -> LocalModel:
    """Local structure of the (relative) Hilbert scheme at a punctual ideal."""
    m = point.m
    if relative:
        return LocalModel("smooth", m + 1)
    if point.kind == "curvilinear":
        return LocalModel("smooth", m)
    if 2 <= point.i <= m - 1:
        return LocalModel("normal_crossing_two_components", m)
    return LocalModel("smooth", m)


# ---------------------------------------------------------------------------
# artinian test algebras


class ArtinAlgebra:
    """Finite local augmented Q-algebra given by a monomial presentation.

    The basis consists of the standard monomials in nilpotent variables;
    the multiplication table is derived from monomial arithmetic with the
    relation monomials killed. basis[0] is the unit; the maximal ideal is
    the span of the remaining basis monomials (= augmentation kernel).
    """

    def __init__(self, name: str, variables, relations):
        self.name = name
        self.variables = tuple(variables)
        self.relations = tuple(tuple(r) for r in relations)
        if not all(len(r) == len(self.variables) for r in self.relations):
            raise InvalidAlgebra("relation exponent arity mismatch")
        self.basis = self._standard_monomials()
        self._index = {m: k for k, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.table = self._build_table()
        self.nilpotency = self._nilpotency()

    def _standard_monomials(self):
        if not self.variables:
            return [()]
        bounds = []
        for i in range(len(self.variables)):
            pure = [r[i] for r in self.relations if sum(r) == r[i] and r[i] > 0]
            if not pure:
                raise InvalidAlgebra("maximal ideal is not nilpotent")
            bounds.append(min(pure))
        out = []
        stack = [(0, [])]
        while stack:
            i, cur = stack.pop()
            if i == len(self.variables):
                e = tuple(cur)
                if not any(all(x >= y for x, y in zip(e, r)) for r in self.relations):
                    out.append(e)
                continue
            for k in range(bounds[i]):
                stack.append((i + 1, cur + [k]))
        out.sort(key=lambda e: (sum(e), e))
        if out[0] != tuple([0] * len(self.variables)):
            raise InvalidAlgebra("unit monomial missing")
        return out

    def _build_table(self):
        table = {}
        nvars = len(self.variables)
        for a, ma in enumerate(self.basis):
            for b, mb in enumerate(self.basis):
                prod = tuple(x + y for x, y in zip(ma, mb)) if nvars else ()
                vec = [Q0] * self.dim
                killed = any(all(x >= y for x, y in zip(prod, r)) for r in self.relations)
                if not killed and prod in self._index:
                    vec[self._index[prod]] = Q1
                elif not killed:
                    raise InvalidAlgebra("product escapes the standard basis")
                table[(a, b)] = tuple(vec)
        return table

    def _nilpotency(self):
        span = [self.unit()]
        power = [[Q0] + [Q1 if k == j + 1 else Q0 for k in range(self.dim - 1)]
                 for j in range(self.dim - 1)]
        nu = 1
        while any(any(v) for v in power):
            nxt = []
            for v in power:
                for j in range(1, self.dim):
                    gen = [Q1 if k == j else Q0 for k in range(self.dim)]
                    nxt.append(self.mul(v, gen))
            piv, rows = rref(nxt)
            power = rows
            nu += 1
            if nu > self.dim + 2:
                raise InvalidAlgebra("maximal ideal is not nilpotent")
        return nu

    def zero(self):
        return [Q0] * self.dim

    def unit(self, c: Rat = 1):
        v = self.zero()
        v[0] = Fraction(c)
        return v

    def gen(self, name: str):
        e = tuple(1 if v == name else 0 for v in self.variables)
        v = self.zero()
        v[self._index[e]] = Q1
        return v

    def add(self, u, v):
        return [a + b for a, b in zip(u, v)]

    def sub(self, u, v):
        return [a - b for a, b in zip(u, v)]

    def scale(self, u, c: Rat):
        c = Fraction(c)
        return [a * c for a in u]

    def mul(self, u, v):
        out = self.zero()
        for a, ca in enumerate(u):
            if not ca:
                continue
            for b, cb in enumerate(v):
                if not cb:
                    continue
                for k, t in enumerate(self.table[(a, b)]):
                    if t:
                        out[k] += ca * cb * t
        return out

    def augmentation(self, u) -> Fraction:
        return u[0]

    def in_max_ideal(self, u) -> bool:
        return not u[0]

    def is_zero(self, u) -> bool:
        return not any(u)

    def to_poly(self, u) -> Poly:
        """Expand an element into the ambient polynomial presentation."""
        out = Poly()
        for k, c in enumerate(u):
            if c:
                mono = tuple(sorted((v, e) for v, e in zip(self.variables, self.basis[k]) if e))
                out = out + Poly({mono: c})
        return out

    def render(self, u) -> str:
        return self.to_poly(u).render() if any(u) else "0"

    def validate(self):
        """Brute-force check of the algebra axioms on the basis."""
        for a in range(self.dim):
            va = [Q1 if k == a else Q0 for k in range(self.dim)]
            if self.mul(self.unit(), va) != va:
                raise InvalidAlgebra("unit fails")
            for b in range(self.dim):
                vb = [Q1 if k == b else Q0 for k in range(self.dim)]
                if self.mul(va, vb) != self.mul(vb, va):
                    raise InvalidAlgebra("commutativity fails")
                for c in range(self.dim):
                    vc = [Q1 if k == c else Q0 for k in range(self.dim)]
                    if self.mul(self.mul(va, vb), vc) != self.mul(va, self.mul(vb, vc)):
                        raise InvalidAlgebra("associativity fails")
        return True


def dual_numbers(k: int) -> ArtinAlgebra:
    """Q[e]/(e^k)."""
    if k < 2:
        raise InvalidAlgebra("need k >= 2")
    return ArtinAlgebra(f"Q[e]/(e^{k})", ("e",), ((k,),))


def two_nilpotents() -> ArtinAlgebra:
    """Q[u,v]/(u^2, v^2, uv)."""
    return ArtinAlgebra("Q[u,v]/(u^2,v^2,uv)", ("u", "v"), ((2, 0), (0, 2), (1, 1)))


ARTIN_CATALOG = {
    "dual2": lambda: dual_numbers(2),
    "dual3": lambda: dual_numbers(3),
    "dual4": lambda: dual_numbers(4),
    "two_nilpotents": two_nilpotents,
}


# ---------------------------------------------------------------------------
# deformation data and the flatness check


@dataclass
class DeformationDatum:
    """Coefficients of a deformation of Q^m_i over an artinian algebra.

    f = x^(m+1-i) + sum_{0<=j<=m-i} a_j x^j + sum_{1<=j<=i-1} b_j y^j
    g = y^i       + sum_{0<=j<=m-i} c_j x^j + sum_{1<=j<=i-1} d_j y^j

    Interior chain nodes only (2 <= i <= m-1), so that the distinguished
    coefficients b_{i-1} and c_{m-i} both exist. In the relative case the
    ambient ring is S[x,y] with the fibre relation xy = s.
    """

    m: int
    i: int
    algebra: ArtinAlgebra
    a: list
    b: dict  # {j: element}, 1 <= j <= i-1
    c: list
    d: dict
    relative: bool = False
    s: Optional[list] = None

    def __post_init__(self):
        m, i, S = self.m, self.i, self.algebra
        if not (2 <= i <= m - 1):
            raise IndexOutOfRange("interior node required: 2 <= i <= m-1")
        if len(self.a) != m - i + 1 or len(self.c) != m - i + 1:
            raise IndexOutOfRange("a and c must carry indices 0..m-i")
        if set(self.b) != set(range(1, i)) or set(self.d) != set(range(1, i)):
            raise IndexOutOfRange("b and d must carry indices 1..i-1")
        for coeff in list(self.a) + list(self.c) + list(self.b.values()) + list(self.d.values()):
            if not S.in_max_ideal(coeff):
                raise InvalidAlgebra("deformation coefficients must lie in the maximal ideal")
        if self.relative:
            if self.s is None:
                self.s = S.zero()
            if not S.in_max_ideal(self.s):
                raise InvalidAlgebra("relative parameter s must lie in the maximal ideal")
        elif self.s is not None and not S.is_zero(self.s):
            raise InvalidAlgebra("absolute datum cannot carry a nonzero s")


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    closed_form_flat: bool
    failed_relations: tuple
    witness: Optional[str]
    quotient_dimension: int
    expected_dimension: int


def _closed_form_relations(datum: DeformationDatum):
    """The coefficient relations cutting out flatness, with s = 0 absolute.

    Key equations: b_j = b_{i-1} d_{j+1}, a_0 = b_{i-1} d_1,
    c_j = c_{m-i} a_{j+1}, the s-twisted products, and
    b_{i-1} c_{m-i} = s (which is the two-branch equation when s = 0).
    """
    S = datum.algebra
    m, i = datum.m, datum.i
    a, b, c, d = datum.a, datum.b, datum.c, datum.d
    s = datum.s if datum.relative and datum.s is not None else S.zero()
    bi, cm = b[i - 1], c[m - i]
    rels = []
    for j in range(1, i - 1):
        rels.append((f"b_{j} = b_{i-1} d_{j+1}", S.sub(b[j], S.mul(bi, d[j + 1]))))
    rels.append((f"a_0 = b_{i-1} d_1", S.sub(a[0], S.mul(bi, d[1]))))
    for j in range(0, m - i):
        rels.append((f"c_{j} = c_{m-i} a_{j+1}", S.sub(c[j], S.mul(cm, a[j + 1]))))
    for j in range(0, m - i):
        rels.append((f"b_{i-1} c_{j} = s a_{j+1}", S.sub(S.mul(bi, c[j]), S.mul(s, a[j + 1]))))
    rels.append((f"b_{i-1} c_{m-i} = s", S.sub(S.mul(bi, cm), s)))
    rels.append((f"c_{m-i} a_0 = s d_1", S.sub(S.mul(cm, a[0]), S.mul(s, d[1]))))
    for j in range(1, i - 1):
        rels.append((f"c_{m-i} b_{j} = s d_{j+1}", S.sub(S.mul(cm, b[j]), S.mul(s, d[j + 1]))))
    return rels


def _staircase_route(datum: DeformationDatum):
    """Groebner staircase + basis relations in Q[x, y, algebra variables]."""
    S = datum.algebra
    m, i = datum.m, datum.i
    variables = ["x", "y"] + list(S.variables)
    px, py = Poly.var("x"), Poly.var("y")

    f = px ** (m + 1 - i)
    for j, coeff in enumerate(datum.a):
        f = f + S.to_poly(coeff) * px ** j
    for j, coeff in datum.b.items():
        f = f + S.to_poly(coeff) * py ** j
    g = py ** i
    for j, coeff in enumerate(datum.c):
        g = g + S.to_poly(coeff) * px ** j
    for j, coeff in datum.d.items():
        g = g + S.to_poly(coeff) * py ** j

    gens = [f, g]
    if datum.relative:
        gens.append(px * py - S.to_poly(datum.s))
    else:
        gens.append(px * py)
    for r in S.relations:
        mono = tuple(sorted((v, e) for v, e in zip(S.variables, r) if e))
        gens.append(Poly({mono: Q1}))

    gb = GroebnerBasis(gens, variables)
    stair = gb.staircase()
    if stair is None:
        raise InvalidAlgebra("quotient unexpectedly infinite-dimensional")
    stair_index = {mm: k for k, mm in enumerate(stair)}

    # S-relations among 1, x..x^(m-i), y..y^(i-1): kernel of the NF matrix
    basis_elems = []
    labels = []
    module_basis = ([("x", j) for j in range(0, m - i + 1)]
                    + [("y", j) for j in range(1, i)])
    for axis, j in module_basis:
        mono_poly = Poly.var(axis, j) if j else Poly.const(1)
        for k, be in enumerate(S.basis):
            smono = tuple(sorted((v, e) for v, e in zip(S.variables, be) if e))
            nf = gb.normal_form(Poly({smono: Q1}) * mono_poly)
            vec = [Q0] * len(stair)
            for mono, coeff in nf.terms.items():
                vec[stair_index[mono]] = coeff
            basis_elems.append(vec)
            base = f"{axis}^{j}" if j else "1"
            labels.append(f"{S.render([Q1 if t == k else Q0 for t in range(S.dim)])}*{base}")
    # augment with the identity to read off one kernel vector directly
    nb = len(basis_elems)
    augmented = [vec + [Q1 if t == k else Q0 for t in range(nb)]
                 for k, vec in enumerate(basis_elems)]
    piv, rows = rref(augmented)
    rank = sum(1 for p in piv if p < len(stair))
    witness = None
    if rank < nb:
        for p, row in zip(piv, rows):
            if p >= len(stair):  # row is a relation: combination of inputs = 0
                combo = [(labels[k], row[len(stair) + k]) for k in range(nb)
                         if row[len(stair) + k]]
                witness = " + ".join(f"({c})*{lab}" for lab, c in combo)
                break
    return len(stair), rank, nb, witness


def check_flatness(datum: DeformationDatum) -> FlatnessReport:
    """Decide flatness two ways and insist the verdicts agree.

    Route 1 solves for S-relations among the module basis in the actual
    quotient ring (staircase linear algebra); route 2 evaluates the
    closed-form coefficient relations. Their disagreement is an internal
    error, never a result.
    """
    S = datum.algebra
    expected = (datum.m) * S.dim
    dim, rank, nbasis, witness = _staircase_route(datum)
    flat_la = (dim == expected and rank == nbasis)
    rels = _closed_form_relations(datum)
    failed = tuple(name for name, val in rels if not S.is_zero(val))
    flat_cf = not failed
    if flat_la != flat_cf:
        raise InconsistentVerdicts(
            f"linear algebra says flat={flat_la}, closed form says flat={flat_cf} "
            f"(dim {dim} vs {expected}; failed: {failed})")
    return FlatnessReport(flat_la, flat_cf, failed,
                          None if flat_la else (witness or (failed[0] if failed else None)),
                          dim, expected)
