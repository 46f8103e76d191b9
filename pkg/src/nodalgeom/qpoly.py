"""Sparse multivariate polynomials over exact rationals.

Shared arithmetic core: polynomials keyed by monomials (sorted tuples of
(variable, exponent) pairs with Fraction coefficients), exact row reduction,
and a small Buchberger engine for zero-dimensional staircase counts.
"""

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

Q0 = Fraction(0)
Q1 = Fraction(1)


def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def _mono_deg(m):
    return sum(e for _, e in m)


class Poly:
    """Polynomial with Fraction coefficients in named variables."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name, exp=1):
        return cls({((name, exp),): Q1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, Q0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        out = Poly.__new__(Poly)
        out.terms = res
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly()
            out = Poly.__new__(Poly)
            out.terms = {m: cc * c for m, cc in self.terms.items()}
            return out
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = res.get(m, Q0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        out = Poly.__new__(Poly)
        out.terms = res
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def degree(self):
        return max((_mono_deg(m) for m in self.terms), default=-1)

    def coeff(self, mono):
        return self.terms.get(tuple(sorted(mono)), Q0)

    def constant(self):
        return self.terms.get((), Q0)

    def variables(self):
        seen = set()
        for m in self.terms:
            for v, _ in m:
                seen.add(v)
        return seen

    def substitute(self, env):
        """Substitute variables by Fractions or Polys; others untouched."""
        out = Poly()
        for m, c in self.terms.items():
            acc = Poly.const(c)
            rest = []
            for v, e in m:
                if v in env:
                    val = env[v]
                    if isinstance(val, Poly):
                        acc = acc * val ** e
                    else:
                        acc = acc * (Fraction(val) ** e)
                else:
                    rest.append((v, e))
            out = out + acc * Poly({tuple(sorted(rest)): Q1})
        return out

    def collect(self, name):
        """Split into {exponent of name: cofactor Poly}."""
        buckets = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, ee in m:
                if v == name:
                    e = ee
                else:
                    rest.append((v, ee))
            buckets.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly(t) for e, t in buckets.items()}

    def divide_linear(self, u, v):
        """Exact division by (u - v) for variables u, v.

        Valid whenever self vanishes under u -> v; raises ValueError on a
        nonzero remainder.
        """
        by_u = self.collect(u)
        pu, pv = Poly.var(u), Poly.var(v)
        quo = Poly()
        rem = Poly()
        for e, cof in sorted(by_u.items()):
            if e == 0:
                rem = rem + cof
            else:
                # u^e - v^e = (u - v) * sum_{j<e} u^j v^(e-1-j)
                geom = Poly()
                for j in range(e):
                    geom = geom + pu ** j * pv ** (e - 1 - j)
                quo = quo + cof * geom
                rem = rem + cof * pv ** e
        if rem.terms:
            raise ValueError("nonzero remainder in linear division")
        return quo

    def render(self, varname=str):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (_mono_deg(mm), mm)):
            c = self.terms[m]
            factors = []
            for v, e in m:
                factors.append(varname(v) + (f"^{e}" if e > 1 else ""))
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Poly({self.render()})"


# ---------------------------------------------------------------------------
# exact linear algebra


def rref(rows):
    """Reduced row echelon form over Fraction; returns (pivot cols, rows)."""
    mat = [list(r) for r in rows if any(r)]
    pivots = []
    reduced = []
    for row in mat:
        for pc, pr in zip(pivots, reduced):
            if row[pc]:
                f = row[pc]
                for k in range(len(row)):
                    row[k] -= f * pr[k]
        lead = next((k for k, x in enumerate(row) if x), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [x / inv for x in row]
        for pc, pr in zip(pivots, reduced):
            if pr[lead]:
                f = pr[lead]
                for k in range(len(row)):
                    pr[k] -= f * row[k]
        pivots.append(lead)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=lambda t: pivots[t])
    return [pivots[t] for t in order], [reduced[t] for t in order]


def reduce_vector(vec, pivots, rows):
    """Remainder of vec after elimination against an rref basis."""
    v = list(vec)
    for pc, pr in zip(pivots, rows):
        if v[pc]:
            f = v[pc]
            for k in range(len(v)):
                v[k] -= f * pr[k]
    return v


def in_span(vec, pivots, rows):
    return not any(reduce_vector(vec, pivots, rows))


def solve_linear(columns, target):
    """Solve sum_j t_j * columns[j] = target exactly; None if inconsistent."""
    n = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    piv_of_col = {}
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, n) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_of_col[c] = r
        r += 1
        if r == n:
            break
    for i in range(n):
        if aug[i][-1] and not any(aug[i][j] for j in range(k)):
            return None
    sol = [Q0] * k
    for c, i in piv_of_col.items():
        sol[c] = aug[i][-1]
    return sol


# ---------------------------------------------------------------------------
# Buchberger over Q in a fixed variable list (grevlex)


def _gl_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


class Negated:
    """Wrapper inverting comparison, for max-heaps of order keys."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return self.key > other.key

    def __eq__(self, other):
        return self.key == other.key


def _e_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _e_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _e_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _e_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _primitive(d):
    """Scale to integer coefficients with content 1 and positive lead."""
    if not d:
        return d
    num_gcd = 0
    den_lcm = 1
    for c in d.values():
        num_gcd = gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    out = {e: int(c * den_lcm) // num_gcd for e, c in d.items()}
    if out[max(out, key=_gl_key)] < 0:
        out = {e: -c for e, c in out.items()}
    return out


class GroebnerBasis:
    """Grevlex Groebner basis of an ideal in Q[variables]."""

    def __init__(self, gens: Iterable[Poly], variables):
        self.variables = list(variables)
        self._idx = {v: i for i, v in enumerate(self.variables)}
        polys = [self._to_vec(g) for g in gens if g]
        self.basis = self._buchberger(polys)

    def _to_vec(self, p: Poly):
        out = {}
        for m, c in p.terms.items():
            e = [0] * len(self.variables)
            for v, ee in m:
                if v not in self._idx:
                    raise ValueError(f"unknown variable {v!r}")
                e[self._idx[v]] = ee
            out[tuple(e)] = c
        return out

    def _from_vec(self, d):
        return Poly({
            tuple(sorted((self.variables[i], e) for i, e in enumerate(exp) if e)): c
            for exp, c in d.items()
        })

    @staticmethod
    def _lead(d):
        return max(d, key=_gl_key)

    def _nf(self, p, basis, leads=None):
        """Fraction-free normal form; basis coefficients must be ints."""
        if leads is None:
            leads = [(self._lead(b), b) for b in basis]
        den = 1
        for c in p.values():
            d = c.denominator
            den = den * d // gcd(den, d)
        work = {m: int(c * den) for m, c in p.items() if c}
        scale = den  # true value = work / scale
        rem = {}
        heap = [(Negated(_gl_key(m)), m) for m in work]
        heapq.heapify(heap)
        steps = 0
        while heap:
            _, lm = heapq.heappop(heap)
            if lm not in work:
                continue
            lc = work[lm]
            for blm, b in leads:
                if _e_divides(blm, lm):
                    L = b[blm]
                    if L != 1:
                        for k in work:
                            work[k] *= L
                        for k in rem:
                            rem[k] *= L
                        scale *= L
                    q = _e_sub(lm, blm)
                    for e, c in b.items():
                        t = _e_add(e, q)
                        old = work.get(t, 0)
                        s = old - lc * c
                        if s:
                            if not old and t != lm:
                                heapq.heappush(heap, (Negated(_gl_key(t)), t))
                            work[t] = s
                        else:
                            work.pop(t, None)
                    steps += 1
                    if steps % 16 == 0 and work:
                        g = 0
                        for v in work.values():
                            g = gcd(g, v)
                        for v in rem.values():
                            g = gcd(g, v)
                            if g == 1:
                                break
                        if g > 1 and scale % g == 0:
                            work = {k: v // g for k, v in work.items()}
                            rem = {k: v // g for k, v in rem.items()}
                            scale //= g
                    break
            else:
                rem[lm] = lc
                del work[lm]
        return {m: Fraction(c, scale) for m, c in rem.items() if c}

    def _buchberger(self, polys):
        basis = []
        leads = []
        for p in polys:
            r = self._nf(p, basis, leads) if basis else dict(p)
            if r:
                r = _primitive(r)
                basis.append(r)
                leads.append((self._lead(r), r))
        pairheap = []
        for i in range(len(basis)):
            for j in range(i):
                lcm = _e_lcm(leads[i][0], leads[j][0])
                heapq.heappush(pairheap, (_gl_key(lcm), i, j))
        while pairheap:
            _, i, j = heapq.heappop(pairheap)
            li, lj = leads[i][0], leads[j][0]
            lcm = _e_lcm(li, lj)
            if all(a + b == c for a, b, c in zip(li, lj, lcm)):
                continue  # coprime leads: S-poly reduces to zero
            qi, qj = _e_sub(lcm, li), _e_sub(lcm, lj)
            ci, cj = basis[j][lj], basis[i][li]  # cross-multiplied S-poly
            s = {}
            for e, c in basis[i].items():
                t = _e_add(e, qi)
                s[t] = s.get(t, 0) + c * ci
            for e, c in basis[j].items():
                t = _e_add(e, qj)
                v = s.get(t, 0) - c * cj
                if v:
                    s[t] = v
                else:
                    s.pop(t, None)
            s = {t: Fraction(v) for t, v in s.items()}
            r = self._nf(s, basis, leads)
            if r:
                r = _primitive(r)
                k = len(basis)
                basis.append(r)
                leads.append((self._lead(r), r))
                for t in range(k):
                    lcm = _e_lcm(leads[k][0], leads[t][0])
                    heapq.heappush(pairheap, (_gl_key(lcm), k, t))
        # minimal basis: drop elements whose lead another lead divides
        keep = []
        for i, (li, _) in enumerate(leads):
            if not any(t != i and _e_divides(leads[t][0], li)
                       and (leads[t][0] != li or t < i) for t in range(len(leads))):
                keep.append(i)
        return [basis[i] for i in keep]

    def normal_form(self, p: Poly) -> Poly:
        return self._from_vec(self._nf(self._to_vec(p), self.basis))

    def staircase(self, cap: int = 4096) -> Optional[list]:
        """Monomials below the leading-term ideal; None if infinite."""
        leads = [self._lead(b) for b in self.basis]
        if any(not any(e) for e in leads):
            return []
        n = len(self.variables)
        # finite iff every variable has a pure-power lead
        bound = [0] * n
        for i in range(n):
            pure = [e[i] for e in leads if sum(e) == e[i] and e[i] > 0]
            if not pure:
                return None
            bound[i] = min(pure)
        out = []
        stack = [(0, [0] * n)]
        while stack:
            i, cur = stack.pop()
            if i == n:
                e = tuple(cur)
                if not any(_e_divides(l, e) for l in leads):
                    out.append(e)
                    if len(out) > cap:
                        return None
                continue
            for k in range(bound[i]):
                nxt = list(cur)
                nxt[i] = k
                stack.append((i + 1, nxt))
        out.sort(key=_gl_key)
        return [
            tuple(sorted((self.variables[i], e) for i, e in enumerate(exp) if e))
            for exp in out
        ]
