"""A small Buchberger engine for homogeneous ideals over F_q.

Only used where linear algebra in bounded degree is not enough: ideal
membership, projective emptiness and the Jacobian smoothness test for a cubic
fourfold.  Monomial order is graded reverse lexicographic; pairs are selected
by the normal strategy (smallest lcm first), which for homogeneous input
processes S-polynomials degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import HomogeneousPoly, VariableMismatch, partial_derivative

Mono = tuple[int, ...]


def grevlex_key(m: Mono):
    return (sum(m), tuple(-e for e in reversed(m)))


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Poly:
    __slots__ = ("terms", "lm")

    def __init__(self, terms: dict, lm: Mono | None = None):
        self.terms = terms
        self.lm = lm if lm is not None else (max(terms, key=grevlex_key) if terms else None)


def _monic(terms: dict, q: int) -> _Poly:
    p = _Poly(terms)
    inv = pow(terms[p.lm], -1, q)
    return _Poly({m: c * inv % q for m, c in terms.items()}, p.lm)


def _reduce(terms: dict, basis: list[_Poly], q: int, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by ``basis`` (monic elements)."""
    f = dict(terms)
    rem: dict = {}
    while f:
        m = max(f, key=grevlex_key)
        c = f.pop(m)
        for g in basis:
            if _divides(g.lm, m):
                shift = tuple(x - y for x, y in zip(m, g.lm))
                for gm, gc in g.terms.items():
                    if gm == g.lm:
                        continue
                    t = tuple(x + y for x, y in zip(gm, shift))
                    v = (f.get(t, 0) - c * gc) % q
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis (monic, grevlex) of a homogeneous ideal."""

    nvars: int
    q: int
    generators: list[HomogeneousPoly] = field(default_factory=list)
    order: str = "grevlex"
    complete: bool = True

    def _polys(self) -> list[_Poly]:
        return [_Poly(dict(g.terms)) for g in self.generators]

    def leading_monomials(self) -> list[Mono]:
        return [p.lm for p in self._polys()]


def _to_poly(terms: dict, nvars: int, q: int) -> HomogeneousPoly:
    deg = sum(next(iter(terms))) if terms else 0
    return HomogeneousPoly(nvars, deg, q, terms)


def _interreduce(polys: list[_Poly], q: int) -> list[_Poly]:
    polys = sorted(polys, key=lambda p: grevlex_key(p.lm))
    minimal = []
    for i, p in enumerate(polys):
        if not any(_divides(o.lm, p.lm) for o in polys[:i]) and not any(
            _divides(o.lm, p.lm) and o.lm != p.lm for o in polys[i + 1 :]
        ):
            if not any(o.lm == p.lm for o in minimal):
                minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = _reduce({m: c for m, c in p.terms.items() if m != p.lm}, others, q)
        tail[p.lm] = 1
        out.append(_Poly(tail, p.lm))
    return out


def buchberger(gens: list[HomogeneousPoly], max_degree: int | None = None, stop=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``max_degree`` truncates the computation (pairs of higher lcm degree are
    skipped; the result is then flagged incomplete).  ``stop`` is an optional
    predicate on the current list of leading monomials; when it returns true
    the computation ends early, also flagged incomplete.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    nvars, q = gens[0].nvars, gens[0].q
    for g in gens:
        if g.nvars != nvars:
            raise VariableMismatch("generators live in different rings")
    G: list[_Poly] = []
    pairs: set[tuple[int, int]] = set()
    complete = True

    def add(p: _Poly):
        G.append(p)
        k = len(G) - 1
        for i in range(k):
            pairs.add((i, k))

    for g in sorted(gens, key=lambda g: g.degree):
        r = _reduce(g.terms, G, q)
        if r:
            add(_monic(r, q))
    while pairs:
        i, j = min(pairs, key=lambda ij: grevlex_key(_lcm(G[ij[0]].lm, G[ij[1]].lm)) + ij)
        pairs.discard((i, j))
        a, b = G[i], G[j]
        lcm = _lcm(a.lm, b.lm)
        if max_degree is not None and sum(lcm) > max_degree:
            complete = False
            continue
        if _coprime(a.lm, b.lm):
            continue
        if any(
            k not in (i, j)
            and _divides(G[k].lm, lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        sa = tuple(x - y for x, y in zip(lcm, a.lm))
        sb = tuple(x - y for x, y in zip(lcm, b.lm))
        s: dict = {}
        for m, c in a.terms.items():
            t = tuple(x + y for x, y in zip(m, sa))
            s[t] = (s.get(t, 0) + c) % q
        for m, c in b.terms.items():
            t = tuple(x + y for x, y in zip(m, sb))
            s[t] = (s.get(t, 0) - c) % q
        s = {m: c for m, c in s.items() if c}
        r = _reduce(s, G, q)
        if r:
            add(_monic(r, q))
            if stop is not None and stop([p.lm for p in G]):
                complete = False
                break
    reduced = _interreduce(G, q)
    reduced.sort(key=lambda p: grevlex_key(p.lm))
    return GroebnerBasis(
        nvars, q, [_to_poly(p.terms, nvars, q) for p in reduced], complete=complete
    )


def normal_form(f: HomogeneousPoly, G: GroebnerBasis) -> HomogeneousPoly:
    if f.nvars != G.nvars:
        raise VariableMismatch("polynomial and basis live in different rings")
    r = _reduce(f.terms, G._polys(), G.q)
    return HomogeneousPoly(f.nvars, f.degree, f.q, r)


def _has_all_pure_powers(lms: list[Mono], nvars: int) -> bool:
    found = [False] * nvars
    for m in lms:
        if sum(m) == 0:
            return True
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def projective_empty(G: GroebnerBasis) -> bool:
    """True iff the projective zero locus over the algebraic closure is empty.

    Equivalent to every variable having a pure power among the leading
    monomials.  On an incomplete basis a ``True`` answer is still sound,
    since the leading monomials found belong to the leading ideal.
    """
    return _has_all_pure_powers(G.leading_monomials(), G.nvars)


def jacobian_ideal(f: HomogeneousPoly) -> list[HomogeneousPoly]:
    return [f] + [partial_derivative(f, i) for i in range(f.nvars)]


def jacobian_smooth(f: HomogeneousPoly) -> bool:
    """Smoothness of the hypersurface ``f = 0`` via its Jacobian ideal."""
    if f.degree < 1:
        raise ValueError("need a form of positive degree")
    gens = [g for g in jacobian_ideal(f) if not g.is_zero()]
    G = buchberger(gens, stop=lambda lms: _has_all_pure_powers(lms, f.nvars))
    return projective_empty(G)
