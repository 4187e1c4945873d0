"""Twisted orbit types of S^1 x (Z2 x Z2 x D_N) and their module algebra.

A closed subgroup of S^1 x Gamma' is identified by a triple (K, phi, l):
K <= Gamma', a homomorphism phi from K to the circle (stored as exact
rational turns), and a folding integer l >= 0, cutting out
{(z, k) : phi(k) = z^l}; l = 0 is reserved for the product subgroups
S^1 x K (phi trivial).  Because the circle factor is central, conjugation
only moves the (K, phi) part, so orbit types are Gamma'-orbits of (K, phi)
pairs tagged with l; all conjugacy tests, subconjugation counts n(H, L)
and finite Weyl orders |W(H)/S^1| are computed exactly inside Gamma'.

A brute-force cross-check realizes types inside the finite quotient
Z_Q x Gamma' (all turns sharing denominator Q); see `quotient_weyl_oracle`
and `module_product_oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .burnside import BurnsideElement
from .errors import ExactnessError
from .groups import SubgroupClassLattice


class TwistedOrbitType(NamedTuple):
    """Conjugacy class of a twisted subgroup: (K, phi)-class id plus folding."""

    kphi: int
    l: int


@dataclass(frozen=True)
class TwistedSubgroup:
    """A concrete twisted subgroup (K, phi, l) over Gamma'."""

    members: frozenset  # element indices of K
    phi: tuple  # ((elem, turn), ...) sorted by elem
    l: int

    @staticmethod
    def build(lattice, members, phi: dict, l: int) -> "TwistedSubgroup":
        members = frozenset(members)
        if l < 0:
            raise ValueError("folding must be >= 0")
        if l == 0:
            phi = {k: Fraction(0) for k in members}
        g = lattice.group
        if set(phi) != members:
            raise ValueError("phi must be defined exactly on K")
        for a in members:
            for b in members:
                if (phi[a] + phi[b] - phi[g.table[a][b]]) % 1 != 0:
                    raise ValueError("phi is not a homomorphism")
        return TwistedSubgroup(members, tuple(sorted(phi.items())), l)

    def phi_dict(self) -> dict:
        return dict(self.phi)


def hom_to_circle(group, members) -> list[dict]:
    """All homomorphisms K -> S^1 as {element: turn} dicts (exact Fractions).

    Enumerated through the abelianization: candidate values on a greedy
    generating set are propagated across the multiplication table and kept
    when globally consistent.
    """
    members = sorted(members)
    mset = frozenset(members)
    # greedy generating set
    gens = []
    have = group.closure([])
    for x in members:
        if x not in have:
            gens.append(x)
            have = group.closure(list(have) + [x])
            if have == mset:
                break
    if not gens:  # trivial subgroup
        return [{group.identity: Fraction(0)}]

    def orders():
        for g in gens:
            yield group.element_order(g)

    candidates = [[]]
    for g, o in zip(gens, orders()):
        candidates = [c + [Fraction(p, o)] for c in candidates for p in range(o)]
    homs = []
    tab = group.table
    for cand in candidates:
        val = {group.identity: Fraction(0)}
        for g, v in zip(gens, cand):
            if g in val and (val[g] - v) % 1 != 0:
                val = None
                break
            val[g] = v % 1
        if val is None:
            continue
        ok = True
        frontier = list(val)
        while frontier and ok:
            new = []
            for a in list(val):
                for b in frontier:
                    for x, y in ((a, b), (b, a)):
                        p = tab[x][y]
                        want = (val[x] + val[y]) % 1
                        got = val.get(p)
                        if got is None:
                            val[p] = want
                            new.append(p)
                        elif got != want:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            frontier = new
        if ok and len(val) == len(members):
            homs.append(val)
    return homs


class TwistedContext:
    """Canonical (K, phi)-classes over a fixed Gamma' lattice.

    Class ids are stable and ordered by descending |K| (ties broken by the
    canonical key), a total order refining twisted subconjugation at equal
    folding.
    """

    def __init__(self, lattice: SubgroupClassLattice):
        self.lattice = lattice
        self.group = lattice.group
        self._classes = []  # canonical keys: (neg order, K tuple, phi tuple)
        self._class_ids = {}
        self._conjugates = []  # per class: list of (frozenset K, phi dict)
        self._weyl = []
        self._kclass = []  # lattice class id of K
        self._n_cache = {}
        self._build()

    # -- construction ------------------------------------------------------

    def _canonical_key(self, members, phi: dict):
        g = self.group
        tab, inv = g.table, g.inverse
        best = None
        for c in range(g.order):
            ci = inv[c]
            row = tab[c]
            conj_pairs = sorted((tab[row[k]][ci], t) for k, t in phi.items())
            key = (tuple(p for p, _ in conj_pairs), tuple(t for _, t in conj_pairs))
            if best is None or key < best:
                best = key
        return best

    def _conjugate_orbit(self, members, phi: dict):
        g = self.group
        tab, inv = g.table, g.inverse
        seen = {}
        for c in range(g.order):
            ci = inv[c]
            row = tab[c]
            pairs = {tab[row[k]][ci]: t for k, t in phi.items()}
            key = (tuple(sorted(pairs)), tuple(t for _, t in sorted(pairs.items())))
            if key not in seen:
                seen[key] = (frozenset(pairs), pairs)
        return list(seen.values())

    def _build(self):
        lat = self.lattice
        found = {}
        for kclass in range(lat.n_classes):
            rep = lat.reps[kclass]
            for phi in hom_to_circle(self.group, rep.elems):
                key = self._canonical_key(rep.members, phi)
                if key not in found:
                    found[key] = (kclass, rep.members, phi)
        ordered = sorted(found, key=lambda key: (-len(key[0]), key))
        for key in ordered:
            kclass, members, phi = found[key]
            cid = len(self._classes)
            self._classes.append(key)
            self._class_ids[key] = cid
            self._kclass.append(kclass)
            orbit = self._conjugate_orbit(members, phi)
            self._conjugates.append(orbit)
            self._weyl.append(self._weyl_t(members, phi))

    def _weyl_t(self, members, phi: dict) -> int:
        g = self.group
        tab, inv = g.table, g.inverse
        count = 0
        for c in range(g.order):
            ci = inv[c]
            row = tab[c]
            if all(phi.get(tab[row[k]][ci]) == t for k, t in phi.items()):
                count += 1
        if count % len(members):
            raise ExactnessError("phi-stabilizer order not divisible by |K|")
        return count // len(members)

    # -- queries -----------------------------------------------------------

    @property
    def n_types(self) -> int:
        return len(self._classes)

    def canonicalize(self, sub: TwistedSubgroup) -> TwistedOrbitType:
        key = self._canonical_key(sub.members, sub.phi_dict())
        return TwistedOrbitType(self._class_ids[key], sub.l)

    def type_of(self, members, phi: dict, l: int) -> TwistedOrbitType:
        return self.canonicalize(TwistedSubgroup.build(self.lattice, members, phi, l))

    def representative(self, t: TwistedOrbitType) -> TwistedSubgroup:
        key = self._classes[t.kphi]
        phi = dict(zip(key[0], key[1]))
        if t.l == 0:
            phi = {k: Fraction(0) for k in key[0]}
        return TwistedSubgroup(frozenset(key[0]), tuple(sorted(phi.items())), t.l)

    def k_order(self, t) -> int:
        kphi = t.kphi if isinstance(t, TwistedOrbitType) else t
        return len(self._classes[kphi][0])

    def k_class(self, t) -> int:
        kphi = t.kphi if isinstance(t, TwistedOrbitType) else t
        return self._kclass[kphi]

    def weyl_t(self, t) -> int:
        """|W(H)/S^1|: order of the phi-preserving normalizer modulo K."""
        kphi = t.kphi if isinstance(t, TwistedOrbitType) else t
        return self._weyl[kphi]

    def _n_same_phase(self, kphi1: int, kphi2: int) -> int:
        """Count of class-kphi2 pairs (K', phi') with K1 <= K', phi'|K1 = phi1."""
        got = self._n_cache.get((kphi1, kphi2))
        if got is not None:
            return got
        k1, t1 = self._classes[kphi1][0], self._classes[kphi1][1]
        phi1 = dict(zip(k1, t1))
        k1set = frozenset(k1)
        count = 0
        for members, phi in self._conjugates[kphi2]:
            if k1set <= members and all(phi[k] == t for k, t in phi1.items()):
                count += 1
        self._n_cache[(kphi1, kphi2)] = count
        return count

    def subconjugate(self, h: TwistedOrbitType, l_type: TwistedOrbitType):
        """(H) <= (L) test plus the count n(H, L) of containing conjugates."""
        n = self.n_t(h, l_type)
        return n > 0, n

    def n_t(self, h: TwistedOrbitType, l_type: TwistedOrbitType) -> int:
        if h.l == 0:
            if l_type.l != 0:
                return 0
            return self._n_product_contain(h.kphi, l_type.kphi)
        if l_type.l == 0:
            # K^{phi,l} <= S^1 x K' iff K <= K'
            return self._n_product_contain(h.kphi, l_type.kphi)
        if l_type.l % h.l:
            return 0
        power = l_type.l // h.l
        if power == 1:
            return self._n_same_phase(h.kphi, l_type.kphi)
        return self._n_power_phase(h.kphi, l_type.kphi, power)

    def _n_product_contain(self, kphi1: int, kphi2: int) -> int:
        k1set = frozenset(self._classes[kphi1][0])
        return sum(1 for members, _ in self._conjugates[kphi2] if k1set <= members)

    def _n_power_phase(self, kphi1: int, kphi2: int, power: int) -> int:
        k1, t1 = self._classes[kphi1][0], self._classes[kphi1][1]
        want = {k: (t * power) % 1 for k, t in zip(k1, t1)}
        k1set = frozenset(k1)
        count = 0
        for members, phi in self._conjugates[kphi2]:
            if k1set <= members and all(phi[k] == t for k, t in want.items()):
                count += 1
        return count

    def generating_set(self, t: TwistedOrbitType):
        """Small generating set of the representative's K, for display."""
        key = self._classes[t.kphi][0]
        g = self.group
        gens = []
        have = g.closure([])
        for x in key:
            if x not in have:
                gens.append(x)
                have = g.closure(list(have) + [x])
        return gens

    def type_str(self, t: TwistedOrbitType) -> str:
        key = self._classes[t.kphi]
        gens = self.generating_set(t)
        phi = dict(zip(key[0], key[1]))
        g = self.group
        gen_str = ",".join(f"{g.elements[x]}" for x in gens) or "e"
        phi_str = ",".join(f"{g.elements[k]}:{phi[k]}" for k in gens) or "-"
        return f"[{gen_str} | {phi_str} | {t.l}]"


@dataclass(frozen=True)
class TwistedSum:
    """Integer combination of twisted orbit types (possibly mixed foldings)."""

    context: TwistedContext = field(compare=False)
    coeffs: tuple  # sorted ((kphi, l), coeff)

    @staticmethod
    def from_dict(context, d) -> "TwistedSum":
        items = tuple(
            sorted((TwistedOrbitType(*k), v) for k, v in d.items() if v)
        )
        return TwistedSum(context, items)

    @staticmethod
    def zero(context) -> "TwistedSum":
        return TwistedSum(context, ())

    @staticmethod
    def generator(context, t: TwistedOrbitType) -> "TwistedSum":
        return TwistedSum(context, ((t, 1),))

    def as_dict(self) -> dict:
        return {t: v for t, v in self.coeffs}

    def coeff(self, t: TwistedOrbitType) -> int:
        return self.as_dict().get(t, 0)

    def support(self):
        return [t for t, _ in self.coeffs]

    def __add__(self, other: "TwistedSum") -> "TwistedSum":
        if self.context is not other.context:
            raise ValueError("sums live over different twisted contexts")
        d = self.as_dict()
        for t, v in other.coeffs:
            d[t] = d.get(t, 0) + v
        return TwistedSum.from_dict(self.context, d)

    def __neg__(self):
        return TwistedSum(self.context, tuple((t, -v) for t, v in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int) -> "TwistedSum":
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return TwistedSum.zero(self.context)
        return TwistedSum(self.context, tuple((t, scalar * v) for t, v in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{self.context.type_str(t)}" for t, v in self.coeffs)


def fold(s: int, a: TwistedSum) -> TwistedSum:
    """Pull back every orbit type through the s-folding circle map.

    The preimage of K^{phi,l} under (z, g) -> (z^s, g) is K^{phi, s*l}, so
    folding just rescales the folding tag; it is Z-linear and multiplicative
    in s.
    """
    if s < 1:
        raise ValueError("folding must be >= 1")
    return TwistedSum(
        a.context,
        tuple(sorted((TwistedOrbitType(t.kphi, s * t.l), v) for t, v in a.coeffs)),
    )


def module_product(a: BurnsideElement, b: TwistedSum) -> TwistedSum:
    """Action of the Burnside ring of Gamma' on twisted sums.

    Bilinear extension of (K) * (H^{phi,l}) computed by the top-down
    recurrence on Weyl-weighted counts; all divisions must be exact.
    """
    ctx = b.context
    if a.lattice is not ctx.lattice:
        raise ValueError("operands live over different lattices")
    out: dict = {}
    for kcls, va in a.coeffs:
        for h, vb in b.coeffs:
            for t, v in _module_generator_product(ctx, kcls, h).items():
                out[t] = out.get(t, 0) + va * vb * v
    return TwistedSum.from_dict(ctx, out)


def _module_generator_product(ctx: TwistedContext, kcls: int, h: TwistedOrbitType):
    cache = getattr(ctx, "_module_products", None)
    if cache is None:
        cache = {}
        ctx._module_products = cache
    got = cache.get((kcls, h))
    if got is not None:
        return got
    lat = ctx.lattice
    wk = lat.weyl[kcls]
    wh = ctx.weyl_t(h)
    # candidate output types: twisted-subconjugate to (H) with K-part
    # subconjugate to (K); same folding as H
    cands = []
    for kphi in range(ctx.n_types):
        t = TwistedOrbitType(kphi, h.l)
        if lat.n_table[ctx.k_class(kphi)][kcls] == 0:
            continue
        if ctx.n_t(t, h) == 0:
            continue
        cands.append(t)
    # context class ids are ordered by descending |K|: already top-down
    res: dict = {}
    for t in cands:
        lead = lat.n_table[ctx.k_class(t)][kcls] * wk * ctx.n_t(t, h) * wh
        above = sum(v * ctx.n_t(t, tt) * ctx.weyl_t(tt) for tt, v in res.items())
        num = lead - above
        den = ctx.weyl_t(t)
        if num % den:
            raise ExactnessError("non-integer coefficient in module product")
        c = num // den
        if c:
            res[t] = c
    cache[(kcls, h)] = res
    return res


# -- finite-quotient oracles -------------------------------------------------


def _quotient_denominator(ctx: TwistedContext, types, extra: int = 1) -> int:
    """Common circle denominator Q so that every phi value and folding fits."""
    import math

    q = extra
    for t in types:
        key = ctx._classes[t.kphi]
        q = math.lcm(q, max(t.l, 1))
        for turn in key[1]:
            q = math.lcm(q, turn.denominator * max(t.l, 1))
    return q


def realize_in_quotient(ctx: TwistedContext, t: TwistedOrbitType, q: int):
    """Element set of the representative twisted subgroup inside Z_q x Gamma'."""
    rep = ctx.representative(t)
    phi = rep.phi_dict()
    out = set()
    for k in rep.members:
        if t.l == 0:
            for z in range(q):
                out.add((z, k))
        else:
            target = phi[k]
            for z in range(q):
                if (Fraction(z * t.l, q) - target) % 1 == 0:
                    out.add((z, k))
    return frozenset(out)


def quotient_weyl_oracle(ctx: TwistedContext, t: TwistedOrbitType, q: int | None = None) -> int:
    """|W(H)/S^1| recomputed by brute-force normalizer in Z_q x Gamma'."""
    if q is None:
        q = _quotient_denominator(ctx, [t], extra=2)
    g = ctx.group
    tab, inv = g.table, g.inverse
    hbar = realize_in_quotient(ctx, t, q)
    # Z_q is central, so the normalizer is Z_q x {c : c conjugates hbar to itself}
    fixers = 0
    for c in range(g.order):
        ci = inv[c]
        conj = frozenset((w, tab[tab[c][k]][ci]) for w, k in hbar)
        if conj == hbar:
            fixers += 1
    norm_order = q * fixers
    if norm_order % len(hbar):
        raise ExactnessError("quotient normalizer order not divisible by |H|")
    w = norm_order // len(hbar)
    # for product types the circle sits inside H, so the Weyl group is finite
    circle_order = 1 if t.l == 0 else q // t.l
    if w % circle_order:
        raise ExactnessError("quotient Weyl order not divisible by circle part")
    return w // circle_order


def module_product_oracle(
    ctx: TwistedContext, kcls: int, h: TwistedOrbitType, q: int | None = None
) -> dict:
    """(K) * (H) recomputed by orbit counting in the finite quotient.

    Enumerates the product of coset spaces of Z_q x Gamma' by Z_q x K and by
    the realized twisted subgroup, computes every point's isotropy, and
    tallies orbit types; no recurrence is involved.
    """
    if q is None:
        q = _quotient_denominator(ctx, [h], extra=2)
    g = ctx.group
    tab, inv = g.table, g.inverse
    order = g.order * q

    def mul(a, b):
        return ((a[0] + b[0]) % q, tab[a[1]][b[1]])

    def invq(a):
        return ((-a[0]) % q, inv[a[1]])

    kmembers = ctx.lattice.reps[kcls].members
    prod_sub = frozenset((z, k) for z in range(q) for k in kmembers)
    hbar = realize_in_quotient(ctx, h, q)
    elems = [(z, k) for z in range(q) for k in range(g.order)]

    def cosets(sub):
        seen = set()
        reps = []
        for x in elems:
            key = frozenset(mul(x, s) for s in sub)
            if key not in seen:
                seen.add(key)
                reps.append(x)
        return reps

    counts: dict = {}
    for a in cosets(prod_sub):
        ai = invq(a)
        asub = frozenset(mul(mul(a, s), ai) for s in prod_sub)
        for b in cosets(hbar):
            bi = invq(b)
            bsub = frozenset(mul(mul(b, s), bi) for s in hbar)
            iso = asub & bsub
            t = _type_from_quotient_subgroup(ctx, iso, h.l, q)
            counts[t] = counts.get(t, 0) + len(iso)
    out = {}
    for t, weight in counts.items():
        if weight % order:
            raise ExactnessError("orbit sizes do not tile the quotient point count")
        out[t] = weight // order
    return out


def _type_from_quotient_subgroup(ctx, iso, l: int, q: int) -> TwistedOrbitType:
    members = frozenset(k for _z, k in iso)
    phi = {}
    for z, k in iso:
        phi[k] = Fraction(z * l, q) % 1
    return ctx.type_of(members, phi, l)
