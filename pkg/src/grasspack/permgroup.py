"""Finite permutation groups stored as explicit element tables.

Elements are image rows (0-based) in one contiguous numpy array with a
bytes-keyed hash index, which keeps closure, conjugacy and coset sweeps
vectorised.  No stabiliser chains: membership is a table lookup, so every
group handled here must fit under the enumeration cap.  File formats and
command-line output stay 1-based; everything internal is 0-based.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import config

DTYPE = np.int16  # degrees stay far below 2**15


class PermError(Exception):
    pass


class CapExceeded(PermError):
    """Closure grew past the enumeration cap."""

    def __init__(self, cap: int, reached: int):
        super().__init__(f"enumeration cap {cap} exceeded (≥ {reached} elements)")
        self.cap = cap
        self.reached = reached


class NotEnumerated(PermError):
    """Operation needs the full element table but the group has none."""


class NotASubgroup(PermError):
    pass


def _as_images(images) -> np.ndarray:
    arr = np.asarray(images, dtype=DTYPE)
    if arr.ndim != 1:
        raise PermError("image array must be one-dimensional")
    d = arr.shape[0]
    if d == 0:
        raise PermError("empty permutation")
    seen = np.zeros(d, dtype=bool)
    seen[arr] = True
    if not seen.all():
        raise PermError("image array is not a bijection")
    return arr


class Permutation:
    """A permutation of {0, ..., d-1} given by its image row."""

    __slots__ = ("images", "_key")

    def __init__(self, images):
        arr = _as_images(images)
        arr.setflags(write=False)
        self.images = arr
        self._key = arr.tobytes()

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(np.arange(degree, dtype=DTYPE))

    @classmethod
    def from_cycles(cls, degree: int, cycles, one_based: bool = False) -> "Permutation":
        img = np.arange(degree, dtype=DTYPE)
        off = 1 if one_based else 0
        for cyc in cycles:
            pts = [p - off for p in cyc]
            for p in pts:
                if not 0 <= p < degree:
                    raise PermError(f"point {p + off} outside degree {degree}")
            if len(set(pts)) != len(pts):
                raise PermError(f"repeated point in cycle {tuple(cyc)}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return self.images.shape[0]

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self*other)(p) = self(other(p))
        return Permutation(self.images[other.images])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=DTYPE)
        return Permutation(inv)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def is_identity(self) -> bool:
        return bool((self.images == np.arange(self.degree, dtype=DTYPE)).all())

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            p = int(self.images[start])
            while p != start:
                cyc.append(p)
                seen[p] = True
                p = int(self.images[p])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + off) for p in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Permutation{self.cycle_string(one_based=False)}"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a disjoint-cycle string like ``(1 2 3)(4 5)``; points 1-based."""
    stripped = text.replace(",", " ").strip()
    if stripped in ("", "()"):
        return Permutation.identity(degree)
    body = _CYCLE_RE.sub("", stripped).strip()
    if body:
        raise PermError(f"unparsable cycle text: {text!r}")
    cycles = []
    for grp in _CYCLE_RE.findall(stripped):
        pts = [int(tok) for tok in grp.split()]
        if pts:
            cycles.append(pts)
    return Permutation.from_cycles(degree, cycles, one_based=True)


@dataclass
class ConjugacyClasses:
    """Partition of an enumerated group into conjugacy classes."""

    reps: list[Permutation]
    sizes: np.ndarray            # int64, per class
    class_of: np.ndarray         # int32, aligned with the element table
    orders: np.ndarray           # element order per class

    @property
    def n_classes(self) -> int:
        return len(self.reps)


@dataclass
class CosetTransversal:
    """Left coset representatives of H in G with the coset index map."""

    group: "PermGroup"
    subgroup: "PermGroup"
    rep_indices: np.ndarray      # element-table rows of the representatives
    coset_of: np.ndarray         # coset index per group element

    @property
    def count(self) -> int:
        return len(self.rep_indices)

    def reps(self) -> list[Permutation]:
        rows = self.group.rows[self.rep_indices]
        return [Permutation(r) for r in rows]


class PermGroup:
    """A permutation group, optionally with its full element table."""

    def __init__(self, degree: int, generators: list[Permutation], name: str = "",
                 _table=None):
        if degree >= 2 ** 15:
            raise PermError("degree too large for the element store")
        self.degree = degree
        self.generators = generators
        self.name = name or "G"
        self._table = _table           # (rows, index, parent, via_gen)
        self._inv_rows = None
        self._classes: ConjugacyClasses | None = None
        self._class_mult = None        # cached by charactertable helpers
        self._sorted_view = None       # cached for lookup_rows

    # -- construction -------------------------------------------------

    @classmethod
    def generated(cls, generators, name: str = "", degree: int | None = None,
                  cap: int = config.ENUM_CAP) -> "PermGroup":
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise PermError("need a degree for a generator-free group")
            degree = gens[0].degree
        gens = [g for g in gens if not g.is_identity()]
        for g in gens:
            if g.degree != degree:
                raise PermError("generator degrees disagree")
        table = _closure([g.images for g in gens], degree, cap)
        return cls(degree, gens, name=name, _table=table)

    @classmethod
    def deferred(cls, generators, name: str = "", degree: int | None = None) -> "PermGroup":
        """Generators only; no element table (order unknown)."""
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            degree = gens[0].degree
        return cls(degree, gens, name=name, _table=None)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls.generated([], name="1", degree=degree)

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        if n < 1:
            raise PermError("need n >= 1")
        if n == 1:
            return cls.trivial(1)
        gens = [Permutation.from_cycles(n, [[0, 1]])]
        if n > 2:
            gens.append(Permutation.from_cycles(n, [list(range(n))]))
        g = cls.generated(gens, name=f"S{n}")
        assert g.order == math.factorial(n)
        return g

    @classmethod
    def alternating(cls, n: int) -> "PermGroup":
        if n < 3:
            raise PermError("need n >= 3")
        gens = [Permutation.from_cycles(n, [[0, 1, 2]])]
        if n > 3:
            cyc = list(range(n)) if n % 2 == 1 else list(range(1, n))
            gens.append(Permutation.from_cycles(n, [cyc]))
        g = cls.generated(gens, name=f"A{n}")
        assert g.order == math.factorial(n) // 2
        return g

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls.generated([Permutation.from_cycles(n, [list(range(n))])], name=f"C{n}")

    # -- basic queries --------------------------------------------------

    @property
    def is_enumerated(self) -> bool:
        return self._table is not None

    def _require_table(self):
        if self._table is None:
            raise NotEnumerated(f"{self.name} has no element table")
        return self._table

    @property
    def rows(self) -> np.ndarray:
        return self._require_table()[0]

    @property
    def index(self) -> dict:
        return self._require_table()[1]

    @property
    def parent(self) -> np.ndarray:
        return self._require_table()[2]

    @property
    def via_gen(self) -> np.ndarray:
        return self._require_table()[3]

    @property
    def order(self) -> int:
        return self.rows.shape[0]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def element(self, i: int) -> Permutation:
        return Permutation(self.rows[i])

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        return perm._key in self.index

    def index_of(self, perm: Permutation) -> int:
        try:
            return self.index[perm._key]
        except KeyError:
            raise PermError(f"element not in {self.name}") from None

    def inverse_rows(self) -> np.ndarray:
        if self._inv_rows is None:
            rows = self.rows
            n, d = rows.shape
            inv = np.empty_like(rows)
            np.put_along_axis(inv, rows.astype(np.intp),
                              np.broadcast_to(np.arange(d, dtype=DTYPE), (n, d)), axis=1)
            self._inv_rows = inv
        return self._inv_rows

    def random_elements(self, rng: np.random.Generator, k: int) -> list[Permutation]:
        idx = rng.integers(0, self.order, size=k)
        return [self.element(int(i)) for i in idx]

    def lookup_rows(self, rows2d: np.ndarray) -> np.ndarray:
        """Table indices for a batch of image rows (void-view searchsorted)."""
        rows = self.rows
        if self._sorted_view is None:
            void = np.dtype((np.void, rows.shape[1] * rows.itemsize))
            v = np.ascontiguousarray(rows).view(void).ravel()
            order = np.argsort(v, kind="stable")
            self._sorted_view = (v[order], order)
        sv, order = self._sorted_view
        void = np.dtype((np.void, rows.shape[1] * rows.itemsize))
        q = np.ascontiguousarray(rows2d.astype(DTYPE, copy=False)).view(void).ravel()
        pos = np.searchsorted(sv, q)
        pos = np.minimum(pos, len(sv) - 1)
        if not (sv[pos] == q).all():
            raise PermError("row batch contains elements outside the group")
        return order[pos]

    # -- conjugacy ------------------------------------------------------

    def conjugacy_classes(self) -> ConjugacyClasses:
        if self._classes is None:
            self._classes = _conjugacy_classes(self)
        return self._classes

    # -- subgroups ------------------------------------------------------

    def subgroup_from_rows(self, rows: np.ndarray, name: str) -> "PermGroup":
        gens = _greedy_generators(rows, self.degree)
        sub = PermGroup.generated([Permutation(g) for g in gens],
                                  name=name, degree=self.degree)
        if sub.order != rows.shape[0]:
            raise PermError("generator reduction lost elements")
        return sub

    def stabilizer(self, point: int) -> "PermGroup":
        rows = self.rows
        mask = rows[:, point] == point
        return self.subgroup_from_rows(rows[mask], name=f"{self.name}_stab{point}")

    def derived_subgroup(self) -> "PermGroup":
        """Commutator subgroup, as closure of generator commutators under conjugation."""
        gens = [g.images for g in self.generators]
        invs = [Permutation(g).inverse().images for g in gens]
        seen = set()
        comms = []
        for i, a in enumerate(gens):
            for j, b in enumerate(gens):
                c = a[b[invs[i][invs[j]]]]
                key = c.tobytes()
                if key not in seen:
                    seen.add(key)
                    comms.append(c)
        # conjugation closure of the seed commutators generates the whole of G'
        frontier = list(comms)
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, invs):
                    y = g[x[gi.astype(np.intp)]]
                    key = y.tobytes()
                    if key not in seen:
                        seen.add(key)
                        comms.append(y)
                        nxt.append(y)
            frontier = nxt
        big = PermGroup.generated([Permutation(s) for s in comms],
                                  name=f"{self.name}'", degree=self.degree)
        return big.subgroup_from_rows(big.rows, name=f"{self.name}'")

    def is_subgroup(self, h: "PermGroup") -> bool:
        if h.degree != self.degree:
            return False
        return all(g in self for g in h.generators)

    # -- cosets ----------------------------------------------------------

    def coset_transversal(self, h: "PermGroup") -> CosetTransversal:
        if not self.is_subgroup(h):
            raise NotASubgroup(f"{h.name} is not a subgroup of {self.name}")
        if self.order % h.order:
            raise NotASubgroup("subgroup order does not divide group order")
        rows = self.rows
        coset_of = np.full(self.order, -1, dtype=np.int32)
        rep_idx = []
        hrows = h.rows.astype(np.intp)
        for i in range(self.order):
            if coset_of[i] >= 0:
                continue
            c = len(rep_idx)
            rep_idx.append(i)
            coset_of[self.lookup_rows(rows[i][hrows])] = c   # rep∘h for all h
        assert len(rep_idx) == self.order // h.order
        return CosetTransversal(self, h, np.array(rep_idx, dtype=np.int64), coset_of)

    def _h_action_on_cosets(self, h: "PermGroup",
                            trans: CosetTransversal | None = None):
        """Permutations of coset indices induced by the generators of H."""
        trans = trans or self.coset_transversal(h)
        reps = self.rows[trans.rep_indices]
        acts = []
        for g in h.generators:
            moved = g.images[reps.astype(np.intp)]     # h∘t_c
            acts.append(trans.coset_of[self.lookup_rows(moved)])
        return trans, acts

    def double_coset_count(self, h: "PermGroup") -> int:
        return len(self.double_coset_sizes(h))

    def double_coset_sizes(self, h: "PermGroup") -> list[int]:
        """Sizes of the H\\G/H double cosets (H-orbit sweep on G/H)."""
        trans, acts = self._h_action_on_cosets(h)
        n = trans.count
        seen = np.zeros(n, dtype=bool)
        sizes = []
        for start in range(n):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            head = 0
            while head < len(orbit):
                c = orbit[head]
                head += 1
                for act in acts:
                    nc = int(act[c])
                    if not seen[nc]:
                        seen[nc] = True
                        orbit.append(nc)
            sizes.append(len(orbit) * h.order)
        return sizes

    def is_two_transitive(self, h: "PermGroup") -> bool:
        """True iff G acts 2-transitively on G/H (single orbit on distinct pairs)."""
        if self.order // h.order < 2:
            return False
        return self.double_coset_count(h) == 2


# -- closure machinery ----------------------------------------------------


def _closure(gen_rows: list[np.ndarray], degree: int, cap: int):
    ident = np.arange(degree, dtype=DTYPE)
    rows = [ident]
    index = {ident.tobytes(): 0}
    parent = [-1]
    via = [-1]
    frontier = [0]
    gens = [g.astype(np.intp) for g in gen_rows]
    store = np.empty((max(64, len(gen_rows) + 1), degree), dtype=DTYPE)
    store[0] = ident
    size = 1
    while frontier:
        fr = store[np.array(frontier, dtype=np.int64)]
        nxt = []
        for gi, g in enumerate(gens):
            prods = fr[:, g]                    # right-multiply each row by g
            for src_pos, row in enumerate(prods):
                key = row.tobytes()
                if key in index:
                    continue
                if size >= cap:
                    raise CapExceeded(cap, size + 1)
                if size >= store.shape[0]:
                    grown = np.empty((store.shape[0] * 2, degree), dtype=DTYPE)
                    grown[:size] = store[:size]
                    store = grown
                store[size] = row
                index[key] = size
                parent.append(frontier[src_pos])
                via.append(gi)
                nxt.append(size)
                size += 1
        frontier = nxt
    return (store[:size].copy(), index,
            np.array(parent, dtype=np.int64), np.array(via, dtype=np.int32))


def _conjugacy_classes(g: PermGroup) -> ConjugacyClasses:
    rows = g.rows
    n = g.order
    gens = [x.images for x in g.generators]
    ginvs = [x.inverse().images.astype(np.intp) for x in g.generators]
    class_of = np.full(n, -1, dtype=np.int32)
    reps, sizes, orders = [], [], []
    for start in range(n):
        if class_of[start] >= 0:
            continue
        c = len(reps)
        rep = Permutation(rows[start])
        reps.append(rep)
        orders.append(rep.order())
        members = [start]
        class_of[start] = c
        head = 0
        while head < len(members):
            batch = rows[np.array(members[head:], dtype=np.int64)]
            head = len(members)
            for gimg, ginv in zip(gens, ginvs):
                idxs = g.lookup_rows(gimg[batch[:, ginv]])   # g x g^-1 rowwise
                fresh = np.unique(idxs)
                fresh = fresh[class_of[fresh] < 0]
                if fresh.size:
                    class_of[fresh] = c
                    members.extend(fresh.tolist())
        sizes.append(len(members))
    return ConjugacyClasses(reps, np.array(sizes, dtype=np.int64), class_of,
                            np.array(orders, dtype=np.int64))


def _greedy_generators(rows: np.ndarray, degree: int) -> list[np.ndarray]:
    """Small generating set for the subgroup given by explicit rows."""
    want = rows.shape[0]
    if want == 1:
        return []
    gens: list[np.ndarray] = []
    have = {Permutation.identity(degree)._key}
    for row in rows:
        if row.tobytes() in have:
            continue
        gens.append(row)
        table = _closure(gens, degree, cap=want + 1)
        have = set(table[1].keys())
        if len(have) == want:
            return gens
        if len(have) > want:
            raise PermError("closure escaped the subgroup row set")
    raise PermError("failed to regenerate subgroup from its rows")


# -- finite fields and the projective families ----------------------------


class GF:
    """Small finite field GF(p^k) with dense add/mul tables."""

    def __init__(self, q: int):
        p, k = _prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            add = (np.add.outer(np.arange(q), np.arange(q)) % p)
            mul = (np.multiply.outer(np.arange(q), np.arange(q)) % p)
        else:
            poly = _find_irreducible(p, k)
            vecs = [_int_to_vec(i, p, k) for i in range(q)]
            add = np.empty((q, q), dtype=np.int64)
            mul = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(q):
                    add[a, b] = _vec_to_int([(x + y) % p for x, y in zip(vecs[a], vecs[b])], p)
                    mul[a, b] = _vec_to_int(_poly_mulmod(vecs[a], vecs[b], poly, p), p)
        self.add = add.astype(np.int64)
        self.mul = mul.astype(np.int64)
        self.neg = np.array([int(np.where(self.add[a] == 0)[0][0]) for a in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.where(self.mul[a] == 1)[0][0])
        self.inv = inv

    def primitive(self) -> int:
        for c in range(2, self.q):
            x, n = c, 1
            while x != 1:
                x = int(self.mul[x, c])
                n += 1
            if n == self.q - 1:
                return c
        raise PermError("no primitive element found")


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise PermError(f"{q} is not a prime power")
            return p, k
    raise PermError(f"{q} is not a prime power")


def _int_to_vec(i: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(i % p)
        i //= p
    return out


def _vec_to_int(v, p: int) -> int:
    out = 0
    for c in reversed(list(v)):
        out = out * p + c
    return out


def _poly_mulmod(a, b, poly, p):
    k = len(poly) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            prod[top] = 0
            for j in range(k):
                prod[top - k + j] = (prod[top - k + j] - c * poly[j]) % p
    return prod[:k]


def _find_irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree k over F_p, as coefficient list (low first, monic)."""
    for tail in range(p ** k):
        coeffs = _int_to_vec(tail, p, k) + [1]
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise PermError("no irreducible polynomial found")


def _poly_is_irreducible(coeffs, p) -> bool:
    k = len(coeffs) - 1
    # no roots, and for k <= 3 rootlessness is enough after the k=2 check
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    if k <= 3:
        return True
    # brute-force divisor check for the rare higher-degree need
    for d in range(2, k // 2 + 1):
        for tail in range(p ** d):
            div = _int_to_vec(tail, p, d) + [1]
            if _poly_divides(div, coeffs, p):
                return False
    return True


def _poly_divides(div, poly, p) -> bool:
    rem = list(poly)
    dd = len(div) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            for j in range(dd + 1):
                rem[len(rem) - 1 - dd + j] = (rem[len(rem) - 1 - dd + j] - lead * div[j]) % p
        rem.pop()
    return all(c == 0 for c in rem)


def make_pgl2(q: int) -> PermGroup:
    """PGL_2(F_q) acting on the projective line: points 0..q-1 plus q for infinity."""
    gens = _projective_generators(q, special=False)
    g = PermGroup.generated(gens, name=f"PGL2_{q}")
    expect = q * (q * q - 1)
    if g.order != expect:
        raise PermError(f"PGL2({q}) closure has order {g.order}, expected {expect}")
    return g


def make_psl2(q: int) -> PermGroup:
    gens = _projective_generators(q, special=True)
    g = PermGroup.generated(gens, name=f"PSL2_{q}")
    expect = q * (q * q - 1) // math.gcd(2, q - 1)
    if g.order != expect:
        raise PermError(f"PSL2({q}) closure has order {g.order}, expected {expect}")
    return g


def _projective_generators(q: int, special: bool) -> list[Permutation]:
    f = GF(q)
    inf = q
    t = np.arange(q + 1, dtype=DTYPE)
    t[:q] = f.add[:, 1]                      # x -> x + 1
    c = f.primitive()
    scale = c if not special else int(f.mul[c, c])
    m = np.arange(q + 1, dtype=DTYPE)
    m[:q] = f.mul[:, scale]                  # x -> c x   (c^2 for PSL)
    w = np.empty(q + 1, dtype=DTYPE)
    w[inf] = 0
    w[0] = inf
    for x in range(1, q):
        ix = int(f.inv[x])
        w[x] = ix if not special else int(f.neg[ix])   # 1/x, or -1/x with det 1
    return [Permutation(t), Permutation(m), Permutation(w)]


# -- generator files -------------------------------------------------------


def loads_group(text: str, name: str = "", cap: int = config.ENUM_CAP) -> PermGroup:
    """Parse a generator file: ``degree <d>`` then one cycle line per generator."""
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise PermError(f"line {lineno}: expected 'degree <d>' header")
            degree = int(m.group(1))
            if degree < 1:
                raise PermError(f"line {lineno}: degree must be positive")
            continue
        gens.append(parse_cycles(line, degree))
    if degree is None:
        raise PermError("missing 'degree <d>' header")
    try:
        return PermGroup.generated(gens, name=name, degree=degree, cap=cap)
    except CapExceeded:
        return PermGroup.deferred(gens, name=name, degree=degree)


def load_group(path, name: str = "", cap: int = config.ENUM_CAP) -> PermGroup:
    p = Path(path)
    return loads_group(p.read_text(), name=name or p.stem, cap=cap)


def dumps_group(group: PermGroup, comment: str = "") -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"degree {group.degree}")
    for g in group.generators:
        lines.append(g.cycle_string(one_based=True))
    return "\n".join(lines) + "\n"
