"""Finite categories and profunctors: the combinatorial instantiation.

A profunctor here is a span with left/right morphism actions, i.e. a
two-sided "biset".  Composition quotients composable pairs by the middle
actions via union-find; T_n is the set of composable tuples (the iterated
pullback) with the outer actions.  Everything is finite and checked by
full enumeration, which makes this module the oracle for the linear ones.
"""

from __future__ import annotations

import itertools


class FinCategory:
    """A finite category given by an explicit composition table.

    `comp[(g, f)] = g after f`, defined exactly when tgt(f) = src(g).
    Ids are arbitrary hashables; all structure is stored densely.
    """

    def __init__(self, objects, morphisms, src, tgt, identity, comp):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        self.comp = dict(comp)

    def compose(self, g, f):
        """g after f; raises if tgt(f) != src(g) or the table is partial."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise ValueError("morphisms %r after %r are not composable" % (g, f))

    def composable_pairs(self):
        return [(g, f) for g in self.morphisms for f in self.morphisms
                if self.src[g] == self.tgt[f]]

    def is_identity(self, f):
        return any(self.identity[o] == f for o in self.objects)

    def __repr__(self):
        return "FinCategory(%d objects, %d morphisms)" % (len(self.objects),
                                                          len(self.morphisms))

    @staticmethod
    def discrete(labels):
        labels = list(labels)
        ids = {o: ("id", o) for o in labels}
        return FinCategory(labels, ids.values(),
                           {ids[o]: o for o in labels},
                           {ids[o]: o for o in labels},
                           ids,
                           {(ids[o], ids[o]): ids[o] for o in labels})

    @staticmethod
    def from_monoid(elements, table, unit):
        """One-object category from a monoid multiplication table."""
        obj = "*"
        return FinCategory([obj], elements,
                           {m: obj for m in elements},
                           {m: obj for m in elements},
                           {obj: unit},
                           {(g, f): table[(g, f)] for g in elements for f in elements})

    @staticmethod
    def cyclic_group(n):
        els = tuple(range(n))
        return FinCategory.from_monoid(els, {(g, f): (g + f) % n for g in els for f in els}, 0)

    @staticmethod
    def indiscrete_groupoid(labels, group_order=1):
        """Groupoid with hom(a,b) = Z/group_order for every pair (a,b)."""
        labels = list(labels)
        morphs = [(a, g, b) for a in labels for g in range(group_order) for b in labels]
        comp = {}
        for (a, g, b) in morphs:
            for (b2, h, c) in morphs:
                if b2 == b:
                    comp[((b, h, c), (a, g, b))] = (a, (h + g) % group_order, c)
        return FinCategory(labels, morphs,
                           {(a, g, b): a for (a, g, b) in morphs},
                           {(a, g, b): b for (a, g, b) in morphs},
                           {o: (o, 0, o) for o in labels},
                           comp)

    @staticmethod
    def free_on_graph(n_objects, edges):
        """Free category on a DAG with edges (i, j), i < j only.

        Morphisms are the paths; acyclicity keeps them finite.
        """
        if any(i >= j for i, j in edges):
            raise ValueError("free_on_graph needs strictly increasing edges")
        objects = list(range(n_objects))
        paths = [("path", o, o, ()) for o in objects]  # identities: empty paths
        frontier = list(paths)
        while frontier:
            nxt = []
            for p in frontier:
                _, s, t, es = p
                for (i, j) in edges:
                    if i == t:
                        q = ("path", s, j, es + ((i, j),))
                        paths.append(q)
                        nxt.append(q)
            frontier = nxt
        comp = {}
        for p in paths:
            for q in paths:
                # q after p, so q starts where p ends
                if q[1] == p[2]:
                    comp[(q, p)] = ("path", p[1], q[2], p[3] + q[3])
        return FinCategory(objects, paths,
                           {p: p[1] for p in paths},
                           {p: p[2] for p in paths},
                           {o: ("path", o, o, ()) for o in objects},
                           comp)


def validate_category(c):
    """Full scan of the category axioms; violations carry the witnesses."""
    from .report import Report
    rep = Report("category")
    bad_type = [f for f in c.morphisms
                if c.src.get(f) not in c.objects or c.tgt.get(f) not in c.objects]
    rep.add("morphisms well typed", not bad_type, witness=bad_type[:3])
    bad_id = [o for o in c.objects
              if c.identity.get(o) not in c.morphisms
              or c.src.get(c.identity.get(o)) != o or c.tgt.get(c.identity.get(o)) != o]
    rep.add("identities present", not bad_id, witness=bad_id[:3])
    missing = [(g, f) for (g, f) in c.composable_pairs() if (g, f) not in c.comp]
    spurious = [(g, f) for (g, f) in c.comp
                if c.src.get(g) != c.tgt.get(f) or c.comp[(g, f)] not in c.morphisms]
    rep.add("composition total on composable pairs", not missing, witness=missing[:3])
    rep.add("composition only on composable pairs", not spurious, witness=spurious[:3])
    if not rep.ok:
        return rep
    bad_endpoints = [(g, f) for (g, f) in c.composable_pairs()
                     if c.src[c.comp[(g, f)]] != c.src[f] or c.tgt[c.comp[(g, f)]] != c.tgt[g]]
    rep.add("composite endpoints", not bad_endpoints, witness=bad_endpoints[:3])
    bad_unit = [f for f in c.morphisms
                if c.comp.get((f, c.identity[c.src[f]])) != f
                or c.comp.get((c.identity[c.tgt[f]], f)) != f]
    rep.add("identity laws", not bad_unit, witness=bad_unit[:3])
    bad_assoc = []
    for f in c.morphisms:
        for g in c.morphisms:
            if c.src[g] != c.tgt[f]:
                continue
            gf = c.comp[(g, f)]
            for h in c.morphisms:
                if c.src[h] != c.tgt[g]:
                    continue
                if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                    bad_assoc.append((h, g, f))
    rep.add("associativity", not bad_assoc, witness=bad_assoc[:3])
    return rep


class Span:
    """A span over (source objects, target objects): T_0 and raw carriers."""

    def __init__(self, source_cat, target_cat, elements, src_obj, tgt_obj):
        self.source = source_cat
        self.target = target_cat
        self.elements = tuple(elements)
        self.src_obj = dict(src_obj)
        self.tgt_obj = dict(tgt_obj)

    def __len__(self):
        return len(self.elements)


class Profunctor(Span):
    """A span with a left action by source morphisms and a right action by
    target morphisms.

    Conventions: u.e is defined when tgt(u) = src_obj(e) and satisfies
    u'.(u.e) = (u o u').e (the source variable is contravariant);
    e.v is defined when src(v) = tgt_obj(e) and (e.v).v' = e.(v' o v).
    """

    def __init__(self, source_cat, target_cat, elements, src_obj, tgt_obj, left, right):
        super().__init__(source_cat, target_cat, elements, src_obj, tgt_obj)
        self.left = dict(left)
        self.right = dict(right)

    def act_left(self, u, e):
        return self.left[(u, e)]

    def act_right(self, e, v):
        return self.right[(e, v)]

    def left_applicable(self, e):
        return [u for u in self.source.morphisms if self.source.tgt[u] == self.src_obj[e]]

    def right_applicable(self, e):
        return [v for v in self.target.morphisms if self.target.src[v] == self.tgt_obj[e]]

    def validate(self):
        from .report import Report
        rep = Report("profunctor")
        c, d = self.source, self.target
        bad = [e for e in self.elements
               if self.src_obj[e] not in c.objects or self.tgt_obj[e] not in d.objects]
        rep.add("elements well typed", not bad, witness=bad[:3])
        missing = [(u, e) for e in self.elements for u in self.left_applicable(e)
                   if (u, e) not in self.left]
        missing += [(e, v) for e in self.elements for v in self.right_applicable(e)
                    if (e, v) not in self.right]
        rep.add("actions total", not missing, witness=missing[:3])
        if not rep.ok:
            return rep
        bad = []
        for e in self.elements:
            for u in self.left_applicable(e):
                e2 = self.left[(u, e)]
                if self.src_obj[e2] != c.src[u] or self.tgt_obj[e2] != self.tgt_obj[e]:
                    bad.append(("left endpoint", u, e))
            for v in self.right_applicable(e):
                e2 = self.right[(e, v)]
                if self.tgt_obj[e2] != d.tgt[v] or self.src_obj[e2] != self.src_obj[e]:
                    bad.append(("right endpoint", e, v))
        rep.add("action endpoints", not bad, witness=bad[:3])
        if not rep.ok:
            return rep
        bad = [e for e in self.elements
               if self.left[(c.identity[self.src_obj[e]], e)] != e
               or self.right[(e, d.identity[self.tgt_obj[e]])] != e]
        rep.add("identity actions", not bad, witness=bad[:3])
        bad = []
        for e in self.elements:
            for u in self.left_applicable(e):
                ue = self.left[(u, e)]
                for u2 in self.left_applicable(ue):
                    if self.left[(u2, ue)] != self.left[(c.comp[(u, u2)], e)]:
                        bad.append(("left assoc", u2, u, e))
            for v in self.right_applicable(e):
                ev = self.right[(e, v)]
                for v2 in self.right_applicable(ev):
                    if self.right[(ev, v2)] != self.right[(e, d.comp[(v2, v)])]:
                        bad.append(("right assoc", e, v, v2))
            for u in self.left_applicable(e):
                for v in self.right_applicable(e):
                    if self.right[(self.left[(u, e)], v)] != self.left[(u, self.right[(e, v)])]:
                        bad.append(("commute", u, e, v))
        rep.add("action laws", not bad, witness=bad[:3])
        return rep


def hom_profunctor(c):
    """The unit profunctor of c: morphisms with composition on both sides."""
    left = {}
    right = {}
    for f in c.morphisms:
        for u in c.morphisms:
            if c.tgt[u] == c.src[f]:
                left[(u, f)] = c.comp[(f, u)]
        for v in c.morphisms:
            if c.src[v] == c.tgt[f]:
                right[(f, v)] = c.comp[(v, f)]
    return Profunctor(c, c, c.morphisms,
                      {f: c.src[f] for f in c.morphisms},
                      {f: c.tgt[f] for f in c.morphisms},
                      left, right)


class ProfMap:
    """A map of profunctors with fixed endpoints: preserves legs and actions."""

    def __init__(self, src_prof, dst_prof, mapping):
        self.src_prof = src_prof
        self.dst_prof = dst_prof
        self.mapping = dict(mapping)

    def __call__(self, e):
        return self.mapping[e]

    def is_lawful(self):
        p, q, m = self.src_prof, self.dst_prof, self.mapping
        for e in p.elements:
            if e not in m or m[e] not in q.elements:
                return False
            if p.src_obj[e] != q.src_obj[m[e]] or p.tgt_obj[e] != q.tgt_obj[m[e]]:
                return False
            for u in p.left_applicable(e):
                if m[p.left[(u, e)]] != q.left[(u, m[e])]:
                    return False
            for v in p.right_applicable(e):
                if m[p.right[(e, v)]] != q.right[(m[e], v)]:
                    return False
        return True

    def is_bijection(self):
        vals = set(self.mapping.values())
        return (len(vals) == len(self.mapping) == len(self.src_prof.elements)
                and vals == set(self.dst_prof.elements))


class _UnionFind:
    def __init__(self, items):
        # rank by insertion index so the class representative is the minimum
        self.index = {x: i for i, x in enumerate(items)}
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.index[rb] < self.index[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra


def compose_prof(p, q):
    """Composite profunctor: composable pairs modulo the middle actions.

    Classes are represented by their minimal composable pair; the result
    carries `pair_class` sending every composable pair to its class.
    """
    if p.target is not q.source and p.target.morphisms != q.source.morphisms:
        raise ValueError("profunctors are not composable: middle categories differ")
    mid = p.target
    pairs = [(x, y) for x in p.elements for y in q.elements
             if p.tgt_obj[x] == q.src_obj[y]]
    uf = _UnionFind(pairs)
    for x in p.elements:
        for a in mid.morphisms:
            if mid.src[a] != p.tgt_obj[x]:
                continue
            xa = p.right[(x, a)]
            for y in q.elements:
                if q.src_obj[y] == mid.tgt[a]:
                    # (x.a, y) ~ (x, a.y)
                    uf.union((xa, y), (x, q.left[(a, y)]))
    classes = sorted({uf.find(pr) for pr in pairs}, key=lambda pr: uf.index[pr])
    left = {}
    right = {}
    for (x, y) in classes:
        for u in p.left_applicable(x):
            left[(u, (x, y))] = uf.find((p.left[(u, x)], y))
        for v in q.right_applicable(y):
            right[((x, y), v)] = uf.find((x, q.right[(y, v)]))
    out = Profunctor(p.source, q.target, classes,
                     {(x, y): p.src_obj[x] for (x, y) in classes},
                     {(x, y): q.tgt_obj[y] for (x, y) in classes},
                     left, right)
    out.pair_class = {pr: uf.find(pr) for pr in pairs}
    return out


def tn_spans(xs, category=None):
    """Composable element tuples with the outer actions (iterated pullback).

    n = 0 returns the diagonal span on the objects of `category`; n = 1
    returns x_1 itself.  Middle legs are asserted equal on every tuple
    before collapsing, which is what makes the pullback compute T_n.
    """
    xs = list(xs)
    if not xs:
        if category is None:
            raise ValueError("the empty operation needs its category")
        return Span(category, category, category.objects,
                    {o: o for o in category.objects},
                    {o: o for o in category.objects})
    if len(xs) == 1:
        return xs[0]
    for a, b in zip(xs, xs[1:]):
        if a.target.morphisms != b.source.morphisms:
            raise ValueError("chain endpoints do not match")
    tuples = []
    for combo in itertools.product(*[x.elements for x in xs]):
        ok = all(xs[i].tgt_obj[combo[i]] == xs[i + 1].src_obj[combo[i + 1]]
                 for i in range(len(xs) - 1))
        if ok:
            # both parallel legs at each junction must agree on the tuple
            for i in range(len(xs) - 1):
                assert xs[i].tgt_obj[combo[i]] == xs[i + 1].src_obj[combo[i + 1]]
            tuples.append(combo)
    first, last = xs[0], xs[-1]
    left = {}
    right = {}
    for t in tuples:
        for u in first.left_applicable(t[0]):
            left[(u, t)] = (first.left[(u, t[0])],) + t[1:]
        for v in last.right_applicable(t[-1]):
            right[(t, v)] = t[:-1] + (last.right[(t[-1], v)],)
    return Profunctor(first.source, last.target, tuples,
                      {t: first.src_obj[t[0]] for t in tuples},
                      {t: last.tgt_obj[t[-1]] for t in tuples},
                      left, right)


def left_unitor(p):
    """hom(C) . P -> P, [(f, x)] |-> f.x; a bijective ProfMap."""
    comp = compose_prof(hom_profunctor(p.source), p)
    mapping = {(f, x): p.left[(f, x)] for (f, x) in comp.elements}
    return ProfMap(comp, p, mapping)


def right_unitor(p):
    comp = compose_prof(p, hom_profunctor(p.target))
    mapping = {(x, f): p.right[(x, f)] for (x, f) in comp.elements}
    return ProfMap(comp, p, mapping)


def left_unitor_inverse(p):
    comp = compose_prof(hom_profunctor(p.source), p)
    mapping = {x: comp.pair_class[(p.source.identity[p.src_obj[x]], x)]
               for x in p.elements}
    return ProfMap(p, comp, mapping)


def right_unitor_inverse(p):
    comp = compose_prof(p, hom_profunctor(p.target))
    mapping = {x: comp.pair_class[(x, p.target.identity[p.tgt_obj[x]])]
               for x in p.elements}
    return ProfMap(p, comp, mapping)


def associator(p, q, r):
    """((P.Q).R) -> (P.(Q.R)), [[x,y],z] |-> [x,[y,z]]."""
    pq = compose_prof(p, q)
    qr = compose_prof(q, r)
    lhs = compose_prof(pq, r)
    rhs = compose_prof(p, qr)
    mapping = {}
    for ((x, y), z) in lhs.elements:
        mapping[((x, y), z)] = rhs.pair_class[(x, qr.pair_class[(y, z)])]
    return ProfMap(lhs, rhs, mapping)


def check_bicategory_laws(profs, triples=None):
    """Unit and associator bijections, exhibited elementwise.

    `profs` is a list of profunctors to run the unit laws on; `triples`
    is an optional list of composable triples for the associator.
    """
    from .report import Report
    rep = Report("bicategory laws")
    for i, p in enumerate(profs):
        lu, lui = left_unitor(p), left_unitor_inverse(p)
        ru, rui = right_unitor(p), right_unitor_inverse(p)
        ok = (lu.is_lawful() and lu.is_bijection()
              and all(lui(lu(e)) == e for e in lu.src_prof.elements)
              and all(lu(lui(x)) == x for x in p.elements))
        rep.add("left unit law #%d" % i, ok)
        ok = (ru.is_lawful() and ru.is_bijection()
              and all(rui(ru(e)) == e for e in ru.src_prof.elements)
              and all(ru(rui(x)) == x for x in p.elements))
        rep.add("right unit law #%d" % i, ok)
    for i, (p, q, r) in enumerate(triples or []):
        al = associator(p, q, r)
        rep.add("associator #%d" % i, al.is_lawful() and al.is_bijection())
    return rep


# -- random instances ------------------------------------------------------


def random_category(rng, max_objects=4, max_morphisms=10):
    """A small random valid category: free on a DAG, a monoid, or a groupoid."""
    kind = rng.choice(["free", "monoid", "groupoid", "discrete"])
    if kind == "discrete":
        return FinCategory.discrete(range(rng.randint(1, max_objects)))
    if kind == "monoid":
        n = rng.randint(1, 3)
        els = tuple(range(n))
        while True:
            table = {(g, f): (g + f) % n if 0 in (g, f) else rng.randrange(n)
                     for g in els for f in els}
            assoc = all(table[(table[(h, g)], f)] == table[(h, table[(g, f)])]
                        for f in els for g in els for h in els)
            if assoc:
                return FinCategory.from_monoid(els, table, 0)
    if kind == "groupoid":
        n_obj = rng.randint(1, 2)
        order = rng.randint(1, 3)
        c = FinCategory.indiscrete_groupoid(range(n_obj), order)
        if len(c.morphisms) <= max_morphisms:
            return c
        return FinCategory.indiscrete_groupoid(range(1), order)
    while True:
        n = rng.randint(2, max_objects)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        c = FinCategory.free_on_graph(n, edges)
        if len(c.morphisms) <= max_morphisms:
            return c


def random_profunctor(rng, c, d, max_generators=2, identify=True):
    """Free profunctor on sandwich triples u.g.v, with optional identifications."""
    gens = [(rng.choice(c.objects), rng.choice(d.objects))
            for _ in range(rng.randint(1, max_generators))]
    elements = []
    for k, (co, do) in enumerate(gens):
        for u in c.morphisms:
            if c.tgt[u] != co:
                continue
            for v in d.morphisms:
                if d.src[v] != do:
                    continue
                elements.append((k, u, v))
    left = {}
    right = {}
    for (k, u, v) in elements:
        for w in c.morphisms:
            if c.tgt[w] == c.src[u]:
                left[(w, (k, u, v))] = (k, c.comp[(u, w)], v)
        for x in d.morphisms:
            if d.src[x] == d.tgt[v]:
                right[((k, u, v), x)] = (k, u, d.comp[(x, v)])
    prof = Profunctor(c, d, elements,
                      {(k, u, v): c.src[u] for (k, u, v) in elements},
                      {(k, u, v): d.tgt[v] for (k, u, v) in elements},
                      left, right)
    if not identify or len(elements) < 2:
        return prof
    # glue a few elements with equal endpoints, then close under the actions
    uf = _UnionFind(elements)
    glued = 0
    for _ in range(4):
        a, b = rng.choice(elements), rng.choice(elements)
        if a != b and prof.src_obj[a] == prof.src_obj[b] and prof.tgt_obj[a] == prof.tgt_obj[b]:
            uf.union(a, b)
            glued += 1
    if not glued:
        return prof
    changed = True
    while changed:
        changed = False
        for e in elements:
            r = uf.find(e)
            if r == e:
                continue
            for u in prof.left_applicable(e):
                if uf.find(prof.left[(u, e)]) != uf.find(prof.left[(u, r)]):
                    uf.union(prof.left[(u, e)], prof.left[(u, r)])
                    changed = True
            for v in prof.right_applicable(e):
                if uf.find(prof.right[(e, v)]) != uf.find(prof.right[(r, v)]):
                    uf.union(prof.right[(e, v)], prof.right[(r, v)])
                    changed = True
    classes = sorted({uf.find(e) for e in elements}, key=lambda e: uf.index[e])
    return Profunctor(c, d, classes,
                      {e: prof.src_obj[e] for e in classes},
                      {e: prof.tgt_obj[e] for e in classes},
                      {(u, e): uf.find(prof.left[(u, e)])
                       for e in classes for u in prof.left_applicable(e)},
                      {(e, v): uf.find(prof.right[(e, v)])
                       for e in classes for v in prof.right_applicable(e)})
