"""Command-line front end: validation, composition, beta reports, campaigns.

Instances travel as JSON with exact scalars ("3/4" over QQ, "2 mod 7"
over GF(7)); the field is declared once per file, with the QCAT_FIELD
environment variable as the fallback.  Every command prints one
machine-readable report to stdout and exits 0 when all checks pass,
1 when a check fails, and 2 on usage, parse or schema errors.
"""

import argparse
import json
import os
import random
import sys

from .bialgebroid import (Bialgebroid, ComoduleAlgebra, check_bialgebroid,
                          check_comodule_algebra, compose_dimension,
                          compose_modules, envelope_bialgebroid,
                          linearize_category_dual, linearize_profunctor)
from .exactlin import Matrix, field_from_name
from .fincat import (FinCategory, ProfMap, Profunctor,
                     check_bicategory_laws, compose_prof, random_category,
                     random_profunctor, validate_category)
from .report import Report
from .takeuchi import (DoubleModule, FDAlgebra, beta_iso_report,
                       middle_hom_dimension, random_algebra,
                       random_double_module, takeuchi_product)
from .weakbialg import (FrobeniusMonoid, UnsupportedInputError,
                        WeakBialgebra, check_separable_frobenius,
                        check_weak_bialgebra, idempotent_a,
                        matrix_trace_frobenius, random_comodule,
                        split_frobenius)

KINDS = ("category", "profunctor", "algebra", "double_module",
         "bialgebroid", "comodule_algebra", "frobenius", "weak_bialgebra")


class SchemaError(ValueError):
    """The file parses as JSON but does not match the instance layout."""


# ---- payload plumbing ----

def _get(payload, key, where, want=None):
    if not isinstance(payload, dict):
        raise SchemaError("%s must be a JSON object" % where)
    if key not in payload:
        raise SchemaError("missing key %r in %s" % (key, where))
    value = payload[key]
    if want is not None and not isinstance(value, want):
        raise SchemaError("key %r in %s has the wrong type" % (key, where))
    return value


def _field_of(payload, where):
    name = payload.get("field") or os.environ.get("QCAT_FIELD") or "QQ"
    try:
        return field_from_name(name)
    except ValueError as err:
        raise SchemaError("key 'field' in %s: %s" % (where, err))


def _matrix(field, data, nrows, ncols, where):
    if (not isinstance(data, list) or len(data) != nrows
            or any(not isinstance(r, list) or len(r) != ncols
                   for r in data)):
        raise SchemaError("%s must be a %d x %d matrix" %
                          (where, nrows, ncols))
    try:
        return Matrix(field, [[field(c) for c in row] for row in data],
                      ncols)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise SchemaError("%s: %s" % (where, err))


def _matrix_payload(field, mat):
    return [[field.show(x) for x in row] for row in mat.rows]


# ---- loaders, one per kind ----

def load_category(payload, where):
    objects = _get(payload, "objects", where, list)
    morphisms = _get(payload, "morphisms", where, list)
    src = _get(payload, "src", where, dict)
    tgt = _get(payload, "tgt", where, dict)
    identity = _get(payload, "identity", where, dict)
    for m in morphisms:
        if m not in src:
            raise SchemaError("missing key %r in %s.src" % (m, where))
        if m not in tgt:
            raise SchemaError("missing key %r in %s.tgt" % (m, where))
    for o in objects:
        if o not in identity:
            raise SchemaError("missing key %r in %s.identity" % (o, where))
    comp = {}
    for i, triple in enumerate(_get(payload, "compose", where, list)):
        if not isinstance(triple, list) or len(triple) != 3:
            raise SchemaError("%s.compose[%d] must be [g, f, g after f]"
                              % (where, i))
        g, f, h = triple
        comp[(g, f)] = h
    return FinCategory(objects, morphisms, src, tgt, identity, comp)


def load_profunctor(payload, where):
    source = load_category(_get(payload, "source", where, dict),
                           where + ".source")
    target = load_category(_get(payload, "target", where, dict),
                           where + ".target")
    elements = _get(payload, "elements", where, list)
    src_obj = _get(payload, "src_obj", where, dict)
    tgt_obj = _get(payload, "tgt_obj", where, dict)
    for e in elements:
        if e not in src_obj:
            raise SchemaError("missing key %r in %s.src_obj" % (e, where))
        if e not in tgt_obj:
            raise SchemaError("missing key %r in %s.tgt_obj" % (e, where))
    actions = {}
    for name in ("left", "right"):
        table = {}
        for i, triple in enumerate(_get(payload, name, where, list)):
            if not isinstance(triple, list) or len(triple) != 3:
                raise SchemaError("%s.%s[%d] must be a triple"
                                  % (where, name, i))
            table[(triple[0], triple[1])] = triple[2]
        actions[name] = table
    return Profunctor(source, target, elements, src_obj, tgt_obj,
                      actions["left"], actions["right"])


def load_algebra(field, payload, where):
    dim = _get(payload, "dim", where, int)
    unit = _get(payload, "unit", where, list)
    mult = _get(payload, "mult", where, list)
    if len(unit) != dim:
        raise SchemaError("key 'unit' in %s needs %d entries" % (where, dim))
    if len(mult) != dim or any(not isinstance(row, list) or len(row) != dim
                               for row in mult):
        raise SchemaError("key 'mult' in %s must be dim x dim lists of "
                          "coefficient vectors" % where)
    for i, row in enumerate(mult):
        for j, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != dim:
                raise SchemaError("%s.mult[%d][%d] needs %d coefficients"
                                  % (where, i, j, dim))
    try:
        return FDAlgebra(field, dim, [field(c) for c in unit],
                         [[[field(c) for c in cell] for cell in row]
                          for row in mult],
                         name=payload.get("name", "algebra"))
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise SchemaError("%s: %s" % (where, err))


def load_double_module(field, payload, where):
    r_alg = load_algebra(field, _get(payload, "base_r", where, dict),
                         where + ".base_r")
    s_alg = load_algebra(field, _get(payload, "base_s", where, dict),
                         where + ".base_s")
    dim = _get(payload, "dim", where, int)
    actions = _get(payload, "actions", where, dict)
    tables = {}
    for name, count in (("lro", r_alg.dim), ("ls", s_alg.dim),
                        ("rro", r_alg.dim), ("rs", s_alg.dim)):
        data = _get(actions, name, where + ".actions", list)
        if len(data) != count:
            raise SchemaError("%s.actions.%s needs one matrix per basis "
                              "element of the base" % (where, name))
        tables[name] = [_matrix(field, m, dim, dim,
                                "%s.actions.%s[%d]" % (where, name, i))
                        for i, m in enumerate(data)]
    return DoubleModule(r_alg, s_alg, dim, tables["lro"], tables["ls"],
                        tables["rro"], tables["rs"])


def load_bialgebroid(field, payload, where):
    base = load_algebra(field, _get(payload, "base", where, dict),
                        where + ".base")
    total = load_algebra(field, _get(payload, "total", where, dict),
                         where + ".total")
    d, r = total.dim, base.dim
    s_map = _matrix(field, _get(payload, "source", where), d, r,
                    where + ".source")
    t_map = _matrix(field, _get(payload, "target", where), d, r,
                    where + ".target")
    delta = _matrix(field, _get(payload, "delta", where), d * d, d,
                    where + ".delta")
    epsilon = _matrix(field, _get(payload, "epsilon", where), r * r, d,
                      where + ".epsilon")
    return Bialgebroid(base, total, s_map, t_map, delta, epsilon,
                       name=payload.get("name", "bialgebroid"))


def load_comodule_algebra(field, payload, where):
    left = load_bialgebroid(field, _get(payload, "left", where, dict),
                            where + ".left")
    right = load_bialgebroid(field, _get(payload, "right", where, dict),
                             where + ".right")
    total = load_algebra(field, _get(payload, "total", where, dict),
                         where + ".total")
    d = total.dim
    s_map = _matrix(field, _get(payload, "source", where), d,
                    left.base.dim, where + ".source")
    t_map = _matrix(field, _get(payload, "target", where), d,
                    right.base.dim, where + ".target")
    delta = _matrix(field, _get(payload, "delta", where),
                    left.total.dim * d * right.total.dim, d,
                    where + ".delta")
    return ComoduleAlgebra(left, right, total, s_map, t_map, delta,
                           name=payload.get("name", "comodule"))


def load_frobenius(field, payload, where):
    carrier = load_algebra(field, _get(payload, "algebra", where, dict),
                           where + ".algebra")
    d = carrier.dim
    delta = _matrix(field, _get(payload, "delta", where), d * d, d,
                    where + ".delta")
    epsilon = _matrix(field, _get(payload, "epsilon", where), 1, d,
                      where + ".epsilon")
    return FrobeniusMonoid(carrier, delta, epsilon,
                           name=payload.get("name", "frobenius"))


def load_weak_bialgebra(field, payload, where):
    total = load_algebra(field, _get(payload, "algebra", where, dict),
                         where + ".algebra")
    d = total.dim
    delta = _matrix(field, _get(payload, "delta", where), d * d, d,
                    where + ".delta")
    epsilon = _matrix(field, _get(payload, "epsilon", where), 1, d,
                      where + ".epsilon")
    base = load_frobenius(field, _get(payload, "base", where, dict),
                          where + ".base")
    embedding = _matrix(field, _get(payload, "embedding", where), d,
                        base.dim, where + ".embedding")
    try:
        return WeakBialgebra(total, delta, epsilon, base, embedding,
                             name=payload.get("name", "weak bialgebra"))
    except ValueError as err:
        raise SchemaError("%s: %s" % (where, err))


def load_instance(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as err:
        raise SchemaError("cannot read %s: %s" % (path, err))
    except json.JSONDecodeError as err:
        raise SchemaError("parse error in %s: %s" % (path, err))
    kind = _get(raw, "kind", path)
    if kind == "category":
        return kind, load_category(raw, path)
    if kind == "profunctor":
        return kind, load_profunctor(raw, path)
    field = _field_of(raw, path)
    try:
        if kind == "algebra":
            return kind, load_algebra(field, raw, path)
        if kind == "double_module":
            return kind, load_double_module(field, raw, path)
        if kind == "bialgebroid":
            return kind, load_bialgebroid(field, raw, path)
        if kind == "comodule_algebra":
            return kind, load_comodule_algebra(field, raw, path)
        if kind == "frobenius":
            return kind, load_frobenius(field, raw, path)
        if kind == "weak_bialgebra":
            return kind, load_weak_bialgebra(field, raw, path)
    except ValueError as err:
        if isinstance(err, SchemaError):
            raise
        raise SchemaError("%s: %s" % (path, err))
    raise SchemaError("key 'kind' in %s must be one of %s"
                      % (path, ", ".join(KINDS)))


# ---- writers for composite instances ----

def _label(e):
    if isinstance(e, tuple):
        return "(%s)" % ",".join(_label(x) for x in e)
    return str(e)


def category_payload(cat):
    comp = [[g, f, cat.comp[(g, f)]] for g in cat.morphisms
            for f in cat.morphisms if (g, f) in cat.comp]
    return {"objects": list(cat.objects),
            "morphisms": list(cat.morphisms),
            "src": {m: cat.src[m] for m in cat.morphisms},
            "tgt": {m: cat.tgt[m] for m in cat.morphisms},
            "identity": {o: cat.identity[o] for o in cat.objects},
            "compose": comp}


def profunctor_payload(p):
    names = {e: _label(e) for e in p.elements}
    left = [[u, names[e], names[p.left[(u, e)]]]
            for e in p.elements for u in p.left_applicable(e)]
    right = [[names[e], v, names[p.right[(e, v)]]]
             for e in p.elements for v in p.right_applicable(e)]
    return {"kind": "profunctor",
            "source": category_payload(p.source),
            "target": category_payload(p.target),
            "elements": [names[e] for e in p.elements],
            "src_obj": {names[e]: p.src_obj[e] for e in p.elements},
            "tgt_obj": {names[e]: p.tgt_obj[e] for e in p.elements},
            "left": left, "right": right}


def algebra_payload(alg):
    f = alg.field
    return {"dim": alg.dim,
            "unit": [f.show(c) for c in alg.unit],
            "mult": [[[f.show(c) for c in cell] for cell in row]
                     for row in alg.mult],
            "name": alg.name}


def bialgebroid_payload(b):
    f = b.field
    return {"base": algebra_payload(b.base),
            "total": algebra_payload(b.total),
            "source": _matrix_payload(f, b.s_map),
            "target": _matrix_payload(f, b.t_map),
            "delta": _matrix_payload(f, b.delta),
            "epsilon": _matrix_payload(f, b.epsilon),
            "name": b.name}


def comodule_algebra_payload(m):
    f = m.field
    return {"kind": "comodule_algebra", "field": f.name,
            "left": bialgebroid_payload(m.left_bgd),
            "right": bialgebroid_payload(m.right_bgd),
            "total": algebra_payload(m.total),
            "source": _matrix_payload(f, m.s_map),
            "target": _matrix_payload(f, m.t_map),
            "delta": _matrix_payload(f, m.delta),
            "name": m.name}


def double_module_payload(m):
    f = m.field
    return {"kind": "double_module", "field": f.name,
            "base_r": algebra_payload(m.r_alg),
            "base_s": algebra_payload(m.s_alg),
            "dim": m.dim,
            "actions": {name: [_matrix_payload(f, t)
                               for t in getattr(m, name)]
                        for name in ("lro", "ls", "rro", "rs")}}


def frobenius_payload(fr):
    f = fr.field
    return {"algebra": algebra_payload(fr.carrier),
            "delta": _matrix_payload(f, fr.delta),
            "epsilon": _matrix_payload(f, fr.epsilon),
            "name": fr.name}


def weak_bialgebra_payload(w):
    f = w.field
    return {"kind": "weak_bialgebra", "field": f.name,
            "algebra": algebra_payload(w.total),
            "delta": _matrix_payload(f, w.delta),
            "epsilon": _matrix_payload(f, w.epsilon),
            "base": frobenius_payload(w.base),
            "embedding": _matrix_payload(f, w.embedding),
            "name": w.name}


def write_instance(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


# ---- commands ----

def cmd_validate(path):
    kind, obj = load_instance(path)
    if kind == "category":
        return validate_category(obj)
    if kind == "profunctor":
        rep = Report("profunctor instance")
        rep.merge(validate_category(obj.source), "source category")
        rep.merge(validate_category(obj.target), "target category")
        if rep.ok:
            rep.merge(obj.validate())
        return rep
    if kind in ("algebra", "double_module"):
        return obj.validate()
    if kind == "bialgebroid":
        return check_bialgebroid(obj)
    if kind == "comodule_algebra":
        return check_comodule_algebra(obj)
    if kind == "frobenius":
        return check_separable_frobenius(obj)
    return check_weak_bialgebra(obj)


def _is_hom_profunctor(p):
    c = p.source
    if (list(p.elements) != list(c.morphisms)
            or list(p.target.morphisms) != list(c.morphisms)):
        return False
    if any(p.src_obj[f] != c.src[f] or p.tgt_obj[f] != c.tgt[f]
           for f in p.elements):
        return False
    return all(p.left[(u, f)] == c.comp[(f, u)]
               for f in p.elements for u in p.left_applicable(f)) \
        and all(p.right[(f, v)] == c.comp[(v, f)]
                for f in p.elements for v in p.right_applicable(f))


def _compose_profunctors(rep, a, b, out_path):
    rep.add("both inputs are lawful",
            a.validate().ok and b.validate().ok)
    if not rep.ok:
        return rep
    try:
        comp = compose_prof(a, b)
    except ValueError as err:
        rep.add("endpoints match", False, witness=str(err))
        return rep
    rep.add("endpoints match", True)
    rep.stats["left_size"] = len(a)
    rep.stats["right_size"] = len(b)
    rep.stats["composite_size"] = len(comp)
    # unit instances get the Lemma checked on the nose
    if _is_hom_profunctor(a):
        m = ProfMap(comp, b, {pair: b.left[pair] for pair in comp.elements})
        rep.add("left unit law: the composite is the right factor",
                m.is_lawful() and m.is_bijection())
    if _is_hom_profunctor(b):
        m = ProfMap(comp, a, {pair: a.right[pair] for pair in comp.elements})
        rep.add("right unit law: the composite is the left factor",
                m.is_lawful() and m.is_bijection())
    if rep.ok:
        write_instance(out_path, profunctor_payload(comp))
    return rep


def _compose_comodule_algebras(rep, a, b, out_path):
    if a.field != b.field:
        raise SchemaError("the two instances live over different fields")
    rep.add("both inputs are lawful",
            check_comodule_algebra(a).ok and check_comodule_algebra(b).ok)
    if not rep.ok:
        return rep
    try:
        comp = compose_modules(a, b)
    except ValueError as err:
        rep.add("endpoints match and the composite exists", False,
                witness=str(err))
        return rep
    rep.add("endpoints match and the composite exists", True)
    rep.stats["left_dim"] = a.total.dim
    rep.stats["right_dim"] = b.total.dim
    rep.stats["composite_dim"] = comp.total.dim
    rep.merge(check_comodule_algebra(comp), "composite")
    if rep.ok:
        write_instance(out_path, comodule_algebra_payload(comp))
    return rep


def cmd_compose(a_path, b_path, out_path):
    kind_a, a = load_instance(a_path)
    kind_b, b = load_instance(b_path)
    if kind_a != kind_b:
        raise SchemaError("cannot compose kind %r with kind %r"
                          % (kind_a, kind_b))
    if kind_a not in ("profunctor", "comodule_algebra"):
        raise SchemaError("compose works on profunctors and comodule "
                          "algebras, not %r" % kind_a)
    rep = Report("compose %s with %s" % (a_path, b_path))
    if kind_a == "profunctor":
        return _compose_profunctors(rep, a, b, out_path)
    return _compose_comodule_algebras(rep, a, b, out_path)


def _parse_partition(text):
    try:
        parts = [int(p) for p in text.split("+")]
    except ValueError:
        raise SchemaError("partition %r is not of the form m1+m2+..."
                          % text)
    if not parts or any(p <= 0 for p in parts):
        raise SchemaError("every part of the partition must satisfy "
                          "m_i > 0, got %r" % text)
    return parts


def cmd_beta(partition_text, paths):
    parts = _parse_partition(partition_text)
    mods = []
    field = None
    for path in paths:
        kind, obj = load_instance(path)
        if kind != "double_module":
            raise SchemaError("beta needs double_module instances, "
                              "%s is a %s" % (path, kind))
        if field is None:
            field = obj.field
        elif obj.field != field:
            raise SchemaError("the chain mixes fields: %s is over %s"
                              % (path, obj.field.name))
        mods.append(obj)
    if sum(parts) != len(mods):
        raise SchemaError("partition %s needs %d modules, got %d"
                          % (partition_text, sum(parts), len(mods)))
    rep = Report("beta %s" % partition_text)
    bad = [i for i, m in enumerate(mods) if not m.validate().ok]
    rep.add("inputs are lawful double modules", not bad,
            witness=bad or None)
    if not bad:
        rep.merge(beta_iso_report(parts, mods))
    return rep


# ---- campaign suites ----

def _campaign_field():
    return field_from_name(os.environ.get("QCAT_FIELD", "QQ"))


def _suite_set(rng):
    cats = [random_category(rng) for _ in range(4)]
    p = random_profunctor(rng, cats[0], cats[1])
    q = random_profunctor(rng, cats[1], cats[2])
    r = random_profunctor(rng, cats[2], cats[3])
    return check_bicategory_laws([p, q], [(p, q, r)])


def _suite_takeuchi(rng):
    field = _campaign_field()
    k = FDAlgebra.field_algebra(field)
    kk = FDAlgebra.split(field, 2)
    m2 = FDAlgebra.matrix_algebra(field, 2)
    shapes = [(k, k, k), (k, kk, k), (kk, kk, kk), (k, m2, k), (kk, kk, k)]
    r, s, t = shapes[rng.randrange(len(shapes))]
    x = random_double_module(rng, r, s, max_dim=6 if s.dim < 4 else 4)
    y = random_double_module(rng, s, t, max_dim=6 if s.dim < 4 else 4)
    rep = Report("takeuchi")
    got = takeuchi_product(x, y).dim
    want = middle_hom_dimension(x, y)
    rep.add("centralizer dimension equals the equivariant map count",
            got == want,
            witness=None if got == want else
            {"centralizer": got, "maps": want})
    return rep


def _suite_bialgebroid(rng):
    field = _campaign_field()
    rep = Report("bialgebroid")
    if rng.random() < 0.4:
        b = envelope_bialgebroid(random_algebra(rng, field, max_dim=4))
        label = "enveloping algebra passes every bialgebroid axiom"
    else:
        b = linearize_category_dual(random_category(rng), field)
        label = "linearized category passes every bialgebroid axiom"
    sub = check_bialgebroid(b)
    rep.add(label, sub.ok,
            witness=[c["name"] for c in sub.failures()][:3] or None)
    return rep


def _suite_frobenius(rng):
    field = _campaign_field()
    bases = [split_frobenius(field, 1), split_frobenius(field, 2)]
    if field(2):
        bases.append(matrix_trace_frobenius(field, 2))
    mid = bases[rng.randrange(len(bases))]
    x = random_comodule(rng, bases[rng.randrange(len(bases))], mid)
    y = random_comodule(rng, mid, bases[rng.randrange(len(bases))])
    rep = Report("frobenius")
    e = idempotent_a(x, y, report=rep)
    rep.add("the induced endomorphism is idempotent", e * e == e)
    return rep


def _suite_bridge(rng):
    field = _campaign_field()
    cats = [random_category(rng, max_objects=3, max_morphisms=6)
            for _ in range(3)]
    p = random_profunctor(rng, cats[0], cats[1])
    q = random_profunctor(rng, cats[1], cats[2])
    size = len(compose_prof(p, q))
    mid = linearize_category_dual(cats[1], field)
    dim = compose_dimension(linearize_profunctor(p, field, right=mid),
                            linearize_profunctor(q, field, left=mid))
    rep = Report("bridge")
    rep.add("linearized composite dimension equals the Set composite size",
            dim == size,
            witness=None if dim == size else {"dim": dim, "size": size})
    return rep


_SUITES = {"set": _suite_set, "takeuchi": _suite_takeuchi,
           "bialgebroid": _suite_bialgebroid, "frobenius": _suite_frobenius,
           "bridge": _suite_bridge}


def cmd_campaign(suite, seed, trials):
    if suite not in _SUITES:
        raise SchemaError("unknown suite %r (choose from %s)"
                          % (suite, ", ".join(sorted(_SUITES))))
    if trials < 0:
        raise SchemaError("trials must be >= 0")
    rng = random.Random(seed)
    rep = Report("campaign %s" % suite, seed=seed)
    rep.stats["trials"] = trials
    for t in range(trials):
        rep.merge(_SUITES[suite](rng), "trial %d" % t)
    return rep


# ---- entry point ----

def build_parser():
    parser = argparse.ArgumentParser(
        prog="qcat",
        description="exact checks for profunctors, Takeuchi products, "
                    "bialgebroids and weak bialgebras")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate",
                       help="run the axiom checks for one instance file")
    v.add_argument("file")
    c = sub.add_parser("compose",
                       help="compose two instances and write the result")
    c.add_argument("-a", required=True, metavar="FILE")
    c.add_argument("-b", required=True, metavar="FILE")
    c.add_argument("-o", required=True, metavar="FILE")
    b = sub.add_parser("beta",
                       help="rank table and iso verdict for a comparison map")
    b.add_argument("-p", "--partition", required=True,
                   help="parts as m1+m2+..., every part positive")
    b.add_argument("files", nargs="+")
    g = sub.add_parser("campaign",
                       help="seeded random property-test campaign")
    g.add_argument("--suite", required=True,
                   choices=sorted(_SUITES))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--trials", type=int, default=20)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            rep = cmd_validate(args.file)
        elif args.command == "compose":
            rep = cmd_compose(args.a, args.b, args.o)
        elif args.command == "beta":
            rep = cmd_beta(args.partition, args.files)
        else:
            rep = cmd_campaign(args.suite, args.seed, args.trials)
    except (SchemaError, UnsupportedInputError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    print(rep.to_json())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
