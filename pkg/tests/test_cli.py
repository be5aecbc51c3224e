"""End-to-end tests for the command line.

Every test drives qcat.cli.main with an argv list and reads the JSON
report off stdout, exactly as a shell user would.  The oracle values
are small enough to count by hand: path counts for composition over
discrete categories, group algebra dimensions for comodule
composition, and byte equality for seeded campaign reruns.
"""

import json
import random

import pytest

from qcat.bialgebroid import (group_bialgebra, twisted_group_comodule,
                              unit_comodule)
from qcat.cli import (algebra_payload, bialgebroid_payload, category_payload,
                      comodule_algebra_payload, double_module_payload,
                      frobenius_payload, main, profunctor_payload,
                      weak_bialgebra_payload, write_instance)
from qcat.exactlin import QQ
from qcat.fincat import (FinCategory, Profunctor, hom_profunctor,
                         random_category, random_profunctor)
from qcat.takeuchi import FDAlgebra, random_double_module
from qcat.weakbialg import (category_weak_bialgebra, matrix_trace_frobenius,
                            split_frobenius)


@pytest.fixture(autouse=True)
def isolated_field_env(monkeypatch):
    # keep the ambient shell from changing the default field under us
    monkeypatch.delenv("QCAT_FIELD", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report_of(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def save(tmp_path, name, payload):
    path = tmp_path / name
    write_instance(str(path), payload)
    return str(path)


def stringify(cat):
    """Relabel a category with strings so it survives a JSON round trip."""
    obj = {o: "o%d" % i for i, o in enumerate(cat.objects)}
    mor = {m: "m%d" % i for i, m in enumerate(cat.morphisms)}
    return FinCategory([obj[o] for o in cat.objects],
                       [mor[m] for m in cat.morphisms],
                       {mor[m]: obj[cat.src[m]] for m in cat.morphisms},
                       {mor[m]: obj[cat.tgt[m]] for m in cat.morphisms},
                       {obj[o]: mor[cat.identity[o]] for o in cat.objects},
                       {(mor[g], mor[f]): mor[h]
                        for (g, f), h in cat.comp.items()})


def checks_named(data, name):
    return [c for c in data["checks"] if c["name"] == name]


# ---- validate -------------------------------------------------------------

def sample_instances(tmp_path):
    rng = random.Random(17)
    c2 = stringify(FinCategory.cyclic_group(2))
    k = FDAlgebra.field_algebra(QQ)
    kk = FDAlgebra.split(QQ, 2)
    b2 = group_bialgebra(QQ, 2)
    return {
        "category": save(tmp_path, "cat.json",
                         dict(category_payload(c2), kind="category")),
        "profunctor": save(tmp_path, "prof.json",
                           profunctor_payload(hom_profunctor(c2))),
        "algebra": save(tmp_path, "alg.json",
                        dict(algebra_payload(kk), kind="algebra",
                             field="QQ")),
        "double_module": save(
            tmp_path, "dm.json",
            double_module_payload(random_double_module(rng, kk, k,
                                                       max_dim=4))),
        "bialgebroid": save(tmp_path, "bgd.json",
                            dict(bialgebroid_payload(b2),
                                 kind="bialgebroid", field="QQ")),
        "comodule_algebra": save(tmp_path, "com.json",
                                 comodule_algebra_payload(unit_comodule(b2))),
        "frobenius": save(tmp_path, "frob.json",
                          dict(frobenius_payload(split_frobenius(QQ, 2)),
                               kind="frobenius", field="QQ")),
        "weak_bialgebra": save(
            tmp_path, "weak.json",
            weak_bialgebra_payload(
                category_weak_bialgebra(FinCategory.cyclic_group(2), QQ))),
    }


def test_every_kind_validates_from_disk(tmp_path, capsys):
    for kind, path in sample_instances(tmp_path).items():
        code, data = report_of(capsys, "validate", path)
        assert code == 0, kind
        assert data["ok"] is True
        assert data["checks"] and all(c["status"] == "pass"
                                      for c in data["checks"])


def test_validate_flags_a_broken_multiplication(tmp_path, capsys):
    payload = dict(algebra_payload(FDAlgebra.split(QQ, 2)),
                   kind="algebra", field="QQ")
    payload["mult"][0][0] = ["0", "1"]
    path = save(tmp_path, "bad.json", payload)
    code, data = report_of(capsys, "validate", path)
    assert code == 1
    assert data["ok"] is False
    assert any(c["status"] == "fail" for c in data["checks"])


def test_unreadable_and_malformed_files_exit_2(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    nokind = tmp_path / "nokind.json"
    nokind.write_text("{}")
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"kind": "sheaf"}')
    for path in (empty, nokind, unknown, tmp_path / "missing.json"):
        code, out, err = run(capsys, "validate", str(path))
        assert code == 2
        assert out == ""
        assert err.startswith("error:")
    _, _, err = run(capsys, "validate", str(nokind))
    assert "'kind'" in err


def test_schema_errors_name_the_offending_key(tmp_path, capsys):
    payload = dict(bialgebroid_payload(group_bialgebra(QQ, 2)),
                   kind="bialgebroid", field="QQ")
    payload["delta"] = payload["delta"][1:]
    code, _, err = run(capsys, "validate",
                       save(tmp_path, "short.json", payload))
    assert code == 2
    assert "delta" in err

    payload = dict(algebra_payload(FDAlgebra.split(QQ, 2)),
                   kind="algebra", field="QQ")
    payload["mult"][0][0][0] = "1/0"
    code, _, err = run(capsys, "validate",
                       save(tmp_path, "divzero.json", payload))
    assert code == 2


# ---- compose --------------------------------------------------------------

def test_composing_with_the_hom_profunctor_flags_the_unit_laws(tmp_path,
                                                               capsys):
    rng = random.Random(23)
    c = stringify(FinCategory.cyclic_group(2))
    d = stringify(random_category(rng))
    p = random_profunctor(rng, c, d)
    hom_c = save(tmp_path, "homc.json", profunctor_payload(hom_profunctor(c)))
    hom_d = save(tmp_path, "homd.json", profunctor_payload(hom_profunctor(d)))
    prof = save(tmp_path, "p.json", profunctor_payload(p))

    out = str(tmp_path / "left.json")
    code, data = report_of(capsys, "compose", "-a", hom_c, "-b", prof,
                           "-o", out)
    assert code == 0
    unit = checks_named(data, "left unit law: the composite is the right "
                              "factor")
    assert unit and unit[0]["status"] == "pass"
    assert data["stats"]["composite_size"] == data["stats"]["right_size"]
    code, data = report_of(capsys, "validate", out)
    assert code == 0 and data["ok"] is True

    out = str(tmp_path / "right.json")
    code, data = report_of(capsys, "compose", "-a", prof, "-b", hom_d,
                           "-o", out)
    assert code == 0
    unit = checks_named(data, "right unit law: the composite is the left "
                              "factor")
    assert unit and unit[0]["status"] == "pass"
    assert data["stats"]["composite_size"] == data["stats"]["left_size"]


def string_discrete(objs):
    ids = {o: "id_" + o for o in objs}
    return FinCategory(list(objs), [ids[o] for o in objs],
                       {ids[o]: o for o in objs},
                       {ids[o]: o for o in objs}, ids,
                       {(ids[o], ids[o]): ids[o] for o in objs})


def test_composition_over_discrete_categories_counts_paths(tmp_path, capsys):
    a = string_discrete(["a"])
    b = string_discrete(["b0", "b1"])
    c = string_discrete(["c"])
    # three elements over A -> B, two over B -> C; matching middle
    # objects give exactly three composable pairs
    p = Profunctor(a, b, ["p0", "p1", "p2"],
                   {"p0": "a", "p1": "a", "p2": "a"},
                   {"p0": "b0", "p1": "b1", "p2": "b1"},
                   {("id_a", e): e for e in ("p0", "p1", "p2")},
                   {("p0", "id_b0"): "p0", ("p1", "id_b1"): "p1",
                    ("p2", "id_b1"): "p2"})
    q = Profunctor(b, c, ["q0", "q1"], {"q0": "b0", "q1": "b1"},
                   {"q0": "c", "q1": "c"},
                   {("id_b0", "q0"): "q0", ("id_b1", "q1"): "q1"},
                   {("q0", "id_c"): "q0", ("q1", "id_c"): "q1"})
    assert p.validate().ok and q.validate().ok
    pa = save(tmp_path, "p.json", profunctor_payload(p))
    qa = save(tmp_path, "q.json", profunctor_payload(q))
    out = str(tmp_path / "pq.json")
    code, data = report_of(capsys, "compose", "-a", pa, "-b", qa, "-o", out)
    assert code == 0
    assert data["stats"] == {"left_size": 3, "right_size": 2,
                             "composite_size": 3}
    code, data = report_of(capsys, "validate", out)
    assert code == 0 and data["ok"] is True


def test_compose_rejects_kind_mixtures(tmp_path, capsys):
    files = sample_instances(tmp_path)
    out = str(tmp_path / "out.json")
    code, _, err = run(capsys, "compose", "-a", files["algebra"],
                       "-b", files["profunctor"], "-o", out)
    assert code == 2 and "cannot compose" in err
    code, _, err = run(capsys, "compose", "-a", files["algebra"],
                       "-b", files["algebra"], "-o", out)
    assert code == 2 and "compose works on" in err


def test_compose_flags_an_endpoint_mismatch(tmp_path, capsys):
    rng = random.Random(29)
    c = stringify(FinCategory.cyclic_group(2))
    d = stringify(FinCategory.discrete(["x", "y"]))
    pa = save(tmp_path, "p.json",
              profunctor_payload(random_profunctor(rng, c, d)))
    qa = save(tmp_path, "q.json",
              profunctor_payload(random_profunctor(rng, c, d)))
    out = str(tmp_path / "out.json")
    code, data = report_of(capsys, "compose", "-a", pa, "-b", qa, "-o", out)
    assert code == 1
    bad = checks_named(data, "endpoints match")
    assert bad and bad[0]["status"] == "fail"


def test_comodule_algebra_composition_round_trips(tmp_path, capsys):
    b2 = group_bialgebra(QQ, 2)
    left = save(tmp_path, "unit.json",
                comodule_algebra_payload(unit_comodule(b2)))
    right = save(tmp_path, "twist.json",
                 comodule_algebra_payload(twisted_group_comodule(QQ, 2,
                                                                 1, 1)))
    out = str(tmp_path / "comp.json")
    code, data = report_of(capsys, "compose", "-a", left, "-b", right,
                           "-o", out)
    assert code == 0
    assert data["stats"]["left_dim"] == 2
    assert data["stats"]["right_dim"] == 2
    assert data["stats"]["composite_dim"] == 2
    assert any(c["name"].startswith("composite:") for c in data["checks"])
    code, data = report_of(capsys, "validate", out)
    assert code == 0 and data["ok"] is True


# ---- beta -----------------------------------------------------------------

def chain_files(tmp_path, count, seed=31):
    rng = random.Random(seed)
    k = FDAlgebra.field_algebra(QQ)
    return [save(tmp_path, "m%d.json" % i,
                 double_module_payload(random_double_module(rng, k, k,
                                                            max_dim=3)))
            for i in range(count)]


def test_beta_reports_an_isomorphism_over_the_ground_field(tmp_path, capsys):
    files = chain_files(tmp_path, 3)
    code, data = report_of(capsys, "beta", "-p", "2+1", *files)
    assert code == 0
    assert data["ok"] is True
    assert data["stats"]["verdict"] == "iso"
    assert checks_named(data, "comparison map computed")


def test_beta_usage_errors_exit_2(tmp_path, capsys):
    files = chain_files(tmp_path, 3)
    for partition in ("0+3", "2+2", "x+1", "-1+4"):
        code, _, err = run(capsys, "beta", "-p", partition, *files)
        assert code == 2, partition
        assert err.startswith("error:")
    _, _, err = run(capsys, "beta", "-p", "0+3", *files)
    assert "m_i > 0" in err

    alg = save(tmp_path, "alg.json",
               dict(algebra_payload(FDAlgebra.split(QQ, 2)), kind="algebra",
                    field="QQ"))
    code, _, err = run(capsys, "beta", "-p", "1+1+1", files[0], files[1],
                       alg)
    assert code == 2 and "double_module" in err


# ---- campaign -------------------------------------------------------------

def test_campaigns_are_seeded_and_deterministic(capsys):
    for suite in ("set", "takeuchi", "bialgebroid", "frobenius", "bridge"):
        runs = []
        for _ in range(2):
            code, out, err = run(capsys, "campaign", "--suite", suite,
                                 "--seed", "9", "--trials", "2")
            assert code == 0, suite
            assert err == ""
            runs.append(out)
        assert runs[0] == runs[1], suite
        data = json.loads(runs[0])
        assert data["seed"] == 9
        assert data["stats"]["trials"] == 2
        assert data["checks"]


def test_campaign_with_no_trials_passes_vacuously(capsys):
    code, data = report_of(capsys, "campaign", "--suite", "set",
                           "--seed", "1", "--trials", "0")
    assert code == 0
    assert data["checks"] == []


def test_campaign_rejects_negative_trials(capsys):
    code, _, err = run(capsys, "campaign", "--suite", "set", "--trials",
                       "-3")
    assert code == 2
    assert "trials" in err


# ---- field selection ------------------------------------------------------

def test_environment_variable_supplies_the_default_field(tmp_path, capsys,
                                                         monkeypatch):
    # matrix trace comultiplication carries 1/2, so the file only parses
    # over fields where 2 is invertible
    payload = dict(frobenius_payload(matrix_trace_frobenius(QQ, 2)),
                   kind="frobenius")
    path = save(tmp_path, "trace.json", payload)

    code, data = report_of(capsys, "validate", path)
    assert code == 0 and data["ok"] is True

    monkeypatch.setenv("QCAT_FIELD", "GF(3)")
    code, data = report_of(capsys, "validate", path)
    assert code == 0 and data["ok"] is True

    monkeypatch.setenv("QCAT_FIELD", "GF(2)")
    code, _, err = run(capsys, "validate", path)
    assert code == 2

    monkeypatch.setenv("QCAT_FIELD", "GF(6)")
    code, _, err = run(capsys, "validate", path)
    assert code == 2 and "field" in err


def test_field_declared_in_the_file_wins(tmp_path, capsys, monkeypatch):
    payload = dict(frobenius_payload(matrix_trace_frobenius(QQ, 2)),
                   kind="frobenius", field="QQ")
    path = save(tmp_path, "trace.json", payload)
    monkeypatch.setenv("QCAT_FIELD", "GF(2)")
    code, data = report_of(capsys, "validate", path)
    assert code == 0 and data["ok"] is True
