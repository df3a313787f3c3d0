import io
import json

import pytest

from qcontfrac import identities
from qcontfrac.cli import main, parse_args, parse_parts
from qcontfrac.errors import UsageError
from qcontfrac.qseries import QSeries


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_examples():
    cmd = parse_args(["verify", "--all", "--order", "40"])
    assert cmd.verb == "verify" and cmd.all and cmd.order == 40
    cmd = parse_args(["colored", "--variant", "BN", "--n", "1", "--i", "0", "--j", "1"])
    assert cmd.variant == ["BN"] and (cmd.n, cmd.i, cmd.j) == (1, 0, 1)
    with pytest.raises(UsageError):
        parse_args(["verify", "--all", "--order", "-3"])
    with pytest.raises(UsageError):
        parse_args(["frobnicate"])


def test_parse_parts():
    assert parse_parts("1..5") == (1, 2, 3, 4, 5)
    assert parse_parts("1,3,5") == (1, 3, 5)
    assert parse_parts("1..3,7") == (1, 2, 3, 7)
    with pytest.raises(UsageError):
        parse_parts("1..x")


def test_unknown_id_lists_valid_ids():
    code, out, err = run("verify", "--id", "NOPE")
    assert code == 2 and out == ""
    assert "LEBESGUE" in err and "THREE_PARAM_39" in err


def test_malformed_integer_is_usage_error():
    code, _, err = run("partitions", "--k", "five", "--parts", "1..5")
    assert code == 2 and "not an integer" in err


def test_partitions_verb():
    code, out, _ = run("partitions", "--k", "5", "--parts", "1..5")
    assert code == 0 and json.loads(out) == {"k": 5, "count": 7}
    code, out, _ = run("partitions", "--k", "5", "--parts", "1..5", "--distinct", "--enumerate")
    assert json.loads(out) == {"k": 5, "count": 3, "partitions": [[5], [4, 1], [3, 2]]}


def test_colored_verb():
    code, out, _ = run("colored", "--variant", "BN", "--n", "1", "--i", "0", "--j", "1")
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run("colored", "--table", "--variant", "AN", "--n-max", "2", "--ij-max", "1", "--format", "csv")
    assert out.splitlines()[0] == "n,i,j,variant,count" and len(out.splitlines()) == 13
    code, _, err = run("colored", "--variant", "BN", "--n", "40", "--i", "0", "--j", "1")
    assert code == 2


def test_real_verb():
    code, out, _ = run("real", "--const", "pi", "--depth", "1000000")
    data = json.loads(out)
    assert code == 0 and data["error"] < 1e-5
    code, out, _ = run("real", "--const", "rr", "--case", "e-2pi")
    assert json.loads(out)["delta"] < 1e-8
    code, _, _ = run("real", "--const", "rr")
    assert code == 2


def test_expand_verb():
    code, out, _ = run("expand", "--cf", "PI", "--depth", "2")
    assert json.loads(out)["value"] == "8/3"
    code, out, _ = run("expand", "--cf", "R_AB", "--param", "a=0", "--param", "b=0", "--order", "5")
    assert QSeries.from_json(json.loads(out)["series"]) == QSeries.one(5)
    code, out, _ = run("expand", "--cf", "THM_2_2", "--exponents", "1,2,4", "--order", "9")
    assert QSeries.from_json(json.loads(out)["series"]).scalars() == [1] * 8 + [0, 0]
    code, out, _ = run("expand", "--cf", "R_AB", "--order", "6", "--part", "denominator")
    assert code == 0 and json.loads(out)["depth"] == 6
    code, _, err = run("expand", "--cf", "BOGUS")
    assert code == 2 and "R_AB" in err


def test_expand_domain_error_exit_one():
    code, out, _ = run("expand", "--cf", "RR", "--order", "30", "--depth", "3")
    assert code == 1 and json.loads(out)["status"] == "error"


def test_verify_is_deterministic_and_exit_codes(monkeypatch):
    args = ("verify", "--id", "RR_G", "--id", "COR_26", "--order", "20", "--no-timings")
    first, second = run(*args), run(*args)
    assert first == second and first[0] == 0
    rows = json.loads(first[1])
    assert [r["id"] for r in rows] == ["COR_26", "RR_G"]
    assert set(rows[0]) == {"id", "status", "order", "depth", "first_mismatch", "elapsed_ms"}

    from tests.test_identities import _corrupt

    monkeypatch.setitem(identities.CATALOG, "R1B_Q2", _corrupt(identities.CATALOG["R1B_Q2"]))
    code, out, _ = run("verify", "--id", "R1B_Q2", "--order", "1")
    assert code == 1
    row = json.loads(out)[0]
    assert row["status"] == "fail" and row["first_mismatch"] == {"q": 1, "ea": 0, "eb": 0, "lhs": "0/1", "rhs": "1/1"}


def test_list_verb():
    code, out, _ = run("list")
    ids = [r["id"] for r in json.loads(out)]
    assert "LEBESGUE" in ids and len(ids) >= 24
    code, out, _ = run("list", "--cf")
    assert "THREE_PARAM" in json.loads(out)
