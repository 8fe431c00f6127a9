import pytest

from k3fib.catalog import get_entry, parse_place
from k3fib.poly import Poly
from k3fib.tate import (all_fibers, classify_by_valuations, euler_number, parse_kodaira, root_type, tate)
from k3fib.weierstrass import ModelError, Place, WeierstrassModel

T = Poly.t()


def fibers_of(eid):
    e = get_entry(eid)
    return {(f.place.label(e.id), f.name) for f in all_fibers(e.model)}


def model(eid):
    return get_entry(eid).model


def test_constant_curve_discriminant():
    m = WeierstrassModel(Poly(), Poly(), Poly(), Poly([1]), Poly())
    assert m.disc == Poly([-64])
    with pytest.raises(ModelError):
        all_fibers(m)


def test_identities_hold_for_catalog():
    for i in range(1, 31):
        assert get_entry(i).model.check_identities()


def test_s_discriminant_places():
    places = {pl.label("s") for pl in model("s").finite_places()}
    assert {"0", "1", "-1", "s^2 - 6*s + 1"} <= places     # 3 +- 2 sqrt 2


def test_h_discriminant_places():
    got = {pl.label("h") for pl in model("h").finite_places()}
    assert got == {"0", "1", "h^2 + 446/27*h + 1"}


@pytest.mark.parametrize("eid,place,name", [("s", "0", "I8"), ("p", "inf", "I4*"), ("f", "inf", "II*"),
                                            ("h", "inf", "II*")])
def test_single_places(eid, place, name):
    e = get_entry(eid)
    assert tate(e.model, parse_place(place, e.id)).name == name


def test_c_fibers():
    e = get_entry("c")
    fs = all_fibers(e.model)
    assert [(f.place.label("c"), f.name) for f in fs if f.place.is_infinity] == [("inf", "I18")]
    quad = {f.place.label("c") for f in fs if f.name == "I1"}
    assert quad == {"c^2 + 2", "c^2 + c + 7", "c^2 - c + 7"}


def test_beta_fibers():
    assert fibers_of("beta") == {("0", "III*"), ("inf", "I2*"), ("1", "I1*")}


def test_v_fibers():
    fs = all_fibers(model("v"))
    names = sorted(f.name for f in fs if f.name != "I1")
    assert names == ["I10", "I8"]
    i1 = [f for f in fs if f.name == "I1"]
    assert len(i1) == 1 and i1[0].place.p == Poly([2, 0, 39, 0, -5, 0, 1])


def test_minimal_model_after_scaling():
    m = model("f")
    scaled = m.scaled(T)
    f0, f1 = tate(m, Place(T)), tate(scaled, Place(T))
    assert f0.name == f1.name and f1.rescaled == 1
    assert scaled.disc.valuation(T) - f1.valuations[2] == 12


def test_already_minimal_is_unchanged():
    f = tate(model("s"), Place(T))
    assert f.rescaled == 0 and f.transform.u == Poly([1])


@pytest.mark.parametrize("vals,want", [((0, 0, 5), ("In", 5)), ((2, 3, 6), ("In*", 0)), ((2, 4, 6), ("In*", 0)),
                                       ((2, 3, 9), ("In*", 3)), ((1, 1, 2), ("II", 0)), ((1, 2, 3), ("III", 0)),
                                       ((3, 4, 8), ("IV*", 0)), ((3, 5, 9), ("III*", 0)), ((4, 5, 10), ("II*", 0))])
def test_valuation_oracle(vals, want):
    assert classify_by_valuations(*vals) == want


def test_symbols():
    assert parse_kodaira("I0*") == ("In*", 0)
    assert parse_kodaira("I13*") == ("In*", 13)
    assert euler_number("In*", 7) == 13
    assert root_type("In", 1) is None and root_type("IV*") == "E6"


def test_every_catalog_euler_sum_is_24():
    for i in range(1, 31):
        fs = all_fibers(get_entry(i).model)
        assert sum(f.place.degree * f.euler for f in fs) == 24
