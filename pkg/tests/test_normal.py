import warnings

import numpy as np
import pytest

from cubicfold.arith import matmul
from cubicfold.imageideal import image_model, koszul, presented_model, split_syzygy
from cubicfold.normal import (
    NoCubicContainsSurface,
    NotStabilized,
    _Unknowns,
    check_sections,
    default_bound,
    h0_normal_ambient,
    h0_normal_in_X,
    random_cubic,
)
from cubicfold.poly import HomogeneousPoly, parse_poly, pullback
from cubicfold.surface import Polarization, rational_map, sample_points, veronese
from cubicfold.tables import find_row

Q = 32003


def row_model(d, p, seed=1):
    r = find_row(d, p)
    P = Polarization(r.a, r.mults)
    return image_model(rational_map(sample_points(P.p, Q, seed), P))


def test_veronese_normal_sheaves():
    model = image_model(veronese(Q))
    res = h0_normal_ambient(model)
    assert res.dim == 27 and res.stabilized
    f = random_cubic(model, 3)
    assert pullback(f.f, veronese(Q).forms).is_zero() and not f.f.is_zero()
    assert h0_normal_in_X(res, f, model) == 0


def test_cubic_coordinates_reproduce_f():
    model = row_model(14, 4)
    cub = random_cubic(model, 11)
    total = HomogeneousPoly.zero(6, 3, Q)
    for (d, g), c in zip(model.generator_polys, cub.coords):
        if d <= 3:
            total = total + HomogeneousPoly.from_vector(6, 3 - d, c, Q) * g
    assert total == cub.f


def test_row_12_7():
    model = row_model(12, 7)
    res = h0_normal_ambient(model)
    assert res.dim == 41
    assert h0_normal_in_X(res, random_cubic(model, 5), model) == 8


def test_stabilization_in_bound():
    model = row_model(14, 4)
    E = default_bound(model)
    dims = [h0_normal_ambient(model, e, extra=0).dim for e in range(E - 2, E + 3)]
    assert dims == sorted(dims, reverse=True)
    assert len(set(dims[2:])) == 1
    res = h0_normal_ambient(model)
    assert res.stabilized and set(res.dims_by_bound.values()) == {35}
    assert check_sections(model, res, E + 2)


def test_too_small_bound_warns():
    # below the first syzygy degree nothing constrains the 6 * 15 unknowns
    model = image_model(veronese(Q))
    with pytest.warns(NotStabilized):
        res = h0_normal_ambient(model, 2, extra=1)
    assert res.dims_by_bound == {2: 90, 3: 27}
    assert not res.stabilized and res.dim == 27


def test_koszul_rows_are_noops():
    model = image_model(veronese(Q))
    U = _Unknowns(model)
    K = koszul(model.gens, 4, Q)
    block = U.block(4, split_syzygy(K, model.gens, 4), K.shape[0])
    assert not block.any()
    # and random candidate assignments satisfy them
    rng = np.random.default_rng(0)
    x = rng.integers(0, Q, size=(U.n, 3)).astype(float)
    assert not matmul(block, x, Q).any()


def test_no_cubic():
    model = presented_model([parse_poly("x0^4", 6, Q)])
    with pytest.raises(NoCubicContainsSurface):
        random_cubic(model, 0)


def test_unique_cubic_row():
    r = find_row(14, 16)
    P = Polarization(r.a, r.mults)
    M = rational_map(sample_points(P.p, Q, 1), P)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        model = image_model(M, 3)
    assert model.piece(3).dim == 1
    a, b = random_cubic(model, 1).f, random_cubic(model, 2).f
    c = next(iter(a.terms.values()))
    m = next(iter(a.terms))
    assert a.scale(b.terms[m]) == b.scale(c)
