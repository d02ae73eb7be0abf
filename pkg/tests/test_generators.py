import pytest

from acfca import AcfError, InputError
from acfca.generators import fc_selection, random_context, random_valid_acf
from acfca.kernel import check_ca1, check_fc, check_kernel_axioms


def test_deterministic():
    assert random_context(3, 4, 5) == random_context(3, 4, 5)
    assert random_valid_acf(9).acf == random_valid_acf(9).acf


def test_density_extremes():
    assert not any(any(r) for r in random_context(1, 3, 3, 0.0).incidence)
    assert all(all(r) for r in random_context(1, 3, 3, 1.0).incidence)


def test_bad_arguments():
    with pytest.raises(InputError):
        random_context(0, -1, 2)
    with pytest.raises(InputError):
        random_context(0, 2, 2, 1.5)


def test_outputs_are_valid():
    for seed in range(60):
        g = random_valid_acf(seed, 5, 5)
        acf = g.acf
        assert len(acf.selection) > 0
        assert check_kernel_axioms(acf.context, acf.kernel).passed
        assert check_ca1(acf.context, acf.kernel, acf.selection).passed


def test_fallback():
    g = random_valid_acf(0, attempts=0)
    assert g.fallback and g.rejections == 0
    with pytest.raises(AcfError):
        random_valid_acf(0, attempts=0, fallback=False)


def test_fc_selection_is_closed():
    for seed in range(20):
        ctx = random_context(seed, 4, 4)
        assert check_fc(ctx, fc_selection(ctx, seed))
