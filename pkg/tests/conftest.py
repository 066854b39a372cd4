import numpy as np
import pytest

from wsnsec import LinkParams, NodeChannel, WiretapModel


def make_node(beta_s=3.0, snr_main_db=20.0, beta_e=3.0, snr_eve_db=15.0, rho=1.0):
    main = LinkParams.from_db(shape=beta_s, mean_snr_db=snr_main_db)
    wiretap = WiretapModel(LinkParams.from_db(shape=beta_e, mean_snr_db=snr_eve_db), rho=rho)
    return NodeChannel(main=main, wiretap=wiretap)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
