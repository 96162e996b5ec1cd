from __future__ import annotations

import pytest

from unilab.analysis import ClaimStatus, GridSpec, verify_theorems
from unilab.speclang import compile_text
from _shared import IN_U, battery


@pytest.mark.parametrize("name", IN_U)
def test_all_claims_pass_in_U(name):
    rep = battery(name)
    assert rep.in_U and rep.ok
    assert [c.status for c in rep.claims] == [ClaimStatus.PASS] * 10, rep.table()


def test_fig5_exercises_level_pair_claim():
    c5 = battery("fig5_t_rep_s").claim(5)
    assert c5.status is ClaimStatus.PASS and c5.detail.startswith("pair")


def test_drastic_umax_expected_failures():
    rep = battery("drastic_umax")
    assert not rep.in_U and rep.ok
    c7 = rep.claim(7)
    assert c7.status is ClaimStatus.XFAIL and c7.witness == pytest.approx((0.25, 0.5))
    assert rep.claim(4).status is ClaimStatus.PASS
    assert {c.status for c in rep.claims} <= {ClaimStatus.PASS, ClaimStatus.SKIP, ClaimStatus.XFAIL}


def test_drastic_umin_gating():
    rep = verify_theorems(compile_text("umin(T=drastic_tnorm, S=max, e=1/2)"), GridSpec(129))
    assert not rep.in_U and rep.ok
    assert rep.claim(7).status in (ClaimStatus.SKIP, ClaimStatus.XFAIL)
    assert any(c.status is ClaimStatus.XFAIL for c in rep.claims)


def test_report_serialisation():
    rep = battery("fig1_umin")
    d = rep.to_dict()
    assert len(d["claims"]) == 10 and d["in_U"]
    assert rep.table().count("\n") == 9
