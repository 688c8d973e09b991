"""Declared concurrency contracts: memo tables safe under concurrent
growth, pure evaluators safe for unrestricted concurrent use."""


from concurrent.futures import ThreadPoolExecutor

from barnesg.engine import ComputeParams, log_double_gamma
from barnesg.kernels import log_gamma, polygamma
from barnesg.polys import p_poly_recursive, q_poly, q_poly_recursive


def test_poly_memo_concurrent_growth():
    # hammer the append-only tables from many threads; results must be the
    # unique exact polynomials
    with ThreadPoolExecutor(max_workers=8) as ex:
        qs = list(ex.map(q_poly, [35] * 8 + list(range(30))))
        qr = list(ex.map(q_poly_recursive, [35] * 8 + list(range(30))))
        ps = list(ex.map(p_poly_recursive, [18] * 8 + list(range(1, 15))))
    assert all(q == qs[0] for q in qs[:8])
    assert qs[0] == qr[0]
    assert all(p == ps[0] for p in ps[:8])


def test_engine_concurrent_evaluations_deterministic():
    params = ComputeParams(N=300, M=8, m_cd=96)
    args = [(1.3 + 0.2j, 1.1 + 0.4j)] * 6

    def run(zt):
        return log_double_gamma(*zt, params).log_value

    serial = run(args[0])
    with ThreadPoolExecutor(max_workers=6) as ex:
        results = list(ex.map(run, args))
    assert all(r == serial for r in results)  # bit-identical


def test_kernels_concurrent_use():
    zs = [complex(0.5 + 0.1 * k, 0.3 * k) for k in range(24)]
    with ThreadPoolExecutor(max_workers=8) as ex:
        a = list(ex.map(log_gamma, zs))
        b = list(ex.map(lambda z: polygamma(2, z), zs))
    assert a == [log_gamma(z) for z in zs]
    assert b == [polygamma(2, z) for z in zs]


def test_memo_results_stable_after_growth():
    q10 = q_poly(10)
    q_poly(60)  # grow the table well past the earlier request
    assert q_poly(10) is q10  # append-only: the cached object is untouched
    # q_60 constant term is B_60 = C(60,0) B_0 B_60; cross-route check
    assert q_poly(60) == q_poly_recursive(60)
