# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core: mirrors barnesg._pykernels exactly.

Same algorithms, same constants, same summation order and compensation, so
the two backends agree to a few ulp and the test suite runs under either.
"""

from libc.math cimport (atan2, ceil, cos, cosh, exp, fabs, floor, log, log1p,
                        sin, sinh, sqrt, M_PI)

cdef extern from "complex.h" nogil:
    double cabs(double complex z)
    double carg(double complex z)
    double complex cexp(double complex z)
    double complex clog(double complex z)
    double creal(double complex z)
    double cimag(double complex z)

from .errors import PoleError

DEF LN_2PI = 1.8378770664093453
DEF HALF_LN_2PI = 0.9189385332046727
DEF LN_PI = 1.1447298858494002
DEF LN_2 = 0.6931471805599453
DEF MAX_ARG = 2.356194490192345      # 3*pi/4
DEF STABLE_RADIUS = 16.0

cdef double[13] B2K
B2K[0] = 1.0 / 6.0
B2K[1] = -1.0 / 30.0
B2K[2] = 1.0 / 42.0
B2K[3] = -1.0 / 30.0
B2K[4] = 5.0 / 66.0
B2K[5] = -691.0 / 2730.0
B2K[6] = 7.0 / 6.0
B2K[7] = -3617.0 / 510.0
B2K[8] = 43867.0 / 798.0
B2K[9] = -174611.0 / 330.0
B2K[10] = 854513.0 / 138.0
B2K[11] = -236364091.0 / 2730.0
B2K[12] = 8553103.0 / 6.0

cdef double[13] BINET
cdef double[13] PSI_TAIL_C
cdef int _j
for _j in range(13):
    BINET[_j] = B2K[_j] / ((2 * _j + 1) * (2 * _j + 2))
    PSI_TAIL_C[_j] = B2K[_j] / (2 * (_j + 1))

cdef double LANCZOS_G = 607.0 / 128.0
cdef double[15] LANCZOS_C
LANCZOS_C[0] = 0.99999999999999709182
LANCZOS_C[1] = 57.156235665862923517
LANCZOS_C[2] = -59.597960355475491248
LANCZOS_C[3] = 14.136097974741747174
LANCZOS_C[4] = -0.49191381609762019978
LANCZOS_C[5] = 0.33994649984811888699e-4
LANCZOS_C[6] = 0.46523628927048575665e-4
LANCZOS_C[7] = -0.98374475304879564677e-4
LANCZOS_C[8] = 0.15808870322491248884e-3
LANCZOS_C[9] = -0.21026444172410488319e-3
LANCZOS_C[10] = 0.21743961811521264320e-3
LANCZOS_C[11] = -0.16431810653676389022e-3
LANCZOS_C[12] = 0.84418223983852743293e-4
LANCZOS_C[13] = -0.26190838401581408670e-4
LANCZOS_C[14] = 0.36899182659531622704e-5


cdef inline double complex _clog1p(double complex u) nogil:
    cdef double x = creal(u)
    cdef double y = cimag(u)
    cdef double re = 0.5 * log1p(2.0 * x + x * x + y * y)
    cdef double im = atan2(y, 1.0 + x)
    return re + 1j * im


cdef inline bint _is_nonpos_int(double complex z) nogil:
    return (cimag(z) == 0.0 and creal(z) <= 0.0
            and creal(z) == floor(creal(z)))


cdef inline double complex _logsinpi_upper(double complex z) nogil:
    # Im z >= 0 only
    return ((-LN_2 + 0.5j * M_PI)
            - 1j * M_PI * z
            + _clog1p(-cexp(2j * M_PI * z)))


cdef double complex _loggamma_right(double complex z) nogil:
    # Re z >= 0.5 only
    cdef double complex a = LANCZOS_C[0]
    cdef int k
    for k in range(1, 15):
        a = a + LANCZOS_C[k] / (z - 1.0 + k)
    cdef double complex t = z + (LANCZOS_G - 0.5)
    return HALF_LN_2PI + (z - 0.5) * clog(t) - t + clog(a)


cdef double complex _loggamma(double complex z) nogil:
    if cimag(z) < 0.0:
        z = creal(z) - 1j * cimag(z)
        z = _loggamma(z)
        return creal(z) - 1j * cimag(z)
    if creal(z) >= 0.5:
        return _loggamma_right(z)
    return LN_PI - _logsinpi_upper(z) - _loggamma_right(1.0 - z)


cdef double complex _binet(double complex w) nogil:
    cdef double complex iw = 1.0 / w
    cdef double complex iw2 = iw * iw
    cdef double complex acc = 0
    cdef double complex p = iw
    cdef double complex term
    cdef int j
    for j in range(13):
        term = BINET[j] * p
        acc = acc + term
        if cabs(term) < 1e-18 * (cabs(acc) + 1e-30):
            break
        p = p * iw2
    return acc


cdef double complex _psi_tail(double complex w) nogil:
    cdef double complex iw2 = 1.0 / (w * w)
    cdef double complex acc = 0
    cdef double complex p = iw2
    cdef double complex term
    cdef int j
    for j in range(13):
        term = PSI_TAIL_C[j] * p
        acc = acc + term
        if cabs(term) < 1e-18 * (cabs(acc) + 1e-30):
            break
        p = p * iw2
    return acc


cdef double complex _psi1_tail(double complex w) nogil:
    cdef double complex iw = 1.0 / w
    cdef double complex iw2 = iw * iw
    cdef double complex acc = 0
    cdef double complex p = iw2 * iw
    cdef double complex term
    cdef int j
    for j in range(13):
        term = B2K[j] * p
        acc = acc + term
        if cabs(term) < 1e-18 * (cabs(acc) + 1e-30):
            break
        p = p * iw2
    return acc


cdef inline double complex _cot_pi(double complex z) nogil:
    # Im z >= 0 only
    cdef double complex e = cexp(2j * M_PI * z)
    return 1j + 2j / (e - 1.0)


cdef double complex _digamma(double complex z) nogil:
    cdef double complex shift = 0
    cdef double complex w, iw
    if cimag(z) < 0.0:
        z = creal(z) - 1j * cimag(z)
        z = _digamma(z)
        return creal(z) - 1j * cimag(z)
    if creal(z) < 0.5:
        return _digamma(1.0 - z) - M_PI * _cot_pi(z)
    w = z
    while cabs(w) < 8.0:
        shift = shift + 1.0 / w
        w = w + 1.0
    return clog(w) - 0.5 / w - _psi_tail(w) - shift


cdef double complex _trigamma(double complex z) nogil:
    cdef double complex shift = 0
    cdef double complex w, iw, e, inv_sin2
    if cimag(z) < 0.0:
        z = creal(z) - 1j * cimag(z)
        z = _trigamma(z)
        return creal(z) - 1j * cimag(z)
    if creal(z) < 0.5:
        e = cexp(2j * M_PI * z)
        inv_sin2 = -4.0 * e / ((1.0 - e) * (1.0 - e))
        return M_PI * M_PI * inv_sin2 - _trigamma(1.0 - z)
    w = z
    while cabs(w) < 10.0:
        shift = shift + 1.0 / (w * w)
        w = w + 1.0
    iw = 1.0 / w
    return iw + 0.5 * iw * iw + _psi1_tail(w) + shift


cdef double complex _log1p_tail(double complex u) nogil:
    # g(u) = log(1+u) - u + u^2/2, |u| <= 1/2
    cdef double au = cabs(u)
    cdef double complex acc, p, term
    cdef double floor_
    cdef int k
    if au > 0.109:
        return _clog1p(u) - u + 0.5 * u * u
    acc = 0
    p = u * u * u
    k = 3
    floor_ = 1e-19 * au * au * au
    while True:
        term = p / k
        if k % 2 == 1:
            acc = acc + term
        else:
            acc = acc - term
        if cabs(term) < floor_ or k > 40:
            return acc
        p = p * u
        k = k + 1


cdef inline double complex _r_term_direct(double complex z, double complex z2h,
                                          double complex w) nogil:
    return (_loggamma(w) - _loggamma(z + w)
            + z * _digamma(w) + z2h * _trigamma(w))


cdef inline double complex _r_term_stable(double complex z, double complex z2h,
                                          double complex w) nogil:
    cdef double complex u = z / w
    cdef double complex iw2 = 1.0 / (w * w)
    return (0.5 * z * z * z * iw2
            - (z + w - 0.5) * _log1p_tail(u)
            - (_binet(z + w) - _binet(w))
            - z * _psi_tail(w)
            + z2h * _psi1_tail(w))


# ------------------------------------------------------------- public layer

def loggamma(z):
    """Principal log Gamma (compiled)."""
    cdef double complex zz = z
    if _is_nonpos_int(zz):
        raise PoleError(f"log Gamma pole at {z}")
    return complex(_loggamma(zz))


def digamma(z):
    """psi(z) (compiled)."""
    cdef double complex zz = z
    if _is_nonpos_int(zz):
        raise PoleError(f"digamma pole at {z}")
    return complex(_digamma(zz))


def trigamma(z):
    """psi'(z) (compiled)."""
    cdef double complex zz = z
    if _is_nonpos_int(zz):
        raise PoleError(f"trigamma pole at {z}")
    return complex(_trigamma(zz))


def gn_sum(z, tau, N):
    """Compensated truncated-product log sum (compiled mirror of the pure
    version; sequential ascending order, so prefixes agree bit for bit)."""
    cdef double complex zz = z
    cdef double complex tt = tau
    cdef long NN = N
    cdef double complex z2h = 0.5 * zz * zz
    cdef double abs_tau = cabs(tt)
    cdef long m_switch
    cdef double ms
    if fabs(carg(tt)) <= MAX_ARG:
        ms = STABLE_RADIUS
        if 2.0 * cabs(zz) > ms:
            ms = 2.0 * cabs(zz)
        m_switch = <long>ceil(ms / abs_tau)
    else:
        m_switch = NN + 1
    cdef double sr = 0, cr = 0, si = 0, ci = 0
    cdef double x, t_
    cdef double complex term, w
    cdef long m
    for m in range(1, NN + 1):
        w = m * tt
        if m < m_switch:
            term = _r_term_direct(zz, z2h, w)
        else:
            term = _r_term_stable(zz, z2h, w)
        # Neumaier on the real and imaginary parts
        x = creal(term)
        t_ = sr + x
        if fabs(sr) >= fabs(x):
            cr += (sr - t_) + x
        else:
            cr += (x - t_) + sr
        sr = t_
        x = cimag(term)
        t_ = si + x
        if fabs(si) >= fabs(x):
            ci += (si - t_) + x
        else:
            ci += (x - t_) + si
        si = t_
    return complex(sr + cr, si + ci)


def cd_sums(tau, m, k0):
    """Pieces of the psi / psi' partial sums (compiled mirror)."""
    cdef double complex tt = tau
    cdef long mm = m
    cdef long kk0 = k0
    cdef double ps_r = 0, ps_c = 0, ps_i = 0, ps_ci = 0
    cdef double p1_r = 0, p1_c = 0, p1_i = 0, p1_ci = 0
    cdef double s0r = 0, s0c = 0, s0i = 0, s0ci = 0
    cdef double s1r = 0, s1c = 0, s1i = 0, s1ci = 0
    cdef double h1s = 0, h1c = 0, h2s = 0, h2c = 0
    cdef double complex t
    cdef double x, tt_
    cdef long k
    cdef long small_top = kk0 if kk0 < mm else mm

    for k in range(1, small_top):
        t = _digamma(k * tt)
        x = creal(t); tt_ = ps_r + x
        if fabs(ps_r) >= fabs(x): ps_c += (ps_r - tt_) + x
        else: ps_c += (x - tt_) + ps_r
        ps_r = tt_
        x = cimag(t); tt_ = ps_i + x
        if fabs(ps_i) >= fabs(x): ps_ci += (ps_i - tt_) + x
        else: ps_ci += (x - tt_) + ps_i
        ps_i = tt_
        t = _trigamma(k * tt)
        x = creal(t); tt_ = p1_r + x
        if fabs(p1_r) >= fabs(x): p1_c += (p1_r - tt_) + x
        else: p1_c += (x - tt_) + p1_r
        p1_r = tt_
        x = cimag(t); tt_ = p1_i + x
        if fabs(p1_i) >= fabs(x): p1_ci += (p1_i - tt_) + x
        else: p1_ci += (x - tt_) + p1_i
        p1_i = tt_

    for k in range(kk0, mm):
        t = _psi_tail(k * tt)
        x = creal(t); tt_ = s0r + x
        if fabs(s0r) >= fabs(x): s0c += (s0r - tt_) + x
        else: s0c += (x - tt_) + s0r
        s0r = tt_
        x = cimag(t); tt_ = s0i + x
        if fabs(s0i) >= fabs(x): s0ci += (s0i - tt_) + x
        else: s0ci += (x - tt_) + s0i
        s0i = tt_
        t = _psi1_tail(k * tt)
        x = creal(t); tt_ = s1r + x
        if fabs(s1r) >= fabs(x): s1c += (s1r - tt_) + x
        else: s1c += (x - tt_) + s1r
        s1r = tt_
        x = cimag(t); tt_ = s1i + x
        if fabs(s1i) >= fabs(x): s1ci += (s1i - tt_) + x
        else: s1ci += (x - tt_) + s1i
        s1i = tt_
        x = 1.0 / k; tt_ = h1s + x
        if fabs(h1s) >= fabs(x): h1c += (h1s - tt_) + x
        else: h1c += (x - tt_) + h1s
        h1s = tt_
        x = 1.0 / (<double>k * <double>k); tt_ = h2s + x
        if fabs(h2s) >= fabs(x): h2c += (h2s - tt_) + x
        else: h2c += (x - tt_) + h2s
        h2s = tt_

    return (complex(ps_r + ps_c, ps_i + ps_ci),
            complex(p1_r + p1_c, p1_i + p1_ci),
            complex(s0r + s0c, s0i + s0ci),
            complex(s1r + s1c, s1i + s1ci),
            h1s + h1c,
            h2s + h2c)


def backend_name():
    return "compiled"
