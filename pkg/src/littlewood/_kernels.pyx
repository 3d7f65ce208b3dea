# cython: language_level=3
"""Compiled kernels: GMP Sturm tower in the Chebyshev basis and a Clenshaw
grid sign-change counter.  Behaviour matches ``_pykernels`` exactly."""

from libc.math cimport cos, M_PI, fabs
from libc.stdlib cimport malloc, free


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    void mpz_set_ui(mpz_ptr, unsigned long)
    int mpz_set_str(mpz_ptr, const char*, int)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_sub(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul_si(mpz_ptr, mpz_ptr, long)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_gcd(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact_ui(mpz_ptr, mpz_ptr, unsigned long)
    void mpz_neg(mpz_ptr, mpz_ptr)
    void mpz_abs(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    int mpz_cmp_ui(mpz_ptr, unsigned long)


cdef struct Poly:
    __mpz_struct* c
    int cap
    int deg


cdef void poly_init(Poly* p, int cap):
    cdef int i
    p.c = <__mpz_struct*> malloc(cap * sizeof(__mpz_struct))
    p.cap = cap
    p.deg = -1
    for i in range(cap):
        mpz_init(&p.c[i])


cdef void poly_free(Poly* p):
    cdef int i
    for i in range(p.cap):
        mpz_clear(&p.c[i])
    free(p.c)


cdef void poly_copy(Poly* dst, Poly* src):
    cdef int i
    for i in range(src.deg + 1):
        mpz_set(&dst.c[i], &src.c[i])
    dst.deg = src.deg


cdef void poly_trim(Poly* p):
    while p.deg >= 0 and mpz_sgn(&p.c[p.deg]) == 0:
        p.deg -= 1


cdef void poly_primitive(Poly* p, mpz_ptr g):
    cdef int i
    mpz_set_ui(g, 0)
    for i in range(p.deg + 1):
        mpz_gcd(g, g, &p.c[i])
        if mpz_cmp_ui(g, 1) == 0:
            return
    if mpz_cmp_ui(g, 1) > 0:
        for i in range(p.deg + 1):
            mpz_divexact(&p.c[i], &p.c[i], g)


cdef void poly_derivative(Poly* dst, Poly* src, mpz_ptr tmp):
    """d_{k-1} = d_{k+1} + 2k a_k, then halve d_0."""
    cdef int n = src.deg
    cdef int k
    if n <= 0:
        dst.deg = -1
        return
    for k in range(n):
        mpz_set_ui(&dst.c[k], 0)
    for k in range(n, 0, -1):
        mpz_mul_si(tmp, &src.c[k], 2 * k)
        if k + 1 <= n - 1:
            mpz_add(&dst.c[k - 1], &dst.c[k + 1], tmp)
        else:
            mpz_set(&dst.c[k - 1], tmp)
    mpz_divexact_ui(&dst.c[0], &dst.c[0], 2)
    dst.deg = n - 1
    poly_trim(dst)


cdef void poly_prem(Poly* A, Poly* B, Poly* TB, mpz_ptr t, mpz_ptr la,
                    mpz_ptr g, mpz_ptr tmp):
    """A <- primitive pseudo-remainder of A by B (positive multipliers)."""
    cdef int da, db = B.deg, k, j, i, neg
    while A.deg >= 0 and A.deg >= db:
        da = A.deg
        k = da - db
        for i in range(da + 1):
            mpz_set_ui(&TB.c[i], 0)
        for j in range(db + 1):
            mpz_add(&TB.c[j + k], &TB.c[j + k], &B.c[j])
            i = j - k if j >= k else k - j
            mpz_add(&TB.c[i], &TB.c[i], &B.c[j])
        mpz_set(t, &TB.c[da])
        mpz_set(la, &A.c[da])
        neg = mpz_sgn(t) < 0
        mpz_abs(t, t)
        mpz_gcd(g, t, la)
        mpz_divexact(t, t, g)
        mpz_divexact(la, la, g)
        if neg:
            mpz_neg(la, la)
        for i in range(da + 1):
            mpz_mul(&A.c[i], &A.c[i], t)
            mpz_submul(&A.c[i], la, &TB.c[i])
        poly_trim(A)
        poly_primitive(A, g)


cdef void poly_values(Poly* p, int* out, mpz_ptr acc_m1, mpz_ptr acc_0, mpz_ptr acc_1):
    """Signs of p at -1, 0, 1."""
    cdef int n
    mpz_set_ui(acc_m1, 0)
    mpz_set_ui(acc_0, 0)
    mpz_set_ui(acc_1, 0)
    for n in range(p.deg + 1):
        mpz_add(acc_1, acc_1, &p.c[n])
        if n % 2 == 0:
            mpz_add(acc_m1, acc_m1, &p.c[n])
            if n % 4 == 0:
                mpz_add(acc_0, acc_0, &p.c[n])
            else:
                mpz_sub(acc_0, acc_0, &p.c[n])
        else:
            mpz_sub(acc_m1, acc_m1, &p.c[n])
    out[0] = mpz_sgn(acc_m1)
    out[1] = mpz_sgn(acc_0)
    out[2] = mpz_sgn(acc_1)


cdef inline void _step(int s, int* last, int* v):
    if s != 0:
        if last[0] != 0 and s != last[0]:
            v[0] += 1
        last[0] = s


cdef void _set_from_py(mpz_ptr z, object x):
    cdef long v
    try:
        v = x
        mpz_set_si(z, v)
    except OverflowError:
        s = str(x).encode()
        mpz_set_str(z, s, 10)


def sturm_tower(coeffs):
    """See ``_pykernels.sturm_tower``."""
    cdef Poly G
    cdef Poly p0
    cdef Poly p1
    cdef Poly TB
    cdef Poly* a
    cdef Poly* b
    cdef Poly* swap
    cdef __mpz_struct scratch[7]
    cdef int i
    cdef int n
    cdef int sv[3]
    cdef int zero[3]
    cdef int last[3]
    cdef int var[3]
    cdef list vals = [int(x) for x in coeffs]
    cdef list levels = []
    while vals and vals[len(vals) - 1] == 0:
        vals.pop()
    n = len(vals)
    if n < 2:
        return levels
    poly_init(&G, n)
    poly_init(&p0, n)
    poly_init(&p1, n)
    poly_init(&TB, n)
    for i in range(7):
        mpz_init(&scratch[i])
    try:
        for i in range(n):
            _set_from_py(&G.c[i], vals[i])
        G.deg = n - 1
        poly_primitive(&G, &scratch[0])
        while G.deg >= 1:
            a = &p0
            b = &p1
            poly_copy(a, &G)
            poly_derivative(b, a, &scratch[0])
            poly_primitive(b, &scratch[0])
            for i in range(3):
                last[i] = 0
                var[i] = 0
            poly_values(a, sv, &scratch[4], &scratch[5], &scratch[6])
            for i in range(3):
                zero[i] = sv[i] == 0
                _step(sv[i], &last[i], &var[i])
            poly_values(b, sv, &scratch[4], &scratch[5], &scratch[6])
            for i in range(3):
                _step(sv[i], &last[i], &var[i])
            while True:
                poly_prem(a, b, &TB, &scratch[0], &scratch[1], &scratch[2], &scratch[3])
                if a.deg < 0:
                    break
                for i in range(a.deg + 1):
                    mpz_neg(&a.c[i], &a.c[i])
                swap = a
                a = b
                b = swap
                poly_values(b, sv, &scratch[4], &scratch[5], &scratch[6])
                for i in range(3):
                    _step(sv[i], &last[i], &var[i])
            levels.append((var[0], var[1], var[2], zero[0], zero[1], zero[2]))
            poly_copy(&G, b)
    finally:
        for i in range(7):
            mpz_clear(&scratch[i])
        poly_free(&G)
        poly_free(&p0)
        poly_free(&p1)
        poly_free(&TB)
    return levels


def cosine_grid_sign_changes(double[::1] A, long resolution, double tol):
    """See ``_pykernels.cosine_grid_sign_changes``; Clenshaw per grid point."""
    cdef Py_ssize_t m = A.shape[0], n
    cdef long k
    cdef double thresh = 0.0, x, b0, b1, b2, val
    cdef int s, first = 0, last = 0
    cdef long changes = 0
    if m == 0:
        return 0
    for n in range(m):
        thresh += fabs(A[n])
    thresh *= tol
    with nogil:
        for k in range(resolution):
            x = cos(2.0 * M_PI * k / resolution)
            b1 = 0.0
            b2 = 0.0
            for n in range(m - 1, 0, -1):
                b0 = A[n] + 2.0 * x * b1 - b2
                b2 = b1
                b1 = b0
            val = A[0] + x * b1 - b2
            if fabs(val) <= thresh:
                continue
            s = 1 if val > 0 else -1
            if first == 0:
                first = s
            elif s != last:
                changes += 1
            last = s
    if first != 0 and last != first:
        changes += 1
    return changes
