# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled kernels for the convolution and pooling hot loops.

Direct nogil loops over typed memoryviews; float32 and float64 via a
fused type. Shapes and semantics match backend._pykernels exactly
(valid cross-correlation, stride 1; 2x2/stride-2 max pooling with
first-maximum tie-breaking and floor edge handling).
"""

import numpy as np

cimport cython


ctypedef fused real:
    float
    double


def conv2d_forward(real[:, :, :, ::1] x, real[:, :, :, ::1] w, real[::1] b):
    cdef Py_ssize_t N = x.shape[0], C = x.shape[1], H = x.shape[2], W = x.shape[3]
    cdef Py_ssize_t F = w.shape[0], KH = w.shape[2], KW = w.shape[3]
    cdef Py_ssize_t HO = H - KH + 1, WO = W - KW + 1
    y_arr = np.empty((N, F, HO, WO), dtype=np.float32 if real is float else np.float64)
    cdef real[:, :, :, ::1] y = y_arr
    cdef Py_ssize_t n, f, c, ki, kj, i, j
    cdef real wv, bv
    with nogil:
        for n in range(N):
            for f in range(F):
                bv = b[f]
                for i in range(HO):
                    for j in range(WO):
                        y[n, f, i, j] = bv
                for c in range(C):
                    for ki in range(KH):
                        for kj in range(KW):
                            wv = w[f, c, ki, kj]
                            for i in range(HO):
                                for j in range(WO):
                                    y[n, f, i, j] += wv * x[n, c, i + ki, j + kj]
    return y_arr


def conv2d_backward(real[:, :, :, ::1] x, real[:, :, :, ::1] w,
                    real[:, :, :, ::1] dy):
    cdef Py_ssize_t N = x.shape[0], C = x.shape[1], H = x.shape[2], W = x.shape[3]
    cdef Py_ssize_t F = w.shape[0], KH = w.shape[2], KW = w.shape[3]
    cdef Py_ssize_t HO = dy.shape[2], WO = dy.shape[3]
    dtype = np.float32 if real is float else np.float64
    dx_arr = np.zeros((N, C, H, W), dtype=dtype)
    dw_arr = np.zeros((F, C, KH, KW), dtype=dtype)
    db_arr = np.zeros((F,), dtype=dtype)
    cdef real[:, :, :, ::1] dx = dx_arr
    cdef real[:, :, :, ::1] dw = dw_arr
    cdef real[::1] db = db_arr
    cdef Py_ssize_t n, f, c, ki, kj, i, j
    cdef real g, wv, acc
    with nogil:
        for n in range(N):
            for f in range(F):
                acc = 0
                for i in range(HO):
                    for j in range(WO):
                        acc += dy[n, f, i, j]
                db[f] += acc
        for n in range(N):
            for f in range(F):
                for c in range(C):
                    for ki in range(KH):
                        for kj in range(KW):
                            wv = w[f, c, ki, kj]
                            acc = 0
                            for i in range(HO):
                                for j in range(WO):
                                    g = dy[n, f, i, j]
                                    acc += g * x[n, c, i + ki, j + kj]
                                    dx[n, c, i + ki, j + kj] += wv * g
                            dw[f, c, ki, kj] += acc
    return dx_arr, dw_arr, db_arr


def maxpool2_forward(real[:, :, :, ::1] x):
    cdef Py_ssize_t N = x.shape[0], C = x.shape[1], H = x.shape[2], W = x.shape[3]
    cdef Py_ssize_t HO = H // 2, WO = W // 2
    y_arr = np.empty((N, C, HO, WO), dtype=np.float32 if real is float else np.float64)
    idx_arr = np.empty((N, C, HO, WO), dtype=np.uint8)
    cdef real[:, :, :, ::1] y = y_arr
    cdef unsigned char[:, :, :, ::1] idx = idx_arr
    cdef Py_ssize_t n, c, i, j, k
    cdef real best, v
    cdef unsigned char kbest
    with nogil:
        for n in range(N):
            for c in range(C):
                for i in range(HO):
                    for j in range(WO):
                        best = x[n, c, 2 * i, 2 * j]
                        kbest = 0
                        for k in range(1, 4):
                            v = x[n, c, 2 * i + (k >> 1), 2 * j + (k & 1)]
                            if v > best:
                                best = v
                                kbest = <unsigned char> k
                        y[n, c, i, j] = best
                        idx[n, c, i, j] = kbest
    return y_arr, idx_arr


def maxpool2_backward(real[:, :, :, ::1] dy, unsigned char[:, :, :, ::1] idx,
                      Py_ssize_t h, Py_ssize_t w):
    cdef Py_ssize_t N = dy.shape[0], C = dy.shape[1]
    cdef Py_ssize_t HO = dy.shape[2], WO = dy.shape[3]
    dx_arr = np.zeros((N, C, h, w), dtype=np.float32 if real is float else np.float64)
    cdef real[:, :, :, ::1] dx = dx_arr
    cdef Py_ssize_t n, c, i, j
    cdef unsigned char k
    with nogil:
        for n in range(N):
            for c in range(C):
                for i in range(HO):
                    for j in range(WO):
                        k = idx[n, c, i, j]
                        dx[n, c, 2 * i + (k >> 1), 2 * j + (k & 1)] += dy[n, c, i, j]
    return dx_arr
