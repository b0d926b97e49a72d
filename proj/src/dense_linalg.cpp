#include "gatelab/dense_linalg.hpp"

#include <lapacke.h>

#include <algorithm>

namespace gatelab {

namespace {
lapack_complex_double* ptr(Mat& m) {
    return reinterpret_cast<lapack_complex_double*>(m.data());
}
}  // namespace

std::vector<double> singular_values(const Mat& a) {
    Mat work = a;  // destroyed by LAPACK
    const lapack_int rows = static_cast<lapack_int>(a.rows());
    const lapack_int cols = static_cast<lapack_int>(a.cols());
    std::vector<double> sv(static_cast<std::size_t>(std::min(rows, cols)));
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, ptr(work), rows,
                                     sv.data(), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("SVD failed to converge (zgesdd info=" + std::to_string(info) + ")");
    return sv;  // zgesdd returns descending order
}

std::vector<double> hermitian_eigenvalues(const Mat& a) {
    Mat work = a;
    const lapack_int d = static_cast<lapack_int>(a.rows());
    std::vector<double> ev(static_cast<std::size_t>(d));
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', d, ptr(work), d, ev.data());
    if (info != 0) throw std::runtime_error("Hermitian eigensolve failed (zheevd info=" + std::to_string(info) + ")");
    return ev;
}

std::vector<cx> complex_eigenvalues(const Mat& a) {
    Mat work = a;
    const lapack_int d = static_cast<lapack_int>(a.rows());
    std::vector<cx> ev(static_cast<std::size_t>(d));
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', d, ptr(work), d,
                                    reinterpret_cast<lapack_complex_double*>(ev.data()),
                                    nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("eigensolve failed (zgeev info=" + std::to_string(info) + ")");
    return ev;
}

}  // namespace gatelab
