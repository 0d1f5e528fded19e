#include "cyclelab/lie_core.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "cyclelab/error.hpp"

namespace cyclelab {

namespace {

bool all_finite(const CMat& m) {
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

using LinearMap = std::function<CMat(const CMat&)>;

CMat real_basis_matrix(int n, int k) {
    CMat e = CMat::Zero(n, n);
    const int nn = n * n;
    const int idx = k % nn;
    e(idx % n, idx / n) = k < nn ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    return e;
}

CMat from_real_vector(int n, const RVec& x) {
    CMat m(n, n);
    const int nn = n * n;
    for (int idx = 0; idx < nn; ++idx) m(idx % n, idx / n) = cplx(x(idx), x(idx + nn));
    return m;
}

// Real-linear subspace {X in gl(n, C) : map(X) = 0 for every map}, orthonormal in Re tr X*Y.
std::vector<CMat> real_kernel(int n, const std::vector<LinearMap>& maps) {
    const int N = 2 * n * n;
    std::vector<RVec> columns;
    int rows = 0;
    for (int k = 0; k < N; ++k) {
        const CMat e = real_basis_matrix(n, k);
        std::vector<double> col;
        for (const auto& f : maps) {
            const CMat y = f(e);
            for (int j = 0; j < y.cols(); ++j)
                for (int i = 0; i < y.rows(); ++i) {
                    col.push_back(y(i, j).real());
                    col.push_back(y(i, j).imag());
                }
        }
        rows = static_cast<int>(col.size());
        columns.push_back(Eigen::Map<RVec>(col.data(), rows));
    }
    RMat a(rows, N);
    for (int k = 0; k < N; ++k) a.col(k) = columns[k];
    Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    const double cutoff = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    std::vector<CMat> basis;
    for (int c = rank; c < N; ++c) {
        RVec x = svd.matrixV().col(c);
        for (int i = 0; i < N; ++i) {
            if (std::abs(x(i)) > 1e-10) {
                if (x(i) < 0) x = -x;
                break;
            }
        }
        basis.push_back(from_real_vector(n, x));
    }
    return basis;
}

CMat in_frame(const CMat& x, const CMat& frame) { return frame.adjoint() * x * frame; }

}  // namespace

double max_abs(const CMat& m) {
    double r = 0.0;
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
    return r;
}

GroupElement::GroupElement(const CMat& m, double det_tolerance) : m_(m) {
    if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim)
        fail(ErrorCode::InvalidInput, "group element must be square of size 1.." + std::to_string(kMaxDim));
    if (!all_finite(m)) fail(ErrorCode::InvalidInput, "group element has non-finite entries");
    if (std::abs(m.determinant() - cplx(1.0, 0.0)) >= det_tolerance)
        fail(ErrorCode::InvalidInput, "determinant differs from 1");
}

GroupElement GroupElement::identity(int n) { return unchecked(CMat::Identity(n, n)); }

GroupElement GroupElement::unchecked(const CMat& m) {
    GroupElement g;
    g.m_ = m;
    return g;
}

GroupElement GroupElement::inverse() const { return unchecked(m_.inverse()); }

LieAlgebraElement::LieAlgebraElement(const CMat& m, double trace_tolerance) : m_(m) {
    if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim)
        fail(ErrorCode::InvalidInput, "algebra element must be square");
    if (!all_finite(m)) fail(ErrorCode::InvalidInput, "algebra element has non-finite entries");
    if (std::abs(m.trace()) >= trace_tolerance) fail(ErrorCode::InvalidInput, "algebra element is not trace-free");
}

RealFormSpec make_real_form(const CMat& form, const CMat& iwasawa_frame, const Tolerances& tol) {
    const int n = static_cast<int>(form.rows());
    if (n < 2 || n > kMaxDim || form.cols() != n) fail(ErrorCode::InvalidInput, "form matrix has unsupported shape");
    if (iwasawa_frame.rows() != n || iwasawa_frame.cols() != n)
        fail(ErrorCode::InvalidInput, "Iwasawa frame shape does not match the form");
    if (max_abs(form - form.adjoint()) > tol.membership) fail(ErrorCode::InvalidInput, "form matrix is not Hermitian");
    if (max_abs(form * form - CMat::Identity(n, n)) > tol.membership)
        fail(ErrorCode::InvalidInput, "form matrix must satisfy J^2 = I");
    if (max_abs(iwasawa_frame.adjoint() * iwasawa_frame - CMat::Identity(n, n)) > tol.membership)
        fail(ErrorCode::InvalidInput, "Iwasawa frame is not unitary");

    RealFormSpec rf;
    rf.form = form;
    rf.cartan = form;
    rf.iwasawa_frame = iwasawa_frame;
    Eigen::SelfAdjointEigenSolver<CMat> es(form);
    for (int i = 0; i < n; ++i) (es.eigenvalues()(i) > 0 ? rf.p : rf.q_form)++;
    if (rf.p == 0 || rf.q_form == 0) fail(ErrorCode::InvalidInput, "form must be indefinite");

    const LinearMap in_g0 = [&](const CMat& x) { return CMat(x.adjoint() * form + form * x); };
    const LinearMap trace_free = [](const CMat& x) { return CMat::Constant(1, 1, x.trace()); };
    const LinearMap skew = [](const CMat& x) { return CMat(x + x.adjoint()); };
    const LinearMap herm = [](const CMat& x) { return CMat(x - x.adjoint()); };
    const LinearMap off_diagonal = [&](const CMat& x) {
        CMat y = in_frame(x, iwasawa_frame);
        for (int i = 0; i < n; ++i) y(i, i) = 0.0;
        return y;
    };
    const LinearMap lower_with_diagonal = [&](const CMat& x) {
        CMat y = in_frame(x, iwasawa_frame);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < j; ++i) y(i, j) = 0.0;
        return y;
    };

    rf.g0 = real_kernel(n, {in_g0, trace_free});
    rf.k0 = real_kernel(n, {in_g0, trace_free, skew});
    rf.s0 = real_kernel(n, {in_g0, trace_free, herm});
    rf.a0 = real_kernel(n, {in_g0, trace_free, herm, off_diagonal});
    rf.n0 = real_kernel(n, {in_g0, trace_free, lower_with_diagonal});
    for (auto& x : rf.k0) {
        Eigen::JacobiSVD<CMat> svd(x);
        x /= svd.singularValues()(0);
    }
    if (rf.a0.empty()) fail(ErrorCode::InvalidInput, "frame diagonalizes no element of s0");
    if (rf.k0.size() + rf.a0.size() + rf.n0.size() != rf.g0.size())
        fail(ErrorCode::InvalidInput, "frame does not define an Iwasawa decomposition (dimension count)");
    return rf;
}

CMat exp_matrix(const CMat& x) {
    const Eigen::MatrixXcd dyn = x;
    return CMat(dyn.exp());
}

GroupElement exp_map(const LieAlgebraElement& x) {
    const CMat e = exp_matrix(x.matrix());
    if (!all_finite(e)) fail(ErrorCode::InvalidInput, "exponential overflowed");
    return GroupElement(e, 1e-10 * std::max(1.0, max_abs(e)));
}

bool is_member(const GroupElement& g, const RealFormSpec& rf, SubgroupTag which, double tolerance) {
    const CMat& m = g.matrix();
    const int n = g.group_dim();
    if (n != rf.dim()) return false;
    const double scale = std::max(1.0, max_abs(m) * max_abs(m));
    const auto in_g0 = [&] { return max_abs(m.adjoint() * rf.form * m - rf.form) < tolerance * scale; };
    switch (which) {
        case SubgroupTag::G0: return in_g0();
        case SubgroupTag::K0: return in_g0() && max_abs(cartan_involution(g, rf).matrix() - m) < tolerance * scale;
        case SubgroupTag::Gu: return max_abs(m.adjoint() * m - CMat::Identity(n, n)) < tolerance * scale;
        case SubgroupTag::A0N0: {
            if (!in_g0()) return false;
            const CMat t = in_frame(m, rf.iwasawa_frame);
            const double s = std::max(1.0, max_abs(t));
            for (int j = 0; j < n; ++j) {
                for (int i = j + 1; i < n; ++i)
                    if (std::abs(t(i, j)) >= tolerance * s) return false;
                if (std::abs(t(j, j).imag()) >= tolerance * s || t(j, j).real() <= 0.0) return false;
            }
            return true;
        }
    }
    return false;
}

IwasawaFactors iwasawa_decompose(const GroupElement& g, const RealFormSpec& rf, double tolerance) {
    if (!is_member(g, rf, SubgroupTag::G0, tolerance)) fail(ErrorCode::NotInRealForm, "element is not in G0");
    const int n = g.group_dim();
    const CMat& frame = rf.iwasawa_frame;
    const CMat m = in_frame(g.matrix(), frame);
    Eigen::HouseholderQR<CMat> qr(m);
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    CMat q = qr.householderQ();
    // Gauge: positive real diagonal of the triangular factor.
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag == 0.0) fail(ErrorCode::NumericalDegeneracy, "singular triangular factor");
        const cplx phase = r(i, i) / mag;
        r.row(i) *= std::conj(phase);
        q.col(i) *= phase;
    }
    CMat d = CMat::Zero(n, n), dinv = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = r(i, i).real();
        dinv(i, i) = 1.0 / r(i, i).real();
    }
    const CMat unipotent = dinv * r;
    return {GroupElement::unchecked(frame * q * frame.adjoint()), GroupElement::unchecked(frame * d * frame.adjoint()),
            GroupElement::unchecked(frame * unipotent * frame.adjoint())};
}

GroupElement cartan_involution(const GroupElement& g, const RealFormSpec& rf) {
    return GroupElement::unchecked(rf.cartan * g.matrix() * rf.cartan.inverse());
}

GroupElement k0_exp(const RealFormSpec& rf, const std::vector<double>& coords) {
    const int n = rf.dim();
    CMat x = CMat::Zero(n, n);
    for (std::size_t i = 0; i < coords.size() && i < rf.k0.size(); ++i) x += coords[i] * rf.k0[i];
    return GroupElement::unchecked(exp_matrix(x));
}

std::vector<GroupElement> k0_sample(const RealFormSpec& rf, int resolution, std::uint64_t seed, int extra) {
    if (resolution < 1) fail(ErrorCode::InvalidInput, "k0 resolution must be >= 1");
    const int d = static_cast<int>(rf.k0.size());
    std::vector<GroupElement> out;
    std::vector<int> idx(d, 0);
    std::vector<double> c(d, 0.0);
    for (bool done = false; !done;) {
        for (int i = 0; i < d; ++i) c[i] = std::numbers::pi * idx[i] / resolution;
        out.push_back(k0_exp(rf, c));
        done = true;
        for (int i = d - 1; i >= 0; --i) {
            if (++idx[i] < resolution) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        if (d == 0) break;
    }
    if (extra > 0 && d > 0) {
        Rng rng(derive_seed(seed, 0x6b30));
        std::vector<double> shift(d);
        for (auto& s : shift) s = rng.uniform();
        for (int e = 1; e <= extra; ++e) {
            const auto h = halton_point(static_cast<std::uint64_t>(e), d);
            for (int i = 0; i < d; ++i) {
                double u = h[i] + shift[i];
                u -= std::floor(u);
                c[i] = -std::numbers::pi + 2.0 * std::numbers::pi * u;
            }
            out.push_back(k0_exp(rf, c));
        }
    }
    return out;
}

CMat random_algebra_element(const std::vector<CMat>& basis, Rng& rng, double scale) {
    CMat x = CMat::Zero(basis.front().rows(), basis.front().cols());
    for (const auto& b : basis) x += rng.normal() * scale * b;
    return x;
}

GroupElement random_k0(const RealFormSpec& rf, Rng& rng) {
    std::vector<double> c(rf.k0.size());
    for (auto& x : c) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    return k0_exp(rf, c);
}

GroupElement random_a0(const RealFormSpec& rf, Rng& rng, double scale) {
    return GroupElement::unchecked(exp_matrix(random_algebra_element(rf.a0, rng, scale)));
}

GroupElement random_n0(const RealFormSpec& rf, Rng& rng, double scale) {
    return GroupElement::unchecked(exp_matrix(random_algebra_element(rf.n0, rng, scale)));
}

GroupElement random_g0(const RealFormSpec& rf, Rng& rng, double scale) {
    return random_k0(rf, rng) * random_a0(rf, rng, scale) * random_n0(rf, rng, scale);
}

GroupElement random_gu(int n, Rng& rng) {
    CMat z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR();
    for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    const cplx det = q.determinant();
    q *= std::pow(det, -1.0 / n);
    return GroupElement::unchecked(q);
}

}  // namespace cyclelab
