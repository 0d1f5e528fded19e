#pragma once

#include <cstdint>
#include <vector>

#include "cyclelab/rng.hpp"
#include "cyclelab/types.hpp"

namespace cyclelab {

/// Element of SL(n, C). The checked constructor enforces |det - 1| < tolerance and finite entries.
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(const CMat& m, double det_tolerance = 1e-10);

    static GroupElement identity(int n);
    /// Skips validation; for products of already-validated elements in hot loops.
    static GroupElement unchecked(const CMat& m);

    const CMat& matrix() const { return m_; }
    int group_dim() const { return static_cast<int>(m_.rows()); }

    GroupElement operator*(const GroupElement& other) const { return unchecked(m_ * other.m_); }
    GroupElement inverse() const;

private:
    CMat m_;
};

/// Trace-free n x n complex matrix.
class LieAlgebraElement {
public:
    explicit LieAlgebraElement(const CMat& m, double trace_tolerance = 1e-10);
    const CMat& matrix() const { return m_; }

private:
    CMat m_;
};

enum class SubgroupTag { G0, K0, Gu, A0N0 };

/// G0 = {g : g* J g = J} inside SL(n, C), with Cartan involution theta(g) = T g T^{-1}, T = J.
/// `iwasawa_frame` is a unitary matrix P such that A0 N0 is upper triangular with positive
/// diagonal in the basis given by the columns of P.
struct RealFormSpec {
    CMat form;
    int p = 0;
    int q_form = 0;
    CMat cartan;
    CMat iwasawa_frame;

    // Orthonormal bases (for <X, Y> = Re tr X*Y) of the real subalgebras. The k0 basis is
    // rescaled to unit spectral radius so that exp(pi * X) is a half period.
    std::vector<CMat> g0;
    std::vector<CMat> k0;
    std::vector<CMat> s0;
    std::vector<CMat> a0;
    std::vector<CMat> n0;

    int dim() const { return static_cast<int>(form.rows()); }
};

/// Builds a real form from its Hermitian form J (J^2 = I) and Iwasawa frame, deriving all
/// subalgebra bases. Throws InvalidInput when the data is inconsistent.
RealFormSpec make_real_form(const CMat& form, const CMat& iwasawa_frame, const Tolerances& tol = {});

GroupElement exp_map(const LieAlgebraElement& x);
CMat exp_matrix(const CMat& x);

bool is_member(const GroupElement& g, const RealFormSpec& rf, SubgroupTag which, double tolerance = 1e-10);

struct IwasawaFactors {
    GroupElement k;
    GroupElement a;
    GroupElement n;
};

/// g = k a n with k in K0, a in A0 (positive diagonal in the frame), n in N0 (unipotent).
IwasawaFactors iwasawa_decompose(const GroupElement& g, const RealFormSpec& rf, double tolerance = 1e-10);

GroupElement cartan_involution(const GroupElement& g, const RealFormSpec& rf);

/// exp(sum_i c_i X_i) over the k0 basis.
GroupElement k0_exp(const RealFormSpec& rf, const std::vector<double>& coords);

/// Deterministic sample of K0: the grid c_i = pi j / resolution (j = 0..resolution-1) in each
/// exponential coordinate, followed by `extra` Halton points over [-pi, pi)^dim with a
/// seed-dependent shift.
std::vector<GroupElement> k0_sample(const RealFormSpec& rf, int resolution, std::uint64_t seed, int extra = 0);

// Seeded random elements for property tests and verification suites.
CMat random_algebra_element(const std::vector<CMat>& basis, Rng& rng, double scale);
GroupElement random_k0(const RealFormSpec& rf, Rng& rng);
GroupElement random_a0(const RealFormSpec& rf, Rng& rng, double scale);
GroupElement random_n0(const RealFormSpec& rf, Rng& rng, double scale);
GroupElement random_g0(const RealFormSpec& rf, Rng& rng, double scale);
GroupElement random_gu(int n, Rng& rng);

/// Max-abs entry norm.
double max_abs(const CMat& m);

}  // namespace cyclelab
