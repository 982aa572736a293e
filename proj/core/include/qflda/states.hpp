#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qflda/qcore.hpp"
#include "qflda/random.hpp"

namespace qflda {

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Correlation signs (s1, s2, s3) = (<XX>, <YY>, <ZZ>) of a Bell state.
/// Only the four Bell patterns are accepted.
class BellSigns {
public:
    BellSigns() : BellSigns(singlet()) {}
    BellSigns(int s1, int s2, int s3);

    static BellSigns singlet() { return of(BellState::PsiMinus); }
    static BellSigns of(BellState state);

    int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
    BellState state() const { return state_; }

    friend bool operator==(const BellSigns&, const BellSigns&) = default;

private:
    std::array<int, 3> signs_{-1, -1, -1};
    BellState state_ = BellState::PsiMinus;
};

Eigen::VectorXcd bell_vector(BellState state);
Eigen::VectorXcd ghz_vector(int num_qubits);

struct WernerParams {
    double p = 0.0;
    int family_qubits = 2; ///< 2, 3 or 4
    BellSigns signs{};     ///< two-qubit only

    /// p in [-1/3, 1] for two qubits, [0, 1] otherwise.
    void validate() const;
};

struct ConcurrenceParams {
    double theta0 = 0.0; ///< radians, [0, pi]
    double theta1 = 0.0; ///< radians, [0, pi]
    void validate() const;
};

struct AcinParams {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    void validate() const;
    /// 2 + a + 1/a + b + 1/b + c + 1/c
    double normalization() const;
};

struct MixtureComponent {
    double weight = 1.0;
    std::vector<DensityOperator> factors; ///< one per partition block, in block order
};

struct MixtureSpec {
    std::vector<std::vector<int>> partition; ///< ordered blocks of qubit indices
    std::vector<MixtureComponent> components;
};

/// 1/4 sum c_ij sigma_i (x) sigma_j with c_00 = 1, c_ii = p s_i, other c zero.
DensityOperator werner2(const WernerParams& params);

/// p |GHZ_n><GHZ_n| + (1 - p) I / 2^n for n in {3, 4}.
DensityOperator werner_ghz(int num_qubits, double p);

/// Dispatches on params.family_qubits.
DensityOperator werner(const WernerParams& params);

/// cos(t0/2)|00> - i sin(t0/2)cos(t1/2)|10> - i sin(t0/2)sin(t1/2)|11>
DensityOperator concurrence_state(const ConcurrenceParams& params);

/// p rho + (1 - p) I / 2^n. p is the survival weight.
DensityOperator depolarize(const DensityOperator& rho, double p);

/// Three-qubit PPT entangled state: diag(1, a, b, c, 1/c, 1/b, 1/a, 1) plus
/// unit corner coherences, divided by the normalization.
DensityOperator pptes_acin(const AcinParams& params);

/// (III + IZZ + ZIZ + ZZI) / 8
DensityOperator ppt_alternative();

/// sum_i w_i (x)_blocks factor_i, with blocks mapped back onto their qubit indices.
DensityOperator separable_mixture(const MixtureSpec& spec);

/// Bloch vector uniform in the ball of radius `radius_cap` (direction uniform
/// on the sphere, radius = cap * u^(1/3)).
std::array<double, 3> random_bloch_vector(RngStream& rng, double radius_cap = 1.0);

/// (I + r.sigma) / 2; |r| <= 1.
DensityOperator qubit_state(const std::array<double, 3>& bloch);

DensityOperator random_product_state(int num_qubits, RngStream& rng, double radius_cap = 1.0);

// --- named families ----------------------------------------------------------

enum class Family {
    Werner2,
    Werner3,
    Werner4,
    Concurrence,
    PptesAcin,
    PptAlt,
    Biseparable,
    ProductSep,
};

inline constexpr std::array<Family, 8> kAllFamilies = {
    Family::Werner2,   Family::Werner3, Family::Werner4,     Family::Concurrence,
    Family::PptesAcin, Family::PptAlt,  Family::Biseparable, Family::ProductSep,
};

std::string_view family_name(Family f);
/// Canonical names: werner2 werner3 werner4 concurrence pptes-acin ppt-alt
/// biseparable product-sep.
Family parse_family(std::string_view name);
int family_qubits(Family f);

struct PptAltParams {};

/// Fully separable sum_i w_i (x)_q rho(bloch[i][q]).
struct ProductSepParams {
    std::vector<double> weights;
    std::vector<std::vector<std::array<double, 3>>> bloch; ///< [component][qubit]
};

/// A|BC biseparable sum_i w_i rho_A(bloch_a[i]) (x) werner2(p_bc[i], signs).
struct BiseparableParams {
    std::vector<double> weights;
    std::vector<std::array<double, 3>> bloch_a;
    std::vector<double> p_bc;
    BellSigns signs{};
};

using FamilyParams = std::variant<WernerParams, ConcurrenceParams, AcinParams, PptAltParams,
                                  BiseparableParams, ProductSepParams>;

Family family_of(const FamilyParams& params);
DensityOperator build_state(const FamilyParams& params);
/// Short provenance string, e.g. "werner2(p=0.51)".
std::string describe(const FamilyParams& params);

} // namespace qflda
