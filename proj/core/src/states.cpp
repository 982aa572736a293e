#include "qflda/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qflda {

namespace {

struct BellRow {
    BellState state;
    std::array<int, 3> signs;
};

// <XX>, <YY>, <ZZ> for each Bell state
constexpr std::array<BellRow, 4> kBellTable = {{
    {BellState::PhiPlus, {+1, -1, +1}},
    {BellState::PhiMinus, {-1, +1, +1}},
    {BellState::PsiPlus, {+1, +1, -1}},
    {BellState::PsiMinus, {-1, -1, -1}},
}};

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

} // namespace

BellSigns::BellSigns(int s1, int s2, int s3) {
    const std::array<int, 3> want{s1, s2, s3};
    const auto it = std::find_if(kBellTable.begin(), kBellTable.end(),
                                 [&](const BellRow& r) { return r.signs == want; });
    if (it == kBellTable.end())
        throw ValidationError("sign pattern is not realized by any Bell state");
    signs_ = want;
    state_ = it->state;
}

BellSigns BellSigns::of(BellState state) {
    for (const auto& row : kBellTable)
        if (row.state == state) return BellSigns(row.signs[0], row.signs[1], row.signs[2]);
    throw ValidationError("unknown Bell state");
}

Eigen::VectorXcd bell_vector(BellState state) {
    const double h = std::numbers::sqrt2 / 2.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    switch (state) {
    case BellState::PhiPlus: v(0) = h; v(3) = h; break;
    case BellState::PhiMinus: v(0) = h; v(3) = -h; break;
    case BellState::PsiPlus: v(1) = h; v(2) = h; break;
    case BellState::PsiMinus: v(1) = h; v(2) = -h; break;
    }
    return v;
}

Eigen::VectorXcd ghz_vector(int num_qubits) {
    require(num_qubits >= 2 && num_qubits <= kMaxQubits, "ghz_vector: unsupported qubit count");
    const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = std::numbers::sqrt2 / 2.0;
    v(dim - 1) = std::numbers::sqrt2 / 2.0;
    return v;
}

void WernerParams::validate() const {
    require(family_qubits >= 2 && family_qubits <= 4, "Werner family must have 2, 3 or 4 qubits");
    require(std::isfinite(p), "Werner p must be finite");
    const double lo = family_qubits == 2 ? -1.0 / 3.0 : 0.0;
    if (p < lo || p > 1.0) {
        std::ostringstream msg;
        msg << "Werner p=" << p << " outside [" << lo << ", 1]";
        throw ValidationError(msg.str());
    }
}

void ConcurrenceParams::validate() const {
    const auto in_range = [](double t) { return t >= 0.0 && t <= std::numbers::pi; };
    require(in_range(theta0) && in_range(theta1), "concurrence angles must lie in [0, pi]");
}

void AcinParams::validate() const {
    const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(ok(a) && ok(b) && ok(c), "Acin parameters a, b, c must be positive");
}

double AcinParams::normalization() const {
    return 2.0 + a + 1.0 / a + b + 1.0 / b + c + 1.0 / c;
}

DensityOperator werner2(const WernerParams& params) {
    require(params.family_qubits == 2, "werner2 requires family_qubits == 2");
    params.validate();
    ComplexMatrix m = pauli_string_operator(PauliString::parse("II"));
    static constexpr std::array<std::string_view, 3> kCorrelators = {"XX", "YY", "ZZ"};
    for (int i = 0; i < 3; ++i)
        m += params.p * params.signs[i] *
             pauli_string_operator(PauliString::parse(kCorrelators[static_cast<std::size_t>(i)]));
    return DensityOperator(m / 4.0);
}

DensityOperator werner_ghz(int num_qubits, double p) {
    require(num_qubits == 3 || num_qubits == 4, "werner_ghz supports 3 or 4 qubits");
    WernerParams{p, num_qubits, {}}.validate();
    return depolarize(DensityOperator::from_pure(ghz_vector(num_qubits)), p);
}

DensityOperator werner(const WernerParams& params) {
    if (params.family_qubits == 2) return werner2(params);
    return werner_ghz(params.family_qubits, params.p);
}

DensityOperator concurrence_state(const ConcurrenceParams& params) {
    params.validate();
    const Complex i{0.0, 1.0};
    const double c0 = std::cos(params.theta0 / 2.0);
    const double s0 = std::sin(params.theta0 / 2.0);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = c0;                                      // |00>
    psi(2) = -i * s0 * std::cos(params.theta1 / 2.0); // |10>
    psi(3) = -i * s0 * std::sin(params.theta1 / 2.0); // |11>
    return DensityOperator::from_pure(psi);
}

DensityOperator depolarize(const DensityOperator& rho, double p) {
    require(p >= 0.0 && p <= 1.0, "depolarize: p must lie in [0, 1]");
    const auto dim = rho.dim();
    ComplexMatrix m = p * rho.matrix();
    m.diagonal().array() += (1.0 - p) / static_cast<double>(dim);
    return DensityOperator(std::move(m));
}

DensityOperator pptes_acin(const AcinParams& params) {
    params.validate();
    const double a = params.a, b = params.b, c = params.c;
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    const std::array<double, 8> diag = {1.0, a, b, c, 1.0 / c, 1.0 / b, 1.0 / a, 1.0};
    for (Eigen::Index k = 0; k < 8; ++k) m(k, k) = diag[static_cast<std::size_t>(k)];
    m(0, 7) = 1.0;
    m(7, 0) = 1.0;
    return DensityOperator(m / params.normalization());
}

DensityOperator ppt_alternative() {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (std::string_view w : {"III", "IZZ", "ZIZ", "ZZI"})
        m += pauli_string_operator(PauliString::parse(w));
    return DensityOperator(m / 8.0);
}

DensityOperator separable_mixture(const MixtureSpec& spec) {
    require(!spec.partition.empty(), "mixture: empty partition");
    require(!spec.components.empty(), "mixture: no components");

    std::vector<int> order;
    for (const auto& block : spec.partition) {
        require(!block.empty(), "mixture: empty partition block");
        order.insert(order.end(), block.begin(), block.end());
    }
    const int n = static_cast<int>(order.size());
    require(n <= kMaxQubits, "mixture: too many qubits");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int q : order) {
        require(q >= 0 && q < n && !seen[static_cast<std::size_t>(q)],
                "mixture: partition must cover qubits 0..N-1 exactly once");
        seen[static_cast<std::size_t>(q)] = true;
    }

    double total = 0.0;
    for (const auto& comp : spec.components) {
        require(comp.weight >= 0.0, "mixture: negative weight");
        total += comp.weight;
    }
    require(std::abs(total - 1.0) <= 1e-12, "mixture: weights must sum to 1");

    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (const auto& comp : spec.components) {
        require(comp.factors.size() == spec.partition.size(),
                "mixture: factor count differs from block count");
        ComplexMatrix prod = ComplexMatrix::Identity(1, 1);
        for (std::size_t b = 0; b < comp.factors.size(); ++b) {
            require(comp.factors[b].num_qubits() == static_cast<int>(spec.partition[b].size()),
                    "mixture: factor dimension does not match its block");
            prod = kron(prod, comp.factors[b].matrix());
        }
        acc += comp.weight * prod;
    }
    // Factor j of the product sits on qubit order[j].
    return DensityOperator(permute_qubits(acc, n, order));
}

std::array<double, 3> random_bloch_vector(RngStream& rng, double radius_cap) {
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = radius_cap * std::cbrt(uniform01(rng));
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * s * std::cos(phi), r * s * std::sin(phi), r * z};
}

DensityOperator qubit_state(const std::array<double, 3>& bloch) {
    const double norm = std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);
    require(norm <= 1.0 + 1e-12, "Bloch vector longer than 1");
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    m << 1.0 + bloch[2], bloch[0] - i * bloch[1], bloch[0] + i * bloch[1], 1.0 - bloch[2];
    return DensityOperator(m / 2.0);
}

DensityOperator random_product_state(int num_qubits, RngStream& rng, double radius_cap) {
    require(num_qubits >= 1 && num_qubits <= kMaxQubits, "random_product_state: bad qubit count");
    require(radius_cap >= 0.0 && radius_cap <= 1.0, "random_product_state: cap must be in [0, 1]");
    ComplexMatrix m = qubit_state(random_bloch_vector(rng, radius_cap)).matrix();
    for (int q = 1; q < num_qubits; ++q)
        m = kron(m, qubit_state(random_bloch_vector(rng, radius_cap)).matrix());
    return DensityOperator(std::move(m));
}

// --- named families ----------------------------------------------------------

std::string_view family_name(Family f) {
    switch (f) {
    case Family::Werner2: return "werner2";
    case Family::Werner3: return "werner3";
    case Family::Werner4: return "werner4";
    case Family::Concurrence: return "concurrence";
    case Family::PptesAcin: return "pptes-acin";
    case Family::PptAlt: return "ppt-alt";
    case Family::Biseparable: return "biseparable";
    case Family::ProductSep: return "product-sep";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    throw ValidationError("unknown state family '" + std::string(name) + "'");
}

int family_qubits(Family f) {
    switch (f) {
    case Family::Werner2:
    case Family::Concurrence: return 2;
    case Family::Werner4: return 4;
    case Family::ProductSep: return 0; // chosen per dataset
    default: return 3;
    }
}

Family family_of(const FamilyParams& params) {
    struct Visitor {
        Family operator()(const WernerParams& w) const {
            return w.family_qubits == 2 ? Family::Werner2
                   : w.family_qubits == 3 ? Family::Werner3
                                          : Family::Werner4;
        }
        Family operator()(const ConcurrenceParams&) const { return Family::Concurrence; }
        Family operator()(const AcinParams&) const { return Family::PptesAcin; }
        Family operator()(const PptAltParams&) const { return Family::PptAlt; }
        Family operator()(const BiseparableParams&) const { return Family::Biseparable; }
        Family operator()(const ProductSepParams&) const { return Family::ProductSep; }
    };
    return std::visit(Visitor{}, params);
}

DensityOperator build_state(const FamilyParams& params) {
    struct Visitor {
        DensityOperator operator()(const WernerParams& w) const { return werner(w); }
        DensityOperator operator()(const ConcurrenceParams& c) const { return concurrence_state(c); }
        DensityOperator operator()(const AcinParams& a) const { return pptes_acin(a); }
        DensityOperator operator()(const PptAltParams&) const { return ppt_alternative(); }
        DensityOperator operator()(const BiseparableParams& b) const {
            require(b.weights.size() == b.bloch_a.size() && b.weights.size() == b.p_bc.size(),
                    "biseparable: component arrays differ in length");
            MixtureSpec spec{{{0}, {1, 2}}, {}};
            for (std::size_t i = 0; i < b.weights.size(); ++i)
                spec.components.push_back(
                    {b.weights[i], {qubit_state(b.bloch_a[i]), werner2({b.p_bc[i], 2, b.signs})}});
            return separable_mixture(spec);
        }
        DensityOperator operator()(const ProductSepParams& ps) const {
            require(!ps.bloch.empty() && ps.weights.size() == ps.bloch.size(),
                    "product-sep: component arrays differ in length");
            const std::size_t n = ps.bloch.front().size();
            MixtureSpec spec;
            for (std::size_t q = 0; q < n; ++q) spec.partition.push_back({static_cast<int>(q)});
            for (std::size_t i = 0; i < ps.weights.size(); ++i) {
                require(ps.bloch[i].size() == n, "product-sep: ragged component");
                MixtureComponent comp{ps.weights[i], {}};
                for (const auto& r : ps.bloch[i]) comp.factors.push_back(qubit_state(r));
                spec.components.push_back(std::move(comp));
            }
            return separable_mixture(spec);
        }
    };
    return std::visit(Visitor{}, params);
}

std::string describe(const FamilyParams& params) {
    std::ostringstream out;
    out.precision(6);
    out << family_name(family_of(params)) << "(";
    if (const auto* w = std::get_if<WernerParams>(&params)) {
        out << "p=" << w->p;
    } else if (const auto* c = std::get_if<ConcurrenceParams>(&params)) {
        out << "theta0=" << c->theta0 << ",theta1=" << c->theta1;
    } else if (const auto* a = std::get_if<AcinParams>(&params)) {
        out << "a=" << a->a << ",b=" << a->b << ",c=" << a->c;
    } else if (const auto* b = std::get_if<BiseparableParams>(&params)) {
        out << "components=" << b->weights.size() << ",p_bc=[";
        for (std::size_t i = 0; i < b->p_bc.size(); ++i) out << (i ? "," : "") << b->p_bc[i];
        out << "]";
    } else if (const auto* ps = std::get_if<ProductSepParams>(&params)) {
        out << "components=" << ps->weights.size();
    }
    out << ")";
    return out.str();
}

} // namespace qflda
