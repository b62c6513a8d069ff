#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gyro/disk.hpp"
#include "gyro/finite.hpp"
#include "gyro/sampling.hpp"

namespace gyro {

/// The Möbius disk as a gyrogroup model.
struct MobiusDisk {
    using element = DiskPoint;

    element identity() const { return {}; }
    element add(const element& a, const element& b) const { return mobius_add(a, b); }
    element neg(const element& a) const { return mobius_neg(a); }
    /// Closed-form rotation, independent of the gyrator identity.
    element gyr(const element& a, const element& b, const element& c) const {
        return mobius_gyr_factor(a, b).rotate(c);
    }
    double residual(const element& a, const element& b) const { return distance(a, b); }
    element sample(SampleStream& s) const { return sample_disk(s); }
    std::string describe(const element& x) const { return to_string(x); }
};

/// Adapts finite structures (FiniteLoopView or FiniteGyrogroup) to the model interface.
template <class Finite>
struct FiniteModel {
    using element = Element;
    const Finite* g;

    element identity() const { return g->identity(); }
    element add(element a, element b) const { return g->add(a, b); }
    element neg(element a) const { return g->neg(a); }
    element gyr(element a, element b, element c) const { return g->gyr(a, b, c); }
    double residual(element a, element b) const { return a == b ? 0.0 : 1.0; }
    element sample(SampleStream& s) const { return s.below(g->order()); }
    std::string describe(element x) const { return std::to_string(x); }
};

template <class M>
concept GyroModel = requires(const M& m, const typename M::element& x, SampleStream& s) {
    { m.identity() } -> std::convertible_to<typename M::element>;
    { m.add(x, x) } -> std::convertible_to<typename M::element>;
    { m.neg(x) } -> std::convertible_to<typename M::element>;
    { m.gyr(x, x, x) } -> std::convertible_to<typename M::element>;
    { m.residual(x, x) } -> std::convertible_to<double>;
    { m.sample(s) } -> std::convertible_to<typename M::element>;
};

/// gyr[a,b]c = (-(a+b)) + (a + (b + c)), computed without consulting any
/// model-specific gyration.
template <GyroModel M>
typename M::element gyr_apply(const M& m, const typename M::element& a, const typename M::element& b,
                              const typename M::element& c) {
    return m.add(m.neg(m.add(a, b)), m.add(a, m.add(b, c)));
}

/// a [+] b = a + gyr[a, -b] b
template <GyroModel M>
typename M::element coadd(const M& m, const typename M::element& a, const typename M::element& b) {
    return m.add(a, gyr_apply(m, a, m.neg(b), b));
}

/// a [-] b = a [+] (-b)
template <GyroModel M>
typename M::element cosub(const M& m, const typename M::element& a, const typename M::element& b) {
    return coadd(m, a, m.neg(b));
}

/// Runtime choice of model, used by the CLI.
using GyroContext = std::variant<MobiusDisk, std::reference_wrapper<const FiniteGyrogroup>,
                                 std::reference_wrapper<const FiniteLoopView>>;

enum class IdentityId {
    Involution,           // -(-a) = a
    LeftCancellation,     // -a + (a + b) = b
    GyratorIdentity,      // gyrator evaluation agrees with the model's gyration
    LeftGyroassociative,  // a + (b + c) = (a + b) + gyr[a,b]c
    LeftLoop,             // gyr[a+b, b] = gyr[a, b]
    InverseOfSum,         // -(a+b) = gyr[a,b](-b - a)
    ChainedDifference,    // (-a+b) + gyr[-a,b](-b+c) = -a + c
    EvenProperty,         // gyr[a,b] = gyr[-a,-b]
    InversiveSymmetry,    // gyr[a,b] gyr[b,a] = id
    CoadditionRecovers,   // a + b = a [+] gyr[a,b]b
    CosubtractionForm,    // a [-] b = a - gyr[a,b]b
    CoadditionAsTranslations,  // x [+] y = x + (-(x - y) + x)
};

inline constexpr std::size_t kIdentityCount = 12;

std::string_view identity_check_id(IdentityId id);

struct IdentityResult {
    IdentityId id = IdentityId::Involution;
    double max_residual = 0.0;
    std::size_t violations = 0;
    /// Smallest sample index whose residual exceeded the tolerance.
    std::optional<std::uint64_t> first_sample;
    std::vector<std::string> witness;  // a, b, c of that sample
};

struct IdentityReport {
    std::string context;  // "mobius" or "finite"
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    double tolerance = 0.0;
    std::vector<IdentityResult> results;

    bool passed() const;
    const IdentityResult& operator[](IdentityId id) const;
};

inline constexpr double kDefaultIdentityTolerance = 1e-9;

template <GyroModel M>
IdentityReport verify_gyro_identities(const M& m, std::uint64_t sample_count, std::uint64_t seed,
                                      double tol);

IdentityReport verify_gyro_identities(const GyroContext& ctx, std::uint64_t sample_count,
                                      std::uint64_t seed, double tol = kDefaultIdentityTolerance);

}  // namespace gyro

#include "gyro/detail/identities.ipp"
