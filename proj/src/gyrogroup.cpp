#include "gyro/gyrogroup.hpp"

namespace gyro {

std::string_view identity_check_id(IdentityId id) {
    switch (id) {
        case IdentityId::Involution: return "identity.involution_of_inversion";
        case IdentityId::LeftCancellation: return "identity.left_cancellation";
        case IdentityId::GyratorIdentity: return "identity.gyrator";
        case IdentityId::LeftGyroassociative: return "axiom.left_gyroassociative";
        case IdentityId::LeftLoop: return "axiom.left_loop";
        case IdentityId::InverseOfSum: return "identity.inverse_of_sum";
        case IdentityId::ChainedDifference: return "identity.chained_difference";
        case IdentityId::EvenProperty: return "identity.even_property";
        case IdentityId::InversiveSymmetry: return "identity.inversive_symmetry";
        case IdentityId::CoadditionRecovers: return "coaddition.recovers_addition";
        case IdentityId::CosubtractionForm: return "coaddition.cosubtraction_form";
        case IdentityId::CoadditionAsTranslations: return "coaddition.translation_form";
    }
    return "identity.unknown";
}

bool IdentityReport::passed() const {
    for (const auto& r : results) {
        if (r.violations != 0) return false;
    }
    return true;
}

const IdentityResult& IdentityReport::operator[](IdentityId id) const {
    return results.at(static_cast<std::size_t>(id));
}

IdentityReport verify_gyro_identities(const GyroContext& ctx, std::uint64_t sample_count,
                                      std::uint64_t seed, double tol) {
    return std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, MobiusDisk>) {
                auto r = verify_gyro_identities(c, sample_count, seed, tol);
                r.context = "mobius";
                return r;
            } else {
                using Finite = std::decay_t<decltype(c.get())>;
                auto r = verify_gyro_identities(FiniteModel<Finite>{&c.get()}, sample_count, seed, tol);
                r.context = "finite";
                return r;
            }
        },
        ctx);
}

}  // namespace gyro
