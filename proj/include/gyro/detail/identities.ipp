// Implementation of verify_gyro_identities for any GyroModel.

#include <algorithm>
#include <array>

namespace gyro {

template <GyroModel M>
IdentityReport verify_gyro_identities(const M& m, std::uint64_t sample_count, std::uint64_t seed,
                                      double tol) {
    if (sample_count == 0) throw std::invalid_argument("sample_count must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    IdentityReport report;
    report.seed = seed;
    report.samples = sample_count;
    report.tolerance = tol;
    for (std::size_t k = 0; k < kIdentityCount; ++k) {
        IdentityResult r;
        r.id = static_cast<IdentityId>(k);
        report.results.push_back(std::move(r));
    }

    std::array<double, kIdentityCount> res{};
    for (std::uint64_t i = 0; i < sample_count; ++i) {
        SampleStream s(seed, i);
        const auto a = m.sample(s);
        const auto b = m.sample(s);
        const auto c = m.sample(s);

        const auto na = m.neg(a);
        const auto nb = m.neg(b);
        const auto ab = m.add(a, b);
        const auto g_ab_c = gyr_apply(m, a, b, c);

        auto put = [&](IdentityId id, double r) { res[static_cast<std::size_t>(id)] = r; };

        put(IdentityId::Involution, m.residual(m.neg(na), a));
        put(IdentityId::LeftCancellation, m.residual(m.add(na, m.add(a, b)), b));
        put(IdentityId::GyratorIdentity, m.residual(g_ab_c, m.gyr(a, b, c)));
        put(IdentityId::LeftGyroassociative, m.residual(m.add(a, m.add(b, c)), m.add(ab, g_ab_c)));
        put(IdentityId::LeftLoop, m.residual(gyr_apply(m, ab, b, c), g_ab_c));
        put(IdentityId::InverseOfSum, m.residual(m.neg(ab), gyr_apply(m, a, b, m.add(nb, na))));
        put(IdentityId::ChainedDifference,
            m.residual(m.add(m.add(na, b), gyr_apply(m, na, b, m.add(nb, c))), m.add(na, c)));
        put(IdentityId::EvenProperty, m.residual(g_ab_c, gyr_apply(m, na, nb, c)));
        put(IdentityId::InversiveSymmetry, m.residual(gyr_apply(m, a, b, gyr_apply(m, b, a, c)), c));
        put(IdentityId::CoadditionRecovers, m.residual(ab, coadd(m, a, gyr_apply(m, a, b, b))));
        put(IdentityId::CosubtractionForm,
            m.residual(cosub(m, a, b), m.add(a, m.neg(gyr_apply(m, a, b, b)))));
        put(IdentityId::CoadditionAsTranslations,
            m.residual(coadd(m, a, b), m.add(a, m.add(m.neg(m.add(a, nb)), a))));

        for (std::size_t k = 0; k < kIdentityCount; ++k) {
            auto& r = report.results[k];
            r.max_residual = std::max(r.max_residual, res[k]);
            if (!(res[k] <= tol)) {
                ++r.violations;
                if (!r.first_sample) {
                    r.first_sample = i;
                    r.witness = {m.describe(a), m.describe(b), m.describe(c)};
                }
            }
        }
    }
    return report;
}

}  // namespace gyro
