#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gyro/disk.hpp"
#include "gyro/sampling.hpp"

namespace gyro {

/// Origin-centred open ball {|z| < radius}, 0 < radius <= 1.
class DiskBall {
public:
    explicit DiskBall(double radius);
    double radius() const { return radius_; }
    bool contains(const DiskPoint& p) const { return p.modulus() < radius_; }

private:
    double radius_;
};

/// U_n = {|z| < 1/n}; throws std::domain_error for n = 0.
DiskBall disk_base(std::uint64_t n);

/// Radius of {a + b : |a| < r, |b| < s}, i.e. (r + s) / (1 + r s).
double ball_add_radius(double r, double s);

/// The neighbourhood-base conditions certified on the disk. `Equivalence`
/// is the witness showing the generated topology is the Euclidean one.
enum class DiskCondition { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9, Equivalence };

std::string_view condition_name(DiskCondition c);
/// Accepts "1".."9" and "equiv".
DiskCondition parse_disk_condition(std::string_view s);

struct WitnessParams {
    std::uint64_t n = 1;
    std::optional<DiskPoint> x;
    std::optional<DiskPoint> v;
    std::optional<double> r;
    std::optional<DiskPoint> a;
    /// Second base index, used by condition (4).
    std::optional<std::uint64_t> m;
    /// Replaces the computed witness; used to probe deliberately weak choices.
    std::optional<std::uint64_t> forced_witness;
};

/// Witness index from the closed-form formulas for conditions 1, 2, 3, 7, 8
/// and the equivalence witness. Floor brackets are mathematical floor.
/// Throws std::domain_error on missing or inadmissible parameters.
std::uint64_t example45_witness(DiskCondition c, const WitnessParams& p);

/// Witness actually used by sample_verify: the formula for 1, 2, 3, 7, 8,
/// equivalence; max(m, n) + 1 for 4; n + 1 for 5 and 6; n for 9.
std::uint64_t certification_witness(DiskCondition c, const WitnessParams& p);

struct SampleRecord {
    std::uint64_t index = 0;
    std::vector<DiskPoint> points;
    double image_modulus = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct ExactCheck {
    double image_radius = 0.0;
    double target_radius = 0.0;
    bool holds = true;
};

struct VerificationReport {
    DiskCondition condition = DiskCondition::C1;
    WitnessParams params;
    std::uint64_t witness = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::uint64_t violations = 0;
    /// Largest (observed modulus - bound); negative when every sample is inside.
    double worst_margin = -1.0;
    double sup_observed = 0.0;
    std::optional<SampleRecord> first_violation;
    std::vector<SampleRecord> violating;  // first kMaxRecordedViolations
    std::optional<ExactCheck> exact;

    bool passed() const { return violations == 0 && (!exact || exact->holds); }
};

inline constexpr double kContainmentTolerance = 1e-12;
inline constexpr std::size_t kMaxRecordedViolations = 256;

VerificationReport sample_verify(DiskCondition c, const WitnessParams& p, std::uint64_t samples,
                                 std::uint64_t seed = kDefaultSeed, double tol = kContainmentTolerance);

/// CSV rows of the recorded violating samples.
std::string violations_csv(const VerificationReport& r);

/// The 17 grid points used for certification: 0 and radii 1/(2n), 0.9/n at
/// angles 0, 45, ..., 315 degrees.
std::vector<DiskPoint> certification_grid(std::uint64_t n);

/// Inverse of y -> x [+] y, via x [+] y = x + (-(x - y) + x).
DiskPoint coadd_left_inverse(const DiskPoint& x, const DiskPoint& z);

}  // namespace gyro
