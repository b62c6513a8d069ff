#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gyro/finite.hpp"
#include "gyro/mobius_analytic.hpp"
#include "gyro/topology.hpp"
#include "gyro/witness.hpp"

namespace gyro {

/// m / 2^n in (0, 1], kept in lowest terms.
class DyadicRational {
public:
    /// Throws std::domain_error unless 0 < m <= 2^n and n <= 62.
    DyadicRational(std::uint64_t m, unsigned n);

    std::uint64_t numerator() const { return m_; }
    unsigned level() const { return n_; }
    double value() const;
    /// Numerator of the same value written over 2^level; requires level >= this->level().
    std::uint64_t numerator_at(unsigned level) const;
    std::string to_string() const;

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

private:
    std::uint64_t m_;
    unsigned n_;
};

/// A centred disk ball or an explicit subset of a finite carrier.
using Region = std::variant<DiskBall, Subset>;

std::string describe(const Region& r);

struct FiniteSpace {
    const FiniteGyrogroup* group;
    const FiniteTopology* topology;
};

/// U_0, ..., U_depth with U_{i+1} + U_{i+1} inside U_i and U_0 + U_0 inside O.
struct UrysohnSchedule {
    Region target;
    std::vector<Region> u;
    std::optional<FiniteSpace> space;  // set for finite schedules

    std::size_t depth() const { return u.size() - 1; }
};

class ScheduleError : public std::runtime_error {
public:
    ScheduleError(std::size_t level, const std::string& what)
        : std::runtime_error(what), level_(level) {}
    /// Index i of the U_i that could not be chosen.
    std::size_t level() const { return level_; }

private:
    std::size_t level_;
};

inline constexpr unsigned kMaxUrysohnDepth = 20;

/// Rapidity halving r_i = tanh(artanh(R) / 2^{i+1}). Throws std::domain_error
/// unless 0 < R < 1 and 1 <= depth <= kMaxUrysohnDepth.
UrysohnSchedule build_schedule(double R, std::size_t depth);

/// Greedy chain on a finite space: each U_i is the largest open neighbourhood
/// of e (ties broken canonically) with U_i + U_i inside the previous set and
/// gyr[a,b]U_i inside U_i for a, b in the smallest open set holding U_0 + U_0.
/// Throws ScheduleError naming the blocking level, std::invalid_argument if O
/// is not an open set containing e.
UrysohnSchedule build_schedule(const FiniteGyrogroup& g, const FiniteTopology& t, Subset O, std::size_t depth);

/// V(r) for every dyadic r of level <= depth.
class DyadicVFamily {
public:
    DyadicVFamily(unsigned depth, std::vector<Region> regions, std::optional<FiniteSpace> space);

    unsigned depth() const { return depth_; }
    const Region& at(const DyadicRational& r) const;
    /// V(k / 2^depth) for k = 1..2^depth.
    const std::vector<Region>& finest() const { return regions_; }
    const std::optional<FiniteSpace>& space() const { return space_; }
    bool is_disk() const { return !space_; }

private:
    unsigned depth_;
    std::vector<Region> regions_;
    std::optional<FiniteSpace> space_;
};

/// Throws std::invalid_argument when depth exceeds the schedule depth or is zero.
DyadicVFamily build_vsets(const UrysohnSchedule& s, unsigned depth);

/// V(r) recomputed by descending the recursion, independent of any family.
Region rederive_vset(const UrysohnSchedule& s, const DyadicRational& r);

struct FactFailure {
    int fact = 0;  // 1..3
    DyadicRational r1{1, 0};
    DyadicRational r2{1, 0};
    std::string detail;
};

struct FactsReport {
    unsigned depth = 0;
    std::uint64_t checked[3] = {0, 0, 0};
    std::uint64_t failed[3] = {0, 0, 0};
    std::vector<FactFailure> failures;  // first few, in scan order

    bool fact_passed(int fact) const { return failed[fact - 1] == 0; }
    bool passed() const { return failed[0] == 0 && failed[1] == 0 && failed[2] == 0; }
};

/// Fact (1): V(m/2^n) + V(1/2^n) inside V((m+1)/2^n), every n <= depth, m < 2^n.
/// Facts (2), (3): monotonicity and closure-in-interior for consecutive
/// dyadics at the finest level, which implies every pair by transitivity.
FactsReport verify_vset_facts(const DyadicVFamily& fam);

/// Radius comparisons in which equal balls count as included.
inline constexpr double kRadiusTolerance = 1e-12;

/// Smallest dyadic r of level <= depth with y in cl V(r), or 1 if none.
double urysohn_eval(const DyadicVFamily& fam, const DiskPoint& y);
double urysohn_eval(const DyadicVFamily& fam, Element y);

/// min(1, artanh|y| / (artanh(R) / 2)); throws std::domain_error unless 0 < R < 1.
double urysohn_oracle(double R, const DiskPoint& y);

/// Radii 0, 0.05, ..., 0.95.
std::vector<double> radial_grid();

struct GridRow {
    double radius = 0.0;
    double eval = 0.0;
    double oracle = 0.0;
    double abs_error = 0.0;
};

std::vector<GridRow> evaluate_grid(const DyadicVFamily& fam, double R, const std::vector<double>& radii);
/// Header "radius,eval,oracle,abs_error".
std::string grid_csv(const std::vector<GridRow>& rows);

struct ContinuityCertificate {
    /// Largest |f(t2) - f(t1)| - (t2 - t1) f'(t2) over consecutive grid radii.
    double worst_excess = 0.0;
    bool holds = true;
};

/// Oracle increments against the derivative bound at the larger radius.
ContinuityCertificate continuity_certificate(double R, const std::vector<double>& radii, double tol = 1e-6);

/// {|z| >= rho}, the closed complement of the open ball of radius rho.
struct ClosedExterior {
    double rho;
};

using DiskTarget = std::variant<DiskPoint, ClosedExterior>;
using FiniteTarget = std::variant<Element, Subset>;

struct SeparationDemo {
    std::string kind;  // "hausdorff" or "regular"
    std::optional<double> radius;       // disk: chosen O radius
    std::optional<Subset> neighborhood;  // finite: chosen O (at e)
    unsigned depth = 0;
    double f_x = 0.0;        // exact value: e lies in every V(r)
    double f_x_at_depth = 0.0;
    double f_target = 0.0;   // minimum of f over the probed target points
    std::vector<std::pair<std::string, double>> probes;
    bool separated = false;
};

class SeparationRefused : public std::runtime_error {
public:
    SeparationRefused(const std::string& what, Witness w)
        : std::runtime_error(what), witness_(std::move(w)) {}
    const Witness& witness() const { return witness_; }

private:
    Witness witness_;
};

/// Disk demo, reduced to x = 0 by left translation. O has radius 0.8 when the
/// target is farther than 0.8 from x, half the distance otherwise. Throws
/// std::invalid_argument when the target contains x.
SeparationDemo separation_demo(const DiskPoint& x, const DiskTarget& target, unsigned depth = 10);

/// Finite demo. Throws SeparationRefused when the space is not Hausdorff
/// (point target) or not regular (closed-set target), or no schedule exists;
/// std::invalid_argument on degenerate input or a non-closed target set.
SeparationDemo separation_demo(const FiniteGyrogroup& g, const FiniteTopology& t, Element x,
                               const FiniteTarget& target, unsigned depth = 10);

}  // namespace gyro
