#include "gyro/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gyro {

DyadicRational::DyadicRational(std::uint64_t m, unsigned n) : m_(m), n_(n) {
    if (n > 62 || m == 0 || m > (std::uint64_t{1} << n)) {
        throw std::domain_error("dyadic rational must satisfy 0 < m <= 2^n, n <= 62");
    }
    while (n_ > 0 && m_ % 2 == 0) {
        m_ /= 2;
        --n_;
    }
}

double DyadicRational::value() const { return std::ldexp(static_cast<double>(m_), -static_cast<int>(n_)); }

std::uint64_t DyadicRational::numerator_at(unsigned level) const {
    if (level < n_ || level > 62) throw std::domain_error("dyadic level below lowest-terms level");
    return m_ << (level - n_);
}

std::string DyadicRational::to_string() const {
    return std::to_string(m_) + "/" + std::to_string(std::uint64_t{1} << n_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    const unsigned level = std::max(a.n_, b.n_);
    return a.numerator_at(level) <=> b.numerator_at(level);
}

std::string describe(const Region& r) {
    if (const auto* ball = std::get_if<DiskBall>(&r)) {
        std::ostringstream os;
        os.precision(17);
        os << "ball(" << ball->radius() << ")";
        return os.str();
    }
    return to_string(std::get<Subset>(r));
}

namespace {

double radius_of(const Region& r) { return std::get<DiskBall>(r).radius(); }

Region region_add(const std::optional<FiniteSpace>& space, const Region& a, const Region& b) {
    if (space) return space->group->add(std::get<Subset>(a), std::get<Subset>(b));
    return DiskBall(ball_add_radius(radius_of(a), radius_of(b)));
}

// Smallest open superset.
Subset open_hull(const FiniteTopology& t, Subset s) {
    Subset out;
    for (Element x : s.elements()) out = out | t.minimal_neighborhood(x);
    return out;
}

bool gyr_invariant(const FiniteGyrogroup& g, Subset v, Subset params) {
    const auto ps = params.elements();
    for (Element a : ps) {
        for (Element b : ps) {
            if (!g.gyr(a, b, v).subset_of(v)) return false;
        }
    }
    return true;
}

}  // namespace

UrysohnSchedule build_schedule(double R, std::size_t depth) {
    if (!(R > 0.0 && R < 1.0)) throw std::domain_error("schedule radius must lie in (0, 1)");
    if (depth == 0 || depth > kMaxUrysohnDepth) throw std::domain_error("schedule depth out of range");
    UrysohnSchedule s{DiskBall(R), {}, std::nullopt};
    const double rapidity = std::atanh(R);
    for (std::size_t i = 0; i <= depth; ++i) {
        s.u.emplace_back(DiskBall(std::tanh(std::ldexp(rapidity, -static_cast<int>(i + 1)))));
    }
    if (ball_add_radius(radius_of(s.u[0]), radius_of(s.u[0])) > R + kRadiusTolerance) {
        throw ScheduleError(0, "U_0 + U_0 leaves O");
    }
    for (std::size_t i = 0; i < depth; ++i) {
        const double r = radius_of(s.u[i + 1]);
        if (ball_add_radius(r, r) > radius_of(s.u[i]) + kRadiusTolerance) {
            throw ScheduleError(i + 1, "U_" + std::to_string(i + 1) + " sum leaves U_" + std::to_string(i));
        }
    }
    return s;
}

UrysohnSchedule build_schedule(const FiniteGyrogroup& g, const FiniteTopology& t, Subset O, std::size_t depth) {
    if (t.carrier_size() != g.order()) throw std::invalid_argument("topology and gyrogroup carriers differ");
    if (depth == 0 || depth > kMaxUrysohnDepth) throw std::domain_error("schedule depth out of range");
    const Element e = g.identity();
    if (!O.subset_of(g.carrier()) || !O.contains(e) || !t.is_open(O)) {
        throw std::invalid_argument("target " + to_string(O) + " is not an open set containing e");
    }

    std::vector<Subset> candidates;
    for (Subset w : t.opens()) {
        if (w.contains(e)) candidates.push_back(w);
    }
    std::sort(candidates.begin(), candidates.end(), [](Subset a, Subset b) {
        return a.size() != b.size() ? a.size() > b.size() : canonical_less(a, b);
    });

    UrysohnSchedule s{O, {}, FiniteSpace{&g, &t}};
    Subset params;
    for (Subset w : candidates) {
        if (!g.add(w, w).subset_of(O)) continue;
        const Subset hull = open_hull(t, g.add(w, w));
        if (!gyr_invariant(g, w, hull)) continue;
        s.u.emplace_back(w);
        params = hull;
        break;
    }
    if (s.u.empty()) throw ScheduleError(0, "no open U_0 with U_0 + U_0 inside " + to_string(O));

    for (std::size_t i = 1; i <= depth; ++i) {
        const Subset prev = std::get<Subset>(s.u.back());
        bool found = false;
        for (Subset w : candidates) {
            if (g.add(w, w).subset_of(prev) && gyr_invariant(g, w, params)) {
                s.u.emplace_back(w);
                found = true;
                break;
            }
        }
        if (!found) {
            throw ScheduleError(i, "no open U_" + std::to_string(i) + " with sum inside " + to_string(prev));
        }
    }
    return s;
}

DyadicVFamily::DyadicVFamily(unsigned depth, std::vector<Region> regions, std::optional<FiniteSpace> space)
    : depth_(depth), regions_(std::move(regions)), space_(space) {
    if (regions_.size() != (std::size_t{1} << depth_)) throw std::invalid_argument("family size mismatch");
}

const Region& DyadicVFamily::at(const DyadicRational& r) const {
    if (r.level() > depth_) throw std::out_of_range("dyadic " + r.to_string() + " finer than family depth");
    return regions_[r.numerator_at(depth_) - 1];
}

DyadicVFamily build_vsets(const UrysohnSchedule& s, unsigned depth) {
    if (depth == 0 || depth > s.depth()) {
        throw std::invalid_argument("requested depth " + std::to_string(depth) + " exceeds schedule depth " +
                                    std::to_string(s.depth()));
    }
    std::vector<Region> level{s.u[0]};
    for (unsigned n = 0; n < depth; ++n) {
        std::vector<Region> next;
        next.reserve(level.size() * 2);
        for (std::size_t k = 1; k <= level.size() * 2; ++k) {
            if (k % 2 == 0) {
                next.push_back(level[k / 2 - 1]);
            } else if (k == 1) {
                next.push_back(s.u[n + 1]);
            } else {
                next.push_back(region_add(s.space, level[(k - 1) / 2 - 1], s.u[n + 1]));
            }
        }
        level = std::move(next);
    }
    return DyadicVFamily(depth, std::move(level), s.space);
}

Region rederive_vset(const UrysohnSchedule& s, const DyadicRational& r) {
    if (r.level() > s.depth()) throw std::invalid_argument("dyadic finer than schedule depth");
    if (r.level() == 0) return s.u[0];
    if (r.numerator() == 1) return s.u[r.level()];
    const DyadicRational parent((r.numerator() - 1) / 2, r.level() - 1);
    return region_add(s.space, rederive_vset(s, parent), s.u[r.level()]);
}

namespace {

constexpr std::size_t kMaxFactFailures = 32;

struct Inclusion {
    const DyadicVFamily& fam;

    bool included(const Region& a, const Region& b) const {
        if (fam.is_disk()) return radius_of(a) <= radius_of(b) + kRadiusTolerance;
        return std::get<Subset>(a).subset_of(std::get<Subset>(b));
    }

    bool closure_in_interior(const Region& a, const Region& b) const {
        if (fam.is_disk()) return radius_of(a) < radius_of(b);
        const FiniteTopology& t = *fam.space()->topology;
        return t.closure(std::get<Subset>(a)).subset_of(t.interior(t.closure(std::get<Subset>(b))));
    }
};

}  // namespace

FactsReport verify_vset_facts(const DyadicVFamily& fam) {
    FactsReport rep;
    rep.depth = fam.depth();
    const Inclusion inc{fam};
    auto fail = [&](int fact, DyadicRational r1, DyadicRational r2, std::string detail) {
        ++rep.failed[fact - 1];
        if (rep.failures.size() < kMaxFactFailures) rep.failures.push_back({fact, r1, r2, std::move(detail)});
    };

    for (unsigned n = 1; n <= fam.depth(); ++n) {
        const DyadicRational step(1, n);
        const Region& unit = fam.at(step);
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            const DyadicRational r1(m, n);
            const DyadicRational r2(m + 1, n);
            const Region sum = region_add(fam.space(), fam.at(r1), unit);
            ++rep.checked[0];
            if (!inc.included(sum, fam.at(r2))) {
                fail(1, r1, r2, describe(sum) + " not inside " + describe(fam.at(r2)));
            }
        }
    }

    const auto& finest = fam.finest();
    for (std::size_t k = 1; k < finest.size(); ++k) {
        const DyadicRational r1(k, fam.depth());
        const DyadicRational r2(k + 1, fam.depth());
        ++rep.checked[1];
        if (!inc.included(finest[k - 1], finest[k])) {
            fail(2, r1, r2, describe(finest[k - 1]) + " not inside " + describe(finest[k]));
        }
        ++rep.checked[2];
        if (!inc.closure_in_interior(finest[k - 1], finest[k])) {
            fail(3, r1, r2, "closure of " + describe(finest[k - 1]) + " not inside interior of closure of " +
                                describe(finest[k]));
        }
    }
    return rep;
}

double urysohn_eval(const DyadicVFamily& fam, const DiskPoint& y) {
    if (!fam.is_disk()) throw std::invalid_argument("disk point evaluated on a finite family");
    const auto& finest = fam.finest();
    const double s = y.modulus();
    // Radii are non-decreasing in the index; find the first closed ball holding y.
    const auto it = std::partition_point(finest.begin(), finest.end(),
                                         [s](const Region& r) { return radius_of(r) < s; });
    if (it == finest.end()) return 1.0;
    const auto k = static_cast<std::uint64_t>(it - finest.begin()) + 1;
    return DyadicRational(k, fam.depth()).value();
}

double urysohn_eval(const DyadicVFamily& fam, Element y) {
    if (fam.is_disk()) throw std::invalid_argument("finite element evaluated on a disk family");
    const FiniteTopology& t = *fam.space()->topology;
    if (y >= t.carrier_size()) throw std::domain_error("element outside the carrier");
    const auto& finest = fam.finest();
    for (std::size_t k = 0; k < finest.size(); ++k) {
        if (t.closure(std::get<Subset>(finest[k])).contains(y)) {
            return DyadicRational(k + 1, fam.depth()).value();
        }
    }
    return 1.0;
}

double urysohn_oracle(double R, const DiskPoint& y) {
    if (!(R > 0.0 && R < 1.0)) throw std::domain_error("oracle radius must lie in (0, 1)");
    return std::min(1.0, std::atanh(y.modulus()) / (std::atanh(R) / 2.0));
}

std::vector<double> radial_grid() {
    std::vector<double> out;
    for (int k = 0; k < 20; ++k) out.push_back(0.05 * k);
    return out;
}

std::vector<GridRow> evaluate_grid(const DyadicVFamily& fam, double R, const std::vector<double>& radii) {
    std::vector<GridRow> rows;
    for (double t : radii) {
        const DiskPoint y(t, 0.0);
        GridRow row{t, urysohn_eval(fam, y), urysohn_oracle(R, y), 0.0};
        row.abs_error = std::abs(row.eval - row.oracle);
        rows.push_back(row);
    }
    return rows;
}

std::string grid_csv(const std::vector<GridRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "radius,eval,oracle,abs_error\n";
    for (const auto& r : rows) os << r.radius << ',' << r.eval << ',' << r.oracle << ',' << r.abs_error << '\n';
    return os.str();
}

ContinuityCertificate continuity_certificate(double R, const std::vector<double>& radii, double tol) {
    ContinuityCertificate c;
    c.worst_excess = -std::numeric_limits<double>::infinity();
    const double rho0 = std::atanh(R) / 2.0;
    for (std::size_t k = 1; k < radii.size(); ++k) {
        const double t1 = radii[k - 1];
        const double t2 = radii[k];
        const double inc = std::abs(urysohn_oracle(R, DiskPoint(t2, 0.0)) - urysohn_oracle(R, DiskPoint(t1, 0.0)));
        // Slope of artanh(t)/rho0 is increasing, so its value at t2 bounds the chord.
        const double bound = std::abs(t2 - t1) / ((1.0 - t2 * t2) * rho0);
        c.worst_excess = std::max(c.worst_excess, inc - bound);
    }
    c.holds = !(c.worst_excess > tol);
    return c;
}

namespace {

double choose_radius(double d) { return d > 0.8 ? 0.8 : d / 2.0; }

}  // namespace

SeparationDemo separation_demo(const DiskPoint& x, const DiskTarget& target, unsigned depth) {
    SeparationDemo demo;
    demo.depth = depth;
    const DiskPoint nx = mobius_neg(x);
    double d = 0.0;
    std::vector<std::pair<std::string, DiskPoint>> points;
    if (const auto* y = std::get_if<DiskPoint>(&target)) {
        demo.kind = "hausdorff";
        d = mobius_add(nx, *y).modulus();
        if (d == 0.0) throw std::invalid_argument("degenerate input: x equals the target");
        points.emplace_back(to_string(*y), *y);
    } else {
        demo.kind = "regular";
        const double rho = std::get<ClosedExterior>(target).rho;
        if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("closed exterior radius must lie in (0, 1)");
        const double s = x.modulus();
        if (s >= rho) throw std::invalid_argument("degenerate input: x lies in the target set");
        // Nearest point of {|z| >= rho} to x in the translation-invariant metric.
        d = (rho - s) / (1.0 - rho * s);
        for (double t : {rho, (rho + 1.0) / 2.0}) {
            for (int k = 0; k < 8; ++k) {
                const DiskPoint z(std::polar(t, k * std::numbers::pi / 4.0));
                points.emplace_back(to_string(z), z);
            }
        }
    }
    const double R = choose_radius(d);
    demo.radius = R;
    const DyadicVFamily fam = build_vsets(build_schedule(R, depth), depth);
    demo.f_x = 0.0;
    demo.f_x_at_depth = urysohn_eval(fam, DiskPoint{});
    demo.f_target = 1.0;
    for (const auto& [label, z] : points) {
        const double v = urysohn_eval(fam, mobius_add(nx, z));
        demo.probes.emplace_back(label, v);
        demo.f_target = std::min(demo.f_target, v);
    }
    demo.separated = demo.f_target == 1.0;
    return demo;
}

SeparationDemo separation_demo(const FiniteGyrogroup& g, const FiniteTopology& t, Element x,
                               const FiniteTarget& target, unsigned depth) {
    if (t.carrier_size() != g.order()) throw std::invalid_argument("topology and gyrogroup carriers differ");
    if (x >= g.order()) throw std::domain_error("element outside the carrier");
    SeparationDemo demo;
    demo.depth = depth;

    Subset targets;
    Property needed = Property::Hausdorff;
    if (const auto* y = std::get_if<Element>(&target)) {
        if (*y >= g.order()) throw std::domain_error("element outside the carrier");
        if (*y == x) throw std::invalid_argument("degenerate input: x equals the target");
        targets = Subset::singleton(*y);
        demo.kind = "hausdorff";
    } else {
        targets = std::get<Subset>(target);
        if (!targets.subset_of(g.carrier()) || !t.is_closed(targets)) {
            throw std::invalid_argument("target " + to_string(targets) + " is not a closed set");
        }
        if (targets.contains(x)) throw std::invalid_argument("degenerate input: x lies in the target set");
        needed = Property::Regular;
        demo.kind = "regular";
    }

    const PropertyReport props = check_topology_properties(g, t, {needed});
    if (!props.verdicts.front().passed) {
        throw SeparationRefused(std::string("space is not ") + std::string(property_id(needed)).substr(9) +
                                    "; no separating function exists",
                                props.verdicts.front().witness);
    }

    // Left translation by -x moves x to e; N(e) has the smallest closure among neighbourhoods of e.
    const Element e = g.identity();
    const Subset moved = g.add(g.neg(x), targets);
    const Subset O = t.minimal_neighborhood(e);
    if (!(t.closure(O) & moved).empty()) {
        throw SeparationRefused("closure of every neighbourhood of e meets the translated target",
                                {{"O", to_string(O)}, {"closure", to_string(t.closure(O))}});
    }
    demo.neighborhood = O;

    UrysohnSchedule sched = [&] {
        try {
            return build_schedule(g, t, O, depth);
        } catch (const ScheduleError& err) {
            throw SeparationRefused(err.what(), {{"level", std::to_string(err.level())}});
        }
    }();
    const DyadicVFamily fam = build_vsets(sched, depth);
    demo.f_x = 0.0;
    demo.f_x_at_depth = urysohn_eval(fam, e);
    demo.f_target = 1.0;
    for (Element z : targets.elements()) {
        const double v = urysohn_eval(fam, g.add(g.neg(x), z));
        demo.probes.emplace_back(std::to_string(z), v);
        demo.f_target = std::min(demo.f_target, v);
    }
    demo.separated = demo.f_target == 1.0;
    return demo;
}

}  // namespace gyro
