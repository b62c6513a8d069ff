#include "gyro/mobius_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gyro/gyrogroup.hpp"

namespace gyro {

DiskBall::DiskBall(double radius) : radius_(radius) {
    if (!(radius > 0.0 && radius <= 1.0)) throw std::domain_error("ball radius must lie in (0, 1]");
}

DiskBall disk_base(std::uint64_t n) {
    if (n == 0) throw std::domain_error("base index n must be positive");
    return DiskBall(1.0 / static_cast<double>(n));
}

double ball_add_radius(double r, double s) {
    if (!(r > 0.0 && r < 1.0 && s > 0.0 && s < 1.0)) {
        throw std::domain_error("ball_add_radius expects radii in (0, 1)");
    }
    return (r + s) / (1.0 + r * s);
}

std::string_view condition_name(DiskCondition c) {
    switch (c) {
        case DiskCondition::C1: return "1";
        case DiskCondition::C2: return "2";
        case DiskCondition::C3: return "3";
        case DiskCondition::C4: return "4";
        case DiskCondition::C5: return "5";
        case DiskCondition::C6: return "6";
        case DiskCondition::C7: return "7";
        case DiskCondition::C8: return "8";
        case DiskCondition::C9: return "9";
        case DiskCondition::Equivalence: return "equiv";
    }
    return "?";
}

DiskCondition parse_disk_condition(std::string_view s) {
    if (s == "equiv") return DiskCondition::Equivalence;
    if (s.size() == 1 && s[0] >= '1' && s[0] <= '9') return static_cast<DiskCondition>(s[0] - '0');
    throw std::invalid_argument("unknown condition '" + std::string(s) + "'");
}

namespace {

const MobiusDisk kDisk{};

std::uint64_t floor_plus_one(double t, const char* what) {
    if (!std::isfinite(t) || t <= 0.0 || t >= 0x1.0p53) {
        throw std::domain_error(std::string(what) + ": witness intermediate " + std::to_string(t) +
                                " is not a positive finite value");
    }
    return static_cast<std::uint64_t>(std::floor(t)) + 1;
}

template <class T>
const T& require(const std::optional<T>& v, const char* what) {
    if (!v) throw std::domain_error(std::string("missing parameter: ") + what);
    return *v;
}

double base_radius(std::uint64_t n) { return disk_base(n).radius(); }

}  // namespace

std::uint64_t example45_witness(DiskCondition c, const WitnessParams& p) {
    if (p.n == 0) throw std::domain_error("base index n must be positive");
    const double n = static_cast<double>(p.n);
    switch (c) {
        case DiskCondition::C1:
            return floor_plus_one(n + std::sqrt(n * n + 1.0), "condition 1");
        case DiskCondition::C2: {
            const double s = require(p.x, "x").modulus();
            if (!(s < 1.0 / n)) throw std::domain_error("condition 2 requires |x| < 1/n");
            const double inv_N = (1.0 / n - s) / (1.0 + s / n);
            return floor_plus_one(1.0 / inv_N, "condition 2");
        }
        case DiskCondition::C3: {
            const double s = require(p.x, "x").modulus();
            const double s2 = s * s;
            const double inv_T = (1.0 / n) * (1.0 - s2) / std::sqrt(s2 * s2 + (2.0 - 4.0 / (n * n)) * s2 + 1.0);
            return floor_plus_one(1.0 / inv_T, "condition 3");
        }
        case DiskCondition::C7: {
            const double s = require(p.v, "v").modulus();
            if (s == 0.0) throw std::domain_error("condition 7 requires v != 0");
            return floor_plus_one(s / (std::sqrt(1.0 + s * s) - 1.0), "condition 7");
        }
        case DiskCondition::C8: {
            const double s = require(p.x, "x").modulus();
            const double s2 = s * s;
            const double q = (1.0 - s2) * (1.0 - s2);
            const double A = q * s2;
            const double B = q * (1.0 - s2 / (n * n) + 2.0 * s / (3.0 * n));
            const double C = q / (n * n) * (2.0 * s / (3.0 * n) - 1.0);
            double inv_T_sq = 0.0;
            if (A == 0.0) {
                // x = 0: the quadratic in |y|^2 degenerates to B t + C < 0.
                inv_T_sq = -C / B;
            } else {
                const double disc = B * B - 4.0 * A * C;
                if (disc < 0.0) throw std::domain_error("condition 8: negative discriminant");
                inv_T_sq = (-B + std::sqrt(disc)) / (2.0 * A);
            }
            if (!(inv_T_sq > 0.0)) throw std::domain_error("condition 8: non-positive root");
            const std::uint64_t m = floor_plus_one(1.0 / std::sqrt(inv_T_sq), "condition 8");
            return std::max(m, 3 * p.n);
        }
        case DiskCondition::Equivalence: {
            const double r = require(p.r, "r");
            if (!(r > 0.0 && r < 1.0)) throw std::domain_error("r must lie in (0, 1)");
            const double s = require(p.a, "a").modulus();
            if (!(s < r)) throw std::domain_error("equivalence witness requires |a| < r");
            const double inv_T = (-s * (1.0 - r * r) + r * (1.0 - s * s)) / (1.0 - r * r * s * s);
            return floor_plus_one(1.0 / inv_T, "equivalence");
        }
        default:
            throw std::domain_error("condition " + std::string(condition_name(c)) +
                                    " has a direct witness, not a formula");
    }
}

std::uint64_t certification_witness(DiskCondition c, const WitnessParams& p) {
    if (p.forced_witness) {
        if (*p.forced_witness == 0) throw std::domain_error("forced witness must be positive");
        return *p.forced_witness;
    }
    if (p.n == 0) throw std::domain_error("base index n must be positive");
    switch (c) {
        case DiskCondition::C4: return std::max(require(p.m, "m"), p.n) + 1;
        case DiskCondition::C5:
        case DiskCondition::C6: return p.n + 1;
        case DiskCondition::C9: return p.n;
        default: return example45_witness(c, p);
    }
}

DiskPoint coadd_left_inverse(const DiskPoint& x, const DiskPoint& z) {
    // x [+] y = L_x(R_x(-(L_x(-y)))); undo each map in turn.
    const DiskPoint w1 = mobius_add(mobius_neg(x), z);
    const DiskPoint w2 = cosub(kDisk, w1, x);  // (w [-] x) + x = w
    const DiskPoint w3 = mobius_neg(w2);
    const DiskPoint w4 = mobius_add(mobius_neg(x), w3);
    return mobius_neg(w4);
}

std::vector<DiskPoint> certification_grid(std::uint64_t n) {
    if (n == 0) throw std::domain_error("base index n must be positive");
    std::vector<DiskPoint> out{DiskPoint{}};
    const double nn = static_cast<double>(n);
    for (double radius : {1.0 / (2.0 * nn), 0.9 / nn}) {
        for (int k = 0; k < 8; ++k) {
            out.emplace_back(std::polar(radius, k * std::numbers::pi / 4.0));
        }
    }
    return out;
}

VerificationReport sample_verify(DiskCondition c, const WitnessParams& p, std::uint64_t samples,
                                 std::uint64_t seed, double tol) {
    if (samples == 0) throw std::invalid_argument("samples must be positive");
    VerificationReport rep;
    rep.condition = c;
    rep.params = p;
    rep.samples = samples;
    rep.seed = seed;
    rep.tolerance = tol;
    rep.witness = certification_witness(c, p);
    rep.worst_margin = -std::numeric_limits<double>::infinity();

    const double target = c == DiskCondition::Equivalence ? require(p.r, "r") : base_radius(p.n);
    const double source = base_radius(rep.witness);

    // Exact radius comparisons where both sides are centred balls.
    switch (c) {
        case DiskCondition::C1:
            rep.exact = ExactCheck{source < 1.0 ? ball_add_radius(source, source) : 1.0, target, false};
            break;
        case DiskCondition::C4: {
            const double other = base_radius(require(p.m, "m"));
            rep.exact = ExactCheck{source, std::min(target, other), false};
            break;
        }
        case DiskCondition::C5:
        case DiskCondition::C9:
            rep.exact = ExactCheck{source, target, false};
            break;
        default:
            break;
    }
    if (rep.exact) rep.exact->holds = rep.exact->image_radius <= rep.exact->target_radius;

    // Per-condition fixed inputs, validated up front.
    std::optional<DiskPoint> x = p.x;
    if (c == DiskCondition::C2 || c == DiskCondition::C3 || c == DiskCondition::C8) require(p.x, "x");
    double v_mod = 0.0;
    if (c == DiskCondition::C7) v_mod = require(p.v, "v").modulus();
    if (c == DiskCondition::Equivalence) require(p.a, "a");

    for (std::uint64_t i = 0; i < samples; ++i) {
        SampleStream s(seed, i);
        SampleRecord rec;
        rec.index = i;
        double image = 0.0;
        double bound = target;
        switch (c) {
            case DiskCondition::C1: {
                const auto a = sample_ball_biased(s, source, i);
                const auto b = sample_ball_biased(s, source, i);
                rec.points = {a, b};
                image = mobius_add(a, b).modulus();
                break;
            }
            case DiskCondition::C2: {
                const auto y = sample_ball_biased(s, source, i);
                rec.points = {*x, y};
                image = mobius_add(*x, y).modulus();
                break;
            }
            case DiskCondition::C3: {
                const auto v = sample_ball_biased(s, source, i);
                rec.points = {*x, v};
                image = mobius_add(mobius_neg(*x), mobius_add(v, *x)).modulus();
                break;
            }
            case DiskCondition::C4: {
                const auto w = sample_ball_biased(s, source, i);
                rec.points = {w};
                image = w.modulus();
                bound = std::min(target, base_radius(*p.m));
                break;
            }
            case DiskCondition::C5: {
                const DiskPoint a = p.a ? *p.a : sample_disk(s);
                const DiskPoint b = p.x ? *p.x : sample_disk(s);
                const auto v = sample_ball_biased(s, source, i);
                rec.points = {a, b, v};
                image = gyr_apply(kDisk, a, b, v).modulus();
                break;
            }
            case DiskCondition::C6: {
                const DiskPoint b = p.x ? *p.x : sample_disk(s);
                const auto v = sample_ball_biased(s, source, i);
                const auto w = sample_ball_biased(s, source, i);
                rec.points = {b, v, w};
                image = gyr_apply(kDisk, v, b, w).modulus();
                break;
            }
            case DiskCondition::C7: {
                const auto a = sample_ball_biased(s, source, i);
                const auto b = sample_ball_biased(s, source, i);
                rec.points = {a, b};
                image = cosub(kDisk, a, b).modulus();
                bound = v_mod;
                break;
            }
            case DiskCondition::C8: {
                // Part one: -x + (y [+] x) in U_n. Part two: x + y in x [+] U_n.
                const auto y = sample_ball_biased(s, source, i);
                rec.points = {*x, y};
                const double first = mobius_add(mobius_neg(*x), coadd(kDisk, y, *x)).modulus();
                const DiskPoint z = mobius_add(*x, y);
                const DiskPoint u = coadd_left_inverse(*x, z);
                const double roundtrip = distance(coadd(kDisk, *x, u), z);
                const double second = roundtrip <= 1e-9 ? u.modulus() : std::numeric_limits<double>::infinity();
                image = std::max(first, second);
                break;
            }
            case DiskCondition::C9: {
                const auto v = sample_ball_biased(s, source, i);
                rec.points = {v};
                image = mobius_neg(v).modulus();
                break;
            }
            case DiskCondition::Equivalence: {
                const auto u = sample_ball_biased(s, source, i);
                rec.points = {*p.a, u};
                image = mobius_add(*p.a, u).modulus();
                break;
            }
        }
        rec.image_modulus = image;
        rec.bound = bound;
        rec.margin = image - bound;
        rep.sup_observed = std::max(rep.sup_observed, image);
        rep.worst_margin = std::max(rep.worst_margin, rec.margin);
        if (rec.margin > tol) {
            ++rep.violations;
            if (!rep.first_violation) rep.first_violation = rec;
            if (rep.violating.size() < kMaxRecordedViolations) rep.violating.push_back(std::move(rec));
        }
    }
    return rep;
}

std::string violations_csv(const VerificationReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "index,points,image_modulus,bound,margin\n";
    for (const auto& rec : r.violating) {
        os << rec.index << ",\"";
        for (std::size_t k = 0; k < rec.points.size(); ++k) {
            if (k) os << ';';
            os << to_string(rec.points[k]);
        }
        os << "\"," << rec.image_modulus << ',' << rec.bound << ',' << rec.margin << '\n';
    }
    return os.str();
}

}  // namespace gyro
