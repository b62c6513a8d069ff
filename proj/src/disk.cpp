#include "gyro/disk.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace gyro {

DiskPoint::DiskPoint(double re, double im) : DiskPoint(std::complex<double>(re, im)) {}

DiskPoint::DiskPoint(std::complex<double> z) : z_(z.real(), z.imag()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::norm(z) >= 1.0) {
        throw std::domain_error("point " + std::to_string(z.real()) + "," +
                                std::to_string(z.imag()) + " is not inside the open unit disk");
    }
}

DiskPoint DiskPoint::closed_under(WideComplex z) {
    if (!(std::norm(z) < 1.0L)) {
        std::fprintf(stderr, "gyro: disk closure violated by (%.17Lg, %.17Lg)\n", z.real(), z.imag());
        std::abort();
    }
    DiskPoint p;
    p.z_ = z;
    return p;
}

UnitComplex::UnitComplex(WideComplex z) : z_(z) {
    if (!(std::abs(std::norm(z) - 1.0L) <= kUnitModulusTolerance)) {
        throw std::domain_error("value does not have unit modulus");
    }
}

DiskPoint UnitComplex::rotate(const DiskPoint& p) const {
    return DiskPoint::closed_under(z_ * p.wide());
}

DiskPoint mobius_add(const DiskPoint& a, const DiskPoint& b) {
    const WideComplex& za = a.wide();
    const WideComplex& zb = b.wide();
    return DiskPoint::closed_under((za + zb) / (1.0L + std::conj(za) * zb));
}

DiskPoint mobius_neg(const DiskPoint& a) {
    return DiskPoint::closed_under(-a.wide());
}

UnitComplex mobius_gyr_factor(const DiskPoint& a, const DiskPoint& b) {
    const WideComplex& za = a.wide();
    const WideComplex& zb = b.wide();
    return UnitComplex((1.0L + za * std::conj(zb)) / (1.0L + std::conj(za) * zb));
}

double distance(const DiskPoint& a, const DiskPoint& b) {
    return static_cast<double>(std::abs(a.wide() - b.wide()));
}

std::string to_string(const DiskPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << p.re() << "," << p.im();
    return os.str();
}

}  // namespace gyro
