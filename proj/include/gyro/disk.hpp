#pragma once

#include <complex>
#include <string>

namespace gyro {

/// Extended precision keeps chained operations near the boundary accurate.
using WideComplex = std::complex<long double>;

/// A point of the open unit disk.
///
/// Construction rejects any value with re^2 + im^2 >= 1. Arithmetic results
/// that would leave the disk indicate a numerical bug and abort the process.
class DiskPoint {
public:
    constexpr DiskPoint() = default;
    DiskPoint(double re, double im);
    explicit DiskPoint(std::complex<double> z);

    double re() const { return static_cast<double>(z_.real()); }
    double im() const { return static_cast<double>(z_.imag()); }
    std::complex<double> value() const { return {re(), im()}; }
    const WideComplex& wide() const { return z_; }
    double modulus() const { return static_cast<double>(std::abs(z_)); }
    double norm_sq() const { return static_cast<double>(std::norm(z_)); }

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

    /// Builds from a value known to be inside the disk; aborts otherwise.
    static DiskPoint closed_under(WideComplex z);

private:
    WideComplex z_{0.0L, 0.0L};
};

/// Complex number of unit modulus (|z|^2 within 1e-12 of 1).
class UnitComplex {
public:
    explicit UnitComplex(std::complex<double> z) : UnitComplex(WideComplex(z)) {}
    explicit UnitComplex(WideComplex z);

    std::complex<double> value() const {
        return {static_cast<double>(z_.real()), static_cast<double>(z_.imag())};
    }
    DiskPoint rotate(const DiskPoint& p) const;

private:
    WideComplex z_;
};

inline constexpr double kUnitModulusTolerance = 1e-12;

/// (a + b) / (1 + conj(a) b)
DiskPoint mobius_add(const DiskPoint& a, const DiskPoint& b);
DiskPoint mobius_neg(const DiskPoint& a);

/// Closed-form gyration of the Möbius disk: gyr[a,b] is multiplication by
/// (1 + a conj(b)) / (1 + conj(a) b).
UnitComplex mobius_gyr_factor(const DiskPoint& a, const DiskPoint& b);

double distance(const DiskPoint& a, const DiskPoint& b);

std::string to_string(const DiskPoint& p);

}  // namespace gyro
