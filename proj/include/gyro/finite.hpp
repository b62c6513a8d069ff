#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gyro {

using Element = std::size_t;

/// Largest carrier the finite machinery accepts; subsets are 64-bit masks.
inline constexpr std::size_t kMaxFiniteOrder = 64;

/// Membership bitset over [0, n), n <= 64.
class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}
    Subset(std::initializer_list<Element> elems);

    static constexpr Subset full(std::size_t n) {
        return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr Subset singleton(Element x) { return Subset(std::uint64_t{1} << x); }

    constexpr bool contains(Element x) const { return (bits_ >> x) & 1U; }
    constexpr void insert(Element x) { bits_ |= std::uint64_t{1} << x; }
    constexpr void erase(Element x) { bits_ &= ~(std::uint64_t{1} << x); }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
    constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
    constexpr Subset minus(Subset o) const { return Subset(bits_ & ~o.bits_); }

    std::vector<Element> elements() const;

    friend constexpr bool operator==(Subset, Subset) = default;

private:
    std::uint64_t bits_ = 0;
};

/// Orders by size, then lexicographically by sorted member list.
bool canonical_less(Subset a, Subset b);

std::string to_string(Subset s);

/// n x n operation table; entry (a, b) holds a (+) b.
class CayleyTable {
public:
    CayleyTable(std::size_t order, std::vector<Element> entries);

    std::size_t order() const { return n_; }
    Element at(Element a, Element b) const { return entries_[a * n_ + b]; }
    void set(Element a, Element b, Element v);

    const std::vector<Element>& entries() const { return entries_; }

    friend bool operator==(const CayleyTable&, const CayleyTable&) = default;

private:
    std::size_t n_;
    std::vector<Element> entries_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses the text format: first line n, then n rows of n indices.
CayleyTable load_cayley_table(std::string_view text);
std::string format_cayley_table(const CayleyTable& t);

enum class Axiom { G1, G2, G3, G4 };
std::string_view axiom_name(Axiom a);

struct AxiomFailure {
    Axiom axiom;
    std::vector<Element> witness;
    std::string message;
};

/// A table with a located two-sided identity and two-sided inverses. This is
/// the weakest structure the identity verifier can run on; G3/G4 may fail.
class FiniteLoopView {
public:
    /// Throws std::invalid_argument if G1 or G2 fails.
    explicit FiniteLoopView(CayleyTable table);

    std::size_t order() const { return table_.order(); }
    const CayleyTable& table() const { return table_; }
    Element identity() const { return identity_; }

    Element add(Element a, Element b) const;
    Element neg(Element a) const;
    /// Gyrator identity: (-(a+b)) + (a + (b + c)).
    Element gyr(Element a, Element b, Element c) const;

private:
    CayleyTable table_;
    Element identity_;
    std::vector<Element> inverse_;
};

class FiniteGyrogroup {
public:
    std::size_t order() const { return table_.order(); }
    const CayleyTable& table() const { return table_; }
    Element identity() const { return identity_; }

    Element add(Element a, Element b) const;
    Element neg(Element a) const;
    /// Reads the precomputed gyration table.
    Element gyr(Element a, Element b, Element c) const;
    std::vector<Element> gyr_permutation(Element a, Element b) const;
    bool gyrations_trivial() const;

    Subset carrier() const { return Subset::full(order()); }

    // Set-level operations.
    Subset add(Subset a, Subset b) const;
    Subset add(Element x, Subset s) const;
    Subset add(Subset s, Element x) const;
    Subset neg(Subset s) const;
    Subset gyr(Element a, Element b, Subset s) const;
    Subset coadd(Subset a, Subset b) const;
    Subset coadd(Subset s, Element x) const;
    Subset coadd(Element x, Subset s) const;
    Subset cosub(Subset a, Subset b) const;

    Element coadd(Element a, Element b) const;
    Element cosub(Element a, Element b) const;

private:
    friend std::variant<FiniteGyrogroup, AxiomFailure> check_axioms(const CayleyTable&);
    friend FiniteGyrogroup from_group(const CayleyTable&);

    FiniteGyrogroup(CayleyTable table, Element identity, std::vector<Element> inverse,
                    std::vector<std::uint16_t> gyr);

    void check(Element x) const;

    CayleyTable table_;
    Element identity_;
    std::vector<Element> inverse_;
    std::vector<std::uint16_t> gyr_;  // gyr_[(a*n + b)*n + c]
};

std::variant<FiniteGyrogroup, AxiomFailure> check_axioms(const CayleyTable& table);

/// For associative tables; throws std::invalid_argument otherwise.
FiniteGyrogroup from_group(const CayleyTable& table);

struct SubgyrogroupInfo {
    Subset members;
    bool normal = false;
    /// Only meaningful for normal members: gyr[a,b]H == H for all a, b.
    bool gyration_invariant = true;
    std::vector<Element> invariance_witness;  // (a, b, h) with gyr[a,b]h outside H
};

/// All subsets closed under (+) and (-) containing e, sorted canonically.
std::vector<SubgyrogroupInfo> find_subgyrogroups(const FiniteGyrogroup& g);

/// Smallest subgyrogroup containing `generators` and e.
Subset subgyrogroup_closure(const FiniteGyrogroup& g, Subset generators);

/// The relation a ~ b iff (-a) + b in H is a congruence of (+).
bool is_congruence_kernel(const FiniteGyrogroup& g, Subset h);

}  // namespace gyro
