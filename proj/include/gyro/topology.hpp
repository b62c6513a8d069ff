#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gyro/finite.hpp"
#include "gyro/witness.hpp"

namespace gyro {

/// Ordered family of identity neighbourhoods over a finite carrier.
class NeighborhoodFamily {
public:
    /// Throws std::invalid_argument if a member misses e or leaves the carrier.
    NeighborhoodFamily(const FiniteGyrogroup& g, std::vector<Subset> sets);

    std::size_t carrier_size() const { return n_; }
    const std::vector<Subset>& sets() const { return sets_; }
    bool empty() const { return sets_.empty(); }

private:
    std::size_t n_;
    std::vector<Subset> sets_;
};

/// Parses {"sets": [[0,2], ...]}.
NeighborhoodFamily parse_family_json(const FiniteGyrogroup& g, std::string_view text);
std::string family_to_json(const NeighborhoodFamily& f);

/// Topology on [0, n): contains the empty set and the carrier and is closed
/// under union and intersection. Opens are kept sorted by bit pattern.
class FiniteTopology {
public:
    /// Throws std::invalid_argument when `opens` is not a topology.
    FiniteTopology(std::size_t n, std::vector<Subset> opens);

    static FiniteTopology discrete(std::size_t n);
    static FiniteTopology indiscrete(std::size_t n);

    std::size_t carrier_size() const { return n_; }
    const std::vector<Subset>& opens() const { return opens_; }
    bool is_open(Subset s) const;
    bool is_closed(Subset s) const { return is_open(Subset::full(n_).minus(s)); }

    /// Smallest open set containing x.
    Subset minimal_neighborhood(Element x) const { return minimal_[x]; }
    Subset closure(Subset s) const;
    Subset interior(Subset s) const;

    friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) {
        return a.n_ == b.n_ && a.opens_ == b.opens_;
    }

private:
    std::size_t n_;
    std::vector<Subset> opens_;
    std::vector<Subset> minimal_;
};

/// Checks the structural topology axioms; returns a witness pair on failure.
std::optional<Witness> topology_violation(std::size_t n, const std::vector<Subset>& opens);

enum class Mode { Paratopological, Topological };
std::string_view mode_name(Mode m);

struct ConditionVerdict {
    int condition = 0;  // 1..9
    bool passed = true;
    Witness witness;
};

struct ConditionReport {
    Mode mode = Mode::Paratopological;
    std::vector<ConditionVerdict> verdicts;

    bool passed(int condition) const;
    bool all_passed() const;
    /// True when conditions first..last all pass.
    bool range_passed(int first, int last) const;
};

/// Exhaustive check of the neighbourhood-base conditions (1)-(7), plus
/// (8)-(9) in topological mode. The first failure in scan order (family
/// order, then ascending elements) is reported.
ConditionReport check_conditions(const FiniteGyrogroup& g, const NeighborhoodFamily& family, Mode mode);

inline constexpr std::size_t kMaxTopologyCarrier = 16;

struct GeneratedTopology {
    /// Every W with: for each x in W some x + U lies in W.
    std::vector<Subset> rule_sets;
    /// Present when rule_sets is closed under intersection.
    std::optional<FiniteTopology> topology;
    std::optional<Witness> not_topology_witness;
    /// Every translate a + U is open and every open set is a union of translates.
    bool base_verified = false;
    std::optional<Witness> base_witness;
};

/// Enumerates all 2^n subsets; throws std::length_error for n > 16.
GeneratedTopology generate_topology(const FiniteGyrogroup& g, const NeighborhoodFamily& family);

enum class Property {
    AdditionContinuous,
    InversionContinuous,
    Hausdorff,
    T1,
    Regular,
    CompletelyRegular,
    LeftTranslationHomeomorphism,
    RightTranslationHomeomorphism,
    InversionHomeomorphism,
    OpenProducts,
    InteriorOfClosedProduct,
    MicroAssociative,
    LocallyGyroscopicInvariant,
};

inline constexpr std::size_t kPropertyCount = 13;
std::string_view property_id(Property p);

struct PropertyVerdict {
    Property property = Property::AdditionContinuous;
    bool passed = true;
    Witness witness;
};

struct PropertyReport {
    std::vector<PropertyVerdict> verdicts;
    bool passed(Property p) const;
    bool all_passed() const;
};

std::vector<Property> all_properties();

PropertyReport check_topology_properties(const FiniteGyrogroup& g, const FiniteTopology& t,
                                         const std::vector<Property>& flags);

struct NormalBaseResult {
    NeighborhoodFamily family;
    ConditionReport conditions;
    GeneratedTopology topology;
};

/// Family of all normal subgyrogroups other than {e}, checked in
/// topological mode. Throws std::invalid_argument if the family is empty.
NormalBaseResult normal_subgyrogroup_base(const FiniteGyrogroup& g);

}  // namespace gyro
