#include "gyro/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace gyro {

namespace {

std::string str(Element x) { return std::to_string(x); }

}  // namespace

// ---------------------------------------------------------------------------
// NeighborhoodFamily

NeighborhoodFamily::NeighborhoodFamily(const FiniteGyrogroup& g, std::vector<Subset> sets)
    : n_(g.order()), sets_(std::move(sets)) {
    for (const Subset s : sets_) {
        if (!s.subset_of(g.carrier())) {
            throw std::invalid_argument("family member " + to_string(s) + " leaves the carrier");
        }
        if (!s.contains(g.identity())) {
            throw std::invalid_argument("family member " + to_string(s) + " does not contain the identity");
        }
    }
}

NeighborhoodFamily parse_family_json(const FiniteGyrogroup& g, std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("family JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("sets") || !j["sets"].is_array()) {
        throw std::invalid_argument("family JSON must be an object with a \"sets\" array");
    }
    std::vector<Subset> sets;
    for (const auto& arr : j["sets"]) {
        if (!arr.is_array()) throw std::invalid_argument("each family member must be an array");
        Subset s;
        for (const auto& v : arr) {
            if (!v.is_number_unsigned()) throw std::invalid_argument("family entries must be indices");
            const auto x = v.get<std::uint64_t>();
            if (x >= g.order()) {
                throw std::invalid_argument("family index " + std::to_string(x) + " out of range");
            }
            s.insert(x);
        }
        sets.push_back(s);
    }
    return NeighborhoodFamily(g, std::move(sets));
}

std::string family_to_json(const NeighborhoodFamily& f) {
    nlohmann::json j;
    j["sets"] = nlohmann::json::array();
    for (const Subset s : f.sets()) j["sets"].push_back(s.elements());
    return j.dump();
}

// ---------------------------------------------------------------------------
// FiniteTopology

namespace {

// A family F is a topology iff it contains every W with N(x) in W for all
// x in W, where N(x) is the intersection of the members containing x
// (F is always contained in that family). Checkable in 2^n steps.
bool is_topology_by_minimal_sets(std::size_t n, const std::vector<Subset>& opens,
                                 const std::unordered_set<std::uint64_t>& set) {
    std::vector<Subset> minimal(n, Subset::full(n));
    for (const Subset o : opens)
        for (Element x : o.elements()) minimal[x] = minimal[x] & o;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const Subset w(bits);
        bool upward = true;
        for (Element x : w.elements()) {
            if (!minimal[x].subset_of(w)) {
                upward = false;
                break;
            }
        }
        if (upward && !set.count(bits)) return false;
    }
    return true;
}

constexpr std::size_t kFastTopologyCheckCarrier = 20;

}  // namespace

std::optional<Witness> topology_violation(std::size_t n, const std::vector<Subset>& opens) {
    std::unordered_set<std::uint64_t> set;
    for (const Subset s : opens) {
        if (!s.subset_of(Subset::full(n))) return Witness{{"outside_carrier", to_string(s)}};
        set.insert(s.bits());
    }
    if (!set.count(0)) return Witness{{"missing", "{}"}};
    if (!set.count(Subset::full(n).bits())) return Witness{{"missing", to_string(Subset::full(n))}};
    if (n <= kFastTopologyCheckCarrier && is_topology_by_minimal_sets(n, opens, set)) return std::nullopt;
    // Either large or failing: find an explicit pair.
    for (std::size_t i = 0; i < opens.size(); ++i) {
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            if (!set.count((opens[i] & opens[j]).bits())) {
                return Witness{{"A", to_string(opens[i])}, {"B", to_string(opens[j])},
                               {"missing_intersection", to_string(opens[i] & opens[j])}};
            }
            if (!set.count((opens[i] | opens[j]).bits())) {
                return Witness{{"A", to_string(opens[i])}, {"B", to_string(opens[j])},
                               {"missing_union", to_string(opens[i] | opens[j])}};
            }
        }
    }
    return std::nullopt;
}

FiniteTopology::FiniteTopology(std::size_t n, std::vector<Subset> opens) : n_(n), opens_(std::move(opens)) {
    if (n == 0 || n > kMaxFiniteOrder) throw std::invalid_argument("carrier size out of range");
    std::sort(opens_.begin(), opens_.end(), [](Subset a, Subset b) { return a.bits() < b.bits(); });
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    if (auto w = topology_violation(n_, opens_)) {
        std::string msg = "not a topology:";
        for (const auto& [k, v] : *w) msg += " " + k + "=" + v;
        throw std::invalid_argument(msg);
    }
    minimal_.assign(n_, Subset::full(n_));
    for (const Subset o : opens_)
        for (Element x : o.elements()) minimal_[x] = minimal_[x] & o;
}

FiniteTopology FiniteTopology::discrete(std::size_t n) {
    std::vector<Subset> opens;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) opens.emplace_back(b);
    return FiniteTopology(n, std::move(opens));
}

FiniteTopology FiniteTopology::indiscrete(std::size_t n) {
    return FiniteTopology(n, {Subset{}, Subset::full(n)});
}

bool FiniteTopology::is_open(Subset s) const {
    return std::binary_search(opens_.begin(), opens_.end(), s,
                              [](Subset a, Subset b) { return a.bits() < b.bits(); });
}

Subset FiniteTopology::closure(Subset s) const {
    // y is in the closure iff every open set around y meets s.
    Subset out;
    for (Element y = 0; y < n_; ++y)
        if (!(minimal_[y] & s).empty()) out.insert(y);
    return out;
}

Subset FiniteTopology::interior(Subset s) const {
    Subset out;
    for (Element x = 0; x < n_; ++x)
        if (minimal_[x].subset_of(s)) out.insert(x);
    return out;
}

// ---------------------------------------------------------------------------
// Conditions

std::string_view mode_name(Mode m) {
    return m == Mode::Paratopological ? "paratopological" : "topological";
}

bool ConditionReport::passed(int condition) const {
    for (const auto& v : verdicts)
        if (v.condition == condition) return v.passed;
    throw std::out_of_range("condition " + std::to_string(condition) + " not in report");
}

bool ConditionReport::all_passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.passed; });
}

bool ConditionReport::range_passed(int first, int last) const {
    for (int k = first; k <= last; ++k)
        if (!passed(k)) return false;
    return true;
}

namespace {

template <class Pred>
bool exists_member(const NeighborhoodFamily& f, Pred&& pred) {
    return std::any_of(f.sets().begin(), f.sets().end(), pred);
}

ConditionVerdict check_condition(const FiniteGyrogroup& g, const NeighborhoodFamily& f, int k) {
    ConditionVerdict v;
    v.condition = k;
    const std::size_t n = g.order();
    auto fail = [&](Witness w) {
        v.passed = false;
        v.witness = std::move(w);
        return v;
    };
    switch (k) {
        case 1:
            for (const Subset u : f.sets())
                if (!exists_member(f, [&](Subset w) { return g.add(w, w).subset_of(u); }))
                    return fail({{"U", to_string(u)}});
            break;
        case 2:
            for (const Subset u : f.sets())
                for (Element x : u.elements())
                    if (!exists_member(f, [&](Subset w) { return g.add(x, w).subset_of(u); }))
                        return fail({{"U", to_string(u)}, {"x", str(x)}});
            break;
        case 3:
            for (const Subset u : f.sets())
                for (Element x = 0; x < n; ++x)
                    if (!exists_member(f, [&](Subset w) { return g.add(g.neg(x), g.add(w, x)).subset_of(u); }))
                        return fail({{"U", to_string(u)}, {"x", str(x)}});
            break;
        case 4:
            for (const Subset u : f.sets())
                for (const Subset w : f.sets())
                    if (!exists_member(f, [&](Subset c) { return c.subset_of(u & w); }))
                        return fail({{"U", to_string(u)}, {"V", to_string(w)}});
            break;
        case 5:
            for (const Subset u : f.sets())
                for (Element a = 0; a < n; ++a)
                    for (Element b = 0; b < n; ++b)
                        if (!exists_member(f, [&](Subset w) { return g.gyr(a, b, w).subset_of(u); }))
                            return fail({{"U", to_string(u)}, {"a", str(a)}, {"b", str(b)}});
            break;
        case 6:
            for (const Subset u : f.sets())
                for (Element b = 0; b < n; ++b)
                    if (!exists_member(f, [&](Subset w) {
                            Subset img;
                            for (Element x : w.elements()) img = img | g.gyr(x, b, w);
                            return img.subset_of(u);
                        }))
                        return fail({{"U", to_string(u)}, {"b", str(b)}});
            break;
        case 7: {
            Subset meet = g.carrier();
            for (const Subset u : f.sets()) meet = meet & g.cosub(u, u);
            if (meet != Subset::singleton(g.identity())) {
                Witness w{{"intersection", to_string(meet)}};
                for (Element x : meet.elements())
                    if (x != g.identity()) {
                        w.emplace_back("x", str(x));
                        break;
                    }
                return fail(std::move(w));
            }
            break;
        }
        case 8:
            for (const Subset u : f.sets())
                for (Element x = 0; x < n; ++x)
                    if (!exists_member(f, [&](Subset w) {
                            return g.coadd(w, x).subset_of(g.add(x, u)) && g.add(x, w).subset_of(g.coadd(x, u));
                        }))
                        return fail({{"U", to_string(u)}, {"x", str(x)}});
            break;
        case 9:
            for (const Subset u : f.sets())
                if (!exists_member(f, [&](Subset w) { return g.neg(w).subset_of(u); }))
                    return fail({{"U", to_string(u)}});
            break;
        default:
            throw std::out_of_range("unknown condition");
    }
    return v;
}

}  // namespace

ConditionReport check_conditions(const FiniteGyrogroup& g, const NeighborhoodFamily& family, Mode mode) {
    if (family.carrier_size() != g.order()) throw std::invalid_argument("family carrier mismatch");
    ConditionReport r;
    r.mode = mode;
    const int last = mode == Mode::Topological ? 9 : 7;
    for (int k = 1; k <= last; ++k) r.verdicts.push_back(check_condition(g, family, k));
    return r;
}

// ---------------------------------------------------------------------------
// Topology generation

GeneratedTopology generate_topology(const FiniteGyrogroup& g, const NeighborhoodFamily& family) {
    const std::size_t n = g.order();
    if (n > kMaxTopologyCarrier) {
        throw std::length_error("carrier of size " + std::to_string(n) + " exceeds the enumeration cap of " +
                                std::to_string(kMaxTopologyCarrier));
    }
    // Translates x + U, per element.
    std::vector<std::vector<Subset>> translates(n);
    for (Element x = 0; x < n; ++x)
        for (const Subset u : family.sets()) translates[x].push_back(g.add(x, u));

    GeneratedTopology out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const Subset w(bits);
        bool open = true;
        for (Element x : w.elements()) {
            const auto& tr = translates[x];
            if (!std::any_of(tr.begin(), tr.end(), [&](Subset t) { return t.subset_of(w); })) {
                open = false;
                break;
            }
        }
        if (open) out.rule_sets.push_back(w);
    }

    out.not_topology_witness = topology_violation(n, out.rule_sets);
    if (!out.not_topology_witness) out.topology.emplace(n, out.rule_sets);

    std::unordered_set<std::uint64_t> members;
    for (const Subset s : out.rule_sets) members.insert(s.bits());
    out.base_verified = true;
    for (Element a = 0; a < n && out.base_verified; ++a) {
        for (std::size_t i = 0; i < family.sets().size(); ++i) {
            if (!members.count(translates[a][i].bits())) {
                out.base_verified = false;
                out.base_witness = Witness{{"a", str(a)}, {"U", to_string(family.sets()[i])},
                                           {"translate", to_string(translates[a][i])}};
                break;
            }
        }
    }
    if (out.base_verified) {
        for (const Subset w : out.rule_sets) {
            Subset cover;
            for (Element x = 0; x < n; ++x)
                for (const Subset t : translates[x])
                    if (t.subset_of(w)) cover = cover | t;
            if (cover != w) {
                out.base_verified = false;
                out.base_witness = Witness{{"open", to_string(w)}, {"covered", to_string(cover)}};
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Topological properties

std::string_view property_id(Property p) {
    switch (p) {
        case Property::AdditionContinuous: return "property.addition_continuous";
        case Property::InversionContinuous: return "property.inversion_continuous";
        case Property::Hausdorff: return "property.hausdorff";
        case Property::T1: return "property.t1";
        case Property::Regular: return "property.regular";
        case Property::CompletelyRegular: return "property.completely_regular";
        case Property::LeftTranslationHomeomorphism: return "property.left_translation_homeomorphism";
        case Property::RightTranslationHomeomorphism: return "property.right_translation_homeomorphism";
        case Property::InversionHomeomorphism: return "property.inversion_homeomorphism";
        case Property::OpenProducts: return "property.open_products";
        case Property::InteriorOfClosedProduct: return "property.interior_of_closed_product";
        case Property::MicroAssociative: return "property.micro_associative";
        case Property::LocallyGyroscopicInvariant: return "property.locally_gyroscopic_invariant";
    }
    return "property.unknown";
}

std::vector<Property> all_properties() {
    std::vector<Property> out;
    for (std::size_t k = 0; k < kPropertyCount; ++k) out.push_back(static_cast<Property>(k));
    return out;
}

bool PropertyReport::passed(Property p) const {
    for (const auto& v : verdicts)
        if (v.property == p) return v.passed;
    throw std::out_of_range("property not in report");
}

bool PropertyReport::all_passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.passed; });
}

namespace {

// Budget for the exhaustive (open A, subset B) scan before falling back to B = {e}.
constexpr std::uint64_t kProductScanBudget = std::uint64_t{1} << 22;

template <class Map>
std::optional<Witness> homeomorphism_violation(const FiniteTopology& t, Map&& f) {
    const std::size_t n = t.carrier_size();
    std::vector<Element> image(n);
    std::vector<Element> preimage(n, n);
    for (Element y = 0; y < n; ++y) {
        image[y] = f(y);
        if (preimage[image[y]] != n) return Witness{{"collision", str(y)}, {"image", str(image[y])}};
        preimage[image[y]] = y;
    }
    for (const Subset o : t.opens()) {
        Subset img, pre;
        for (Element y : o.elements()) {
            img.insert(image[y]);
            pre.insert(preimage[y]);
        }
        if (!t.is_open(img)) return Witness{{"open", to_string(o)}, {"image", to_string(img)}};
        if (!t.is_open(pre)) return Witness{{"open", to_string(o)}, {"preimage", to_string(pre)}};
    }
    return std::nullopt;
}

PropertyVerdict check_property(const FiniteGyrogroup& g, const FiniteTopology& t, Property p) {
    PropertyVerdict v;
    v.property = p;
    const std::size_t n = g.order();
    const Element e = g.identity();
    auto N = [&](Element x) { return t.minimal_neighborhood(x); };
    auto fail = [&](Witness w) {
        v.passed = false;
        v.witness = std::move(w);
        return v;
    };

    switch (p) {
        case Property::AdditionContinuous:
            // For every open O around a+b the best choice is A = N(a), B = N(b),
            // and it suffices to test O = N(a+b).
            for (Element a = 0; a < n; ++a)
                for (Element b = 0; b < n; ++b)
                    if (!g.add(N(a), N(b)).subset_of(N(g.add(a, b))))
                        return fail({{"a", str(a)}, {"b", str(b)}, {"O", to_string(N(g.add(a, b)))}});
            break;
        case Property::InversionContinuous:
            for (Element x = 0; x < n; ++x)
                if (!g.neg(N(x)).subset_of(N(g.neg(x))))
                    return fail({{"x", str(x)}, {"O", to_string(N(g.neg(x)))}});
            break;
        case Property::Hausdorff:
            for (Element x = 0; x < n; ++x)
                for (Element y = x + 1; y < n; ++y)
                    if (!(N(x) & N(y)).empty()) return fail({{"x", str(x)}, {"y", str(y)}});
            break;
        case Property::T1:
            for (Element x = 0; x < n; ++x)
                for (Element y = 0; y < n; ++y)
                    if (x != y && N(x).contains(y)) return fail({{"x", str(x)}, {"y", str(y)}});
            break;
        case Property::Regular:
            // U = N(x) is the hardest open set around x and V = N(x) the only candidate inside it.
            for (Element x = 0; x < n; ++x)
                if (!t.closure(N(x)).subset_of(N(x)))
                    return fail({{"x", str(x)}, {"U", to_string(N(x))}, {"closure", to_string(t.closure(N(x)))}});
            break;
        case Property::CompletelyRegular:
            // Finite case: x and the complement of U are separated by the indicator
            // of a clopen C with x in C inside U.
            for (Element x = 0; x < n; ++x) {
                const Subset u = N(x);
                const bool found = std::any_of(t.opens().begin(), t.opens().end(), [&](Subset c) {
                    return c.contains(x) && c.subset_of(u) && t.is_closed(c);
                });
                if (!found) return fail({{"x", str(x)}, {"U", to_string(u)}});
            }
            break;
        case Property::LeftTranslationHomeomorphism:
            for (Element x = 0; x < n; ++x)
                if (auto w = homeomorphism_violation(t, [&](Element y) { return g.add(x, y); })) {
                    w->insert(w->begin(), {"x", str(x)});
                    return fail(std::move(*w));
                }
            break;
        case Property::RightTranslationHomeomorphism:
            for (Element x = 0; x < n; ++x)
                if (auto w = homeomorphism_violation(t, [&](Element y) { return g.add(y, x); })) {
                    w->insert(w->begin(), {"x", str(x)});
                    return fail(std::move(*w));
                }
            break;
        case Property::InversionHomeomorphism:
            if (auto w = homeomorphism_violation(t, [&](Element y) { return g.neg(y); })) return fail(std::move(*w));
            break;
        case Property::OpenProducts:
            // B + A is the union of the b + A, so singletons B suffice.
            for (const Subset a : t.opens())
                for (Element b = 0; b < n; ++b)
                    if (!t.is_open(g.add(b, a))) return fail({{"A", to_string(a)}, {"b", str(b)}});
            break;
        case Property::InteriorOfClosedProduct: {
            std::vector<Subset> open_nbhds;
            for (const Subset a : t.opens())
                if (a.contains(e)) open_nbhds.push_back(a);
            const std::uint64_t subsets_with_e = std::uint64_t{1} << (n - 1);
            const bool exhaustive = subsets_with_e * open_nbhds.size() <= kProductScanBudget;
            for (const Subset a : open_nbhds) {
                auto check_b = [&](Subset b) {
                    return a.subset_of(t.interior(t.closure(g.add(b, a))));
                };
                if (exhaustive) {
                    const Subset rest = g.carrier().minus(Subset::singleton(e));
                    // Enumerate all subsets of `rest`, each joined with e.
                    std::uint64_t sub = 0;
                    do {
                        Subset b(sub | Subset::singleton(e).bits());
                        if (!check_b(b)) return fail({{"A", to_string(a)}, {"B", to_string(b)}});
                        sub = (sub - rest.bits()) & rest.bits();
                    } while (sub != 0);
                } else if (!check_b(Subset::singleton(e))) {
                    // B + A grows with B, so B = {e} is the hardest case.
                    return fail({{"A", to_string(a)}, {"B", to_string(Subset::singleton(e))}});
                }
            }
            break;
        }
        case Property::MicroAssociative: {
            // N(e) is the smallest neighbourhood of e, hence the optimal V and W
            // for every U; the search collapses to V = W = N(e).
            const Subset ne = N(e);
            for (Element a : ne.elements())
                for (Element b : ne.elements())
                    if (g.add(a, g.add(b, ne)) != g.add(g.add(a, b), ne))
                        return fail({{"V", to_string(ne)}, {"a", str(a)}, {"b", str(b)}});
            break;
        }
        case Property::LocallyGyroscopicInvariant: {
            // Every local base at e contains N(e), and U = N(e) is the weakest requirement.
            const Subset ne = N(e);
            for (Element a : ne.elements())
                for (Element b : ne.elements())
                    if (!g.gyr(a, b, ne).subset_of(ne))
                        return fail({{"V", to_string(ne)}, {"a", str(a)}, {"b", str(b)}});
            break;
        }
    }
    return v;
}

}  // namespace

PropertyReport check_topology_properties(const FiniteGyrogroup& g, const FiniteTopology& t,
                                         const std::vector<Property>& flags) {
    if (t.carrier_size() != g.order()) throw std::invalid_argument("topology carrier mismatch");
    PropertyReport r;
    for (Property p : flags) r.verdicts.push_back(check_property(g, t, p));
    return r;
}

NormalBaseResult normal_subgyrogroup_base(const FiniteGyrogroup& g) {
    std::vector<Subset> sets;
    const Subset trivial = Subset::singleton(g.identity());
    for (const auto& h : find_subgyrogroups(g))
        if (h.normal && h.members != trivial) sets.push_back(h.members);
    if (sets.empty()) throw std::invalid_argument("no normal subgyrogroup other than {e}");
    NeighborhoodFamily family(g, std::move(sets));
    auto conditions = check_conditions(g, family, Mode::Topological);
    auto topology = generate_topology(g, family);
    return NormalBaseResult{std::move(family), std::move(conditions), std::move(topology)};
}

}  // namespace gyro
