#include <doctest.h>

#include <functional>
#include <set>

#include "gyro/topology.hpp"
#include "support/corpus.hpp"

using namespace gyro;
using namespace gyro::testing;

namespace {

FiniteGyrogroup group(const CayleyTable& t) { return std::get<FiniteGyrogroup>(check_axioms(t)); }

// Definition-level property oracles over an explicit list of open sets.
struct Space {
    const FiniteGyrogroup& g;
    std::vector<Subset> opens;
    std::size_t n = g.order();

    bool open(Subset s) const { return std::find(opens.begin(), opens.end(), s) != opens.end(); }
    bool closed(Subset s) const { return open(g.carrier().minus(s)); }
    std::vector<Subset> all_subsets() const {
        std::vector<Subset> out;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.push_back(Subset(b));
        return out;
    }
    Subset image(Subset s, const std::function<Element(Element)>& f) const {
        Subset out;
        for (Element x : s.elements()) out.insert(f(x));
        return out;
    }
    Subset preimage(Subset s, const std::function<Element(Element)>& f) const {
        Subset out;
        for (Element x = 0; x < n; ++x)
            if (s.contains(f(x))) out.insert(x);
        return out;
    }
    Subset closure(Subset s) const {
        Subset c = g.carrier();
        for (Subset o : opens)
            if (closed(g.carrier().minus(o)) && s.subset_of(g.carrier().minus(o))) c = c & g.carrier().minus(o);
        return c;
    }
    Subset interior(Subset s) const {
        Subset i;
        for (Subset o : opens)
            if (o.subset_of(s)) i = i | o;
        return i;
    }
    std::vector<Subset> nbhds_of(Element x) const {
        std::vector<Subset> out;
        for (Subset o : opens)
            if (o.contains(x)) out.push_back(o);
        return out;
    }

    bool add_continuous() const {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Subset o : nbhds_of(g.add(a, b))) {
                    bool found = false;
                    for (Subset A : nbhds_of(a))
                        for (Subset B : nbhds_of(b)) found = found || g.add(A, B).subset_of(o);
                    if (!found) return false;
                }
        return true;
    }
    bool continuous(const std::function<Element(Element)>& f) const {
        for (Subset o : opens)
            if (!open(preimage(o, f))) return false;
        return true;
    }
    bool homeomorphism(const std::function<Element(Element)>& f) const {
        for (Subset o : opens)
            if (!open(preimage(o, f)) || !open(image(o, f))) return false;
        return true;
    }
    bool hausdorff() const {
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) {
                if (x == y) continue;
                bool found = false;
                for (Subset u : nbhds_of(x))
                    for (Subset v : nbhds_of(y)) found = found || (u & v).empty();
                if (!found) return false;
            }
        return true;
    }
    bool t1() const {
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) {
                if (x == y) continue;
                bool found = false;
                for (Subset u : nbhds_of(x)) found = found || !u.contains(y);
                if (!found) return false;
            }
        return true;
    }
    bool regular() const {
        for (Subset f : all_subsets()) {
            if (!closed(f)) continue;
            for (Element x = 0; x < n; ++x) {
                if (f.contains(x)) continue;
                bool found = false;
                for (Subset u : nbhds_of(x))
                    for (Subset v : opens) found = found || (f.subset_of(v) && (u & v).empty());
                if (!found) return false;
            }
        }
        return true;
    }
    bool completely_regular() const {
        for (Subset f : all_subsets()) {
            if (!closed(f)) continue;
            for (Element x = 0; x < n; ++x) {
                if (f.contains(x)) continue;
                bool found = false;
                for (Subset c : nbhds_of(x)) found = found || (closed(c) && (c & f).empty());
                if (!found) return false;
            }
        }
        return true;
    }
    bool open_products() const {
        for (Subset a : opens)
            for (Subset b : all_subsets())
                if (!b.empty() && !open(g.add(b, a))) return false;
        return true;
    }
    bool interior_of_closed_product() const {
        const Element e = g.identity();
        for (Subset a : nbhds_of(e))
            for (Subset b : all_subsets())
                if (b.contains(e) && !a.subset_of(interior(closure(g.add(b, a))))) return false;
        return true;
    }
    bool micro_associative() const {
        const Element e = g.identity();
        for (Subset u : nbhds_of(e)) {
            bool found = false;
            for (Subset v : nbhds_of(e)) {
                if (!v.subset_of(u)) continue;
                for (Subset w : nbhds_of(e)) {
                    if (!w.subset_of(v)) continue;
                    bool ok = true;
                    for (Element a : w.elements())
                        for (Element b : w.elements()) ok = ok && g.add(a, g.add(b, v)) == g.add(g.add(a, b), v);
                    found = found || ok;
                }
            }
            if (!found) return false;
        }
        return true;
    }
    bool locally_gyroscopic_invariant() const {
        const Element e = g.identity();
        for (Subset u : nbhds_of(e)) {
            std::vector<Subset> base;
            for (Subset v : nbhds_of(e)) {
                bool inv = true;
                for (Element a : u.elements())
                    for (Element b : u.elements()) inv = inv && g.gyr(a, b, v).subset_of(v);
                if (inv) base.push_back(v);
            }
            bool is_base = true;
            for (Subset o : nbhds_of(e)) {
                bool inside = false;
                for (Subset v : base) inside = inside || v.subset_of(o);
                is_base = is_base && inside;
            }
            if (is_base) return true;
        }
        return false;
    }

    bool expected(Property p) const {
        switch (p) {
            case Property::AdditionContinuous: return add_continuous();
            case Property::InversionContinuous: return continuous([&](Element x) { return g.neg(x); });
            case Property::Hausdorff: return hausdorff();
            case Property::T1: return t1();
            case Property::Regular: return regular();
            case Property::CompletelyRegular: return completely_regular();
            case Property::LeftTranslationHomeomorphism:
                for (Element x = 0; x < n; ++x)
                    if (!homeomorphism([&](Element y) { return g.add(x, y); })) return false;
                return true;
            case Property::RightTranslationHomeomorphism:
                for (Element x = 0; x < n; ++x)
                    if (!homeomorphism([&](Element y) { return g.add(y, x); })) return false;
                return true;
            case Property::InversionHomeomorphism: return homeomorphism([&](Element x) { return g.neg(x); });
            case Property::OpenProducts: return open_products();
            case Property::InteriorOfClosedProduct: return interior_of_closed_product();
            case Property::MicroAssociative: return micro_associative();
            case Property::LocallyGyroscopicInvariant: return locally_gyroscopic_invariant();
        }
        return false;
    }
};

std::vector<std::vector<Subset>> all_topologies(std::size_t n) {
    std::vector<std::vector<Subset>> out;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const std::uint64_t full = subsets - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << subsets); ++mask) {
        if (!(mask & 1) || !((mask >> full) & 1)) continue;
        bool ok = true;
        for (std::uint64_t a = 0; a < subsets && ok; ++a)
            for (std::uint64_t b = 0; b < subsets && ok; ++b)
                if (((mask >> a) & 1) && ((mask >> b) & 1)) ok = ((mask >> (a | b)) & 1) && ((mask >> (a & b)) & 1);
        if (!ok) continue;
        std::vector<Subset> opens;
        for (std::uint64_t a = 0; a < subsets; ++a)
            if ((mask >> a) & 1) opens.push_back(Subset(a));
        out.push_back(std::move(opens));
    }
    return out;
}

std::vector<Subset> rule_oracle(const FiniteGyrogroup& g, const std::vector<Subset>& family) {
    std::vector<Subset> out;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << g.order()); ++b) {
        const Subset w(b);
        bool ok = true;
        for (Element x : w.elements()) {
            bool some = false;
            for (Subset u : family) some = some || g.add(x, u).subset_of(w);
            ok = ok && some;
        }
        if (ok) out.push_back(w);
    }
    return out;
}

}  // namespace

TEST_CASE("topology validation") {
    CHECK_NOTHROW(FiniteTopology(3, {Subset{}, Subset{0}, Subset{0, 1, 2}}));
    CHECK_THROWS_AS(FiniteTopology(3, {Subset{}, Subset{0}, Subset{1}, Subset{0, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteTopology(3, {Subset{0, 1, 2}}), std::invalid_argument);
    CHECK(topology_violation(3, {Subset{}, Subset{0, 1}, Subset{1, 2}, Subset{0, 1, 2}}).has_value());
    CHECK(FiniteTopology::discrete(16).opens().size() == 65536);
    const auto t = FiniteTopology(4, {Subset{}, Subset{0, 1}, Subset{2, 3}, Subset{0, 1, 2, 3}});
    CHECK(t.minimal_neighborhood(1) == Subset{0, 1});
    CHECK(t.closure(Subset{0}) == Subset{0, 1});
    CHECK(t.interior(Subset{0, 1, 2}) == Subset{0, 1});
}

TEST_CASE("family parsing") {
    const auto g = group(cyclic(4));
    const auto f = parse_family_json(g, R"({"sets": [[0, 2], [0]]})");
    REQUIRE(f.sets().size() == 2);
    CHECK(f.sets()[0] == Subset{0, 2});
    CHECK(parse_family_json(g, family_to_json(f)).sets() == f.sets());
    CHECK_THROWS_AS(parse_family_json(g, R"({"sets": [[1, 2]]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family_json(g, R"({"sets": [[0, 4]]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family_json(g, R"({"sets": 3})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family_json(g, "not json"), std::invalid_argument);
}

TEST_CASE("closing examples on Z4") {
    const auto g = group(cyclic(4));
    const NeighborhoodFamily point(g, {Subset{0}});
    CHECK(check_conditions(g, point, Mode::Topological).all_passed());
    const auto discrete = generate_topology(g, point);
    REQUIRE(discrete.topology);
    CHECK(discrete.topology->opens().size() == 16);
    CHECK(*discrete.topology == FiniteTopology::discrete(4));
    CHECK(discrete.base_verified);

    const NeighborhoodFamily whole(g, {g.carrier()});
    const auto conds = check_conditions(g, whole, Mode::Topological);
    CHECK_FALSE(conds.passed(7));
    CHECK(conds.range_passed(1, 6));
    CHECK(conds.passed(8));
    CHECK(conds.passed(9));
    const auto trivial = generate_topology(g, whole);
    REQUIRE(trivial.topology);
    CHECK(*trivial.topology == FiniteTopology::indiscrete(4));
}

TEST_CASE("Klein four with one subgroup") {
    const auto g = group(klein_four());
    const auto gen = generate_topology(g, NeighborhoodFamily(g, {Subset{0, 1}}));
    REQUIRE(gen.topology);
    CHECK(gen.topology->opens() == std::vector<Subset>{Subset{}, Subset{0, 1}, Subset{2, 3}, Subset{0, 1, 2, 3}});
}

TEST_CASE("families without refinement fail condition 4") {
    const auto g = group(klein_four());
    const NeighborhoodFamily f(g, {Subset{0, 1}, Subset{0, 2}});
    const auto r = check_conditions(g, f, Mode::Paratopological);
    CHECK_FALSE(r.passed(4));
    CHECK(r.verdicts.size() == 7);
    const auto gen = generate_topology(g, f);
    CHECK_FALSE(gen.topology.has_value());
    CHECK(gen.not_topology_witness.has_value());
}

TEST_CASE("normal subgroup base") {
    const auto z4 = group(cyclic(4));
    const auto r = normal_subgyrogroup_base(z4);
    CHECK(r.family.sets() == std::vector<Subset>{Subset{0, 2}, z4.carrier()});
    CHECK(r.conditions.range_passed(1, 6));
    CHECK(r.conditions.passed(8));
    CHECK(r.conditions.passed(9));
    CHECK_FALSE(r.conditions.passed(7));
    CHECK_THROWS_AS(normal_subgyrogroup_base(group(cyclic(1))), std::invalid_argument);

    const auto klein = group(klein_four());
    std::vector<Subset> nontrivial;
    for (const auto& h : find_subgyrogroups(klein))
        if (h.members.size() > 1) nontrivial.push_back(h.members);
    const auto via_base = normal_subgyrogroup_base(klein);
    const auto direct = generate_topology(klein, NeighborhoodFamily(klein, nontrivial));
    CHECK(via_base.topology.rule_sets == direct.rule_sets);
}

TEST_CASE("generation rule matches a direct oracle") {
    for (const auto& [name, table] : gyrogroup_corpus()) {
        CAPTURE(name);
        const auto g = group(table);
        std::vector<std::vector<Subset>> families{{Subset::singleton(g.identity())}, {g.carrier()}};
        std::vector<Subset> subs;
        for (const auto& h : find_subgyrogroups(g)) {
            families.push_back({h.members});
            subs.push_back(h.members);
        }
        families.push_back(subs);
        for (const auto& fam : families) {
            const auto gen = generate_topology(g, NeighborhoodFamily(g, fam));
            CHECK(gen.rule_sets == rule_oracle(g, fam));
        }
    }
}

TEST_CASE("enumeration limit") {
    CHECK_THROWS_AS(generate_topology(group(cyclic(17)), NeighborhoodFamily(group(cyclic(17)), {Subset{0}})),
                    std::length_error);
}

TEST_CASE("trivial and discrete topologies on Z4") {
    const auto g = group(cyclic(4));
    const auto disc = check_topology_properties(g, FiniteTopology::discrete(4), all_properties());
    CHECK(disc.all_passed());
    const auto triv = check_topology_properties(g, FiniteTopology::indiscrete(4), all_properties());
    CHECK(triv.passed(Property::AdditionContinuous));
    CHECK_FALSE(triv.passed(Property::Hausdorff));
    for (const auto& v : triv.verdicts)
        if (v.property == Property::Hausdorff) CHECK(v.witness.size() == 2);
}

TEST_CASE("property checks agree with definitions on every topology of order 4") {
    const auto topologies = all_topologies(4);
    CHECK(topologies.size() == 355);
    for (const auto& table : {cyclic(4), klein_four()}) {
        const auto g = group(table);
        for (const auto& opens : topologies) {
            const FiniteTopology t(4, opens);
            const Space s{g, opens};
            const auto rep = check_topology_properties(g, t, all_properties());
            for (const auto& v : rep.verdicts) {
                CAPTURE(property_id(v.property));
                CHECK(v.passed == s.expected(v.property));
            }
        }
    }
}

TEST_CASE("property checks agree with definitions on generated topologies") {
    for (const auto& [name, table] : gyrogroup_corpus()) {
        CAPTURE(name);
        const auto g = group(table);
        std::vector<std::vector<Subset>> families{{Subset::singleton(g.identity())}, {g.carrier()}};
        for (const auto& h : find_subgyrogroups(g)) families.push_back({h.members});
        for (const auto& fam : families) {
            const auto gen = generate_topology(g, NeighborhoodFamily(g, fam));
            if (!gen.topology) continue;
            const Space s{g, gen.topology->opens()};
            for (const auto& v : check_topology_properties(g, *gen.topology, all_properties()).verdicts) {
                CAPTURE(property_id(v.property));
                CHECK(v.passed == s.expected(v.property));
            }
        }
    }
}
