#include "gyro/finite.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

namespace gyro {

Subset::Subset(std::initializer_list<Element> elems) {
    for (Element e : elems) insert(e);
}

std::vector<Element> Subset::elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<Element>(std::countr_zero(b)));
    }
    return out;
}

bool canonical_less(Subset a, Subset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
}

std::string to_string(Subset s) {
    std::string out = "{";
    bool first = true;
    for (Element e : s.elements()) {
        if (!first) out += ",";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// CayleyTable and text format

CayleyTable::CayleyTable(std::size_t order, std::vector<Element> entries)
    : n_(order), entries_(std::move(entries)) {
    if (n_ == 0) throw std::invalid_argument("table order must be positive");
    if (entries_.size() != n_ * n_) throw std::invalid_argument("table is not n x n");
    for (Element e : entries_) {
        if (e >= n_) throw std::invalid_argument("table entry out of range");
    }
}

void CayleyTable::set(Element a, Element b, Element v) {
    if (a >= n_ || b >= n_ || v >= n_) throw std::out_of_range("table index out of range");
    entries_[a * n_ + b] = v;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t parse_index(const Token& tok, std::size_t line) {
    std::size_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, tok.column, "non-integer token '" + std::string(tok.text) + "'");
    }
    return value;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

CayleyTable load_cayley_table(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        ++lineno;
        std::string_view line = text.substr(pos, end - pos);
        line = line.substr(0, line.find('#'));
        if (!is_blank(line)) lines.emplace_back(lineno, line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (lines.empty()) throw ParseError(1, 1, "empty table");

    const auto header = tokenize(lines[0].second);
    if (header.size() != 1) throw ParseError(lines[0].first, 1, "first line must hold the order n");
    const std::size_t n = parse_index(header[0], lines[0].first);
    if (n == 0) throw ParseError(lines[0].first, header[0].column, "order must be positive");
    if (n > kMaxFiniteOrder) {
        throw ParseError(lines[0].first, header[0].column,
                         "order exceeds " + std::to_string(kMaxFiniteOrder));
    }

    std::vector<Element> entries;
    entries.reserve(n * n);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto [ln, body] = lines[r];
        const auto toks = tokenize(body);
        if (r > n) throw ParseError(ln, 1, "non-square: more than " + std::to_string(n) + " rows");
        if (toks.size() != n) {
            throw ParseError(ln, 1,
                             "non-square: row has " + std::to_string(toks.size()) + " entries, expected " +
                                 std::to_string(n));
        }
        for (const auto& tok : toks) {
            const std::size_t v = parse_index(tok, ln);
            if (v >= n) {
                throw ParseError(ln, tok.column,
                                 "index out of range: " + std::to_string(v) + " >= " + std::to_string(n));
            }
            entries.push_back(v);
        }
    }
    if (entries.size() != n * n) {
        throw ParseError(lineno, 1,
                         "non-square: " + std::to_string(lines.size() - 1) + " rows, expected " +
                             std::to_string(n));
    }
    return CayleyTable(n, std::move(entries));
}

std::string format_cayley_table(const CayleyTable& t) {
    std::ostringstream os;
    os << t.order() << "\n";
    for (Element a = 0; a < t.order(); ++a) {
        for (Element b = 0; b < t.order(); ++b) {
            if (b) os << ' ';
            os << t.at(a, b);
        }
        os << "\n";
    }
    return os.str();
}

std::string_view axiom_name(Axiom a) {
    switch (a) {
        case Axiom::G1: return "G1";
        case Axiom::G2: return "G2";
        case Axiom::G3: return "G3";
        case Axiom::G4: return "G4";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Identity and inverse location shared by the loop view and the checker.

namespace {

struct Located {
    std::optional<Element> identity;
    std::vector<Element> inverse;
    std::optional<AxiomFailure> failure;
};

Located locate_identity_and_inverses(const CayleyTable& t) {
    const std::size_t n = t.order();
    Located out;
    std::optional<std::pair<Element, Element>> first_miss;
    for (Element e = 0; e < n && !out.identity; ++e) {
        bool ok = true;
        for (Element x = 0; x < n; ++x) {
            if (t.at(e, x) != x || t.at(x, e) != x) {
                if (!first_miss) first_miss = {e, x};
                ok = false;
                break;
            }
        }
        if (ok) out.identity = e;
    }
    if (!out.identity) {
        out.failure = AxiomFailure{Axiom::G1,
                                   {first_miss->first, first_miss->second},
                                   "no two-sided identity element"};
        return out;
    }
    const Element e = *out.identity;
    out.inverse.assign(n, 0);
    for (Element x = 0; x < n; ++x) {
        bool found = false;
        for (Element y = 0; y < n; ++y) {
            if (t.at(y, x) == e && t.at(x, y) == e) {
                out.inverse[x] = y;
                found = true;
                break;
            }
        }
        if (!found) {
            out.failure = AxiomFailure{Axiom::G2, {x}, "element has no two-sided inverse"};
            return out;
        }
    }
    return out;
}

}  // namespace

FiniteLoopView::FiniteLoopView(CayleyTable table) : table_(std::move(table)), identity_(0) {
    auto loc = locate_identity_and_inverses(table_);
    if (loc.failure) {
        throw std::invalid_argument(std::string(axiom_name(loc.failure->axiom)) + ": " +
                                    loc.failure->message);
    }
    identity_ = *loc.identity;
    inverse_ = std::move(loc.inverse);
}

Element FiniteLoopView::add(Element a, Element b) const {
    if (a >= order() || b >= order()) throw std::domain_error("element outside carrier");
    return table_.at(a, b);
}

Element FiniteLoopView::neg(Element a) const {
    if (a >= order()) throw std::domain_error("element outside carrier");
    return inverse_[a];
}

Element FiniteLoopView::gyr(Element a, Element b, Element c) const {
    return add(neg(add(a, b)), add(a, add(b, c)));
}

// ---------------------------------------------------------------------------
// FiniteGyrogroup

FiniteGyrogroup::FiniteGyrogroup(CayleyTable table, Element identity, std::vector<Element> inverse,
                                 std::vector<std::uint16_t> gyr)
    : table_(std::move(table)), identity_(identity), inverse_(std::move(inverse)), gyr_(std::move(gyr)) {}

void FiniteGyrogroup::check(Element x) const {
    if (x >= order()) throw std::domain_error("element " + std::to_string(x) + " outside carrier");
}

Element FiniteGyrogroup::add(Element a, Element b) const {
    check(a);
    check(b);
    return table_.at(a, b);
}

Element FiniteGyrogroup::neg(Element a) const {
    check(a);
    return inverse_[a];
}

Element FiniteGyrogroup::gyr(Element a, Element b, Element c) const {
    check(a);
    check(b);
    check(c);
    const std::size_t n = order();
    return gyr_[(a * n + b) * n + c];
}

std::vector<Element> FiniteGyrogroup::gyr_permutation(Element a, Element b) const {
    std::vector<Element> out(order());
    for (Element c = 0; c < order(); ++c) out[c] = gyr(a, b, c);
    return out;
}

bool FiniteGyrogroup::gyrations_trivial() const {
    const std::size_t n = order();
    for (std::size_t i = 0; i < gyr_.size(); ++i) {
        if (gyr_[i] != i % n) return false;
    }
    return true;
}

Subset FiniteGyrogroup::add(Subset a, Subset b) const {
    Subset out;
    for (Element x : a.elements())
        for (Element y : b.elements()) out.insert(add(x, y));
    return out;
}

Subset FiniteGyrogroup::add(Element x, Subset s) const { return add(Subset::singleton(x), s); }
Subset FiniteGyrogroup::add(Subset s, Element x) const { return add(s, Subset::singleton(x)); }

Subset FiniteGyrogroup::neg(Subset s) const {
    Subset out;
    for (Element x : s.elements()) out.insert(neg(x));
    return out;
}

Subset FiniteGyrogroup::gyr(Element a, Element b, Subset s) const {
    Subset out;
    for (Element x : s.elements()) out.insert(gyr(a, b, x));
    return out;
}

Element FiniteGyrogroup::coadd(Element a, Element b) const { return add(a, gyr(a, neg(b), b)); }
Element FiniteGyrogroup::cosub(Element a, Element b) const { return coadd(a, neg(b)); }

Subset FiniteGyrogroup::coadd(Subset a, Subset b) const {
    Subset out;
    for (Element x : a.elements())
        for (Element y : b.elements()) out.insert(coadd(x, y));
    return out;
}

Subset FiniteGyrogroup::coadd(Subset s, Element x) const { return coadd(s, Subset::singleton(x)); }
Subset FiniteGyrogroup::coadd(Element x, Subset s) const { return coadd(Subset::singleton(x), s); }

Subset FiniteGyrogroup::cosub(Subset a, Subset b) const {
    Subset out;
    for (Element x : a.elements())
        for (Element y : b.elements()) out.insert(cosub(x, y));
    return out;
}

// ---------------------------------------------------------------------------
// Axiom checking

std::variant<FiniteGyrogroup, AxiomFailure> check_axioms(const CayleyTable& t) {
    const std::size_t n = t.order();
    if (n > kMaxFiniteOrder) {
        throw std::invalid_argument("order exceeds " + std::to_string(kMaxFiniteOrder));
    }
    auto loc = locate_identity_and_inverses(t);
    if (loc.failure) return *loc.failure;
    const auto& inv = loc.inverse;
    auto op = [&](Element a, Element b) { return t.at(a, b); };

    std::vector<std::uint16_t> gyr(n * n * n);
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            const Element left = inv[op(a, b)];
            for (Element c = 0; c < n; ++c) {
                gyr[(a * n + b) * n + c] = static_cast<std::uint16_t>(op(left, op(a, op(b, c))));
            }
        }
    }
    auto g = [&](Element a, Element b, Element c) -> Element { return gyr[(a * n + b) * n + c]; };

    // G3: each gyr[a,b] is a bijective homomorphism realising left gyroassociativity.
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            std::vector<bool> hit(n, false);
            for (Element c = 0; c < n; ++c) {
                if (hit[g(a, b, c)]) {
                    return AxiomFailure{Axiom::G3, {a, b, c}, "gyr[a,b] is not injective"};
                }
                hit[g(a, b, c)] = true;
            }
            for (Element z = 0; z < n; ++z) {
                if (op(a, op(b, z)) != op(op(a, b), g(a, b, z))) {
                    return AxiomFailure{Axiom::G3, {a, b, z},
                                        "a+(b+z) != (a+b)+gyr[a,b]z"};
                }
            }
            for (Element x = 0; x < n; ++x) {
                for (Element y = 0; y < n; ++y) {
                    if (g(a, b, op(x, y)) != op(g(a, b, x), g(a, b, y))) {
                        return AxiomFailure{Axiom::G3, {a, b, x, y}, "gyr[a,b] is not a homomorphism"};
                    }
                }
            }
        }
    }
    // G4: left loop property.
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            const Element ab = op(a, b);
            for (Element c = 0; c < n; ++c) {
                if (g(ab, b, c) != g(a, b, c)) {
                    return AxiomFailure{Axiom::G4, {a, b, c}, "gyr[a+b,b] != gyr[a,b]"};
                }
            }
        }
    }
    return FiniteGyrogroup(t, *loc.identity, loc.inverse, std::move(gyr));
}

FiniteGyrogroup from_group(const CayleyTable& t) {
    const std::size_t n = t.order();
    if (n > kMaxFiniteOrder) {
        throw std::invalid_argument("order exceeds " + std::to_string(kMaxFiniteOrder));
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (t.at(a, t.at(b, c)) != t.at(t.at(a, b), c)) {
                    throw std::invalid_argument("table is not associative at (" + std::to_string(a) + "," +
                                                std::to_string(b) + "," + std::to_string(c) +
                                                "); use check_axioms for gyrogroups");
                }
    auto loc = locate_identity_and_inverses(t);
    if (loc.failure) {
        throw std::invalid_argument(std::string(axiom_name(loc.failure->axiom)) + ": " +
                                    loc.failure->message);
    }
    std::vector<std::uint16_t> gyr(n * n * n);
    for (std::size_t i = 0; i < gyr.size(); ++i) gyr[i] = static_cast<std::uint16_t>(i % n);
    return FiniteGyrogroup(t, *loc.identity, loc.inverse, std::move(gyr));
}

// ---------------------------------------------------------------------------
// Subgyrogroups

Subset subgyrogroup_closure(const FiniteGyrogroup& g, Subset generators) {
    Subset h = generators;
    h.insert(g.identity());
    while (true) {
        Subset next = h | g.add(h, h) | g.neg(h);
        if (next == h) return h;
        h = next;
    }
}

bool is_congruence_kernel(const FiniteGyrogroup& g, Subset h) {
    const std::size_t n = g.order();
    // cls[a] = {b : (-a)+b in H} must be an equivalence class partition.
    std::vector<Subset> cls(n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (h.contains(g.add(g.neg(a), b))) cls[a].insert(b);
    for (Element a = 0; a < n; ++a) {
        if (!cls[a].contains(a)) return false;
        for (Element b : cls[a].elements()) {
            if (cls[b] != cls[a]) return false;  // symmetry + transitivity
        }
    }
    // Compatibility with (+): a~a', b~b' implies a+b ~ a'+b'.
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            const Subset target = cls[g.add(a, b)];
            for (Element a2 : cls[a].elements())
                for (Element b2 : cls[b].elements())
                    if (!target.contains(g.add(a2, b2))) return false;
        }
    return true;
}

std::vector<SubgyrogroupInfo> find_subgyrogroups(const FiniteGyrogroup& g) {
    const std::size_t n = g.order();
    std::set<std::uint64_t> seen;
    std::deque<Subset> queue;
    const Subset trivial = subgyrogroup_closure(g, Subset{});
    queue.push_back(trivial);
    seen.insert(trivial.bits());
    std::vector<Subset> found;
    while (!queue.empty()) {
        const Subset h = queue.front();
        queue.pop_front();
        found.push_back(h);
        for (Element x = 0; x < n; ++x) {
            if (h.contains(x)) continue;
            Subset gen = h;
            gen.insert(x);
            const Subset c = subgyrogroup_closure(g, gen);
            if (seen.insert(c.bits()).second) queue.push_back(c);
        }
    }
    std::sort(found.begin(), found.end(), canonical_less);

    std::vector<SubgyrogroupInfo> out;
    out.reserve(found.size());
    for (Subset h : found) {
        SubgyrogroupInfo info;
        info.members = h;
        info.normal = is_congruence_kernel(g, h);
        if (info.normal) {
            for (Element a = 0; a < n && info.gyration_invariant; ++a)
                for (Element b = 0; b < n && info.gyration_invariant; ++b)
                    for (Element x : h.elements())
                        if (!h.contains(g.gyr(a, b, x))) {
                            info.gyration_invariant = false;
                            info.invariance_witness = {a, b, x};
                            break;
                        }
        }
        out.push_back(std::move(info));
    }
    return out;
}

}  // namespace gyro
