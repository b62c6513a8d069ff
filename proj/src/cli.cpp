#include "gyro/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gyro/finite.hpp"
#include "gyro/gyrogroup.hpp"
#include "gyro/mobius_analytic.hpp"
#include "gyro/separation.hpp"
#include "gyro/topology.hpp"

namespace gyro::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad files, unparsable values and inadmissible parameters; maps to exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Finding {
    std::string check;
    bool passed = true;
    Witness witness;
    std::optional<double> margin;
};

struct Options {
    std::string out;
    std::optional<double> tol;

    std::string table_file;
    std::string family_file;
    std::string mode = "para";

    std::string condition;
    std::uint64_t n = 1;
    std::string x, v, a;
    std::optional<double> r;
    std::optional<std::uint64_t> m;
    std::optional<std::uint64_t> witness;
    std::uint64_t samples = 10000;
    std::uint64_t seed = kDefaultSeed;

    double radius = 0.8;
    unsigned depth = 10;
    std::string eval;
    std::string csv;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("not a number: '" + s + "'");
    return v;
}

/// "RE,IM" or a single real (on the real axis).
DiskPoint parse_point(const std::string& s) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return DiskPoint(parse_real(s), 0.0);
        return DiskPoint(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
    } catch (const std::domain_error& e) {
        throw InputError("point '" + s + "': " + e.what());
    }
}

CayleyTable load_table(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return load_cayley_table(text);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

FiniteGyrogroup load_gyrogroup(const std::string& path) {
    auto checked = check_axioms(load_table(path));
    if (auto* f = std::get_if<AxiomFailure>(&checked)) {
        throw InputError(path + ": not a gyrogroup (" + std::string(axiom_name(f->axiom)) + "): " + f->message);
    }
    return std::get<FiniteGyrogroup>(std::move(checked));
}

std::string join(const std::vector<Element>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + std::to_string(xs[k]);
    return s;
}

std::vector<Finding> run_check_table(const Options& o, Json& config) {
    config["file"] = o.table_file;
    const CayleyTable table = load_table(o.table_file);
    config["order"] = table.order();
    const auto checked = check_axioms(table);
    std::vector<Finding> out;
    const auto* failure = std::get_if<AxiomFailure>(&checked);
    for (Axiom ax : {Axiom::G1, Axiom::G2, Axiom::G3, Axiom::G4}) {
        Finding f{"axiom." + std::string(axiom_name(ax)), true, {}, std::nullopt};
        if (failure && failure->axiom == ax) {
            f.passed = false;
            f.witness = {{"elements", join(failure->witness)}, {"message", failure->message}};
        } else if (failure && failure->axiom < ax) {
            // Later axioms need the structure the failed one provides.
            f.witness = {{"status", "not_checked"}};
        }
        out.push_back(std::move(f));
    }
    if (const auto* g = std::get_if<FiniteGyrogroup>(&checked)) {
        Finding subs{"structure.subgyrogroups", true, {}, std::nullopt};
        for (const auto& info : find_subgyrogroups(*g)) {
            subs.witness.emplace_back(to_string(info.members), info.normal ? "normal" : "not_normal");
        }
        out.push_back(std::move(subs));
        out.push_back({"structure.gyrations_trivial", true,
                       {{"trivial", g->gyrations_trivial() ? "true" : "false"}}, std::nullopt});
    }
    return out;
}

std::vector<Finding> run_topology(const Options& o, Json& config) {
    config["file"] = o.table_file;
    config["base"] = o.family_file;
    config["mode"] = o.mode;
    const FiniteGyrogroup g = load_gyrogroup(o.table_file);
    const std::string family_text = read_file(o.family_file);
    const NeighborhoodFamily family = [&] {
        try {
            return parse_family_json(g, family_text);
        } catch (const std::invalid_argument& e) {
            throw InputError(o.family_file + ": " + e.what());
        }
    }();
    if (g.order() > kMaxTopologyCarrier) {
        throw InputError("carrier of order " + std::to_string(g.order()) + " exceeds the enumeration limit " +
                         std::to_string(kMaxTopologyCarrier));
    }
    const Mode mode = o.mode == "topo" ? Mode::Topological : Mode::Paratopological;

    std::vector<Finding> out;
    for (const auto& v : check_conditions(g, family, mode).verdicts) {
        out.push_back({"condition." + std::to_string(v.condition), v.passed, v.witness, std::nullopt});
    }
    const GeneratedTopology gen = generate_topology(g, family);
    Finding valid{"topology.valid", gen.topology.has_value(), {}, std::nullopt};
    if (gen.not_topology_witness) valid.witness = *gen.not_topology_witness;
    valid.witness.emplace_back("rule_sets", std::to_string(gen.rule_sets.size()));
    out.push_back(std::move(valid));
    if (!gen.topology) return out;

    Finding base{"topology.base", gen.base_verified, gen.base_witness.value_or(Witness{}), std::nullopt};
    out.push_back(std::move(base));
    for (const auto& v : check_topology_properties(g, *gen.topology, all_properties()).verdicts) {
        out.push_back({std::string(property_id(v.property)), v.passed, v.witness, std::nullopt});
    }
    return out;
}

std::vector<Finding> run_mobius_verify(const Options& o, Json& config) {
    DiskCondition c{};
    try {
        c = parse_disk_condition(o.condition);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    WitnessParams p;
    p.n = o.n;
    if (!o.x.empty()) p.x = parse_point(o.x);
    if (!o.v.empty()) p.v = parse_point(o.v);
    if (!o.a.empty()) p.a = parse_point(o.a);
    p.r = o.r;
    p.m = o.m;
    p.forced_witness = o.witness;
    const double tol = o.tol.value_or(kContainmentTolerance);

    config["condition"] = std::string(condition_name(c));
    config["n"] = o.n;
    if (p.x) config["x"] = to_string(*p.x);
    if (p.v) config["v"] = to_string(*p.v);
    if (p.a) config["a"] = to_string(*p.a);
    if (p.r) config["r"] = *p.r;
    if (p.m) config["m"] = *p.m;
    if (p.forced_witness) config["witness"] = *p.forced_witness;
    config["samples"] = o.samples;
    config["seed"] = o.seed;
    config["tolerance"] = tol;

    VerificationReport rep;
    try {
        rep = sample_verify(c, p, o.samples, o.seed, tol);
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Finding f{"condition." + std::string(condition_name(c)), rep.passed(), {}, rep.worst_margin};
    f.witness.emplace_back("witness_index", std::to_string(rep.witness));
    f.witness.emplace_back("violations", std::to_string(rep.violations));
    f.witness.emplace_back("sup_observed", fmt(rep.sup_observed));
    if (rep.first_violation) {
        f.witness.emplace_back("first_violation_sample", std::to_string(rep.first_violation->index));
        std::string pts;
        for (const auto& q : rep.first_violation->points) pts += (pts.empty() ? "" : ";") + to_string(q);
        f.witness.emplace_back("first_violation_points", pts);
    }
    if (rep.exact) {
        f.witness.emplace_back("exact_image_radius", fmt(rep.exact->image_radius));
        f.witness.emplace_back("exact_target_radius", fmt(rep.exact->target_radius));
        f.witness.emplace_back("exact_holds", rep.exact->holds ? "true" : "false");
    }
    return {f};
}

std::vector<Finding> run_urysohn(const Options& o, Json& config) {
    config["radius"] = o.radius;
    config["depth"] = o.depth;
    if (!o.eval.empty()) config["eval"] = o.eval;
    if (!o.csv.empty()) config["csv"] = o.csv;
    const UrysohnSchedule sched = [&] {
        try {
            return build_schedule(o.radius, o.depth);
        } catch (const std::domain_error& e) {
            throw InputError(e.what());
        }
    }();
    const DyadicVFamily fam = build_vsets(sched, o.depth);
    const double step = std::ldexp(1.0, -static_cast<int>(o.depth));

    std::vector<Finding> out;
    const FactsReport facts = verify_vset_facts(fam);
    for (int k = 1; k <= 3; ++k) {
        Finding f{"urysohn.fact" + std::to_string(k), facts.fact_passed(k), {}, std::nullopt};
        f.witness.emplace_back("checked", std::to_string(facts.checked[k - 1]));
        for (const auto& fail : facts.failures) {
            if (fail.fact == k) {
                f.witness.emplace_back("r1", fail.r1.to_string());
                f.witness.emplace_back("r2", fail.r2.to_string());
                f.witness.emplace_back("detail", fail.detail);
                break;
            }
        }
        out.push_back(std::move(f));
    }

    Finding rec{"urysohn.recursion", true, {}, std::nullopt};
    for (std::uint64_t k = 1; k <= (std::uint64_t{1} << o.depth); ++k) {
        const DyadicRational r(k, o.depth);
        const double stored = std::get<DiskBall>(fam.at(r)).radius();
        const double again = std::get<DiskBall>(rederive_vset(sched, r)).radius();
        if (stored != again) {
            rec.passed = false;
            rec.witness = {{"dyadic", r.to_string()}, {"stored", fmt(stored)}, {"rederived", fmt(again)}};
            break;
        }
    }
    out.push_back(std::move(rec));

    const auto rows = evaluate_grid(fam, o.radius, radial_grid());
    double worst = 0.0;
    double worst_at = 0.0;
    for (const auto& row : rows) {
        if (row.abs_error > worst) {
            worst = row.abs_error;
            worst_at = row.radius;
        }
    }
    out.push_back({"urysohn.oracle_agreement", worst <= step,
                   {{"max_abs_error", fmt(worst)}, {"at_radius", fmt(worst_at)}, {"resolution", fmt(step)}},
                   worst - step});

    const ContinuityCertificate cert = continuity_certificate(o.radius, radial_grid());
    out.push_back({"urysohn.continuity", cert.holds, {}, cert.worst_excess});

    if (!o.eval.empty()) {
        const DiskPoint y = parse_point(o.eval);
        const double value = urysohn_eval(fam, y);
        const double oracle = urysohn_oracle(o.radius, y);
        out.push_back({"urysohn.eval",
                       std::abs(value - oracle) <= step,
                       {{"y", to_string(y)}, {"value", fmt(value)}, {"oracle", fmt(oracle)}},
                       std::abs(value - oracle) - step});
    }
    if (!o.csv.empty()) {
        std::ofstream csv(o.csv, std::ios::binary);
        if (!csv) throw InputError("cannot write '" + o.csv + "'");
        csv << grid_csv(rows);
    }
    return out;
}

std::vector<Finding> run_identities(const Options& o, Json& config) {
    const double tol = o.tol.value_or(kDefaultIdentityTolerance);
    config["samples"] = o.samples;
    config["seed"] = o.seed;
    config["tolerance"] = tol;
    IdentityReport rep;
    if (o.table_file.empty()) {
        rep = verify_gyro_identities(GyroContext{MobiusDisk{}}, o.samples, o.seed, tol);
    } else {
        config["table"] = o.table_file;
        const CayleyTable table = load_table(o.table_file);
        auto checked = check_axioms(table);
        if (auto* g = std::get_if<FiniteGyrogroup>(&checked)) {
            rep = verify_gyro_identities(GyroContext{std::cref(*g)}, o.samples, o.seed, tol);
        } else {
            // Identities are still meaningful on a loop with identity and inverses.
            std::optional<FiniteLoopView> view;
            try {
                view.emplace(table);
            } catch (const std::invalid_argument& e) {
                throw InputError(o.table_file + ": " + e.what());
            }
            rep = verify_gyro_identities(GyroContext{std::cref(*view)}, o.samples, o.seed, tol);
        }
    }
    config["context"] = rep.context;
    std::vector<Finding> out;
    for (const auto& r : rep.results) {
        Finding f{std::string(identity_check_id(r.id)), r.violations == 0, {}, r.max_residual};
        f.witness.emplace_back("violations", std::to_string(r.violations));
        if (r.first_sample) {
            f.witness.emplace_back("sample", std::to_string(*r.first_sample));
            const char* names[] = {"a", "b", "c"};
            for (std::size_t k = 0; k < r.witness.size() && k < 3; ++k) f.witness.emplace_back(names[k], r.witness[k]);
        }
        out.push_back(std::move(f));
    }
    return out;
}

Json render(const std::string& subcommand, const Json& config, const std::vector<Finding>& findings) {
    Json report;
    report["schema"] = 1;
    report["tool"] = std::string(kToolName);
    report["version"] = std::string(kToolVersion);
    report["subcommand"] = subcommand;
    report["config"] = config;
    Json list = Json::array();
    bool all = true;
    for (const auto& f : findings) {
        Json item;
        item["check"] = f.check;
        item["verdict"] = f.passed ? "pass" : "fail";
        Json w = Json::object();
        for (const auto& [k, v] : f.witness) w[k] = v;
        item["witness"] = w;
        if (f.margin && std::isfinite(*f.margin)) {
            item["margin"] = *f.margin;
        } else {
            item["margin"] = nullptr;
        }
        list.push_back(std::move(item));
        all = all && f.passed;
    }
    report["findings"] = std::move(list);
    report["verdict"] = all ? "pass" : "fail";
    return report;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Verification toolkit for gyrogroups and their topologies", std::string(kToolName)};
    app.require_subcommand(1);
    app.add_option("--out", o.out, "Write the JSON report to this file");
    app.add_option("--tol", o.tol, "Override the numeric tolerance")->check(CLI::PositiveNumber);

    auto* check_table = app.add_subcommand("check-table", "Validate a Cayley table against G1-G4");
    check_table->add_option("file", o.table_file)->required();

    auto* topology = app.add_subcommand("topology", "Check a neighbourhood family and its generated topology");
    topology->add_option("file", o.table_file)->required();
    topology->add_option("--base", o.family_file, "Family JSON {\"sets\": [[...], ...]}")->required();
    topology->add_option("--mode", o.mode)->check(CLI::IsMember({"para", "topo"}));

    auto* mobius = app.add_subcommand("mobius", "Unit-disk certification");
    mobius->require_subcommand(1);
    auto* verify = mobius->add_subcommand("verify", "Sample-verify one base condition");
    verify->add_option("--condition", o.condition, "1..9 or equiv")->required();
    verify->add_option("--n", o.n)->check(CLI::PositiveNumber);
    verify->add_option("--x", o.x, "RE,IM");
    verify->add_option("--v", o.v, "RE,IM");
    verify->add_option("--a", o.a, "RE,IM");
    verify->add_option("--r", o.r);
    verify->add_option("--m", o.m, "Second base index for condition 4")->check(CLI::PositiveNumber);
    verify->add_option("--witness", o.witness, "Force the witness index")->check(CLI::PositiveNumber);
    verify->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    verify->add_option("--seed", o.seed);

    auto* urysohn = app.add_subcommand("urysohn", "Build and check the dyadic Urysohn family on the disk");
    urysohn->add_option("--radius", o.radius)->required();
    urysohn->add_option("--depth", o.depth)->required()->check(CLI::Range(1U, kMaxUrysohnDepth));
    urysohn->add_option("--eval", o.eval, "Point RE,IM or modulus");
    urysohn->add_option("--csv", o.csv, "Write the radial grid as CSV");

    auto* identities = app.add_subcommand("identities", "Seeded check of the gyrogroup identities");
    identities->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    identities->add_option("--seed", o.seed);
    identities->add_option("--table", o.table_file, "Cayley table instead of the unit disk");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kExitInputError;
    }

    Json config = Json::object();
    std::string name;
    std::vector<Finding> findings;
    try {
        if (o.tol) config["tol"] = *o.tol;
        if (*check_table) {
            name = "check-table";
            findings = run_check_table(o, config);
        } else if (*topology) {
            name = "topology";
            findings = run_topology(o, config);
        } else if (*verify) {
            name = "mobius verify";
            findings = run_mobius_verify(o, config);
        } else if (*urysohn) {
            name = "urysohn";
            findings = run_urysohn(o, config);
        } else {
            name = "identities";
            findings = run_identities(o, config);
        }
    } catch (const InputError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kExitInputError;
    }

    const Json report = render(name, config, findings);
    const std::string text = report.dump(2) + "\n";
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << kToolName << ": cannot write '" << o.out << "'\n";
            return kExitInputError;
        }
        file << text;
    }
    return report["verdict"] == "pass" ? kExitPass : kExitViolation;
}

}  // namespace gyro::cli
