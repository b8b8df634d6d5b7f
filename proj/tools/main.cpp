// axrel: command-line front end of the workbench.
//
// Exit codes: 0 every verdict holds, 1 some verdict fails, 2 some verdict is
// unknown and none fails, 64 usage error, 65 bad data or parameters.

#include "figure.hpp"

#include "axrel/accel/accel.hpp"
#include "axrel/errors.hpp"
#include "axrel/genrel/genrel.hpp"
#include "axrel/kinematics/kinematics.hpp"
#include "axrel/model/io.hpp"
#include "axrel/semantics/check.hpp"
#include "axrel/syntax/corpus.hpp"
#include "axrel/syntax/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace axrel;
using ojson = nlohmann::ordered_json;

constexpr int kExitFails = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string approx(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// literal plus the marked decimal, e.g. "4/5 ≈ 0.8"
std::string exact(const ExactReal& v) { return v.to_string() + " ≈ " + v.to_decimal(12); }

std::string shown(const ProperTime& p) {
    if (is_exact(p)) return exact(std::get<ExactReal>(p));
    return to_string(p) + " ≈ " + approx(to_double(p));
}

// pads to a width in code points; the decimal marker is multi-byte
std::string pad(const std::string& s, std::size_t width) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n >= width ? s + " " : s + std::string(width - n, ' ');
}

void row(std::ostream& os, const std::string& label, const std::string& value) { os << pad(label, 24) << value << "\n"; }

ExactReal literal(const std::string& text, const char* what) {
    try {
        return ExactReal::parse(text);
    } catch (const Error& e) {
        throw InvalidConfig(std::string(what) + ": " + e.what());
    }
}

genrel::Vec4 vec4(const std::string& text, const char* what) {
    genrel::Vec4 v;
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == 4) throw InvalidConfig(std::string(what) + " needs 4 components");
        v[i++] = literal(item, what).to_double();
    }
    if (i != 4) throw InvalidConfig(std::string(what) + " needs 4 components");
    return v;
}

int exit_code(const std::vector<const Verdict*>& vs) {
    bool unknown = false;
    for (const Verdict* v : vs) {
        if (v->fails()) return kExitFails;
        if (v->outcome == Outcome::Unknown) unknown = true;
    }
    return unknown ? kExitUnknown : 0;
}

syntax::Theory theory_named(const std::string& name) {
    try {
        return syntax::axiom_corpus(name);
    } catch (const UnknownTheory& e) {
        throw UsageError(e.what());
    }
}

// the theory restricted to the named axioms; IND selects the schema
syntax::Theory restrict(const syntax::Theory& t, const std::vector<std::string>& names) {
    if (names.empty()) return t;
    syntax::Theory r{t.name, {}, {}};
    for (const auto& n : names) {
        if (n == "IND" && t.has_schema("IND")) {
            for (const auto& s : t.schemas)
                if (s.name == "IND") r.schemas.push_back(s);
            continue;
        }
        const syntax::Axiom* a = t.find(n);
        if (!a) throw UsageError("theory " + t.name + " has no axiom " + n);
        r.axioms.push_back(*a);
    }
    return r;
}

struct Global {
    Budget budget;
    std::string format = "text";
};

// ---- parse ----

int cmd_parse(const Global& g, const std::string& file, const std::string& formula, bool expand) {
    if (file.empty() == formula.empty()) throw UsageError("parse takes a FILE or --formula");
    auto out = [&](const syntax::FormulaPtr& f) { return syntax::print(expand ? syntax::expand_definitions(f) : f); };
    if (!formula.empty()) {
        std::cout << out(syntax::parse(formula)) << "\n";
    } else {
        std::string text = read_file(file);
        bool blocks = text.find("axiom ") != std::string::npos || text.find("theorem ") != std::string::npos;
        if (blocks) {
            auto items = syntax::parse_formula_file(text);
            if (expand)
                for (auto& it : items) it.formula = syntax::expand_definitions(it.formula);
            std::cout << syntax::print_formula_file(items);
        } else {
            std::cout << out(syntax::parse(text)) << "\n";
        }
    }
    std::cout << "# seed " << g.budget.seed << "\n";
    return 0;
}

// ---- axioms ----

int cmd_axioms_list(const Global& g, const std::string& theory) {
    syntax::Theory t = theory_named(theory);
    std::cout << t.name << "\n";
    for (const auto& a : t.axioms) {
        std::cout << "  " << std::left << std::setw(14) << a.name << a.formulas.size() << " sentence"
                  << (a.formulas.size() == 1 ? "" : "s") << (a.reconstruction ? ", reconstructed" : "") << "\n";
    }
    for (const auto& s : t.schemas) std::cout << "  " << std::left << std::setw(14) << s.name << "schema\n";
    std::cout << "seed " << g.budget.seed << "\n";
    return 0;
}

int cmd_axioms_show(const Global& g, const std::string& theory, const std::string& name) {
    syntax::Theory t = theory_named(theory);
    const syntax::Axiom* a = t.find(name);
    if (!a) throw UsageError("theory " + t.name + " has no axiom " + name);
    if (a->reconstruction) std::cout << "# reconstructed first-order form\n";
    if (!a->note.empty()) std::cout << "# " << a->note << "\n";
    std::cout << syntax::print_formula_file(a->formulas);
    std::cout << "# seed " << g.budget.seed << "\n";
    return 0;
}

// ---- check ----

std::string recheck_line(const Structure& s, const syntax::Theory& t, const AxiomRecord& rec, const Budget& b) {
    for (const auto& f : t.sentences()) {
        if (f.name != rec.name) continue;
        if (rec.verdict.evidence.empty()) return "";
        try {
            return recheck(s, f.formula, rec.verdict, b).label();
        } catch (const Error& e) {
            return std::string("not re-checkable: ") + e.what();
        }
    }
    return "";
}

int cmd_check(const Global& g, const std::string& theory, const std::string& model,
              const std::vector<std::string>& only) {
    syntax::Theory t = restrict(theory_named(theory), only);
    Structure s = load_model(model);
    TheoryReport r = check_theory(s, t, g.budget);
    if (g.format == "json") {
        std::cout << r.to_json();
    } else {
        std::cout << r.to_text();
        for (const auto& rec : r.records) {
            if (!rec.verdict.fails()) continue;
            std::string line = recheck_line(s, t, rec, g.budget);
            if (!line.empty()) std::cout << "recheck " << rec.name << ": " << line << "\n";
        }
    }
    std::vector<const Verdict*> vs;
    for (const auto& rec : r.records) vs.push_back(&rec.verdict);
    return exit_code(vs);
}

// ---- report ----

int cmd_report(const Global& g, const std::string& model, std::vector<std::string> theories, std::size_t jobs) {
    if (theories.empty()) theories = {"SpecRel", "AccRel", "GenRel(3)"};
    Structure s = load_model(model);
    std::vector<syntax::Theory> ts;
    for (const auto& n : theories) ts.push_back(theory_named(n));

    // suites run concurrently; the report keeps the order given
    std::vector<TheoryReport> reports(ts.size());
    for (std::size_t i = 0; i < ts.size(); i += std::max<std::size_t>(jobs, 1)) {
        std::vector<std::future<TheoryReport>> batch;
        for (std::size_t k = i; k < std::min(ts.size(), i + std::max<std::size_t>(jobs, 1)); ++k)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                       [&, k] { return check_theory(s, ts[k], g.budget); }));
        for (std::size_t k = 0; k < batch.size(); ++k) reports[i + k] = batch[k].get();
    }

    ojson j;
    j["schema"] = "axrel-report/1";
    j["model"] = s.name();
    j["seed"] = g.budget.seed;
    j["samples"] = g.budget.samples;
    j["max_steps"] = g.budget.max_steps;
    j["theories"] = ojson::array();
    std::vector<const Verdict*> vs;
    bool all = true;
    for (const auto& r : reports) {
        ojson e = ojson::parse(r.to_json());
        e.erase("schema");
        j["theories"].push_back(std::move(e));
        all = all && r.all_hold();
        for (const auto& rec : r.records) vs.push_back(&rec.verdict);
    }
    j["all_hold"] = all;
    std::cout << j.dump(2) << "\n";
    return exit_code(vs);
}

// ---- effects ----

int cmd_effects(const Global& g, const std::string& vtext, const std::string& ltext, bool sweep) {
    ExactReal len = literal(ltext, "--length");
    if (sweep) {
        std::vector<EffectReport> rows;
        for (int k = 0; k < 10; ++k) rows.push_back(effects(ExactReal::rational(k, 10), len));
        if (g.format == "csv") {
            std::cout << "# seed " << g.budget.seed << "\n" << effects_csv(rows);
            return 0;
        }
        if (g.format == "svg") throw UsageError("--sweep has no svg form");
        bool match = true;
        std::cout << pad("v", 8) << pad("time dilation", 36) << "sqrt(1 - v^2)\n";
        for (const auto& r : rows) {
            ExactReal expect = sqrt(ExactReal(1) - r.v * r.v);
            match = match && r.time_dilation == expect && r.length_contraction == expect;
            std::cout << pad(r.v.to_string(), 8) << pad(exact(r.time_dilation), 36)
                      << (r.time_dilation == expect ? "equal" : "differs") << "\n";
        }
        std::cout << (match ? "every row equals sqrt(1 - v^2)" : "some row differs from sqrt(1 - v^2)") << "\n";
        std::cout << "seed " << g.budget.seed << "\n";
        return match ? 0 : kExitFails;
    }

    if (vtext.empty()) throw UsageError("effects needs --v or --sweep");
    ExactReal v = literal(vtext, "--v");
    EffectReport r = effects(v, len);
    if (g.format == "svg") {
        std::cout << "<!-- axrel effects v=" << v.to_string() << " seed " << g.budget.seed << " -->\n"
                  << cli::ship_figure(r);
        return 0;
    }
    if (g.format == "csv") {
        std::cout << "# seed " << g.budget.seed << "\n" << effects_csv({r});
        return 0;
    }
    // the same ship seen from the other side
    PoincareMap w = boost(Vec3(v, ExactReal(0), ExactReal(0)));
    EffectReport a = effects_between(w, len), b = effects_between(w.inverse(), len);
    bool reciprocal = a.v == b.v && a.time_dilation == b.time_dilation &&
                      a.length_contraction == b.length_contraction && a.clock_asynchrony == b.clock_asynchrony;
    row(std::cout, "speed", exact(r.v));
    row(std::cout, "ship length", exact(r.ship_length));
    row(std::cout, "time dilation", exact(r.time_dilation));
    row(std::cout, "length contraction", exact(r.length_contraction));
    row(std::cout, "clock asynchrony", exact(r.clock_asynchrony));
    row(std::cout, "reciprocity", reciprocal ? "holds" : "fails");
    row(std::cout, "seed", std::to_string(g.budget.seed));
    return reciprocal ? 0 : kExitFails;
}

// ---- twin ----

int cmd_twin(const Global& g, const std::string& file, std::size_t competitors, std::size_t steps) {
    ScenarioFile f = load_scenario(file);
    if (!f.twin) throw FormatError(file + ": no twin scenario");
    const AcceleratedScenario& sc = *f.twin;
    TwinResult r = twin_paradox(sc);
    if (g.format == "csv") {
        std::cout << "# seed " << g.budget.seed << "\n"
                  << trajectory_csv(sc.traveler.worldline, sc.departure[3], sc.reunion[3], steps);
        return 0;
    }
    row(std::cout, "scenario", sc.name);
    row(std::cout, "home", shown(r.home));
    row(std::cout, "traveler", shown(r.traveler));
    row(std::cout, "traveler accelerates", r.accelerated ? "yes" : "no");
    int code = 0;
    if (is_exact(r.home) && is_exact(r.traveler)) {
        const auto& h = std::get<ExactReal>(r.home);
        const auto& t = std::get<ExactReal>(r.traveler);
        row(std::cout, "home minus traveler", exact(h - t));
    }
    if (competitors > 0) {
        CompetitorSweep cs = maximal_aging_sweep(sc.departure, sc.reunion, competitors, g.budget.seed);
        row(std::cout, "inertial", exact(cs.inertial));
        row(std::cout, "competitors", std::to_string(cs.competitors) + " piecewise, " + std::to_string(cs.not_shorter) +
                                          " not shorter");
        if (cs.not_shorter) code = kExitFails;
    }
    row(std::cout, "seed", std::to_string(g.budget.seed));
    return code;
}

// ---- gtd ----

int cmd_gtd(const Global& g, const std::string& file, std::string gtext, std::string htext, bool sweep,
            const std::string& bound) {
    ShipConfig cfg;
    if (!file.empty()) {
        ScenarioFile f = load_scenario(file);
        if (!f.ship) throw FormatError(file + ": no ship section");
        cfg = *f.ship;
    }
    if (!gtext.empty()) cfg.g = literal(gtext, "--g");
    if (!htext.empty()) cfg.h = literal(htext, "--h");
    if (file.empty() && (htext.empty() || (gtext.empty() && !sweep)))
        throw UsageError("gtd needs --g and --h, or a scenario file");

    int code = 0;
    if (sweep) {
        if (g.format == "csv") std::cout << "# seed " << g.budget.seed << "\ng,ratio\n";
        ExactReal prev;
        bool monotone = true;
        for (int k = 0; k <= 32; ++k) {
            ShipConfig c{ExactReal::rational(k, 4), cfg.h};
            ExactReal r = gtd_clock_ratio(c);
            if (k > 0 && !(r > prev)) monotone = false;
            prev = r;
            if (g.format == "csv")
                std::cout << c.g.to_decimal(12) << "," << r.to_decimal(12) << "\n";
            else
                row(std::cout, "g " + c.g.to_string(), exact(r));
        }
        if (g.format == "csv") return monotone ? 0 : kExitFails;
        row(std::cout, "increasing in g", monotone ? "yes" : "no");
        if (!monotone) code = kExitFails;
    } else {
        ExactReal r = gtd_clock_ratio(cfg);
        if (g.format == "csv") {
            std::cout << "# seed " << g.budget.seed << "\ng,h,ratio\n"
                      << cfg.g.to_decimal(12) << "," << cfg.h.to_decimal(12) << "," << r.to_decimal(12) << "\n";
            return 0;
        }
        row(std::cout, "g", exact(cfg.g));
        row(std::cout, "h", exact(cfg.h));
        row(std::cout, "nose / rear clock rate", exact(r));
    }
    if (!bound.empty()) {
        ExactReal m = literal(bound, "--bound");
        ExactReal threshold = (m - ExactReal(1)) / cfg.h;
        row(std::cout, "ratio exceeds " + m.to_string(), "for g > " + exact(threshold));
        bool below = gtd_clock_ratio({threshold, cfg.h}) == m;
        bool above = gtd_clock_ratio({threshold + ExactReal::rational(1, 1000), cfg.h}) > m;
        row(std::cout, "at the threshold", below ? "equal" : "not equal");
        row(std::cout, "just above", above ? "exceeds" : "does not exceed");
        if (!below || !above) code = kExitFails;
    }
    row(std::cout, "seed", std::to_string(g.budget.seed));
    return code;
}

// ---- geodesic ----

int cmd_geodesic(const Global& g, const std::string& file, std::string x0, std::string u0, std::optional<double> span,
                 std::optional<double> step) {
    std::string text = read_file(file);
    genrel::MetricChart c = genrel::parse_chart(text);
    genrel::GeodesicOptions opt;
    // defaults from the file's "geodesic" section
    ojson j = ojson::parse(text, nullptr, false);
    if (j.is_object() && j.contains("geodesic")) {
        const ojson& d = j["geodesic"];
        auto join = [](const ojson& a) {
            std::string s;
            for (const auto& e : a) s += (s.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
            return s;
        };
        if (x0.empty() && d.contains("x0")) x0 = join(d["x0"]);
        if (u0.empty() && d.contains("u0")) u0 = join(d["u0"]);
        if (!span && d.contains("span")) span = d["span"].get<double>();
    }
    if (x0.empty() || u0.empty()) throw UsageError("geodesic needs --x0 and --u0");
    if (span) opt.span = *span;
    if (step) opt.step = *step;
    if (!(opt.span > 0) || !(opt.step > 0)) throw InvalidConfig("span and step must be positive");
    genrel::GeodesicResult r = genrel::geodesic(c, vec4(x0, "--x0"), vec4(u0, "--u0"), opt);
    if (g.format == "csv") {
        std::cout << "# seed " << g.budget.seed << "\n" << genrel::geodesic_csv(c, r);
        return 0;
    }
    const genrel::Vec4& end = r.x.back();
    row(std::cout, "chart", c.name);
    row(std::cout, "span", approx(r.s.back()) + (r.truncated ? " (left the chart)" : ""));
    row(std::cout, "steps", std::to_string(r.steps) + ", " + std::to_string(r.halvings) + " halvings");
    row(std::cout, "end", "(" + approx(end[0]) + ", " + approx(end[1]) + ", " + approx(end[2]) + ", " + approx(end[3]) + ")");
    row(std::cout, "g(u,u) drift", approx(r.drift));
    row(std::cout, "seed", std::to_string(g.budget.seed));
    return 0;
}

template <class T>
bool env_count(const char* name, T& out, bool positive) {
    const char* v = std::getenv(name);
    if (!v) return true;
    std::string_view text(v);
    T value{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || (positive && value == 0)) {
        std::cerr << "axrel: " << name << "=" << text << " is not a " << (positive ? "positive " : "") << "integer\n";
        return false;
    }
    out = value;
    return true;
}

int run(int argc, char** argv) {
    CLI::App app{"axrel: axiomatic relativity workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    // budget defaults come from the environment; flags override
    if (!env_count("AXREL_SAMPLES", g.budget.samples, true) || !env_count("AXREL_SEED", g.budget.seed, false) ||
        !env_count("AXREL_MAX_STEPS", g.budget.max_steps, true))
        return kExitUsage;
    app.add_option("--samples", g.budget.samples, "candidates per quantifier block (env AXREL_SAMPLES)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.budget.seed, "seed for every sampled choice (env AXREL_SEED)");
    app.add_option("--max-steps", g.budget.max_steps, "atom evaluations before giving up (env AXREL_MAX_STEPS)")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;
    auto format = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--format", g.format, "output format")->check(CLI::IsMember(allowed));
    };

    std::string file, formula, theory = "SpecRel", name, model, v, length = "1", gval, hval, bound, x0, u0;
    std::vector<std::string> only, theories;
    bool expand = false, sweep = false;
    std::size_t competitors = 0, steps = 10, jobs = 1;
    std::optional<double> span, step;

    auto* parse = app.add_subcommand("parse", "parse and print formulas in canonical form");
    parse->add_option("file", file, "formula or formula file");
    parse->add_option("--formula", formula, "formula text");
    parse->add_flag("--expand", expand, "remove defined symbols");
    parse->callback([&] { action = [&] { return cmd_parse(g, file, formula, expand); }; });

    auto* axioms = app.add_subcommand("axioms", "inspect the axiom corpus");
    axioms->require_subcommand(1);
    auto* list = axioms->add_subcommand("list", "axioms of a theory");
    list->add_option("--theory", theory, "SpecRel, AccRelMinus, AccRel or GenRel(n)");
    list->callback([&] { action = [&] { return cmd_axioms_list(g, theory); }; });
    auto* show = axioms->add_subcommand("show", "sentences of one axiom");
    show->add_option("name", name)->required();
    show->add_option("--theory", theory, "SpecRel, AccRelMinus, AccRel or GenRel(n)");
    show->callback([&] { action = [&] { return cmd_axioms_show(g, theory, name); }; });

    auto* check = app.add_subcommand("check", "check a theory in a model");
    check->add_option("theory", theory)->required();
    check->add_option("model", model)->required()->check(CLI::ExistingFile);
    check->add_option("--axiom", only, "check only these axioms");
    format(check, {"text", "json"});
    check->callback([&] { action = [&] { return cmd_check(g, theory, model, only); }; });

    auto* report = app.add_subcommand("report", "machine-readable report of several theories");
    report->add_option("model", model)->required()->check(CLI::ExistingFile);
    report->add_option("--theory", theories, "theories to check (default SpecRel AccRel GenRel(3))");
    report->add_option("--jobs", jobs, "suites run at once")->check(CLI::PositiveNumber);
    report->callback([&] { action = [&] { return cmd_report(g, model, theories, jobs); }; });

    auto* eff = app.add_subcommand("effects", "time dilation, length contraction and clock asynchrony");
    eff->add_option("--v", v, "relative velocity, a field literal");
    eff->add_option("--length", length, "proper ship length");
    eff->add_flag("--sweep", sweep, "v = 0, 1/10, ..., 9/10");
    format(eff, {"text", "csv", "svg"});
    eff->callback([&] { action = [&] { return cmd_effects(g, v, length, sweep); }; });

    auto* twin = app.add_subcommand("twin", "proper times of a twin scenario");
    twin->add_option("scenario", file)->required()->check(CLI::ExistingFile);
    twin->add_option("--competitors", competitors, "seeded piecewise-inertial competitors");
    twin->add_option("--steps", steps, "trajectory rows for csv")->check(CLI::PositiveNumber);
    format(twin, {"text", "csv"});
    twin->callback([&] { action = [&] { return cmd_twin(g, file, competitors, steps); }; });

    auto* gtd = app.add_subcommand("gtd", "clock rates along a uniformly accelerated ship");
    gtd->set_help_flag("--help", "print this help and exit");
    gtd->add_option("scenario", file, "scenario with a ship section")->check(CLI::ExistingFile);
    gtd->add_option("--g", gval, "rear proper acceleration");
    gtd->add_option("--h", hval, "ship length");
    gtd->add_flag("--sweep", sweep, "g = 0, 1/4, ..., 8");
    gtd->add_option("--bound", bound, "threshold on g beyond which the ratio exceeds this");
    format(gtd, {"text", "csv"});
    gtd->callback([&] { action = [&] { return cmd_gtd(g, file, gval, hval, sweep, bound); }; });

    auto* geo = app.add_subcommand("geodesic", "timelike geodesic in a metric chart");
    geo->add_option("chart", file)->required()->check(CLI::ExistingFile);
    geo->add_option("--x0", x0, "start event, 4 comma-separated values");
    geo->add_option("--u0", u0, "initial tangent, 4 comma-separated values");
    geo->add_option("--span", span, "affine parameter length");
    geo->add_option("--step", step, "initial step");
    format(geo, {"text", "csv"});
    geo->callback([&] { action = [&] { return cmd_geodesic(g, file, x0, u0, span, step); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "axrel: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownAxiom& e) {
        std::cerr << "axrel: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "axrel: " << e.what() << "\n";
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "axrel: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
