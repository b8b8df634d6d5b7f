#include "axrel/model/io.hpp"

#include "axrel/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace axrel {

using nlohmann::json;

namespace {

ExactReal lit(const json& j, const char* what) {
    if (j.is_string()) return ExactReal::parse(j.get<std::string>());
    if (j.is_number_integer()) return ExactReal(j.get<long>());
    throw FormatError(std::string(what) + ": expected a field literal string");
}

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::vector<ExactReal> lits(const json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n)
        throw FormatError(std::string(what) + ": expected an array of " + std::to_string(n) + " literals");
    std::vector<ExactReal> out;
    for (const auto& e : j) out.push_back(lit(e, what));
    return out;
}

Vec3 vec3(const json& j, const char* what) {
    auto v = lits(j, 3, what);
    return Vec3(v[0], v[1], v[2]);
}

Coord4 coord4(const json& j, const char* what) {
    auto v = lits(j, 4, what);
    return Coord4(v[0], v[1], v[2], v[3]);
}

std::array<long, 4> quaternion(const json& j) {
    if (!j.is_array() || j.size() != 4) throw FormatError("rotation: expected four integers");
    std::array<long, 4> q{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number_integer()) throw FormatError("rotation: expected integers");
        q[i] = j[i].get<long>();
    }
    return q;
}

json out(const ExactReal& v) { return v.to_string(); }
json out(const Vec3& v) { return json::array({out(v[0]), out(v[1]), out(v[2])}); }
json out(const Coord4& v) { return json::array({out(v[0]), out(v[1]), out(v[2]), out(v[3])}); }

Worldline worldline_from(const json& j) {
    std::string kind = need(j, "kind").get<std::string>();
    Worldline w = [&]() {
        if (kind == "inertial") return Worldline::inertial(coord4(need(j, "point"), "point"), vec3(need(j, "velocity"), "velocity"));
        if (kind == "photon") return Worldline::photon(coord4(need(j, "point"), "point"), vec3(need(j, "direction"), "direction"));
        if (kind == "piecewise") {
            std::vector<Coord4> ev;
            for (const auto& e : need(j, "events")) ev.push_back(coord4(e, "events"));
            return Worldline::piecewise(std::move(ev));
        }
        if (kind == "hyperbolic")
            return Worldline::hyperbolic(vec3(need(j, "center"), "center"), lit(need(j, "t_center"), "t_center"),
                                         vec3(need(j, "direction"), "direction"), lit(need(j, "rho"), "rho"));
        throw FormatError("unknown worldline kind '" + kind + "'");
    }();
    if (j.contains("domain")) {
        const json& d = j.at("domain");
        if (!d.is_array() || d.size() != 2) throw FormatError("domain: expected [lo, hi]");
        std::optional<ExactReal> lo, hi;
        if (!d[0].is_null()) lo = lit(d[0], "domain");
        if (!d[1].is_null()) hi = lit(d[1], "domain");
        w = w.with_domain(lo, hi);
    }
    return w;
}

json worldline_to(const Worldline& w) {
    json j;
    j["kind"] = w.kind_name();
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, InertialLine>) {
                j["point"] = out(d.point);
                j["velocity"] = out(d.velocity);
            } else if constexpr (std::is_same_v<T, PhotonLine>) {
                j["point"] = out(d.point);
                j["direction"] = out(d.direction);
            } else if constexpr (std::is_same_v<T, PiecewiseInertial>) {
                j["events"] = json::array();
                for (const auto& e : d.events) j["events"].push_back(out(e));
            } else if constexpr (std::is_same_v<T, HyperbolicLine>) {
                j["center"] = out(d.center);
                j["t_center"] = out(d.t_center);
                j["direction"] = out(d.direction);
                j["rho"] = out(d.rho);
            } else {
                throw FormatError("numeric worldline '" + d.label + "' has no textual form");
            }
        },
        w.data());
    if (w.t_lo() || w.t_hi()) {
        j["domain"] = json::array({w.t_lo() ? out(*w.t_lo()) : json(nullptr), w.t_hi() ? out(*w.t_hi()) : json(nullptr)});
    }
    return j;
}

DomainBox box_from(const json& j) {
    DomainBox b;
    for (const char* side : {"lo", "hi"}) {
        if (!j.contains(side)) continue;
        const json& a = j.at(side);
        if (!a.is_array() || a.size() != 4) throw FormatError("domain bounds: expected four entries");
        for (std::size_t i = 0; i < 4; ++i) {
            if (a[i].is_null()) continue;
            (std::string(side) == "lo" ? b.lo : b.hi)[i] = lit(a[i], "domain bound");
        }
    }
    return b;
}

json box_to(const DomainBox& b) {
    json j;
    j["lo"] = json::array();
    j["hi"] = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        j["lo"].push_back(b.lo[i] ? out(*b.lo[i]) : json(nullptr));
        j["hi"].push_back(b.hi[i] ? out(*b.hi[i]) : json(nullptr));
    }
    return j;
}

Chart chart_from(const json& j) {
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "observer") {
        ObserverParams p;
        p.velocity = vec3(need(j, "velocity"), "velocity");
        if (j.contains("rotation")) p.quaternion = quaternion(j.at("rotation"));
        if (j.contains("origin")) p.origin = coord4(j.at("origin"), "origin");
        return AffineChart(p);
    }
    if (kind == "affine") {
        const json& m = need(j, "matrix");
        if (!m.is_array() || m.size() != 4) throw FormatError("matrix: expected four rows");
        Matrix4 a;
        for (std::size_t r = 0; r < 4; ++r) {
            auto row = lits(m[r], 4, "matrix row");
            for (std::size_t c = 0; c < 4; ++c) a(r, c) = row[c];
        }
        Coord4 t = j.contains("translation") ? coord4(j.at("translation"), "translation") : Coord4();
        std::optional<DomainBox> dom;
        if (j.contains("domain")) dom = box_from(j.at("domain"));
        try {
            return AffineChart(AffineMap(a, t), dom);
        } catch (const DivisionByZero&) {
            throw FormatError("affine chart matrix is singular");
        }
    }
    if (kind == "rindler") return rindler_chart(lit(need(j, "g"), "g"));
    throw FormatError("unknown chart kind '" + kind + "'");
}

json chart_to(const Chart& c) {
    if (auto* a = std::get_if<AffineChart>(&c)) {
        json j;
        if (a->params && !a->domain) {
            j["kind"] = "observer";
            j["velocity"] = out(a->params->velocity);
            j["rotation"] = a->params->quaternion;
            j["origin"] = out(a->params->origin);
            return j;
        }
        j["kind"] = "affine";
        j["matrix"] = json::array();
        for (std::size_t r = 0; r < 4; ++r) {
            json row = json::array();
            for (std::size_t k = 0; k < 4; ++k) row.push_back(out(a->to_observer.linear()(r, k)));
            j["matrix"].push_back(row);
        }
        j["translation"] = out(a->to_observer.translation());
        if (a->domain) j["domain"] = box_to(*a->domain);
        return j;
    }
    const auto& s = std::get<SmoothChart>(c);
    if (s.descriptor.empty()) throw FormatError("numeric chart has no textual form");
    return json::parse(s.descriptor);
}

}  // namespace

Structure parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw FormatError("model file must be a JSON object");
        if (j.value("format", "") != "axrel-model") throw FormatError("not an axrel-model file");
        if (j.value("version", 0) != 1) throw FormatError("unsupported model version");
        Structure s(j.value("name", ""));
        if (j.contains("families")) {
            const json& f = j.at("families");
            s.set_families(f.value("photons", false), f.value("inertial", false));
        }
        if (j.contains("constants"))
            for (const auto& c : j.at("constants")) s.add_constant(lit(c, "constant"));
        if (j.contains("observers")) {
            // shorthand: standard inertial observers, body and chart at once
            for (const auto& o : j.at("observers")) {
                ObserverSpec spec;
                spec.name = need(o, "name").get<std::string>();
                spec.velocity = vec3(need(o, "velocity"), "velocity");
                if (o.contains("rotation")) spec.quaternion = quaternion(o.at("rotation"));
                if (o.contains("origin")) spec.origin = coord4(o.at("origin"), "origin");
                if (spec.velocity.norm2() >= 1) throw SuperluminalObserver("observer '" + spec.name + "' is not sub-light");
                s.add_body(inertial_body(spec.name, spec.origin, spec.velocity));
                s.set_chart(spec.name, AffineChart(ObserverParams{spec.velocity, spec.quaternion, spec.origin}));
            }
        }
        if (j.contains("bodies")) {
            for (const auto& b : j.at("bodies")) {
                s.add_body(Body(need(b, "id").get<std::string>(), b.value("inertial", false), b.value("photon", false),
                                worldline_from(need(b, "worldline"))));
            }
        }
        if (j.contains("charts")) {
            for (const auto& c : j.at("charts")) s.set_chart(need(c, "observer").get<std::string>(), chart_from(c));
        }
        return s;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model file: ") + e.what());
    }
}

Structure load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string print_model(const Structure& s) {
    json j;
    j["format"] = "axrel-model";
    j["version"] = 1;
    j["name"] = s.name();
    j["families"] = {{"photons", s.photon_family()}, {"inertial", s.inertial_family()}};
    j["constants"] = json::array();
    for (const auto& c : s.constants()) j["constants"].push_back(out(c));
    j["bodies"] = json::array();
    for (const auto& b : s.bodies()) {
        json e;
        e["id"] = b.id;
        e["inertial"] = b.inertial;
        e["photon"] = b.photon;
        e["worldline"] = worldline_to(b.worldline);
        j["bodies"].push_back(e);
    }
    j["charts"] = json::array();
    for (const auto& o : s.observers()) {
        json c = chart_to(*s.chart(o));
        c["observer"] = o;
        j["charts"].push_back(c);
    }
    return j.dump(2) + "\n";
}

Worldline parse_worldline(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("worldline: ") + e.what());
    }
    return worldline_from(j);
}

std::string print_worldline(const Worldline& w) { return worldline_to(w).dump(); }

}  // namespace axrel
