#include "eulerhom/serialize.hpp"

#include <cmath>
#include <limits>

#include "eulerhom/errors.hpp"
#include "json.hpp"

namespace eulerhom {

using json = nlohmann::ordered_json;

namespace {

json num(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return v;
}

double get_num(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "Infinity") return std::numeric_limits<double>::infinity();
        if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
        if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    }
    fail(ErrorKind::DomainError, "not a number in solution document: " + j.dump());
}

SolutionTag tag_from(const std::string& s) {
    for (SolutionTag t : {SolutionTag::Elliptic, SolutionTag::Hyperbolic, SolutionTag::Parabolic,
                          SolutionTag::Rotational, SolutionTag::ParallelShear, SolutionTag::Unknown})
        if (s == tag_name(t)) return t;
    fail(ErrorKind::DomainError, "unknown solution type " + s);
}

TypeBasis basis_from(const std::string& s) {
    for (TypeBasis b : {TypeBasis::SignRule, TypeBasis::Table, TypeBasis::Explicit})
        if (s == basis_name(b)) return b;
    fail(ErrorKind::DomainError, "unknown type basis " + s);
}

Smoothness smoothness_from(const std::string& s) {
    for (Smoothness m : {Smoothness::C1, Smoothness::VortexSheet, Smoothness::CuspEndpoints})
        if (s == smoothness_name(m)) return m;
    fail(ErrorKind::DomainError, "unknown smoothness " + s);
}

// bitwise equality that treats NaN as equal to NaN
bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }


// A sign-definite arch vanishing at both ends is recomputed from its
// parameters when they reproduce the stored span; anything else is
// interpolated from its samples.
std::shared_ptr<const ArcShape> rebuild_shape(const LocalArc& arc) {
    const auto& pr = arc.profile;
    const bool arch = (arc.type.tag == SolutionTag::Hyperbolic || arc.type.tag == SolutionTag::ParallelShear) &&
                      pr.size() >= 2 && pr.front().psi == 0.0 && pr.back().psi == 0.0;
    if (arch) {
        try {
            auto s = hyperbolic_shape(arc.params);
            if (std::fabs(s->span() - arc.span) <= 1e-9 * arc.span) return s;
        } catch (const Error&) {
        }
    }
    const bool periodic = arc.type.tag == SolutionTag::Elliptic || arc.type.tag == SolutionTag::Rotational;
    return sampled_shape(pr, periodic, arc.params);
}
}  // namespace

Diagnostics diagnose(const GlobalSolution& g) {
    const Residual r = solution_residual(g);
    double m = 0.0;
    for (double w : r.weak) m = std::max(m, std::fabs(w));
    return {energy_flux(g).flux, m, r.weak, h1_norm(g)};
}

std::string to_json(const SolutionDocument& doc, int indent) {
    const GlobalSolution& g = doc.solution;
    json pieces = json::array();
    for (const Piece& pc : g.pieces) {
        json prof = json::array();
        for (const ProfilePoint& q : pc.arc.profile) prof.push_back({num(q.theta), num(q.psi), num(q.dpsi)});
        pieces.push_back({{"B", num(pc.arc.params.B)},
                          {"sign", pc.sign},
                          {"offset", num(pc.offset)},
                          {"span", num(pc.arc.span)},
                          {"endpoint_slope", num(pc.arc.endpoint_slope)},
                          {"type", {{"tag", tag_name(pc.arc.type.tag)}, {"basis", basis_name(pc.arc.type.basis)}}},
                          {"profile", std::move(prof)}});
    }
    json j = {{"schema_version", kSchemaVersion},
              {"params", {{"lambda", num(g.lambda)}, {"P", num(g.P)}}},
              {"smoothness", smoothness_name(g.smoothness)},
              {"pieces", std::move(pieces)}};
    if (doc.diagnostics) {
        const Diagnostics& d = *doc.diagnostics;
        json w = json::array();
        for (double v : d.weak_residuals) w.push_back(num(v));
        j["diagnostics"] = {{"flux", num(d.flux)},
                            {"residual_max", num(d.residual_max)},
                            {"weak_residuals", std::move(w)},
                            {"h1_norm", num(d.h1_norm)}};
    }
    return j.dump(indent);
}

SolutionDocument from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        if (j.at("schema_version").get<int>() != kSchemaVersion)
            fail(ErrorKind::DomainError, "unsupported schema_version");
        SolutionDocument doc;
        GlobalSolution& g = doc.solution;
        g.lambda = get_num(j.at("params").at("lambda"));
        g.P = get_num(j.at("params").at("P"));
        g.smoothness = j.contains("smoothness") ? smoothness_from(j["smoothness"].get<std::string>()) : Smoothness::C1;
        for (const json& jp : j.at("pieces")) {
            LocalArc arc{FlowParams(g.lambda, g.P, get_num(jp.at("B"))), get_num(jp.at("span")), {}, 0.0, {}, nullptr};
            for (const json& q : jp.at("profile")) arc.profile.push_back({get_num(q.at(0)), get_num(q.at(1)), get_num(q.at(2))});
            if (jp.contains("endpoint_slope")) arc.endpoint_slope = get_num(jp["endpoint_slope"]);
            if (jp.contains("type"))
                arc.type = {tag_from(jp["type"].at("tag").get<std::string>()),
                            basis_from(jp["type"].at("basis").get<std::string>())};
            arc.shape = rebuild_shape(arc);
            g.pieces.push_back({std::move(arc), jp.at("sign").get<int>(), get_num(jp.at("offset"))});
        }
        if (j.contains("diagnostics")) {
            const json& jd = j["diagnostics"];
            Diagnostics d;
            d.flux = get_num(jd.at("flux"));
            d.residual_max = get_num(jd.at("residual_max"));
            for (const json& v : jd.at("weak_residuals")) d.weak_residuals.push_back(get_num(v));
            d.h1_norm = get_num(jd.at("h1_norm"));
            doc.diagnostics = d;
        }
        return doc;
    } catch (const json::exception& e) {
        fail(ErrorKind::DomainError, std::string("malformed solution document: ") + e.what());
    }
}

bool same_data(const GlobalSolution& a, const GlobalSolution& b) {
    if (!same(a.lambda, b.lambda) || !same(a.P, b.P) || a.smoothness != b.smoothness) return false;
    if (a.pieces.size() != b.pieces.size()) return false;
    for (std::size_t i = 0; i < a.pieces.size(); ++i) {
        const Piece& x = a.pieces[i];
        const Piece& y = b.pieces[i];
        if (x.sign != y.sign || !same(x.offset, y.offset)) return false;
        if (!(x.arc.params == y.arc.params) || !same(x.arc.span, y.arc.span)) return false;
        if (!same(x.arc.endpoint_slope, y.arc.endpoint_slope)) return false;
        if (x.arc.type.tag != y.arc.type.tag || x.arc.type.basis != y.arc.type.basis) return false;
        if (x.arc.profile.size() != y.arc.profile.size()) return false;
        for (std::size_t k = 0; k < x.arc.profile.size(); ++k) {
            const ProfilePoint& p = x.arc.profile[k];
            const ProfilePoint& q = y.arc.profile[k];
            if (!same(p.theta, q.theta) || !same(p.psi, q.psi) || !same(p.dpsi, q.dpsi)) return false;
        }
    }
    return true;
}

bool same_data(const Diagnostics& a, const Diagnostics& b) {
    if (!same(a.flux, b.flux) || !same(a.residual_max, b.residual_max) || !same(a.h1_norm, b.h1_norm)) return false;
    if (a.weak_residuals.size() != b.weak_residuals.size()) return false;
    for (std::size_t i = 0; i < a.weak_residuals.size(); ++i)
        if (!same(a.weak_residuals[i], b.weak_residuals[i])) return false;
    return true;
}

}  // namespace eulerhom
