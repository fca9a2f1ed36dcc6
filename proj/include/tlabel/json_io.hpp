#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tlabel/discharging.hpp"
#include "tlabel/exact.hpp"
#include "tlabel/reduction.hpp"

namespace tlabel {

using Json = nlohmann::ordered_json;

inline Json element_json(const Element& x) {
    if (const Vertex* v = std::get_if<Vertex>(&x))
        return Json{{"vertex", *v}};
    const Edge& e = std::get<Edge>(x);
    return Json{{"edge", {e.u, e.v}}};
}

inline Json labeling_json(const PartialLabeling& phi) {
    Json vertices = Json::array();
    for (Vertex v = 0; v < phi.num_vertices(); ++v)
        vertices.push_back(phi.vertex(v) ? Json(*phi.vertex(v)) : Json(nullptr));
    Json edges = Json::array();
    for (const auto& [e, c] : phi.edge_colors())
        edges.push_back({e.u, e.v, c});
    return Json{{"vertices", vertices}, {"edges", edges}};
}

inline Json solve_json(const SolveResult& r) {
    Json j{{"schema", 1}};
    j["lambda"] = r.lambda ? Json(*r.lambda) : Json(nullptr);
    j["witness"] = r.lambda ? labeling_json(r.witness) : Json(nullptr);
    j["nodes"] = r.nodes;
    return j;
}

inline Json trace_json(const std::vector<ReductionStep>& steps) {
    Json out = Json::array();
    for (const auto& s : steps) {
        Json assignments = Json::array();
        for (const auto& t : s.extension.trace) {
            Json a{{"op", to_string(t.op)}, {"element", to_string(t.element)}};
            if (t.op != TraceEntry::Op::Check)
                a["color"] = t.color;
            if (t.op != TraceEntry::Op::Erase) {
                a["available"] = t.available;
                a["bound"] = t.bound;
            }
            a["step"] = t.step;
            assignments.push_back(std::move(a));
        }
        Json item{{"config_kind", to_string(s.config.kind)}, {"witness", s.config.witness}};
        if (s.config.kind == ConfigKind::TwoDeg2)
            item["variant"] = s.config.variant;
        if (s.config.kind == ConfigKind::Alternator)
            item["k"] = s.config.alternator.k;
        item["branch"] = s.extension.branch;
        item["assignments"] = std::move(assignments);
        out.push_back(std::move(item));
    }
    return out;
}

inline Json ledger_json(const ChargeLedger& l) {
    Json vertices = Json::array();
    for (const auto& c : l.vertex)
        vertices.push_back(to_string(c));
    Json faces = Json::array();
    for (std::size_t i = 0; i < l.faces.size(); ++i)
        faces.push_back({{"boundary", l.faces[i].boundary}, {"charge", to_string(l.face[i])}});
    return Json{{"phase", l.phase == ChargeLedger::Phase::Initial ? "initial" : "final"},
                {"vertices", vertices},
                {"faces", faces}};
}

inline Json audit_json(const AuditReport& r) {
    Json j{{"schema", 1}, {"verdict", r.verdict}};
    Json violations = Json::array();
    for (const auto* f : r.structure.violations())
        violations.push_back({{"property", f->property}, {"witness", f->witness}, {"detail", f->detail}});
    j["violations"] = std::move(violations);
    Json classes = Json::array();
    for (std::size_t i = 0; i < r.structure.face_classes.size(); ++i)
        if (r.structure.face_classes[i] != FaceClass::NotTriangle)
            classes.push_back({{"face", i}, {"class", to_string(r.structure.face_classes[i])}});
    j["triangles"] = std::move(classes);
    j["notes"] = r.structure.notes;
    j["initial_total"] = to_string(r.initial.total());
    j["final_total"] = to_string(r.final_ledger.total());
    Json failures = Json::array();
    for (const auto& f : r.rule_failures)
        failures.push_back({{"rule", f.rule}, {"vertex", f.vertex}, {"reason", f.reason}});
    j["rule_failures"] = std::move(failures);
    j["ledger"] = ledger_json(r.final_ledger);
    return j;
}

} // namespace tlabel
