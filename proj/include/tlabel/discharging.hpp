#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tlabel/graph.hpp"
#include "tlabel/reduction.hpp"

namespace tlabel {

using Charge = boost::rational<std::int64_t>;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Charge& q) {
    if (q.denominator() == 1)
        return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// ---------------------------------------------------------------------------
// Masters
// ---------------------------------------------------------------------------

/// A set S of low-degree vertices whose neighborhood N(S) cannot serve them:
/// (k-1)|N(S)| < |S|.
struct HallViolator {
    std::vector<Vertex> s;
    std::vector<Vertex> neighborhood;
};

struct MasterAssignment {
    int k = 0;
    std::map<Vertex, Vertex> master; ///< x -> its k-master
    std::optional<HallViolator> violator;

    bool complete() const { return !violator.has_value(); }
    std::optional<Vertex> of(Vertex x) const {
        auto it = master.find(x);
        if (it == master.end())
            return std::nullopt;
        return it->second;
    }
};

/// Every vertex x with d(x) <= k is matched to one neighbor, each neighbor
/// serving at most k-1 of them. Capacitated bipartite matching by
/// augmenting paths; when it fails the alternating-tree of an unmatched
/// vertex is the reported Hall violator.
inline MasterAssignment assign_masters(const Graph& g, int M, int k) {
    if (k < 2 || k > light_degree(M))
        throw InputError("master parameter k=" + std::to_string(k) + " outside 2.." + std::to_string(light_degree(M)));
    const int n = g.num_vertices();
    MasterAssignment out;
    out.k = k;
    std::vector<Vertex> xs;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) <= k)
            xs.push_back(v);

    std::vector<Vertex> match(n, -1);           // x -> master
    std::vector<std::vector<Vertex>> served(n); // y -> vertices it serves
    const int cap = k - 1;

    std::vector<int> seen_x(n, -1), seen_y(n, -1);
    auto augment = [&](auto&& self, Vertex x, int round) -> bool {
        seen_x[x] = round;
        for (Vertex y : g.neighbors(x)) {
            if (seen_y[y] == round)
                continue;
            seen_y[y] = round;
            if (static_cast<int>(served[y].size()) < cap) {
                served[y].push_back(x);
                match[x] = y;
                return true;
            }
            for (Vertex& other : served[y]) {
                if (seen_x[other] == round)
                    continue;
                const Vertex moved = other;
                if (self(self, moved, round)) {
                    other = x;
                    match[x] = y;
                    return true;
                }
            }
        }
        return false;
    };

    int round = 0;
    for (Vertex x : xs) {
        if (augment(augment, x, round++))
            continue;
        HallViolator hv;
        for (Vertex v = 0; v < n; ++v) {
            if (seen_x[v] == round - 1)
                hv.s.push_back(v);
            if (seen_y[v] == round - 1)
                hv.neighborhood.push_back(v);
        }
        out.violator = std::move(hv);
        return out;
    }
    for (Vertex x : xs)
        out.master[x] = match[x];
    return out;
}

/// Re-checks an assignment against the graph: one adjacent master per
/// vertex of degree <= k and at most k-1 vertices per master.
inline bool masters_valid(const Graph& g, const MasterAssignment& a) {
    if (!a.complete())
        return false;
    std::map<Vertex, int> load;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        auto y = a.of(v);
        if ((g.degree(v) <= a.k) != y.has_value())
            return false;
        if (y && !g.adjacent(v, *y))
            return false;
        if (y && ++load[*y] > a.k - 1)
            return false;
    }
    for (const auto& [x, y] : a.master)
        if (x < 0 || x >= g.num_vertices())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Charges
// ---------------------------------------------------------------------------

struct ChargeLedger {
    enum class Phase { Initial, Final };
    Phase phase = Phase::Initial;
    std::vector<Charge> vertex;
    std::vector<Face> faces;
    std::vector<Charge> face;

    Charge total() const {
        Charge t = 0;
        for (const auto& c : vertex)
            t += c;
        for (const auto& c : face)
            t += c;
        return t;
    }
};

/// w(x) = d(x) - 4 for every vertex and face.
inline ChargeLedger initial_charges(const PlaneGraph& pg) {
    ChargeLedger l;
    l.faces = trace_faces(pg);
    for (Vertex v = 0; v < pg.num_vertices(); ++v)
        l.vertex.push_back(Charge(pg.graph().degree(v) - 4));
    for (const Face& f : l.faces)
        l.face.push_back(Charge(f.degree() - 4));
    return l;
}

enum class FaceClass { NotTriangle, Special, Normal };

inline std::string to_string(FaceClass c) {
    switch (c) {
    case FaceClass::NotTriangle: return "none";
    case FaceClass::Special: return "special";
    case FaceClass::Normal: return "normal";
    }
    return "?";
}

/// 3-faces whose boundary degrees are exactly {5, 6, 7} are special.
inline FaceClass classify_face(const Graph& g, const Face& f) {
    if (f.degree() != 3)
        return FaceClass::NotTriangle;
    std::vector<int> d;
    for (Vertex v : f.boundary)
        d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d == std::vector<int>{5, 6, 7} ? FaceClass::Special : FaceClass::Normal;
}

inline std::vector<FaceClass> classify_faces(const Graph& g, const std::vector<Face>& faces) {
    std::vector<FaceClass> out;
    for (const Face& f : faces)
        out.push_back(classify_face(g, f));
    return out;
}

struct RuleFailure {
    std::string rule;
    Vertex vertex;
    std::string reason;
};

struct RuleOutcome {
    ChargeLedger ledger;
    std::vector<RuleFailure> failures;
};

/// R1-R5. A 2- or 3-vertex without a 3-master is reported and its master
/// transfer skipped; every transfer moves charge, so totals are unchanged.
inline RuleOutcome apply_rules(const PlaneGraph& pg, const ChargeLedger& initial, const MasterAssignment& masters3,
                               int delta) {
    if (initial.phase != ChargeLedger::Phase::Initial)
        throw InputError("rules apply to an initial ledger");
    if (masters3.k != 3)
        throw InputError("rules R1 and R2 need 3-masters");
    const Graph& g = pg.graph();
    RuleOutcome out{initial, {}};
    ChargeLedger& l = out.ledger;
    l.phase = ChargeLedger::Phase::Final;

    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const int d = g.degree(v);
        if (d != 2 && d != 3)
            continue;
        const std::string rule = d == 2 ? "R1" : "R2";
        if (d == 2) {
            for (Vertex w : g.neighbors(v)) {
                if (g.degree(w) == delta) {
                    l.vertex[w] -= Charge(1, 2);
                    l.vertex[v] += Charge(1, 2);
                }
            }
        }
        if (auto m = masters3.of(v)) {
            l.vertex[*m] -= 1;
            l.vertex[v] += 1;
        } else {
            out.failures.push_back({rule, v, "no 3-master"});
        }
    }

    auto classes = classify_faces(g, l.faces);
    for (std::size_t i = 0; i < l.faces.size(); ++i) {
        if (classes[i] == FaceClass::NotTriangle)
            continue;
        for (Vertex v : l.faces[i].boundary) {
            const int d = g.degree(v);
            Charge give = 0;
            if (d == 5)
                give = classes[i] == FaceClass::Special ? Charge(1, 4) : Charge(1, 6);
            else if (d == 6 || d == 7)
                give = Charge(d - 4, d);
            else if (d >= 8)
                give = Charge(1, 2);
            l.vertex[v] -= give;
            l.face[i] += give;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structure scan and audit
// ---------------------------------------------------------------------------

struct PropertyFinding {
    std::string property; ///< "C1".."C5", "C6a".."C6e"
    bool holds = true;
    std::vector<Vertex> witness;
    std::string detail;
};

struct StructureReport {
    std::vector<PropertyFinding> findings;
    std::vector<FaceClass> face_classes;
    std::vector<std::string> notes;

    std::vector<const PropertyFinding*> violations() const {
        std::vector<const PropertyFinding*> out;
        for (const auto& f : findings)
            if (!f.holds)
                out.push_back(&f);
        return out;
    }
};

namespace detail {

/// 5-vertex on a triangle whose other two vertices have degree <= 6.
inline std::optional<std::vector<Vertex>> find_light_triangle_at_5(const Graph& g) {
    for (Vertex v1 = 0; v1 < g.num_vertices(); ++v1) {
        if (g.degree(v1) != 5)
            continue;
        auto nb = g.neighbors(v1);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.degree(nb[i]) <= 6 && g.degree(nb[j]) <= 6 && g.adjacent(nb[i], nb[j]))
                    return std::vector<Vertex>{v1, nb[i], nb[j]};
    }
    return std::nullopt;
}

inline std::vector<Vertex> sorted_union(std::vector<Vertex> a, const std::vector<Vertex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

} // namespace detail

/// Checks (C1)-(C6); each violated property carries the first witness in
/// vertex-id order.
inline StructureReport scan_structure(const PlaneGraph& pg, int M) {
    if (M < 12)
        throw InputError("scan_structure needs M >= 12");
    const Graph& g = pg.graph();
    StructureReport r;
    auto add = [&](std::string prop, std::optional<std::vector<Vertex>> witness, std::string detail = {}) {
        PropertyFinding f{std::move(prop), !witness.has_value(), {}, std::move(detail)};
        if (witness)
            f.witness = std::move(*witness);
        r.findings.push_back(std::move(f));
    };
    auto as_witness = [](const std::optional<ReducibleConfig>& c) -> std::optional<std::vector<Vertex>> {
        if (!c)
            return std::nullopt;
        return c->witness;
    };

    std::optional<std::vector<Vertex>> c1;
    if (!g.connected()) {
        auto comps = g.components();
        c1 = std::vector<Vertex>{comps[0][0], comps[1][0]};
    }
    add("C1", c1);
    add("C2", as_witness(find_sparse_edge(g, M)), "d(u)+d(v) <= M-2");
    add("C3", as_witness(find_light_edge(g, M)), "light edge with d(u)+d(v) <= M+1");

    // (C4): masters for j = 2, 3, and no 3-alternator to begin with.
    std::optional<std::vector<Vertex>> c4;
    std::string c4_detail;
    std::vector<MasterAssignment> masters;
    if (auto alt = find_k_alternator(g, M, 3)) {
        c4 = detail::sorted_union(alt->x, alt->y);
        c4_detail = "3-alternator";
    }
    for (int j = 2; j <= 3; ++j) {
        masters.push_back(assign_masters(g, M, j));
        if (!c4 && !masters.back().complete()) {
            c4 = detail::sorted_union(masters.back().violator->s, masters.back().violator->neighborhood);
            c4_detail = std::to_string(j) + "-master assignment blocked by Hall violator";
        }
    }
    add("C4", c4, c4_detail);

    // (C5): a j-master y of x has degree >= M+2-j.
    std::optional<std::vector<Vertex>> c5;
    for (const auto& ma : masters) {
        if (c5 || !ma.complete())
            continue;
        for (const auto& [x, y] : ma.master) {
            if (g.degree(y) < M + 2 - ma.k) {
                c5 = std::vector<Vertex>{x, y};
                break;
            }
        }
    }
    add("C5", c5, "j-master of degree below M+2-j");

    add("C6a", as_witness(find_deg4_low_nbr(g, M)), "4-vertex with a 7^- neighbor");
    add("C6b", detail::find_light_triangle_at_5(g), "triangle [5, <=6, <=6]");
    add("C6c", as_witness(find_face567(g, M)), "[5,6,7] triangle and a second 6-neighbor");
    add("C6d", as_witness(find_twin_low_nbr(g, M)), "twin low neighbors on a triangle");

    std::optional<std::vector<Vertex>> c6e;
    const int delta = g.max_degree();
    for (Vertex v = 0; v < g.num_vertices() && !c6e; ++v) {
        if (g.degree(v) != delta)
            continue;
        std::vector<Vertex> twos;
        for (Vertex w : g.neighbors(v))
            if (g.degree(w) == 2)
                twos.push_back(w);
        if (twos.size() >= 2)
            c6e = std::vector<Vertex>{v, twos[0], twos[1]};
    }
    add("C6e", c6e, "max-degree vertex with two 2-neighbors");

    if (g.connected())
        r.face_classes = classify_faces(g, trace_faces(pg));

    // An (M-1)-vertex with at least two 3-neighbors lies on at most M-4
    // triangular faces; checked only where the hypothesis occurs.
    if (g.connected()) {
        auto faces = trace_faces(pg);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (g.degree(v) != M - 1)
                continue;
            int threes = 0;
            for (Vertex w : g.neighbors(v))
                threes += g.degree(w) == 3 ? 1 : 0;
            if (threes < 2)
                continue;
            int tri = 0;
            for (const Face& f : faces)
                if (f.degree() == 3 && std::count(f.boundary.begin(), f.boundary.end(), v))
                    ++tri;
            r.notes.push_back("vertex " + std::to_string(v) + " of degree M-1 with " + std::to_string(threes) +
                              " 3-neighbors lies on " + std::to_string(tri) + " triangular faces (limit " +
                              std::to_string(M - 4) + ")" + (tri <= M - 4 ? "" : " EXCEEDED"));
        }
    }
    return r;
}

struct AuditReport {
    std::string verdict; ///< "reducible" or "CONTRADICTION-CANDIDATE"
    StructureReport structure;
    ChargeLedger initial;
    ChargeLedger final_ledger;
    std::vector<RuleFailure> rule_failures;
};

inline AuditReport audit(const PlaneGraph& pg, int M) {
    if (M < 12)
        throw InputError("audit needs M >= 12, got " + std::to_string(M));
    if (pg.graph().max_degree() > M)
        throw InputError("maximum degree " + std::to_string(pg.graph().max_degree()) + " exceeds M=" +
                         std::to_string(M));
    if (!pg.graph().connected())
        throw InputError("audit needs a connected plane graph");
    AuditReport rep;
    rep.structure = scan_structure(pg, M);
    bool reducible = false;
    for (const auto* f : rep.structure.violations())
        reducible = reducible || f->property != "C1";
    rep.verdict = reducible ? "reducible" : "CONTRADICTION-CANDIDATE";
    rep.initial = initial_charges(pg);
    auto rules = apply_rules(pg, rep.initial, assign_masters(pg.graph(), M, 3), pg.graph().max_degree());
    rep.final_ledger = std::move(rules.ledger);
    rep.rule_failures = std::move(rules.failures);
    return rep;
}

} // namespace tlabel
