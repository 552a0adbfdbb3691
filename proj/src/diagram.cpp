#include "canram/diagram.hpp"

#include <algorithm>
#include <set>

#include "canram/enumerate.hpp"
#include "canram/errors.hpp"
#include "canram/parallel.hpp"

namespace canram {

std::pair<BinaryDiagram, Cocone> build_binary_diagram(const StructureRef& a,
                                                      const StructureRef& b,
                                                      const StructureRef& c, int workers) {
    BinaryDiagram d;
    d.a = a;
    d.b = b;
    Cocone cone;
    cone.tip = c;
    cone.legs = enumerate_embeddings(b, c);
    d.top_count = static_cast<int>(cone.legs.size());

    const auto hom_ab = enumerate_embeddings(a, b);
    const int n = d.top_count;
    if (n > 0 && !hom_ab.empty()) {
        const auto nodes = parallel_map<std::vector<BottomNode>>(
            static_cast<std::uint64_t>(n) * n, workers, [&](std::uint64_t pair) {
                const int i = static_cast<int>(pair) / n;
                const int j = static_cast<int>(pair) % n;
                std::vector<BottomNode> out;
                if (i == j) return out;
                for (const auto& u : hom_ab) {
                    const auto left = compose_maps(u.map, cone.legs[i].map);
                    for (const auto& v : hom_ab)
                        if (left == compose_maps(v.map, cone.legs[j].map))
                            out.push_back({u, v, i, j});
                }
                return out;
            });
        for (const auto& block : nodes)
            d.bottom.insert(d.bottom.end(), block.begin(), block.end());
    }
    return {std::move(d), std::move(cone)};
}

bool check_cocone(const BinaryDiagram& d, const Cocone& c) {
    if (static_cast<int>(c.legs.size()) != d.top_count)
        throw input_error("check_cocone: leg count differs from the diagram");
    for (const auto& node : d.bottom) {
        if (node.i < 0 || node.i >= d.top_count || node.j < 0 || node.j >= d.top_count)
            throw input_error("check_cocone: bottom node indexes a missing leg");
        if (compose_maps(node.u.map, c.legs[node.i].map) !=
            compose_maps(node.v.map, c.legs[node.j].map))
            return false;
    }
    return true;
}

namespace {

OrderedStructure to_poset(const OrderedStructure& s, const char* who) {
    if (s.kind == Kind::PosetLE) return s;
    if (s.kind == Kind::ReflexiveDigraphLE) {
        if (auto p = as_poset(s)) return *std::move(p);
        throw input_error(std::string(who) + ": relation is not transitive");
    }
    throw input_error(std::string(who) + ": expected a poset or an up-directed digraph");
}

} // namespace

Cocone pos_closure_cocone(const BinaryDiagram& d, const Cocone& edig_cocone) {
    if (!edig_cocone.tip || edig_cocone.tip->kind != Kind::ReflexiveDigraphLE)
        throw input_error("pos_closure_cocone: tip must be an up-directed reflexive digraph");
    if (!d.a || !d.b)
        throw input_error("pos_closure_cocone: diagram endpoints missing");
    to_poset(*d.a, "pos_closure_cocone");
    const StructureRef b_pos = share(to_poset(*d.b, "pos_closure_cocone"));
    if (!check_cocone(d, edig_cocone))
        throw input_error("pos_closure_cocone: the cocone does not commute");

    std::set<int> image;
    for (const auto& leg : edig_cocone.legs)
        for (int x : leg.map) image.insert(x);
    std::vector<int> points(image.begin(), image.end());
    const int nd = static_cast<int>(points.size());
    auto rank = [&](int x) {
        return static_cast<int>(std::lower_bound(points.begin(), points.end(), x) -
                                points.begin());
    };

    std::vector<bool> rel(static_cast<std::size_t>(nd) * nd, false);
    for (const auto& [x, y] : edig_cocone.tip->digraph().rho)
        if (image.count(x) && image.count(y))
            rel[static_cast<std::size_t>(rank(x)) * nd + rank(y)] = true;
    for (int k = 0; k < nd; ++k)
        for (int x = 0; x < nd; ++x) {
            if (!rel[static_cast<std::size_t>(x) * nd + k]) continue;
            for (int y = 0; y < nd; ++y)
                if (rel[static_cast<std::size_t>(k) * nd + y])
                    rel[static_cast<std::size_t>(x) * nd + y] = true;
        }
    std::vector<Pair> leq;
    for (int x = 0; x < nd; ++x)
        for (int y = 0; y < nd; ++y)
            if (rel[static_cast<std::size_t>(x) * nd + y]) {
                if (x != y && rel[static_cast<std::size_t>(y) * nd + x])
                    throw input_error("pos_closure_cocone: closure violates antisymmetry");
                leq.push_back({x, y});
            }

    Cocone out;
    OrderedStructure tip = make_poset(nd, std::move(leq));
    if (auto report = validate(tip); !report.ok())
        throw input_error("pos_closure_cocone: tip fails poset validation: " +
                          report.violations.front().axiom);
    out.tip = share(std::move(tip));
    for (const auto& leg : edig_cocone.legs) {
        std::vector<int> map;
        map.reserve(leg.map.size());
        for (int x : leg.map) map.push_back(rank(x));
        out.legs.push_back({b_pos, out.tip, std::move(map)});
    }
    return out;
}

Coloring transfer_coloring(const Coloring& chi, const StructureRef& a, const Cocone& pos,
                           const Cocone& edig) {
    if (pos.legs.size() != edig.legs.size())
        throw input_error("transfer_coloring: cocones have different leg counts");
    if (!pos.tip || !edig.tip) throw input_error("transfer_coloring: missing tip");

    const auto hom_ad = enumerate_embeddings(a, pos.tip);
    if (chi.colors.size() != hom_ad.size())
        throw input_error("transfer_coloring: coloring does not cover hom(a, tip)");

    StructureRef a_for_c = a;
    if (a->kind == Kind::PosetLE && edig.tip->kind == Kind::ReflexiveDigraphLE)
        a_for_c = share(as_digraph(*a));
    const auto hom_ac = enumerate_embeddings(a_for_c, edig.tip);

    Coloring out;
    out.colors.assign(hom_ac.size(), 0);
    std::vector<std::pair<int, int>> assigned_by(hom_ac.size(), {-1, -1}); // (leg, u index)
    if (!pos.legs.empty()) {
        const auto hom_ab = enumerate_embeddings(a, pos.legs[0].source);
        for (std::size_t s = 0; s < pos.legs.size(); ++s)
            for (std::size_t ui = 0; ui < hom_ab.size(); ++ui) {
                const auto through_d = compose_maps(hom_ab[ui].map, pos.legs[s].map);
                const int idx_d = hom_index(hom_ad, through_d);
                if (idx_d < 0)
                    throw input_error("transfer_coloring: composite through leg " +
                                      std::to_string(s) + " missing from hom(a, tip)");
                const auto through_c = compose_maps(hom_ab[ui].map, edig.legs[s].map);
                const int idx_c = hom_index(hom_ac, through_c);
                if (idx_c < 0)
                    throw internal_inconsistency(
                        "transfer_coloring: leg composite missing from hom(a, c)");
                const int color = chi.colors[static_cast<std::size_t>(idx_d)] + 1;
                if (out.colors[static_cast<std::size_t>(idx_c)] == 0) {
                    out.colors[static_cast<std::size_t>(idx_c)] = color;
                    assigned_by[static_cast<std::size_t>(idx_c)] = {static_cast<int>(s),
                                                                    static_cast<int>(ui)};
                } else if (out.colors[static_cast<std::size_t>(idx_c)] != color) {
                    const auto [ps, pu] = assigned_by[static_cast<std::size_t>(idx_c)];
                    throw input_error(
                        "transfer_coloring: classes overlap on embedding " +
                        std::to_string(idx_c) + " via (leg " + std::to_string(ps) + ", map " +
                        std::to_string(pu) + ") and (leg " + std::to_string(s) + ", map " +
                        std::to_string(ui) + ")");
                }
            }
    }
    return out;
}

CanonicalWitness transfer_witness(const Coloring& chi, const CanonicalWitness& wit_prime,
                                  const StructureRef& a, const Cocone& pos, const Cocone& edig) {
    if (pos.legs.size() != edig.legs.size())
        throw input_error("transfer_witness: cocones have different leg counts");
    int which = -1;
    for (std::size_t s = 0; s < edig.legs.size(); ++s)
        if (edig.legs[s].map == wit_prime.w.map) {
            which = static_cast<int>(s);
            break;
        }
    if (which < 0)
        throw input_error("transfer_witness: witness leg not among the cocone legs");

    CanonicalWitness out{pos.legs[static_cast<std::size_t>(which)], wit_prime.positions};
    const auto hom_ab = enumerate_embeddings(a, out.w.source);
    const auto hom_ad = enumerate_embeddings(a, pos.tip);
    if (!is_canonical_witness(chi, out, hom_ab, hom_ad))
        throw internal_inconsistency(
            "transfer_witness: transferred witness fails the canonical check");
    return out;
}

namespace {

struct TransferCell {
    std::uint64_t instances = 0;
    std::uint64_t tips_valid = 0;
    std::uint64_t cocones_commuting = 0;
    std::uint64_t legs_checked = 0, legs_valid = 0;
    std::uint64_t colorings = 0;
    std::uint64_t transfers_disjoint = 0;
    std::uint64_t witnesses_found = 0, witnesses_valid = 0;
    std::string closure_failure;
    std::string transfer_failure;
    std::string witness_failure;
};

} // namespace

TransferSweepReport run_transfer_sweep(const TransferSweepOptions& opts) {
    std::vector<StructureRef> as, bs, cs;
    for (int n = 0; n <= opts.a_max; ++n)
        for (auto& p : all_posets(n)) as.push_back(share(std::move(p)));
    for (int n = 0; n <= opts.b_max; ++n)
        for (auto& p : all_posets(n)) bs.push_back(share(std::move(p)));
    for (int n = 0; n <= opts.c_max; ++n)
        for (auto& g : all_reflexive_digraphs(n)) cs.push_back(share(std::move(g)));

    struct Instance {
        int ai, bi, ci;
    };
    std::vector<Instance> instances;
    for (int ai = 0; ai < static_cast<int>(as.size()); ++ai)
        for (int bi = 0; bi < static_cast<int>(bs.size()); ++bi) {
            if (enumerate_embeddings(as[ai], bs[bi]).empty()) continue;
            for (int ci = 0; ci < static_cast<int>(cs.size()); ++ci)
                instances.push_back({ai, bi, ci});
        }

    auto run_instance = [&](std::uint64_t idx) {
        const auto [ai, bi, ci] = instances[idx];
        TransferCell cell;
        cell.instances = 1;
        const std::string tag = "A=poset#" + std::to_string(ai) + " B=poset#" +
                                std::to_string(bi) + " C=digraph#" + std::to_string(ci);
        const StructureRef a_pos = as[ai];
        const StructureRef a_dig = share(as_digraph(*a_pos));
        const StructureRef b_dig = share(as_digraph(*bs[bi]));

        auto [diagram, edig] = build_binary_diagram(a_dig, b_dig, cs[ci], 1);
        Cocone pos;
        try {
            pos = pos_closure_cocone(diagram, edig);
        } catch (const std::exception& ex) {
            cell.closure_failure = tag + ": closure failed: " + ex.what();
            return cell;
        }
        if (validate(*pos.tip).ok())
            ++cell.tips_valid;
        else
            cell.closure_failure = tag + ": tip fails poset validation";
        if (check_cocone(diagram, pos))
            ++cell.cocones_commuting;
        else if (cell.closure_failure.empty())
            cell.closure_failure = tag + ": closed cocone does not commute";
        for (std::size_t s = 0; s < pos.legs.size(); ++s) {
            ++cell.legs_checked;
            if (is_embedding(*pos.legs[s].source, *pos.tip, pos.legs[s].map))
                ++cell.legs_valid;
            else if (cell.closure_failure.empty())
                cell.closure_failure =
                    tag + ": leg " + std::to_string(s) + " fails embedding validation";
        }

        WitnessSearch search(a_dig, b_dig, cs[ci]);
        const auto hom_ad = enumerate_embeddings(a_pos, pos.tip);
        std::vector<Coloring> colorings;
        try {
            colorings = enumerate_colorings(static_cast<int>(hom_ad.size()), opts.max_colorings);
        } catch (const budget_exceeded& ex) {
            cell.transfer_failure = tag + ": " + ex.what();
            return cell;
        }
        for (std::size_t xi = 0; xi < colorings.size(); ++xi) {
            ++cell.colorings;
            Coloring prime;
            try {
                prime = transfer_coloring(colorings[xi], a_pos, pos, edig);
                ++cell.transfers_disjoint;
            } catch (const std::exception& ex) {
                if (cell.transfer_failure.empty())
                    cell.transfer_failure =
                        tag + ": coloring " + std::to_string(xi) + ": " + ex.what();
                continue;
            }
            const auto wit = search.find(prime.colors);
            if (!wit) continue;
            ++cell.witnesses_found;
            try {
                transfer_witness(colorings[xi], *wit, a_pos, pos, edig);
                ++cell.witnesses_valid;
            } catch (const std::exception& ex) {
                if (cell.witness_failure.empty())
                    cell.witness_failure =
                        tag + ": coloring " + std::to_string(xi) + ": " + ex.what();
            }
        }
        return cell;
    };

    const auto cells =
        parallel_map<TransferCell>(instances.size(), opts.workers, run_instance);

    TransferSweepReport report;
    for (const auto& cell : cells) {
        report.instances += cell.instances;
        report.tips_valid += cell.tips_valid;
        report.cocones_commuting += cell.cocones_commuting;
        report.legs_checked += cell.legs_checked;
        report.legs_valid += cell.legs_valid;
        report.colorings += cell.colorings;
        report.transfers_disjoint += cell.transfers_disjoint;
        report.witnesses_found += cell.witnesses_found;
        report.witnesses_valid += cell.witnesses_valid;
        if (report.first_closure_failure.empty() && !cell.closure_failure.empty())
            report.first_closure_failure = cell.closure_failure;
        if (report.first_transfer_failure.empty() && !cell.transfer_failure.empty())
            report.first_transfer_failure = cell.transfer_failure;
        if (report.first_witness_failure.empty() && !cell.witness_failure.empty())
            report.first_witness_failure = cell.witness_failure;
    }
    report.closure_ok = report.first_closure_failure.empty() &&
                        report.tips_valid == report.instances &&
                        report.cocones_commuting == report.instances &&
                        report.legs_checked == report.legs_valid;
    report.transfer_ok =
        report.first_transfer_failure.empty() && report.transfers_disjoint == report.colorings;
    report.witness_ok =
        report.first_witness_failure.empty() && report.witnesses_found == report.witnesses_valid;
    return report;
}

} // namespace canram
