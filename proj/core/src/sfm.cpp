#include "sfsel/sfm.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

namespace sfsel {

ConditionAResult check_condition_a(const StructuredSystem& sys, const FeedbackSet& fs) {
    const int n = sys.n, m = sys.num_inputs();
    Digraph d = closed_loop_digraph(sys, fs);
    SccDecomposition scc = scc_condense(d);

    // Smallest feedback link fully inside each component.
    std::map<int, FeedbackLink> scc_edge;
    for (const FeedbackLink& link : fs) {
        int y_node = n + m + link.output - 1;
        int u_node = n + link.input - 1;
        if (scc.component_of[y_node] != scc.component_of[u_node]) continue;
        int c = scc.component_of[y_node];
        auto it = scc_edge.find(c);
        if (it == scc_edge.end() || link < it->second) scc_edge[c] = link;
    }

    ConditionAResult res;
    res.pass = true;
    for (int s = 1; s <= n; ++s) {
        ConditionAWitness w;
        w.state = s;
        w.scc_index = scc.component_of[s - 1];
        auto it = scc_edge.find(w.scc_index);
        if (it != scc_edge.end()) {
            w.edge = it->second;
        } else {
            res.pass = false;
            res.failing_states.push_back(s);
        }
        res.witnesses.push_back(w);
    }
    return res;
}

ConditionBResult check_condition_b(const StructuredSystem& sys, const FeedbackSet& fs) {
    Bipartite b = closed_loop_bipartite(sys, fs);
    MatchingResult match = max_matching(b);

    ConditionBResult res;
    res.pass = match.perfect;
    res.matching_size = match.size;
    if (match.perfect) {
        for (int u = 0; u < b.left_size(); ++u) {
            if (match.left_match[u] != -1) {
                res.matching.emplace_back(to_string(b.left_label(u)) + "'",
                                          to_string(b.right_label(match.left_match[u])));
            }
        }
    } else {
        for (int v : match.unmatched_right) {
            res.deficient.push_back(to_string(b.right_label(v)));
        }
    }
    return res;
}

SfmCertificate has_no_sfm(const StructuredSystem& sys, const FeedbackSet& fs) {
    SfmCertificate cert;
    cert.condition_a = check_condition_a(sys, fs);
    cert.condition_b = check_condition_b(sys, fs);
    cert.pass = cert.condition_a.pass && cert.condition_b.pass;
    return cert;
}

std::string certificate_to_json(const SfmCertificate& cert) {
    nlohmann::json j;
    j["pass"] = cert.pass;
    j["condition_a"]["pass"] = cert.condition_a.pass;
    auto& witnesses = j["condition_a"]["witnesses"];
    witnesses = nlohmann::json::array();
    for (const auto& w : cert.condition_a.witnesses) {
        nlohmann::json jw;
        jw["state"] = w.state;
        jw["scc"] = w.scc_index;
        if (w.edge) {
            jw["edge"] = {{"input", w.edge->input}, {"output", w.edge->output}};
        }
        witnesses.push_back(jw);
    }
    j["condition_a"]["failing_states"] = cert.condition_a.failing_states;
    j["condition_b"]["pass"] = cert.condition_b.pass;
    j["condition_b"]["matching_size"] = cert.condition_b.matching_size;
    if (cert.condition_b.pass) {
        auto& pairs = j["condition_b"]["matching"];
        pairs = nlohmann::json::array();
        for (const auto& [l, r] : cert.condition_b.matching) {
            pairs.push_back({l, r});
        }
    } else {
        j["condition_b"]["deficient"] = cert.condition_b.deficient;
    }
    return j.dump(2);
}

}  // namespace sfsel
