#pragma once

// Human-readable rendering of elements: well-known generators print under
// their customary names, superpositions print as joins of component names,
// anything else falls back to a short digest of its canonical key.

#include <functional>
#include <sstream>

#include "generators.hpp"

namespace rdc {

namespace detail {

inline std::map<DiagramClassKey, std::string>& name_table() {
    static std::map<DiagramClassKey, std::string> table = [] {
        std::map<DiagramClassKey, std::string> t;
        auto reg = [&](const Element& x, const std::string& name) {
            t.emplace(x.terms.begin()->first, name);
        };
        reg(gen_a(), "a");
        reg(gen_adag(), "a†");
        reg(gen_I(), "I");
        reg(gen_d_e(), "d_e");
        reg(gen_al(), "(aℓ)");
        reg(gen_adag_ldag(), "(a†ℓ†)");
        reg(gen_e(), "e_>");
        reg(gen_E(), "E_>");
        reg(gen_edag(), "e_>†");
        reg(gen_l(), "ℓ");
        reg(gen_L(), "L");
        reg(gen_ldag(), "ℓ†");
        for (int m = 0; m <= 4; ++m)
            for (int p = 0; p <= 4; ++p)
                for (int n = 0; n <= 4; ++n) {
                    if (m + p + n < 2) continue;  // singles already named
                    if (m + p + n > 4) continue;  // keep canonicalization cheap
                    t.emplace(gen_lambda(m, p, n).terms.begin()->first,
                              "λ(" + std::to_string(m) + "," + std::to_string(p) + "," +
                                  std::to_string(n) + ")");
                }
        return t;
    }();
    return table;
}

}  // namespace detail

inline std::string describe_key(const DiagramClassKey& key) {
    if (key.empty()) return "r_∅";
    const auto& table = detail::name_table();
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    // Try naming the primitive components individually.
    std::string out;
    bool all_named = true;
    for (const auto& comp : detail::component_keys(key)) {
        auto ct = table.find(comp);
        if (ct == table.end()) {
            all_named = false;
            break;
        }
        out += (out.empty() ? "" : "⊎") + ct->second;
    }
    if (all_named) return out;
    std::ostringstream os;
    os << "D" << std::hex << (std::hash<std::string>{}(key) & 0xffffff) << "(deg "
       << filtration_degree(key) << ")";
    return os.str();
}

inline std::string describe_element(const Element& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : x.terms) {
        if (!out.empty()) out += " + ";
        out += rational_to_string(c) + "·" + describe_key(k);
    }
    return out;
}

inline std::string describe_tensor(const TensorElement& t) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : t.terms) {
        if (!out.empty()) out += " + ";
        out += rational_to_string(c) + "·";
        for (size_t i = 0; i < w.size(); ++i) out += (i ? "⊗" : "") + describe_key(w[i]);
    }
    return out;
}

}  // namespace rdc
