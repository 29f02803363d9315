#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tatehh/group.hpp"

namespace tatehh {

// Built-in library: C_n (n <= 12), C2xC2 ("klein4"), S3, D4, Q8. Enough to
// drive every verification run without external files.
inline FiniteGroup builtin_group(const std::string& name) {
    if (name.size() > 1 && (name[0] == 'C' || name[0] == 'c') &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
        int n = std::stoi(name.substr(1));
        if (n < 1 || n > 12) throw std::invalid_argument("builtin cyclic group: n must be 1..12");
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        return FiniteGroup(std::move(t), "C" + std::to_string(n));
    }
    if (name == "klein4" || name == "C2xC2" || name == "c2xc2") {
        // (Z/2)^2 via XOR of 2-bit indices
        std::vector<std::vector<int>> t(4, std::vector<int>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t[i][j] = i ^ j;
        return FiniteGroup(std::move(t), "C2xC2");
    }
    if (name == "S3" || name == "s3")
        return FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, "S3");
    if (name == "D4" || name == "d4")
        return FiniteGroup::from_permutations({{1, 2, 3, 0}, {3, 2, 1, 0}}, "D4");
    if (name == "Q8" || name == "q8") {
        // indices: 1, -1, i, -i, j, -j, k, -k
        auto mul = [](int a, int b) {
            // sign bit = lowest bit; unit = index >> 1 (0:1, 1:i, 2:j, 3:k)
            static const int unit_tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
            static const int sign_tab[4][4] = {{+1, +1, +1, +1},
                                               {+1, -1, +1, -1},
                                               {+1, -1, -1, +1},
                                               {+1, +1, -1, -1}};
            int ua = a >> 1, ub = b >> 1;
            int sign = ((a & 1) ? -1 : 1) * ((b & 1) ? -1 : 1) * sign_tab[ua][ub];
            return unit_tab[ua][ub] * 2 + (sign < 0 ? 1 : 0);
        };
        std::vector<std::vector<int>> t(8, std::vector<int>(8));
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) t[a][b] = mul(a, b);
        return FiniteGroup(std::move(t), "Q8");
    }
    throw std::invalid_argument("unknown builtin group: " + name);
}

// Group spec document: {"name": ..., "order": n, "cayley_table": [[...]]}
// or {"name": ..., "order": n, "perm_generators": [[one-line images]]}.
inline FiniteGroup group_from_json(const nlohmann::json& doc) {
    if (!doc.contains("name")) throw std::invalid_argument("group spec: missing 'name'");
    std::string name = doc["name"].get<std::string>();
    if (doc.contains("cayley_table")) {
        auto table = doc["cayley_table"].get<std::vector<std::vector<int>>>();
        FiniteGroup g(std::move(table), name);
        if (doc.contains("order") && doc["order"].get<int>() != g.order())
            throw std::invalid_argument("group spec: declared order does not match table");
        return g;
    }
    if (doc.contains("perm_generators")) {
        auto gens = doc["perm_generators"].get<std::vector<std::vector<int>>>();
        FiniteGroup g = FiniteGroup::from_permutations(gens, name);
        if (doc.contains("order") && doc["order"].get<int>() != g.order())
            throw std::invalid_argument("group spec: declared order does not match closure");
        return g;
    }
    throw std::invalid_argument("group spec: need 'cayley_table' or 'perm_generators'");
}

inline FiniteGroup group_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open group spec file: " + path);
    nlohmann::json doc;
    in >> doc;
    return group_from_json(doc);
}

// Resolve a --group argument: builtin name first, else a file path.
inline FiniteGroup resolve_group(const std::string& arg) {
    try {
        return builtin_group(arg);
    } catch (const std::invalid_argument&) {
        return group_from_file(arg);
    }
}

}  // namespace tatehh
