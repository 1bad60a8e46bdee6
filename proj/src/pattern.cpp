#include "extmax/pattern.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace extmax {

namespace {

[[noreturn]] void fail(PatternError::Kind kind, const std::string& msg) {
    throw PatternError(kind, msg);
}

std::string vertex_msg(const char* what, int v) {
    return std::string(what) + " " + std::to_string(v);
}

}  // namespace

RootedPattern::RootedPattern(int h, std::vector<int> roots, std::vector<PatternEdge> edges)
    : h_(h), roots_(std::move(roots)), edges_(std::move(edges)) {
    using K = PatternError::Kind;
    if (h_ <= 0) fail(K::Malformed, "pattern must have at least one vertex");
    if (roots_.empty()) fail(K::NoRoots, "pattern has no roots");

    is_root_.assign(static_cast<std::size_t>(h_), 0);
    for (int v : roots_) {
        if (v < 0 || v >= h_) fail(K::VertexOutOfRange, vertex_msg("root out of range:", v));
        if (is_root_[static_cast<std::size_t>(v)]) fail(K::DuplicateRoot, vertex_msg("duplicate root", v));
        is_root_[static_cast<std::size_t>(v)] = 1;
    }
    if (static_cast<int>(roots_.size()) >= h_) fail(K::NoExpansion, "pattern has no expansion vertex");
    std::sort(roots_.begin(), roots_.end());

    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= h_) fail(K::VertexOutOfRange, vertex_msg("edge endpoint out of range:", u));
        if (v < 0 || v >= h_) fail(K::VertexOutOfRange, vertex_msg("edge endpoint out of range:", v));
        if (u == v) fail(K::SelfLoop, vertex_msg("self-loop at", u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        fail(K::DuplicateEdge, "duplicate edge " + std::to_string(dup->first) + "-" +
                                   std::to_string(dup->second));
    }
}

bool RootedPattern::has_edge(int u, int v) const noexcept {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), PatternEdge{u, v});
}

std::vector<int> RootedPattern::neighbours(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> RootedPattern::expansion_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < h_; ++v)
        if (!is_root(v)) out.push_back(v);
    return out;
}

RootedPattern RootedPattern::relabeled(const std::vector<int>& perm) const {
    std::vector<int> roots;
    roots.reserve(roots_.size());
    for (int v : roots_) roots.push_back(perm.at(static_cast<std::size_t>(v)));
    std::vector<PatternEdge> edges;
    edges.reserve(edges_.size());
    for (const auto& [u, v] : edges_)
        edges.emplace_back(perm.at(static_cast<std::size_t>(u)), perm.at(static_cast<std::size_t>(v)));
    return RootedPattern(h_, std::move(roots), std::move(edges));
}

RootedPattern parse_pattern(std::string_view text) {
    using K = PatternError::Kind;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(K::Malformed, std::string("malformed pattern JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) fail(K::Malformed, "pattern JSON must be an object");
        int h = doc.at("h").get<int>();
        auto roots = doc.at("roots").get<std::vector<int>>();
        std::vector<PatternEdge> edges;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) fail(K::Malformed, "edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return RootedPattern(h, std::move(roots), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        fail(K::Malformed, std::string("malformed pattern JSON: ") + e.what());
    }
}

std::string serialize_pattern(const RootedPattern& pattern) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : pattern.edges()) edges.push_back({u, v});
    nlohmann::json doc;
    doc["h"] = pattern.h();
    doc["roots"] = pattern.roots();
    doc["edges"] = std::move(edges);
    return doc.dump();
}

RootedPattern preset_pattern(std::string_view name, int param) {
    using K = PatternError::Kind;
    auto require = [&](int minimum) {
        if (param < minimum) {
            fail(K::ParamTooSmall, std::string(name) + " needs param >= " + std::to_string(minimum));
        }
    };
    std::vector<int> roots;
    std::vector<PatternEdge> edges;

    if (name == "edge") {
        require(1);
        return RootedPattern(2, {0}, {{0, 1}});
    }
    if (name == "star") {
        require(1);
        for (int i = 0; i < param; ++i) {
            roots.push_back(i);
            edges.emplace_back(i, param);
        }
        return RootedPattern(param + 1, roots, edges);
    }
    if (name == "clique_root") {
        require(2);
        for (int u = 0; u < param; ++u)
            for (int v = u + 1; v < param; ++v) edges.emplace_back(u, v);
        return RootedPattern(param, {0}, edges);
    }
    if (name == "bijective_clique") {
        require(2);
        const int m = param;
        for (int i = 0; i < m; ++i) {
            roots.push_back(i);
            edges.emplace_back(i, m + i);
            for (int j = i + 1; j < m; ++j) edges.emplace_back(m + i, m + j);
        }
        return RootedPattern(2 * m, roots, edges);
    }
    if (name == "path") {
        require(4);
        for (int i = 0; i < param; ++i) edges.emplace_back(i, i + 1);
        return RootedPattern(param + 1, {0, param}, edges);
    }
    fail(K::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

bool validate_fully_grounded(const RootedPattern& pattern) {
    for (int root : pattern.roots()) {
        auto nb = pattern.neighbours(root);
        bool grounded = std::any_of(nb.begin(), nb.end(), [&](int v) { return !pattern.is_root(v); });
        if (!grounded) return false;
    }
    return true;
}

int ClassGroup::g_sum() const noexcept {
    int total = 0;
    for (int x : g) total += x;
    return total;
}

bool ClassDecomposition::same_parameters(const ClassDecomposition& other) const {
    if (groups != other.groups) return false;
    return g == other.g && s == other.s && f == other.f && norm == other.norm &&
           pattern.h() == other.pattern.h() && root_count() == other.root_count();
}

ClassDecomposition classify_symmetric(const RootedPattern& pattern) {
    using K = PatternError::Kind;
    if (!validate_fully_grounded(pattern)) fail(K::NotFullyGrounded, "pattern is not fully grounded");

    const int h = pattern.h();
    // Root neighbourhood of every expansion vertex.
    std::vector<std::vector<int>> root_nbhd(static_cast<std::size_t>(h));
    for (int v : pattern.expansion_vertices()) {
        for (int u : pattern.neighbours(v))
            if (pattern.is_root(u)) root_nbhd[static_cast<std::size_t>(v)].push_back(u);
    }

    // Distinct nonempty root sets -> attached-vertex count.
    std::map<std::vector<int>, int> class_count;
    for (int v : pattern.expansion_vertices()) {
        const auto& set = root_nbhd[static_cast<std::size_t>(v)];
        if (!set.empty()) ++class_count[set];
    }

    // The distinct sets must be pairwise disjoint and cover R.
    std::vector<int> owner(static_cast<std::size_t>(h), -1);
    int idx = 0;
    for (const auto& [set, count] : class_count) {
        for (int u : set) {
            if (owner[static_cast<std::size_t>(u)] != -1) {
                fail(K::NotSymmetric, "root " + std::to_string(u) +
                                          " lies in two different attachment sets");
            }
            owner[static_cast<std::size_t>(u)] = idx;
        }
        ++idx;
    }
    for (int root : pattern.roots()) {
        if (owner[static_cast<std::size_t>(root)] == -1)
            fail(K::NotFullyGrounded, "root " + std::to_string(root) + " is not covered by any class");
    }

    std::vector<RootClass> classes;
    for (const auto& [set, count] : class_count) {
        RootClass c;
        c.size = static_cast<int>(set.size());
        c.attached = count;
        c.roots = set;
        classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end(), [](const RootClass& a, const RootClass& b) {
        if (a.size != b.size) return a.size < b.size;
        if (a.attached != b.attached) return a.attached > b.attached;
        return a.roots.front() < b.roots.front();
    });

    ClassDecomposition d{pattern, {}, {}, {}, 0, 0, 0, 1};
    for (auto& c : classes) {
        if (d.groups.empty() || d.groups.back().k != c.size) d.groups.push_back(ClassGroup{c.size, {}});
        c.group = d.groups.size() - 1;
        c.index_in_group = d.groups.back().g.size();
        d.groups.back().g.push_back(c.attached);
        d.g += c.attached;
        for (int x = 2; x <= c.attached; ++x) {
            if (__builtin_mul_overflow(d.norm, static_cast<std::uint64_t>(x), &d.norm))
                throw std::overflow_error("normalizer overflows 64 bits");
        }
    }
    d.classes = std::move(classes);

    d.attachment.assign(static_cast<std::size_t>(h), ClassDecomposition::kRoot);
    for (int v : pattern.expansion_vertices()) {
        const auto& set = root_nbhd[static_cast<std::size_t>(v)];
        if (set.empty()) {
            d.attachment[static_cast<std::size_t>(v)] = ClassDecomposition::kFree;
            ++d.s;
            continue;
        }
        for (std::size_t c = 0; c < d.classes.size(); ++c) {
            if (d.classes[c].roots == set) d.attachment[static_cast<std::size_t>(v)] = static_cast<int>(c);
        }
    }
    for (const auto& [u, v] : pattern.edges())
        if (!pattern.is_root(u) && !pattern.is_root(v)) ++d.f;
    return d;
}

RootedPattern resolve_pattern_ref(std::string_view ref) {
    const std::filesystem::path path{std::string(ref)};
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec)) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_pattern(buf.str());
    }
    const auto colon = ref.find(':');
    if (colon == std::string_view::npos) return preset_pattern(ref, 1);
    const std::string param_text(ref.substr(colon + 1));
    int param = 0;
    try {
        std::size_t used = 0;
        param = std::stoi(param_text, &used);
        if (used != param_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw PatternError(PatternError::Kind::Malformed, "bad preset parameter '" + param_text + "'");
    }
    return preset_pattern(ref.substr(0, colon), param);
}

}  // namespace extmax
