#include "gwseries/surface_lattice.hpp"

#include "gwseries/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gwseries {

bool CurveClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int x) { return x == 0; });
}

bool CurveClass::is_effective() const {
    return std::all_of(coords.begin(), coords.end(), [](int x) { return x >= 0; });
}

namespace {

void same_rank(const CurveClass& a, const CurveClass& b) {
    if (a.rank() != b.rank()) {
        throw RankMismatch(to_string(a) + " vs " + to_string(b));
    }
}

SurfacePreset make_p2() {
    SurfacePreset p;
    p.id = "p2";
    p.rank = 1;
    p.pairing = {{1}};
    p.anticanonical = CurveClass{3};
    p.generators = {CurveClass{1}};
    p.degree_weights = {1};
    p.euler_char = 3;
    return p;
}

SurfacePreset make_f1() {
    // basis (B, F): B^2 = -1, B.F = 1, F^2 = 0; E = 2B + 3F
    SurfacePreset p;
    p.id = "f1";
    p.rank = 2;
    p.pairing = {{-1, 1}, {1, 0}};
    p.anticanonical = CurveClass{2, 3};
    p.generators = {CurveClass{1, 0}, CurveClass{0, 1}};
    p.degree_weights = {1, 1};
    p.euler_char = 4;
    return p;
}

bool enumeration_less(const SurfacePreset& p, const CurveClass& a, const CurveClass& b) {
    int da = cc_degree(p, a);
    int db = cc_degree(p, b);
    if (da != db) {
        return da < db;
    }
    return a.coords > b.coords;
}

void sort_classes(const SurfacePreset& p, std::vector<CurveClass>& v) {
    std::sort(v.begin(), v.end(),
              [&](const CurveClass& a, const CurveClass& b) { return enumeration_less(p, a, b); });
}

void box_below(const std::vector<int>& bound, std::size_t i, std::vector<int>& cur,
               std::vector<CurveClass>& out) {
    if (i == bound.size()) {
        out.emplace_back(cur);
        return;
    }
    for (int x = 0; x <= bound[i]; ++x) {
        cur[i] = x;
        box_below(bound, i + 1, cur, out);
    }
}

void collect_multisets(const std::vector<CurveClass>& cands, std::size_t start, const CurveClass& remaining,
                       int slots, std::vector<CurveClass>& parts, int d_e, std::vector<Decomposition>& out) {
    if (remaining.is_zero()) {
        out.push_back(Decomposition{d_e, parts});
        return;
    }
    if (slots == 0) {
        return;
    }
    for (std::size_t i = start; i < cands.size(); ++i) {
        if (!cc_le(cands[i], remaining)) {
            continue;
        }
        parts.push_back(cands[i]);
        collect_multisets(cands, i, remaining - cands[i], slots - 1, parts, d_e, out);
        parts.pop_back();
    }
}

} // namespace

CurveClass operator+(const CurveClass& a, const CurveClass& b) {
    same_rank(a, b);
    CurveClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
        r.coords[i] += b.coords[i];
    }
    return r;
}

CurveClass operator-(const CurveClass& a, const CurveClass& b) {
    same_rank(a, b);
    CurveClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
        r.coords[i] -= b.coords[i];
    }
    return r;
}

CurveClass operator*(int k, const CurveClass& a) {
    CurveClass r = a;
    for (auto& x : r.coords) {
        x *= k;
    }
    return r;
}

std::string to_string(const CurveClass& c) {
    std::ostringstream out;
    for (std::size_t i = 0; i < c.coords.size(); ++i) {
        out << (i ? "," : "") << c.coords[i];
    }
    return out.str();
}

CurveClass parse_class(std::string_view text) {
    CurveClass c;
    std::string s(text);
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument("trailing");
            }
            c.coords.push_back(v);
        } catch (const std::logic_error&) {
            throw SchemaError("bad curve class '" + s + "'");
        }
    }
    if (c.coords.empty()) {
        throw SchemaError("empty curve class");
    }
    return c;
}

int class_divisibility(const CurveClass& c) {
    int g = 0;
    for (int x : c.coords) {
        g = std::gcd(g, x);
    }
    return g;
}

bool is_primitive(const CurveClass& c) {
    return class_divisibility(c) == 1;
}

void SurfacePreset::validate() const {
    auto fail = [&](const std::string& why) { throw SchemaError("preset '" + id + "': " + why); };
    if (rank < 1) {
        fail("rank must be positive");
    }
    auto urank = static_cast<std::size_t>(rank);
    if (pairing.size() != urank) {
        fail("pairing must be rank x rank");
    }
    for (std::size_t i = 0; i < urank; ++i) {
        if (pairing[i].size() != urank) {
            fail("pairing must be rank x rank");
        }
        for (std::size_t j = 0; j < urank; ++j) {
            if (pairing[i][j] != pairing[j][i]) {
                fail("pairing must be symmetric");
            }
        }
    }
    if (anticanonical.rank() != urank || degree_weights.size() != urank || generators.size() != urank) {
        fail("anticanonical, generators and degree_weights must have length rank");
    }
    for (std::size_t i = 0; i < urank; ++i) {
        CurveClass unit(std::vector<int>(urank, 0));
        unit.coords[i] = 1;
        if (generators[i] != unit) {
            fail("generators must be the coordinate basis");
        }
        if (degree_weights[i] < 1) {
            fail("degree weights must be positive");
        }
        if (cc_tangency(*this, unit) <= 0) {
            fail("anticanonical must pair positively with every generator");
        }
    }
}

const SurfacePreset& preset_p2() {
    static const SurfacePreset p = make_p2();
    return p;
}

const SurfacePreset& preset_f1() {
    static const SurfacePreset p = make_f1();
    return p;
}

const SurfacePreset& preset_by_id(std::string_view id) {
    if (id == "p2") {
        return preset_p2();
    }
    if (id == "f1") {
        return preset_f1();
    }
    throw SchemaError("unknown preset '" + std::string(id) + "'");
}

void check_rank(const SurfacePreset& p, const CurveClass& c) {
    if (c.rank() != static_cast<std::size_t>(p.rank)) {
        throw RankMismatch("class " + to_string(c) + " in preset " + p.id + " of rank " + std::to_string(p.rank));
    }
}

int cc_dot(const SurfacePreset& p, const CurveClass& a, const CurveClass& b) {
    check_rank(p, a);
    check_rank(p, b);
    int s = 0;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = 0; j < b.rank(); ++j) {
            s += a.coords[i] * p.pairing[i][j] * b.coords[j];
        }
    }
    return s;
}

int cc_tangency(const SurfacePreset& p, const CurveClass& b) {
    return cc_dot(p, b, p.anticanonical);
}

int cc_degree(const SurfacePreset& p, const CurveClass& b) {
    check_rank(p, b);
    int d = 0;
    for (std::size_t i = 0; i < b.rank(); ++i) {
        d += p.degree_weights[i] * b.coords[i];
    }
    return d;
}

int cc_self_intersection_e(const SurfacePreset& p) {
    return cc_dot(p, p.anticanonical, p.anticanonical);
}

bool cc_le(const CurveClass& a, const CurveClass& b) {
    return (b - a).is_effective();
}

CurveClass blowup_class_map(int d) {
    if (d < 1) {
        throw std::invalid_argument("blowup_class_map: d must be positive");
    }
    return CurveClass{d - 1, d};
}

std::vector<CurveClass> enumerate_effective_upto(const SurfacePreset& p, int dmax) {
    std::vector<CurveClass> out;
    if (dmax < 0) {
        return out;
    }
    std::vector<int> bound(static_cast<std::size_t>(p.rank));
    for (std::size_t i = 0; i < bound.size(); ++i) {
        bound[i] = dmax / p.degree_weights[i];
    }
    std::vector<int> cur(bound.size());
    std::vector<CurveClass> box;
    box_below(bound, 0, cur, box);
    for (auto& c : box) {
        if (cc_degree(p, c) <= dmax) {
            out.push_back(std::move(c));
        }
    }
    sort_classes(p, out);
    return out;
}

std::vector<CurveClass> enumerate_below(const SurfacePreset& p, const CurveClass& bound) {
    check_rank(p, bound);
    std::vector<CurveClass> out;
    if (!bound.is_effective()) {
        return out;
    }
    std::vector<int> cur(bound.rank());
    box_below(bound.coords, 0, cur, out);
    sort_classes(p, out);
    return out;
}

std::vector<Decomposition> decompose_for_delta(const SurfacePreset& p, const CurveClass& beta, int nmax) {
    check_rank(p, beta);
    std::vector<Decomposition> out;
    if (!beta.is_effective()) {
        return out;
    }
    for (int d_e = 0;; ++d_e) {
        CurveClass rest = beta - d_e * p.anticanonical;
        if (!rest.is_effective()) {
            break;
        }
        std::vector<CurveClass> cands;
        for (auto& c : enumerate_below(p, rest)) {
            if (!c.is_zero() && cc_tangency(p, c) > 0) {
                cands.push_back(std::move(c));
            }
        }
        std::vector<CurveClass> parts;
        collect_multisets(cands, 0, rest, nmax, parts, d_e, out);
    }
    return out;
}

} // namespace gwseries
