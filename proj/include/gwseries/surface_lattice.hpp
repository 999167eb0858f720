#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace gwseries {

// Coordinates in the preset's generator basis.
struct CurveClass {
    std::vector<int> coords;

    CurveClass() = default;
    explicit CurveClass(std::vector<int> c) : coords(std::move(c)) {}
    CurveClass(std::initializer_list<int> c) : coords(c) {}

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const;
    bool is_effective() const;

    auto operator<=>(const CurveClass&) const = default;
};

CurveClass operator+(const CurveClass& a, const CurveClass& b);
CurveClass operator-(const CurveClass& a, const CurveClass& b);
CurveClass operator*(int k, const CurveClass& a);

// "3,4"
std::string to_string(const CurveClass& c);
CurveClass parse_class(std::string_view text);

// Largest k with c = k * c'.
int class_divisibility(const CurveClass& c);
bool is_primitive(const CurveClass& c);

struct SurfacePreset {
    std::string id;
    int rank = 0;
    std::vector<std::vector<int>> pairing;
    CurveClass anticanonical;
    std::vector<CurveClass> generators;
    std::vector<int> degree_weights;
    int euler_char = 0;

    // Throws SchemaError when the invariants of a preset do not hold.
    void validate() const;
};

const SurfacePreset& preset_p2();
const SurfacePreset& preset_f1();
// Registry lookup by id ("p2", "f1").
const SurfacePreset& preset_by_id(std::string_view id);

int cc_dot(const SurfacePreset& p, const CurveClass& a, const CurveClass& b);
int cc_tangency(const SurfacePreset& p, const CurveClass& b);
int cc_degree(const SurfacePreset& p, const CurveClass& b);
int cc_self_intersection_e(const SurfacePreset& p);
// b - a effective
bool cc_le(const CurveClass& a, const CurveClass& b);
void check_rank(const SurfacePreset& p, const CurveClass& c);

// The F1 class of the pullback of dH minus the exceptional curve.
CurveClass blowup_class_map(int d);

// Sorted by degree, then coordinates in descending lexicographic order.
std::vector<CurveClass> enumerate_effective_upto(const SurfacePreset& p, int dmax);
// Classes c with 0 <= c <= bound in the cone order, same ordering.
std::vector<CurveClass> enumerate_below(const SurfacePreset& p, const CurveClass& bound);

struct Decomposition {
    int d_e = 0;
    // Non-increasing in the enumeration order; repeated classes allowed.
    std::vector<CurveClass> parts;
};

std::vector<Decomposition> decompose_for_delta(const SurfacePreset& p, const CurveClass& beta, int nmax);

} // namespace gwseries
