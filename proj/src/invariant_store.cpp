#include "gwseries/invariant_store.hpp"

#include "gwseries/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace gwseries {

namespace {

constexpr std::array<std::pair<InvariantKind, std::string_view>, 8> kKindNames{{
    {InvariantKind::GvLocal, "GvLocal"},
    {InvariantKind::GwLocal, "GwLocal"},
    {InvariantKind::LogMax, "LogMax"},
    {InvariantKind::LogTwoPoint, "LogTwoPoint"},
    {InvariantKind::GwZ, "GwZ"},
    {InvariantKind::GwW, "GwW"},
    {InvariantKind::OpenBps, "OpenBps"},
    {InvariantKind::StationaryE, "StationaryE"},
}};

void require_same_preset(const NovikovSeries& a, const NovikovSeries& b) {
    if (a.preset().id != b.preset().id || a.preset().pairing != b.preset().pairing) {
        throw PresetMismatch(a.preset().id + " vs " + b.preset().id);
    }
}

int min_valuation(const NovikovSeries& s) {
    int v = 0;
    for (const auto& [cls, series] : s.terms()) {
        if (auto val = series.valuation()) {
            v = std::min(v, *val);
        }
    }
    return v;
}

NovikovSeries empty_like(const NovikovSeries& a, const NovikovSeries& b, int genus_cap) {
    return NovikovSeries(a.preset(), std::min(a.degree_cap(), b.degree_cap()), genus_cap);
}

int product_genus_cap(const NovikovSeries& a, const NovikovSeries& b) {
    return std::min(a.genus_cap() + min_valuation(b), b.genus_cap() + min_valuation(a));
}

} // namespace

std::string_view kind_name(InvariantKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) {
            return name;
        }
    }
    return "?";
}

InvariantKind parse_kind(std::string_view name) {
    for (const auto& [kind, n] : kKindNames) {
        if (n == name) {
            return kind;
        }
    }
    throw SchemaError("unknown invariant kind '" + std::string(name) + "'");
}

std::string to_string(const InvariantKey& k) {
    return std::string(kind_name(k.kind)) + "[" + to_string(k.cls) + "] g=" + std::to_string(k.genus);
}

InvariantTable::InvariantTable(SurfacePreset preset, int genus_cap, int degree_cap)
    : preset_(std::move(preset)), genus_cap_(genus_cap), degree_cap_(degree_cap) {
    if (genus_cap < 0 || degree_cap < 0) {
        throw SchemaError("caps must be nonnegative");
    }
}

void InvariantTable::set(InvariantKind kind, const CurveClass& cls, int genus, const Rational& value) {
    InvariantKey key{kind, cls, genus};
    if (kind == InvariantKind::StationaryE) {
        throw SchemaError("StationaryE values live in the stationary oracle, not " + to_string(key));
    }
    check_rank(preset_, cls);
    if (!cls.is_effective() || cls.is_zero()) {
        throw SchemaError("class must be effective and nonzero: " + to_string(key));
    }
    if (cc_degree(preset_, cls) > degree_cap_) {
        throw SchemaError("class degree above degree_cap " + std::to_string(degree_cap_) + ": " + to_string(key));
    }
    if (genus < 0 || genus > genus_cap_) {
        throw SchemaError("genus outside 0..genus_cap " + std::to_string(genus_cap_) + ": " + to_string(key));
    }
    entries_[std::move(key)] = value;
}

void InvariantTable::erase(InvariantKind kind, const CurveClass& cls, int genus) {
    entries_.erase(InvariantKey{kind, cls, genus});
}

const Rational* InvariantTable::find(InvariantKind kind, const CurveClass& cls, int genus) const {
    auto it = entries_.find(InvariantKey{kind, cls, genus});
    return it == entries_.end() ? nullptr : &it->second;
}

Rational InvariantTable::value_or_zero(InvariantKind kind, const CurveClass& cls, int genus) const {
    const Rational* v = find(kind, cls, genus);
    return v ? *v : Rational(0);
}

bool InvariantTable::has_class(InvariantKind kind, const CurveClass& cls) const {
    auto it = entries_.lower_bound(InvariantKey{kind, cls, std::numeric_limits<int>::min()});
    return it != entries_.end() && it->first.kind == kind && it->first.cls == cls;
}

std::vector<CurveClass> InvariantTable::classes_of(InvariantKind kind) const {
    std::vector<CurveClass> out;
    for (const auto& [key, value] : entries_) {
        if (key.kind == kind && (out.empty() || out.back() != key.cls)) {
            out.push_back(key.cls);
        }
    }
    return out;
}

StationaryKey::StationaryKey(int h_, std::vector<int> a_, int m_, int d_)
    : h(h_), a(std::move(a_)), m(m_), d(d_) {
    std::sort(a.begin(), a.end());
}

std::string to_string(const StationaryKey& k) {
    std::ostringstream out;
    out << "StationaryE(h=" << k.h << ",a=[";
    for (std::size_t i = 0; i < k.a.size(); ++i) {
        out << (i ? "," : "") << k.a[i];
    }
    out << "],m=" << k.m << ",d=" << k.d << ")";
    return out.str();
}

Rational divisor_reciprocal_sum(int n) {
    Rational s(0);
    for (int k = 1; k <= n; ++k) {
        if (n % k == 0) {
            s += Rational(1, k);
        }
    }
    return s;
}

std::optional<Rational> StationaryOracle::builtin(const StationaryKey& key) {
    int psi = std::accumulate(key.a.begin(), key.a.end(), 0);
    if (psi + key.m != 2 * key.h - 2) {
        return Rational(0);
    }
    if (key.h == 1 && key.a.empty() && key.m == 0 && key.d >= 1) {
        return divisor_reciprocal_sum(key.d);
    }
    return std::nullopt;
}

void StationaryOracle::set(const StationaryKey& key, const Rational& value) {
    if (key.h < 0 || key.m < 0 || key.d < 0 ||
        std::any_of(key.a.begin(), key.a.end(), [](int x) { return x < 0; })) {
        throw SchemaError("negative index in " + to_string(key));
    }
    if (auto forced = builtin(key); forced && *forced != value) {
        throw SchemaError(to_string(key) + " is fixed to " + to_string(*forced) + " by the built-in rule");
    }
    entries_[key] = value;
}

Rational StationaryOracle::lookup(const StationaryKey& key) const {
    if (auto forced = builtin(key)) {
        return *forced;
    }
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw MissingStationary(to_string(key));
    }
    return it->second;
}

std::string to_string(const TwoPointKey& k) {
    return "TwoPoint[" + to_string(k.cls) + "](" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
}

const Rational& Lookup::require(InvariantKind kind, const CurveClass& cls, int genus) const {
    InvariantKey key{kind, cls, genus};
    if (log_) {
        log_->record(to_string(key));
    }
    const Rational* v = table_->find(kind, cls, genus);
    if (!v) {
        throw MissingInvariant(to_string(key));
    }
    return *v;
}

Rational Lookup::stationary(const StationaryKey& key) const {
    if (log_) {
        log_->record(to_string(key));
    }
    if (!oracle_) {
        if (auto forced = StationaryOracle::builtin(key)) {
            return *forced;
        }
        throw MissingStationary(to_string(key) + " (no stationary data supplied)");
    }
    return oracle_->lookup(key);
}

NovikovSeries::NovikovSeries(SurfacePreset preset, int degree_cap, int genus_cap)
    : preset_(std::move(preset)), degree_cap_(degree_cap), genus_cap_(genus_cap) {}

NovikovSeries NovikovSeries::unit(const SurfacePreset& preset, int degree_cap, int genus_cap) {
    NovikovSeries s(preset, degree_cap, genus_cap);
    s.add(CurveClass(std::vector<int>(static_cast<std::size_t>(preset.rank), 0)), GenusSeries::constant(1, genus_cap));
    return s;
}

void NovikovSeries::add(const CurveClass& cls, const GenusSeries& s) {
    check_rank(preset_, cls);
    if (!cls.is_effective()) {
        throw SchemaError("non-effective class " + to_string(cls) + " in Novikov series");
    }
    if (cc_degree(preset_, cls) > degree_cap_) {
        return;
    }
    GenusSeries t = s.truncated(genus_cap_);
    if (t.cap() < genus_cap_) {
        throw OutOfCap("term at " + to_string(cls) + " known only to u^" + std::to_string(t.cap()));
    }
    auto it = terms_.find(cls);
    if (it == terms_.end()) {
        terms_.emplace(cls, std::move(t));
    } else {
        it->second = gs_add(it->second, t);
    }
}

GenusSeries NovikovSeries::coefficient(const CurveClass& cls) const {
    auto it = terms_.find(cls);
    return it == terms_.end() ? GenusSeries::zero(genus_cap_) : it->second;
}

void NovikovSeries::prune_zeros() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

bool operator==(const NovikovSeries& a, const NovikovSeries& b) {
    if (a.preset().id != b.preset().id || a.degree_cap() != b.degree_cap() || a.genus_cap() != b.genus_cap()) {
        return false;
    }
    std::set<CurveClass> classes;
    for (const auto& [c, s] : a.terms()) {
        classes.insert(c);
    }
    for (const auto& [c, s] : b.terms()) {
        classes.insert(c);
    }
    return std::all_of(classes.begin(), classes.end(),
                       [&](const CurveClass& c) { return a.coefficient(c) == b.coefficient(c); });
}

NovikovSeries nv_add(const NovikovSeries& a, const NovikovSeries& b) {
    require_same_preset(a, b);
    NovikovSeries out = empty_like(a, b, std::min(a.genus_cap(), b.genus_cap()));
    for (const auto& [c, s] : a.terms()) {
        out.add(c, s);
    }
    for (const auto& [c, s] : b.terms()) {
        out.add(c, s);
    }
    out.prune_zeros();
    return out;
}

NovikovSeries nv_scale(const NovikovSeries& a, const Rational& c) {
    NovikovSeries out(a.preset(), a.degree_cap(), a.genus_cap());
    for (const auto& [cls, s] : a.terms()) {
        out.add(cls, gs_scale(s, c));
    }
    out.prune_zeros();
    return out;
}

NovikovSeries nv_mul(const NovikovSeries& a, const NovikovSeries& b, Exec exec) {
    require_same_preset(a, b);
    const int gcap = product_genus_cap(a, b);
    NovikovSeries out = empty_like(a, b, gcap);
    const int dcap = out.degree_cap();
    const auto& preset = a.preset();

    // One task per output class: sum over factors x in a with (c - x) in b.
    std::vector<CurveClass> targets;
    {
        std::set<CurveClass> seen;
        for (const auto& [x, sx] : a.terms()) {
            for (const auto& [y, sy] : b.terms()) {
                CurveClass c = x + y;
                if (cc_degree(preset, c) <= dcap) {
                    seen.insert(c);
                }
            }
        }
        targets.assign(seen.begin(), seen.end());
    }
    std::vector<GenusSeries> values(targets.size());
    parallel_for(targets.size(), exec, [&](std::size_t i) {
        const CurveClass& c = targets[i];
        GenusSeries acc = GenusSeries::zero(gcap);
        for (const auto& [x, sx] : a.terms()) {
            if (!cc_le(x, c)) {
                continue;
            }
            auto it = b.terms().find(c - x);
            if (it != b.terms().end()) {
                acc = gs_add(acc, gs_mul(sx, it->second).truncated(gcap));
            }
        }
        values[i] = std::move(acc);
    });
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out.add(targets[i], values[i]);
    }
    out.prune_zeros();
    return out;
}

NovikovSeries reference::nv_mul(const NovikovSeries& a, const NovikovSeries& b) {
    require_same_preset(a, b);
    NovikovSeries out = empty_like(a, b, product_genus_cap(a, b));
    for (const auto& [x, sx] : a.terms()) {
        for (const auto& [y, sy] : b.terms()) {
            out.add(x + y, gs_mul(sx, sy));
        }
    }
    out.prune_zeros();
    return out;
}

NovikovSeries nv_shift(const NovikovSeries& a, const CurveClass& cls) {
    NovikovSeries out(a.preset(), a.degree_cap(), a.genus_cap());
    for (const auto& [c, s] : a.terms()) {
        out.add(c + cls, s);
    }
    return out;
}

NovikovSeries nv_exp(const NovikovSeries& a, Exec exec) {
    const CurveClass zero(std::vector<int>(static_cast<std::size_t>(a.preset().rank), 0));
    if (!a.coefficient(zero).is_zero()) {
        throw NonNilpotentArgument("class-0 coefficient is " + to_text(a.coefficient(zero)));
    }
    NovikovSeries result = NovikovSeries::unit(a.preset(), a.degree_cap(), a.genus_cap());
    NovikovSeries power = result;
    // Each factor raises the degree by at least one.
    for (int k = 1; k <= a.degree_cap(); ++k) {
        power = nv_scale(nv_mul(power, a, exec), Rational(1, k));
        if (power.terms().empty()) {
            break;
        }
        result = nv_add(result, power);
    }
    return result;
}

NovikovSeries nv_log(const NovikovSeries& a, Exec exec) {
    const CurveClass zero(std::vector<int>(static_cast<std::size_t>(a.preset().rank), 0));
    if (a.coefficient(zero) != GenusSeries::constant(1, a.genus_cap())) {
        throw NonUnitConstantTerm("class-0 coefficient is " + to_text(a.coefficient(zero)));
    }
    NovikovSeries shifted = nv_add(a, nv_scale(NovikovSeries::unit(a.preset(), a.degree_cap(), a.genus_cap()), -1));
    NovikovSeries result(a.preset(), a.degree_cap(), a.genus_cap());
    NovikovSeries power = NovikovSeries::unit(a.preset(), a.degree_cap(), a.genus_cap());
    for (int k = 1; k <= a.degree_cap(); ++k) {
        power = nv_mul(power, shifted, exec);
        if (power.terms().empty()) {
            break;
        }
        result = nv_add(result, nv_scale(power, Rational(k % 2 == 1 ? 1 : -1, k)));
    }
    return result;
}

NovikovSeries table_to_novikov(const InvariantTable& t, InvariantKind kind, bool strict) {
    if (kind == InvariantKind::StationaryE) {
        throw SchemaError("StationaryE values are not class-indexed");
    }
    NovikovSeries out(t.preset(), t.degree_cap(), t.genus_cap());
    if (strict) {
        for (const auto& c : enumerate_effective_upto(t.preset(), t.degree_cap())) {
            if (c.is_zero()) {
                continue;
            }
            for (int g = 0; g <= t.genus_cap(); ++g) {
                if (!t.find(kind, c, g)) {
                    throw MissingInvariant(to_string(InvariantKey{kind, c, g}));
                }
            }
        }
    }
    for (const auto& [key, value] : t.entries()) {
        if (key.kind == kind) {
            out.add(key.cls, GenusSeries::monomial(value, key.genus, t.genus_cap()));
        }
    }
    out.prune_zeros();
    return out;
}

GenusSeries Dataset::k1_series(int cap) const {
    if (!k1_override) {
        return kernel_k1(cap);
    }
    if (k1_override->cap() < cap) {
        throw OutOfCap("k1_series override known only to u^" + std::to_string(k1_override->cap()));
    }
    return k1_override->truncated(cap);
}

} // namespace gwseries
