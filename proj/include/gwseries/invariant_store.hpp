#pragma once

#include "gwseries/genus_series.hpp"
#include "gwseries/parallel.hpp"
#include "gwseries/rational.hpp"
#include "gwseries/surface_lattice.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gwseries {

enum class InvariantKind { GvLocal, GwLocal, LogMax, LogTwoPoint, GwZ, GwW, OpenBps, StationaryE };

std::string_view kind_name(InvariantKind k);
InvariantKind parse_kind(std::string_view name);

struct InvariantKey {
    InvariantKind kind;
    CurveClass cls;
    int genus;

    auto operator<=>(const InvariantKey&) const = default;
};

std::string to_string(const InvariantKey& k);

// (kind, class, genus) -> value for one preset, within genus and degree caps.
class InvariantTable {
public:
    InvariantTable() = default;
    InvariantTable(SurfacePreset preset, int genus_cap, int degree_cap);

    const SurfacePreset& preset() const { return preset_; }
    int genus_cap() const { return genus_cap_; }
    int degree_cap() const { return degree_cap_; }

    // Validates class effectivity and caps; overwrites existing values.
    void set(InvariantKind kind, const CurveClass& cls, int genus, const Rational& value);
    void erase(InvariantKind kind, const CurveClass& cls, int genus);
    const Rational* find(InvariantKind kind, const CurveClass& cls, int genus) const;
    Rational value_or_zero(InvariantKind kind, const CurveClass& cls, int genus) const;
    bool has_class(InvariantKind kind, const CurveClass& cls) const;
    // Distinct classes carrying at least one entry of the given kind.
    std::vector<CurveClass> classes_of(InvariantKind kind) const;

    const std::map<InvariantKey, Rational>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    SurfacePreset preset_;
    int genus_cap_ = 0;
    int degree_cap_ = 0;
    std::map<InvariantKey, Rational> entries_;
};

// Stationary invariant of the elliptic curve: genus h, psi exponents a on the
// point-class markings, m further markings, degree d.
struct StationaryKey {
    int h = 0;
    std::vector<int> a; // kept sorted
    int m = 0;
    int d = 0;

    StationaryKey() = default;
    StationaryKey(int h, std::vector<int> a, int m, int d);

    auto operator<=>(const StationaryKey&) const = default;
};

std::string to_string(const StationaryKey& k);

// sum of 1/k over divisors k of n
Rational divisor_reciprocal_sum(int n);

class StationaryOracle {
public:
    // Values forced by dimension or by the genus-1 unmarked series. Entries
    // that contradict these are rejected.
    static std::optional<Rational> builtin(const StationaryKey& key);

    void set(const StationaryKey& key, const Rational& value);
    // Built-in rule first, then table; MissingStationary otherwise.
    Rational lookup(const StationaryKey& key) const;
    const std::map<StationaryKey, Rational>& entries() const { return entries_; }

private:
    std::map<StationaryKey, Rational> entries_;
};

// Genus-0 two-point maximal-contact values R_{0,(a,b)}(beta) for the theta
// structure constants.
struct TwoPointKey {
    CurveClass cls;
    int first = 0;
    int second = 0;

    auto operator<=>(const TwoPointKey&) const = default;
};

std::string to_string(const TwoPointKey& k);

using TwoPointTable = std::map<TwoPointKey, Rational>;

// Keys read by a strict computation, in canonical string form.
class KeyLog {
public:
    void record(std::string key) { keys_.insert(std::move(key)); }
    void merge(const KeyLog& other) { keys_.insert(other.keys_.begin(), other.keys_.end()); }
    const std::set<std::string>& keys() const { return keys_; }

private:
    std::set<std::string> keys_;
};

// Strict read access: every missing key is an error naming the key.
class Lookup {
public:
    Lookup(const InvariantTable& table, const StationaryOracle* oracle = nullptr, KeyLog* log = nullptr)
        : table_(&table), oracle_(oracle), log_(log) {}

    const SurfacePreset& preset() const { return table_->preset(); }
    const InvariantTable& table() const { return *table_; }
    Lookup with_log(KeyLog* log) const { return Lookup(*table_, oracle_, log); }
    KeyLog* log() const { return log_; }

    const Rational& require(InvariantKind kind, const CurveClass& cls, int genus) const;
    Rational stationary(const StationaryKey& key) const;

private:
    const InvariantTable* table_;
    const StationaryOracle* oracle_;
    KeyLog* log_;
};

// Finitely supported map class -> GenusSeries, truncated by degree and genus.
class NovikovSeries {
public:
    NovikovSeries() = default;
    NovikovSeries(SurfacePreset preset, int degree_cap, int genus_cap);

    static NovikovSeries unit(const SurfacePreset& preset, int degree_cap, int genus_cap);

    const SurfacePreset& preset() const { return preset_; }
    int degree_cap() const { return degree_cap_; }
    int genus_cap() const { return genus_cap_; }
    const std::map<CurveClass, GenusSeries>& terms() const { return terms_; }

    // Adds to the existing coefficient; terms above the degree cap are dropped
    // and the series is truncated to the genus cap.
    void add(const CurveClass& cls, const GenusSeries& s);
    // Zero series when absent.
    GenusSeries coefficient(const CurveClass& cls) const;
    void prune_zeros();

private:
    SurfacePreset preset_;
    int degree_cap_ = 0;
    int genus_cap_ = 0;
    std::map<CurveClass, GenusSeries> terms_;
};

bool operator==(const NovikovSeries& a, const NovikovSeries& b);

NovikovSeries nv_add(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries nv_scale(const NovikovSeries& a, const Rational& c);
NovikovSeries nv_mul(const NovikovSeries& a, const NovikovSeries& b, Exec exec = Exec::parallel);
NovikovSeries nv_exp(const NovikovSeries& a, Exec exec = Exec::parallel);
NovikovSeries nv_log(const NovikovSeries& a, Exec exec = Exec::parallel);
// Multiply by Q^cls.
NovikovSeries nv_shift(const NovikovSeries& a, const CurveClass& cls);

namespace reference {
// Plain double loop over term pairs.
NovikovSeries nv_mul(const NovikovSeries& a, const NovikovSeries& b);
} // namespace reference

// Missing entries read as zero unless strict, in which case every effective
// class up to the degree cap must carry every genus up to the genus cap.
NovikovSeries table_to_novikov(const InvariantTable& t, InvariantKind kind, bool strict = false);

struct Dataset {
    SurfacePreset preset;
    bool inline_preset = false;
    InvariantTable table;
    StationaryOracle stationary;
    TwoPointTable two_point;
    std::optional<GenusSeries> k1_override;

    Lookup lookup(KeyLog* log = nullptr) const { return Lookup(table, &stationary, log); }
    GenusSeries k1_series(int cap) const;
};

Dataset parse_dataset(std::string_view json_text, const std::string& source = "<input>");
Dataset load_dataset(const std::filesystem::path& path);
// Canonical form: sorted keys, two-space indent, entries in key order.
std::string dataset_to_json(const Dataset& data);
void save_dataset(const Dataset& data, const std::filesystem::path& path);
// Existing paths are returned as is; otherwise NAME or NAME.json is looked up
// in $GWSERIES_DATA_DIR and then in the bundled data directory.
std::filesystem::path resolve_dataset_path(std::string_view name);

} // namespace gwseries
