#include "gwseries/errors.hpp"
#include "gwseries/invariant_store.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef GWSERIES_DEFAULT_DATA_DIR
#define GWSERIES_DEFAULT_DATA_DIR "data"
#endif

namespace gwseries {

namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& why) const {
        throw SchemaError(source_ + ": field '" + path + "': " + why);
    }

    const json& field(const json& obj, const std::string& path, const char* name) const {
        if (!obj.is_object()) {
            fail(path, "expected an object");
        }
        auto it = obj.find(name);
        if (it == obj.end()) {
            fail(join(path, name), "missing");
        }
        return *it;
    }

    int integer(const json& v, const std::string& path) const {
        if (!v.is_number_integer()) {
            fail(path, "expected an integer");
        }
        return v.get<int>();
    }

    std::vector<int> int_list(const json& v, const std::string& path) const {
        if (!v.is_array()) {
            fail(path, "expected an array of integers");
        }
        std::vector<int> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    Rational rational(const json& v, const std::string& path) const {
        if (!v.is_string()) {
            fail(path, "expected a rational string \"p/q\"");
        }
        try {
            return parse_rational(v.get<std::string>());
        } catch (const RationalParseError& e) {
            throw RationalParseError(source_ + ": field '" + path + "': " + e.what());
        }
    }

    static std::string join(const std::string& path, const char* name) {
        return path.empty() ? std::string(name) : path + "." + name;
    }

private:
    std::string source_;
};

SurfacePreset read_preset(const Reader& r, const json& v) {
    if (v.is_string()) {
        try {
            return preset_by_id(v.get<std::string>());
        } catch (const SchemaError& e) {
            r.fail("preset", e.what());
        }
    }
    if (!v.is_object()) {
        r.fail("preset", "expected a preset id or an inline preset object");
    }
    SurfacePreset p;
    p.id = v.contains("id") && v["id"].is_string() ? v["id"].get<std::string>() : "custom";
    p.rank = r.integer(r.field(v, "preset", "rank"), "preset.rank");
    const json& pairing = r.field(v, "preset", "pairing");
    if (!pairing.is_array()) {
        r.fail("preset.pairing", "expected a matrix");
    }
    for (std::size_t i = 0; i < pairing.size(); ++i) {
        p.pairing.push_back(r.int_list(pairing[i], "preset.pairing[" + std::to_string(i) + "]"));
    }
    p.anticanonical = CurveClass(r.int_list(r.field(v, "preset", "anticanonical"), "preset.anticanonical"));
    const json& gens = r.field(v, "preset", "generators");
    if (!gens.is_array()) {
        r.fail("preset.generators", "expected a list of classes");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        p.generators.emplace_back(r.int_list(gens[i], "preset.generators[" + std::to_string(i) + "]"));
    }
    p.degree_weights = r.int_list(r.field(v, "preset", "degree_weights"), "preset.degree_weights");
    p.euler_char = r.integer(r.field(v, "preset", "euler_char"), "preset.euler_char");
    try {
        p.validate();
    } catch (const SchemaError& e) {
        r.fail("preset", e.what());
    }
    return p;
}

json preset_to_json(const SurfacePreset& p) {
    json gens = json::array();
    for (const auto& g : p.generators) {
        gens.push_back(g.coords);
    }
    return json{{"id", p.id},
                {"rank", p.rank},
                {"pairing", p.pairing},
                {"anticanonical", p.anticanonical.coords},
                {"generators", gens},
                {"degree_weights", p.degree_weights},
                {"euler_char", p.euler_char}};
}

} // namespace

Dataset parse_dataset(std::string_view json_text, const std::string& source) {
    Reader r(source);
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(source + ": " + e.what());
    }
    if (!doc.is_object()) {
        r.fail("", "top level must be an object");
    }
    static const std::set<std::string> known{"preset", "genus_cap", "degree_cap", "entries",
                                             "stationary", "two_point", "k1_series"};
    for (const auto& [k, v] : doc.items()) {
        if (!known.count(k)) {
            r.fail(k, "unknown field");
        }
    }

    Dataset d;
    const json& preset = r.field(doc, "", "preset");
    d.inline_preset = preset.is_object();
    d.preset = read_preset(r, preset);
    int genus_cap = r.integer(r.field(doc, "", "genus_cap"), "genus_cap");
    int degree_cap = r.integer(r.field(doc, "", "degree_cap"), "degree_cap");
    if (genus_cap < 0 || degree_cap < 0) {
        r.fail("genus_cap", "caps must be nonnegative");
    }
    d.table = InvariantTable(d.preset, genus_cap, degree_cap);

    const json& entries = r.field(doc, "", "entries");
    if (!entries.is_array()) {
        r.fail("entries", "expected an array");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "entries[" + std::to_string(i) + "]";
        const json& e = entries[i];
        const json& kind = r.field(e, path, "kind");
        if (!kind.is_string()) {
            r.fail(path + ".kind", "expected a string");
        }
        InvariantKind k{};
        CurveClass cls(r.int_list(r.field(e, path, "class"), path + ".class"));
        int genus = r.integer(r.field(e, path, "genus"), path + ".genus");
        Rational value = r.rational(r.field(e, path, "value"), path + ".value");
        try {
            k = parse_kind(kind.get<std::string>());
            if (d.table.find(k, cls, genus)) {
                r.fail(path, "duplicate key");
            }
            d.table.set(k, cls, genus, value);
        } catch (const SchemaError& ex) {
            r.fail(path, ex.what());
        } catch (const RankMismatch& ex) {
            r.fail(path + ".class", ex.what());
        }
    }

    if (doc.contains("stationary")) {
        const json& st = doc["stationary"];
        if (!st.is_array()) {
            r.fail("stationary", "expected an array");
        }
        for (std::size_t i = 0; i < st.size(); ++i) {
            const std::string path = "stationary[" + std::to_string(i) + "]";
            const json& e = st[i];
            StationaryKey key(r.integer(r.field(e, path, "h"), path + ".h"),
                              r.int_list(r.field(e, path, "a"), path + ".a"),
                              r.integer(r.field(e, path, "m"), path + ".m"),
                              r.integer(r.field(e, path, "d"), path + ".d"));
            Rational value = r.rational(r.field(e, path, "value"), path + ".value");
            if (d.stationary.entries().count(key)) {
                r.fail(path, "duplicate key " + to_string(key));
            }
            try {
                d.stationary.set(key, value);
            } catch (const SchemaError& ex) {
                r.fail(path, ex.what());
            }
        }
    }

    if (doc.contains("two_point")) {
        const json& tp = doc["two_point"];
        if (!tp.is_array()) {
            r.fail("two_point", "expected an array");
        }
        for (std::size_t i = 0; i < tp.size(); ++i) {
            const std::string path = "two_point[" + std::to_string(i) + "]";
            const json& e = tp[i];
            CurveClass cls(r.int_list(r.field(e, path, "class"), path + ".class"));
            auto orders = r.int_list(r.field(e, path, "orders"), path + ".orders");
            if (orders.size() != 2 || orders[0] < 1 || orders[1] < 1) {
                r.fail(path + ".orders", "expected two positive contact orders");
            }
            if (cls.rank() != static_cast<std::size_t>(d.preset.rank) || !cls.is_effective()) {
                r.fail(path + ".class", "expected an effective class of the preset");
            }
            if (cc_tangency(d.preset, cls) != orders[0] + orders[1]) {
                r.fail(path + ".orders", "contact orders must sum to the tangency of the class");
            }
            TwoPointKey key{cls, orders[0], orders[1]};
            if (d.two_point.count(key)) {
                r.fail(path, "duplicate key");
            }
            d.two_point[key] = r.rational(r.field(e, path, "value"), path + ".value");
        }
    }

    if (doc.contains("k1_series")) {
        const json& k1 = doc["k1_series"];
        if (!k1.is_string()) {
            r.fail("k1_series", "expected series text");
        }
        try {
            d.k1_override = parse_series(k1.get<std::string>());
        } catch (const SchemaError& ex) {
            r.fail("k1_series", ex.what());
        }
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot open dataset '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), path.string());
}

std::string dataset_to_json(const Dataset& data) {
    json doc;
    doc["preset"] = data.inline_preset ? preset_to_json(data.preset) : json(data.preset.id);
    doc["genus_cap"] = data.table.genus_cap();
    doc["degree_cap"] = data.table.degree_cap();
    json entries = json::array();
    for (const auto& [key, value] : data.table.entries()) {
        entries.push_back(json{{"kind", std::string(kind_name(key.kind))},
                               {"class", key.cls.coords},
                               {"genus", key.genus},
                               {"value", to_string(value)}});
    }
    doc["entries"] = entries;
    json st = json::array();
    for (const auto& [key, value] : data.stationary.entries()) {
        st.push_back(json{{"h", key.h}, {"a", key.a}, {"m", key.m}, {"d", key.d}, {"value", to_string(value)}});
    }
    doc["stationary"] = st;
    if (!data.two_point.empty()) {
        json tp = json::array();
        for (const auto& [key, value] : data.two_point) {
            tp.push_back(json{{"class", key.cls.coords},
                              {"orders", std::vector<int>{key.first, key.second}},
                              {"value", to_string(value)}});
        }
        doc["two_point"] = tp;
    }
    if (data.k1_override) {
        doc["k1_series"] = to_text(*data.k1_override);
    }
    return doc.dump(2) + "\n";
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw SchemaError("cannot write dataset '" + path.string() + "'");
    }
    out << dataset_to_json(data);
}

std::filesystem::path resolve_dataset_path(std::string_view name) {
    std::filesystem::path direct(name);
    if (std::filesystem::exists(direct)) {
        return direct;
    }
    std::vector<std::filesystem::path> dirs;
    if (const char* env = std::getenv("GWSERIES_DATA_DIR"); env && *env) {
        dirs.emplace_back(env);
    }
    dirs.emplace_back(GWSERIES_DEFAULT_DATA_DIR);
    for (const auto& dir : dirs) {
        for (const auto& candidate : {dir / direct, dir / (std::string(name) + ".json")}) {
            if (std::filesystem::exists(candidate)) {
                return candidate;
            }
        }
    }
    throw SchemaError("dataset '" + std::string(name) + "' not found");
}

} // namespace gwseries
