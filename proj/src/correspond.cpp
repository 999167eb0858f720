#include "gwseries/correspond.hpp"

#include "gwseries/degeneration.hpp"
#include "gwseries/errors.hpp"
#include "gwseries/transforms.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace gwseries {

namespace {

using ClassCheck = std::function<std::vector<Residual>(const CurveClass&, const Lookup&)>;

Caps resolve_caps(const Dataset& data, const CheckOptions& opts) {
    Caps caps = opts.caps.value_or(Caps{data.table.genus_cap(), data.table.degree_cap()});
    if (caps.genus < 0 || caps.degree < 0) {
        throw OutOfCap("negative caps");
    }
    if (caps.genus > data.table.genus_cap() || caps.degree > data.table.degree_cap()) {
        throw OutOfCap("requested caps (g<=" + std::to_string(caps.genus) + ", d<=" + std::to_string(caps.degree) +
                       ") exceed the dataset caps (g<=" + std::to_string(data.table.genus_cap()) +
                       ", d<=" + std::to_string(data.table.degree_cap()) + ")");
    }
    return caps;
}

std::vector<CurveClass> restrict_classes(const Dataset& data, std::vector<CurveClass> classes,
                                         const CheckOptions& opts) {
    if (opts.classes.empty()) {
        return classes;
    }
    for (const auto& c : opts.classes) {
        check_rank(data.preset, c);
    }
    std::vector<CurveClass> out;
    for (const auto& c : opts.classes) {
        if (std::find(classes.begin(), classes.end(), c) == classes.end()) {
            throw MissingInvariant("class " + to_string(c) + " carries no data for this identity");
        }
        out.push_back(c);
    }
    return out;
}

CheckReport run_per_class(const std::string& identity, const Dataset& data, const Caps& caps,
                          const std::vector<CurveClass>& classes, Exec exec, const ClassCheck& fn) {
    std::vector<std::vector<Residual>> per_class(classes.size());
    std::vector<KeyLog> logs(classes.size());
    parallel_for(classes.size(), exec, [&](std::size_t i) {
        per_class[i] = fn(classes[i], data.lookup(&logs[i]));
    });
    CheckReport report;
    report.identity = identity;
    report.preset = data.preset.id;
    report.caps = caps;
    KeyLog all;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (auto& r : per_class[i]) {
            report.pass = report.pass && r.value == 0;
            report.residuals.push_back(std::move(r));
        }
        all.merge(logs[i]);
    }
    report.queried.assign(all.keys().begin(), all.keys().end());
    return report;
}

int blowup_tangency(const SurfacePreset& p, const CurveClass& gamma) {
    const int e = cc_tangency(p, gamma) + 1;
    if (e < 2) {
        throw InvalidTangency("class " + to_string(gamma) + " gives e = " + std::to_string(e));
    }
    return e;
}

GenusSeries table_series(const Lookup& lookup, InvariantKind kind, const CurveClass& cls, int genus_cap) {
    std::vector<Rational> v;
    for (int g = 0; g <= genus_cap; ++g) {
        v.push_back(lookup.require(kind, cls, g));
    }
    return GenusSeries::from_coefficients(std::move(v));
}

// N_g(K_X) for g <= genus_cap: GwLocal entries when present, else resummed GvLocal.
GenusSeries local_series(const CurveClass& gamma, int genus_cap, const Lookup& lookup) {
    if (lookup.table().has_class(InvariantKind::GwLocal, gamma)) {
        return table_series(lookup, InvariantKind::GwLocal, gamma, genus_cap);
    }
    return local_gw_at(lookup, gamma, genus_cap);
}

GenusSeries w_series(const CurveClass& gamma, int genus_cap, const Lookup& lookup) {
    if (lookup.table().has_class(InvariantKind::GwW, gamma)) {
        return table_series(lookup, InvariantKind::GwW, gamma, genus_cap);
    }
    return local_series(gamma, genus_cap, lookup);
}

std::vector<Residual> series_residuals(const CurveClass& gamma, const GenusSeries& diff, const std::string& part) {
    std::vector<Residual> out;
    for (int g = 0; g <= diff.cap(); ++g) {
        out.push_back(Residual{gamma, g, diff.coefficient(g), part});
    }
    return out;
}

DeltaOptions delta_options(const Dataset& data, const CheckOptions& opts) {
    DeltaOptions d;
    d.aut = opts.aut;
    // Classes are already spread over threads; keep the inner enumeration serial.
    d.exec = Exec::serial;
    d.k1 = data.k1_override;
    return d;
}

Rational gwz_genus1(const CurveClass& gamma, const Lookup& lookup) {
    return gwz_series(gamma, 1, lookup).coefficient(1);
}

std::vector<CurveClass> open_classes(const Dataset& data, const Caps& caps) {
    std::vector<CurveClass> out;
    for (const auto& c : data.table.classes_of(InvariantKind::OpenBps)) {
        if (cc_degree(data.preset, c) <= caps.degree) {
            out.push_back(c);
        }
    }
    return out;
}

// Theorem-op residuals at gamma: the open table, sign-mapped, replaces the closed one.
std::vector<Residual> op_residuals(const CurveClass& gamma, const Caps& caps, const Lookup& lookup,
                                   const DeltaOptions& dopts) {
    const SurfacePreset& p = lookup.preset();
    const int e = blowup_tangency(p, gamma);
    InvariantTable mapped(p, lookup.table().genus_cap(), lookup.table().degree_cap());
    CurveClass base;
    for (int k = 1; k <= class_divisibility(gamma); ++k) {
        bool divisible = true;
        base = gamma;
        for (auto& x : base.coords) {
            divisible = divisible && x % k == 0;
            x /= k;
        }
        if (!divisible) {
            continue;
        }
        for (int g = 0; g <= caps.genus; ++g) {
            mapped.set(InvariantKind::GvLocal, base, g,
                       sign_power(g + 1) * lookup.require(InvariantKind::OpenBps, base, g));
        }
    }
    const GenusSeries n_open = local_gw_at(Lookup(mapped), gamma, caps.genus);
    const GenusSeries lhs = gwz_series(gamma, caps.genus, lookup);
    const GenusSeries rhs = gs_sub(gs_mul(c_series(e, caps.genus), n_open),
                                   delta_series(gamma, caps.genus, lookup, dopts));
    return series_residuals(gamma, gs_sub(lhs, rhs), "op");
}

} // namespace

GenusSeries c_series(int e, int cap) {
    if (e < 2) {
        throw InvalidTangency("c_series needs e >= 2, got " + std::to_string(e));
    }
    return gs_scale(gs_mul(kernel_v2(e, cap), kernel_v3(cap)), sign_power(e) * (e - 1) * (e - 1));
}

std::vector<CurveClass> subject_classes(const Dataset& data, const Caps& caps) {
    std::set<CurveClass> seen;
    for (auto kind : {InvariantKind::GwZ, InvariantKind::LogTwoPoint}) {
        for (const auto& c : data.table.classes_of(kind)) {
            if (cc_degree(data.preset, c) > caps.degree) {
                continue;
            }
            if (!is_primitive(c)) {
                throw SchemaError("subject class " + to_string(c) + " of " + std::string(kind_name(kind)) +
                                  " data must be primitive");
            }
            blowup_tangency(data.preset, c);
            seen.insert(c);
        }
    }
    std::vector<CurveClass> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const CurveClass& a, const CurveClass& b) {
        int da = cc_degree(data.preset, a);
        int db = cc_degree(data.preset, b);
        return da != db ? da < db : a.coords > b.coords;
    });
    return out;
}

GenusSeries gwz_series(const CurveClass& gamma, int genus_cap, const Lookup& lookup) {
    if (lookup.table().has_class(InvariantKind::GwZ, gamma)) {
        return table_series(lookup, InvariantKind::GwZ, gamma, genus_cap);
    }
    const int e = blowup_tangency(lookup.preset(), gamma);
    return assemble_Nz(DegenerationInput{e, table_series(lookup, InvariantKind::LogTwoPoint, gamma, genus_cap),
                                         genus_cap});
}

CheckReport check_theorem_main(const Dataset& data, const CheckOptions& opts) {
    const Caps caps = resolve_caps(data, opts);
    const DeltaOptions dopts = delta_options(data, opts);
    auto classes = restrict_classes(data, subject_classes(data, caps), opts);
    return run_per_class("main", data, caps, classes, opts.exec, [&](const CurveClass& gamma, const Lookup& lookup) {
        const int e = blowup_tangency(lookup.preset(), gamma);
        const GenusSeries lhs = gwz_series(gamma, caps.genus, lookup);
        const GenusSeries rhs = gs_sub(gs_mul(c_series(e, caps.genus), local_series(gamma, caps.genus, lookup)),
                                       delta_series(gamma, caps.genus, lookup, dopts));
        return series_residuals(gamma, gs_sub(lhs, rhs), "main");
    });
}

CheckReport check_maing1(const Dataset& data, const CheckOptions& opts) {
    Caps caps = resolve_caps(data, opts);
    if (data.table.genus_cap() < 1) {
        throw OutOfCap("the genus-1 identity needs dataset genus_cap >= 1");
    }
    caps.genus = 1;
    auto classes = restrict_classes(data, subject_classes(data, caps), opts);
    return run_per_class("maing1", data, caps, classes, opts.exec, [&](const CurveClass& gamma, const Lookup& lookup) {
        const Rational lhs = gwz_genus1(gamma, lookup);
        const Rational rhs = lookup.require(InvariantKind::GvLocal, gamma, 1) - delta1(gamma, lookup);
        return std::vector<Residual>{Residual{gamma, 1, lhs - rhs, "maing1"}};
    });
}

CheckReport check_blowup(const Dataset& data, const CheckOptions& opts) {
    Caps caps = resolve_caps(data, opts);
    if (data.table.genus_cap() < 1) {
        throw OutOfCap("the genus-1 identity needs dataset genus_cap >= 1");
    }
    caps.genus = 1;
    auto classes = restrict_classes(data, subject_classes(data, caps), opts);
    return run_per_class("blowup", data, caps, classes, opts.exec, [&](const CurveClass& gamma, const Lookup& lookup) {
        const Rational lhs = gwz_genus1(gamma, lookup);
        const GenusSeries w = w_series(gamma, 1, lookup);
        const Rational rhs = w.coefficient(1) - w.coefficient(0) / 12 - delta1(gamma, lookup);
        return std::vector<Residual>{Residual{gamma, 1, lhs - rhs, "blowup"}};
    });
}

CheckReport check_theorem_op(const Dataset& data, const CheckOptions& opts) {
    const Caps caps = resolve_caps(data, opts);
    const DeltaOptions dopts = delta_options(data, opts);
    auto classes = restrict_classes(data, subject_classes(data, caps), opts);
    return run_per_class("op", data, caps, classes, opts.exec, [&](const CurveClass& gamma, const Lookup& lookup) {
        return op_residuals(gamma, caps, lookup, dopts);
    });
}

CheckReport check_open_closed(const Dataset& data, const CheckOptions& opts) {
    const Caps caps = resolve_caps(data, opts);
    const auto bps_classes = restrict_classes(data, open_classes(data, caps), opts);
    if (bps_classes.empty()) {
        throw MissingInvariant("no OpenBps entries within the caps");
    }
    CheckReport report = run_per_class(
        "open-closed", data, caps, bps_classes, opts.exec, [&](const CurveClass& cls, const Lookup& lookup) {
            std::vector<Residual> out;
            for (int g = 0; g <= caps.genus; ++g) {
                const Rational closed = lookup.require(InvariantKind::GvLocal, cls, g);
                const Rational open = lookup.require(InvariantKind::OpenBps, cls, g);
                out.push_back(Residual{cls, g, closed - sign_power(g + 1) * open, "bps"});
            }
            return out;
        });
    CheckOptions sub = opts;
    sub.classes.clear();
    if (!subject_classes(data, caps).empty()) {
        CheckReport op = check_theorem_op(data, sub);
        report.pass = report.pass && op.pass;
        report.residuals.insert(report.residuals.end(), op.residuals.begin(), op.residuals.end());
        std::set<std::string> keys(report.queried.begin(), report.queried.end());
        keys.insert(op.queried.begin(), op.queried.end());
        report.queried.assign(keys.begin(), keys.end());
    }
    return report;
}

CheckReport check_loglocal_g1(const Dataset& data, const CheckOptions& opts) {
    Caps caps = resolve_caps(data, opts);
    if (data.table.genus_cap() < 1) {
        throw OutOfCap("the genus-1 identity needs dataset genus_cap >= 1");
    }
    caps.genus = 1;
    std::vector<CurveClass> classes;
    for (const auto& c : data.table.classes_of(InvariantKind::LogMax)) {
        if (cc_degree(data.preset, c) <= caps.degree && data.table.find(InvariantKind::LogMax, c, 1) &&
            data.table.find(InvariantKind::GwLocal, c, 1)) {
            classes.push_back(c);
        }
    }
    classes = restrict_classes(data, classes, opts);
    return run_per_class("loglocal-g1", data, caps, classes, opts.exec,
                         [&](const CurveClass& beta, const Lookup& lookup) {
                             const Rational residual =
                                 genus1_loglocal(beta, lookup.require(InvariantKind::GwLocal, beta, 1),
                                                 lookup.require(InvariantKind::LogMax, beta, 1), lookup);
                             return std::vector<Residual>{Residual{beta, 1, residual, "loglocal-g1"}};
                         });
}

CheckReport run_check(const std::string& identity, const Dataset& data, const CheckOptions& opts) {
    if (identity == "main") {
        return check_theorem_main(data, opts);
    }
    if (identity == "maing1") {
        return check_maing1(data, opts);
    }
    if (identity == "blowup") {
        return check_blowup(data, opts);
    }
    if (identity == "open-closed") {
        return check_open_closed(data, opts);
    }
    if (identity == "op") {
        return check_theorem_op(data, opts);
    }
    if (identity == "loglocal-g1") {
        return check_loglocal_g1(data, opts);
    }
    throw std::invalid_argument("unknown identity '" + identity + "'");
}

Rational theta_structure(int p_ord, int q_ord, int r_ord, const CurveClass& beta, const TwoPointTable& table) {
    if (p_ord < 1 || q_ord < 1 || r_ord < 0) {
        throw InvalidContactOrder("need p, q >= 1 and r >= 0");
    }
    auto term = [&](int outer, int first, int second) -> Rational {
        const int prefactor = outer - r_ord;
        if (prefactor == 0) {
            return 0;
        }
        if (second < 1) {
            throw InvalidContactOrder("contact order " + std::to_string(second) + " must be positive");
        }
        auto it = table.find(TwoPointKey{beta, first, second});
        if (it == table.end()) {
            throw MissingInvariant(to_string(TwoPointKey{beta, first, second}));
        }
        return prefactor * it->second;
    };
    return term(p_ord, q_ord, p_ord - r_ord) + term(q_ord, p_ord, q_ord - r_ord);
}

std::string report_to_json(const CheckReport& report) {
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& r : report.residuals) {
        residuals.push_back(
            {{"class", r.cls.coords}, {"genus", r.genus}, {"value", to_string(r.value)}, {"part", r.part}});
    }
    nlohmann::json doc{{"identity", report.identity},
                       {"preset", report.preset},
                       {"caps", {{"genus", report.caps.genus}, {"degree", report.caps.degree}}},
                       {"residuals", residuals},
                       {"queried", report.queried},
                       {"pass", report.pass}};
    return doc.dump(2);
}

} // namespace gwseries
