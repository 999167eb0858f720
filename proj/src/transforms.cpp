#include "gwseries/transforms.hpp"

#include "gwseries/errors.hpp"

#include <map>

namespace gwseries {

namespace {

// Kernels keyed by (g, k); the cap is fixed per call.
class KernelCache {
public:
    explicit KernelCache(int cap) : cap_(cap) {}

    const GenusSeries& get(int g, int k) {
        auto key = std::make_pair(g, k);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, kernel_sin_power(g, k, cap_)).first;
        }
        return it->second;
    }

private:
    int cap_;
    std::map<std::pair<int, int>, GenusSeries> cache_;
};

// c = k * base for some k >= 1; returns the base class or nothing.
bool divides(int k, const CurveClass& c, CurveClass& base) {
    base = c;
    for (auto& x : base.coords) {
        if (x % k != 0) {
            return false;
        }
        x /= k;
    }
    return true;
}

} // namespace

NovikovSeries gv_to_gw(const InvariantTable& n, Exec exec) {
    const int cap = n.genus_cap() - 1;
    NovikovSeries out(n.preset(), n.degree_cap(), cap);
    std::vector<CurveClass> targets;
    for (auto& c : enumerate_effective_upto(n.preset(), n.degree_cap())) {
        if (!c.is_zero()) {
            targets.push_back(std::move(c));
        }
    }
    // Kernels are precomputed so the parallel loop only reads shared state.
    KernelCache kernels(cap);
    const int kmax = std::max(1, n.degree_cap());
    std::map<std::pair<int, int>, const GenusSeries*> table;
    for (int g = 0; g <= n.genus_cap(); ++g) {
        for (int k = 1; k <= kmax; ++k) {
            table[{g, k}] = &kernels.get(g, k);
        }
    }
    std::vector<GenusSeries> values(targets.size());
    parallel_for(targets.size(), exec, [&](std::size_t i) {
        const CurveClass& c = targets[i];
        GenusSeries acc = GenusSeries::zero(cap);
        const int div = class_divisibility(c);
        CurveClass base;
        for (int k = 1; k <= div; ++k) {
            if (!divides(k, c, base)) {
                continue;
            }
            for (int g = 0; g <= n.genus_cap(); ++g) {
                const Rational* v = n.find(InvariantKind::GvLocal, base, g);
                if (v && *v != 0) {
                    acc = gs_add(acc, gs_scale(*table.at({g, k}), *v / k));
                }
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

InvariantTable gw_to_gv(const NovikovSeries& F) {
    const int cap = F.genus_cap();
    const int gmax = cap + 1;
    if (gmax < 0) {
        throw NotInImage("genus cap below the genus-0 pole");
    }
    InvariantTable out(F.preset(), gmax, F.degree_cap());
    KernelCache kernels(cap);
    for (const auto& [cls, s] : F.terms()) {
        if (cls.is_zero() && !s.is_zero()) {
            throw NotInImage("class-0 term " + to_text(s));
        }
    }
    for (const auto& c : enumerate_effective_upto(F.preset(), F.degree_cap())) {
        if (c.is_zero()) {
            continue;
        }
        GenusSeries residual = F.coefficient(c);
        CurveClass base;
        const int div = class_divisibility(c);
        for (int k = 2; k <= div; ++k) {
            if (!divides(k, c, base)) {
                continue;
            }
            for (int g = 0; g <= gmax; ++g) {
                const Rational* v = out.find(InvariantKind::GvLocal, base, g);
                if (v) {
                    residual = gs_sub(residual, gs_scale(kernels.get(g, k), *v / k));
                }
            }
        }
        // The genus-g kernel starts at u^(g-1) with leading coefficient 1.
        for (int g = 0; g <= gmax; ++g) {
            Rational ng = residual.coefficient(g - 1);
            if (ng != 0) {
                out.set(InvariantKind::GvLocal, c, g, ng);
                residual = gs_sub(residual, gs_scale(kernels.get(g, 1), ng));
            }
        }
        if (!residual.is_zero()) {
            throw NotInImage("residual " + to_text(residual) + " at class " + to_string(c));
        }
    }
    return out;
}

GenusSeries local_gw_at(const Lookup& lookup, const CurveClass& cls, int genus_cap) {
    const int cap = genus_cap - 1;
    GenusSeries acc = GenusSeries::zero(cap);
    CurveClass base;
    const int div = class_divisibility(cls);
    for (int k = 1; k <= div; ++k) {
        if (!divides(k, cls, base)) {
            continue;
        }
        for (int g = 0; g <= genus_cap; ++g) {
            const Rational& v = lookup.require(InvariantKind::GvLocal, base, g);
            if (v != 0) {
                acc = gs_add(acc, gs_scale(kernel_sin_power(g, k, cap), v / k));
            }
        }
    }
    std::vector<Rational> shifted;
    for (int g = 0; g <= genus_cap; ++g) {
        shifted.push_back(acc.coefficient(g - 1));
    }
    return GenusSeries::from_coefficients(std::move(shifted));
}

Rational genus1_gv_closed_form(const Rational& n0, const Rational& n1) {
    return n1 - n0 / 12;
}

InvariantTable open_closed_sign(const InvariantTable& n) {
    InvariantTable out(n.preset(), n.genus_cap(), n.degree_cap());
    for (const auto& [key, value] : n.entries()) {
        InvariantKind target;
        if (key.kind == InvariantKind::GvLocal) {
            target = InvariantKind::OpenBps;
        } else if (key.kind == InvariantKind::OpenBps) {
            target = InvariantKind::GvLocal;
        } else {
            continue;
        }
        out.set(target, key.cls, key.genus, sign_power(key.genus + 1) * value);
    }
    return out;
}

Rational loglocal_g0(const SurfacePreset& p, const CurveClass& beta, const Rational& n0_local) {
    const int t = cc_tangency(p, beta);
    if (t <= 0) {
        throw ZeroTangency("class " + to_string(beta) + " has tangency " + std::to_string(t));
    }
    return sign_power(t - 1) * t * n0_local;
}

Rational loglocal_g0_inverse(const SurfacePreset& p, const CurveClass& beta, const Rational& r0) {
    const int t = cc_tangency(p, beta);
    if (t <= 0) {
        throw ZeroTangency("class " + to_string(beta) + " has tangency " + std::to_string(t));
    }
    return sign_power(t - 1) * r0 / t;
}

Rational two_point_from_local_g0(int e, const Rational& n0_hat) {
    if (e < 2) {
        throw InvalidTangency("two-point invariants need e >= 2, got " + std::to_string(e));
    }
    return sign_power(e) * (e - 1) * n0_hat;
}

GenusSeries hat_relation(const GenusSeries& r_two_point, const GenusSeries& k1) {
    return gs_mul(r_two_point, k1);
}

GenusSeries hat_relation(const GenusSeries& r_two_point) {
    return hat_relation(r_two_point, kernel_k1(r_two_point.cap()));
}

GenusSeries hat_relation_inverse(const GenusSeries& r_hat) {
    return gs_mul(r_hat, kernel_v3(r_hat.cap()));
}

} // namespace gwseries
