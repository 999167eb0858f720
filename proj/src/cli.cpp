#include "gwseries/correspond.hpp"
#include "gwseries/degeneration.hpp"
#include "gwseries/errors.hpp"
#include "gwseries/loglocal.hpp"
#include "gwseries/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace gwseries {

namespace {

using nlohmann::json;

struct GlobalFlags {
    std::string data;
    std::string preset;
    std::optional<int> genus_cap;
    std::optional<int> degree_cap;
    std::string format = "human";
    bool verbose = false;
};

class Output {
public:
    Output(std::ostream& out, std::string format) : out_(out), format_(std::move(format)) {}

    const std::string& format() const { return format_; }

    // One row per record; human output pads columns, tsv joins with tabs.
    void table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
        if (format_ == "json") {
            json arr = json::array();
            for (const auto& row : rows) {
                json obj;
                for (std::size_t i = 0; i < header.size(); ++i) {
                    obj[header[i]] = row[i];
                }
                arr.push_back(obj);
            }
            out_ << arr.dump(2) << "\n";
            return;
        }
        if (format_ == "tsv") {
            print_joined(header, "\t");
            for (const auto& row : rows) {
                print_joined(row, "\t");
            }
            return;
        }
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) {
            width[i] = header[i].size();
            for (const auto& row : rows) {
                width[i] = std::max(width[i], row[i].size());
            }
        }
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out_ << cells[i];
                if (i + 1 < cells.size()) {
                    out_ << std::string(width[i] - cells[i].size() + 2, ' ');
                }
            }
            out_ << "\n";
        };
        line(header);
        for (const auto& row : rows) {
            line(row);
        }
    }

    std::ostream& raw() { return out_; }

private:
    void print_joined(const std::vector<std::string>& cells, const char* sep) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out_ << (i ? sep : "") << cells[i];
        }
        out_ << "\n";
    }

    std::ostream& out_;
    std::string format_;
};

Dataset load_inputs(const GlobalFlags& flags, bool need_data) {
    Dataset data;
    if (!flags.data.empty()) {
        data = load_dataset(resolve_dataset_path(flags.data));
        if (!flags.preset.empty() && flags.preset != data.preset.id) {
            throw PresetMismatch("--preset " + flags.preset + " but the dataset is on " + data.preset.id);
        }
        return data;
    }
    if (need_data) {
        throw SchemaError("this subcommand needs --data");
    }
    data.preset = preset_by_id(flags.preset.empty() ? "f1" : flags.preset);
    data.table = InvariantTable(data.preset, flags.genus_cap.value_or(0), flags.degree_cap.value_or(0));
    return data;
}

Caps caps_for(const GlobalFlags& flags, const Dataset& data) {
    return Caps{flags.genus_cap.value_or(data.table.genus_cap()), flags.degree_cap.value_or(data.table.degree_cap())};
}

std::string bracketed(const CurveClass& c) {
    return "(" + to_string(c) + ")";
}

void print_series(Output& out, const std::string& name, const GenusSeries& s) {
    if (out.format() == "human") {
        out.raw() << to_text(s) << "\n";
        return;
    }
    if (out.format() == "json") {
        json coeffs = json::array();
        for (int p = s.min_upow(); p <= s.cap(); ++p) {
            coeffs.push_back({{"upow", p}, {"value", to_string(s.coefficient(p))}});
        }
        out.raw() << json{{"series", name}, {"text", to_text(s)}, {"coefficients", coeffs}}.dump(2) << "\n";
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (int p = s.min_upow(); p <= s.cap(); ++p) {
        rows.push_back({std::to_string(p), to_string(s.coefficient(p))});
    }
    out.table({"upow", "value"}, rows);
}

void print_value(Output& out, const std::string& label, const CurveClass& cls, const Rational& v,
                 const std::vector<std::string>& trace) {
    if (out.format() == "json") {
        out.raw() << json{{"quantity", label}, {"class", cls.coords}, {"value", to_string(v)}, {"trace", trace}}.dump(2)
                  << "\n";
        return;
    }
    for (const auto& t : trace) {
        out.raw() << "# " << t << "\n";
    }
    if (out.format() == "tsv") {
        out.table({"quantity", "class", "value"}, {{label, to_string(cls), to_string(v)}});
    } else {
        out.raw() << label << bracketed(cls) << " = " << to_string(v) << "\n";
    }
}

void print_report(Output& out, const CheckReport& r, bool verbose) {
    if (out.format() == "json") {
        out.raw() << report_to_json(r) << "\n";
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& res : r.residuals) {
        rows.push_back({res.part, to_string(res.cls), std::to_string(res.genus), to_string(res.value)});
    }
    if (out.format() == "human") {
        out.raw() << "identity " << r.identity << "  preset " << r.preset << "  caps g<=" << r.caps.genus
                  << " d<=" << r.caps.degree << "\n";
    }
    out.table({"part", "class", "genus", "residual"}, rows);
    if (verbose) {
        for (const auto& k : r.queried) {
            out.raw() << "# read " << k << "\n";
        }
    }
    out.raw() << (r.pass ? "PASS" : "FAIL") << "\n";
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out_stream, std::ostream& err) {
    CLI::App app{"Exact series engine for Gromov-Witten correspondences", "gwseries"};
    app.fallthrough();
    app.require_subcommand(1);
    GlobalFlags flags;
    app.add_option("--data", flags.data, "Dataset file or bundled dataset name");
    app.add_option("--preset", flags.preset, "Surface preset id")->check(CLI::IsMember({"p2", "f1"}));
    app.add_option("--genus-cap", flags.genus_cap, "Genus cap");
    app.add_option("--degree-cap", flags.degree_cap, "Degree cap");
    app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"human", "tsv", "json"}));
    app.add_flag("--verbose", flags.verbose, "Print traces and queried keys");

    auto* series = app.add_subcommand("series", "Print a closed-form kernel");
    std::string kernel;
    int e_arg = 2;
    int g_arg = 0;
    int k_arg = 1;
    series->add_option("--kernel", kernel, "v3, v2, k1, sin or c")
        ->required()
        ->check(CLI::IsMember({"v3", "v2", "k1", "sin", "c"}));
    series->add_option("--e", e_arg, "Tangency for v2 and c");
    series->add_option("--g", g_arg, "Genus for sin");
    series->add_option("--k", k_arg, "Cover degree for sin");

    auto* gvgw = app.add_subcommand("gvgw", "Resum GV invariants or invert the resummation");
    std::string direction = "to-gw";
    gvgw->add_option("--direction", direction)->check(CLI::IsMember({"to-gw", "to-gv"}));

    auto* assemble = app.add_subcommand("assemble", "Assemble N_{g,1}(Z) from the two-point series");
    std::string r_series;
    assemble->add_option("--e", e_arg, "Tangency")->required();
    assemble->add_option("--r-series", r_series, "Two-point series text")->required();

    auto* d1 = app.add_subcommand("delta1", "Genus-1 elliptic correction");
    std::string class_arg;
    d1->add_option("--class", class_arg, "Curve class, e.g. 3,4")->required();

    auto* delta = app.add_subcommand("delta", "Higher-genus discrepancy");
    int genus_arg = 1;
    delta->add_option("--genus", genus_arg)->required();
    delta->add_option("--class", class_arg)->required();
    std::string aut_mode = "at-most";
    delta->add_option("--aut-mode", aut_mode)->check(CLI::IsMember({"at-most", "exactly"}));

    auto* check = app.add_subcommand("check", "Check an identity on a dataset");
    std::string identity;
    std::vector<std::string> check_classes;
    check->add_option("--identity", identity)
        ->required()
        ->check(CLI::IsMember({"main", "maing1", "blowup", "open-closed", "op", "loglocal-g1"}));
    check->add_option("--class", check_classes, "Restrict to these classes");
    check->add_option("--aut-mode", aut_mode)->check(CLI::IsMember({"at-most", "exactly"}));

    auto* theta = app.add_subcommand("theta", "Theta structure constant");
    int p_ord = 1;
    int q_ord = 1;
    int r_ord = 0;
    theta->add_option("--p", p_ord)->required();
    theta->add_option("--q", q_ord)->required();
    theta->add_option("--r", r_ord)->required();
    theta->add_option("--class", class_arg)->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out_stream, err);
        return code == 0 ? 0 : 2;
    }

    Output out(out_stream, flags.format);
    try {
        if (series->parsed()) {
            const int cap = flags.genus_cap.value_or(3);
            GenusSeries s;
            if (kernel == "v3") {
                s = kernel_v3(cap);
            } else if (kernel == "v2") {
                s = kernel_v2(e_arg, cap);
            } else if (kernel == "k1") {
                s = kernel_k1(cap);
            } else if (kernel == "sin") {
                s = kernel_sin_power(g_arg, k_arg, cap);
            } else {
                s = c_series(e_arg, cap);
            }
            print_series(out, kernel, s);
            return 0;
        }
        if (assemble->parsed()) {
            GenusSeries r = parse_series(r_series);
            const int cap = flags.genus_cap.value_or(r.cap());
            print_series(out, "N_Z", assemble_Nz(DegenerationInput{e_arg, r, cap}));
            return 0;
        }
        if (theta->parsed()) {
            Dataset data = load_inputs(flags, true);
            CurveClass beta = parse_class(class_arg);
            check_rank(data.preset, beta);
            if (cc_tangency(data.preset, beta) != p_ord + q_ord - r_ord) {
                throw InvalidContactOrder("class " + to_string(beta) + " has tangency " +
                                          std::to_string(cc_tangency(data.preset, beta)) + ", expected p + q - r = " +
                                          std::to_string(p_ord + q_ord - r_ord));
            }
            Rational v = theta_structure(p_ord, q_ord, r_ord, beta, data.two_point);
            print_value(out, "N_pqr", beta, v, {});
            return 0;
        }

        Dataset data = load_inputs(flags, true);
        const Caps caps = caps_for(flags, data);
        const AutMode mode = aut_mode == "exactly" ? AutMode::exactly : AutMode::at_most;

        if (gvgw->parsed()) {
            if (caps.genus > data.table.genus_cap() || caps.degree > data.table.degree_cap()) {
                throw OutOfCap("requested caps exceed the dataset caps");
            }
            std::vector<std::vector<std::string>> rows;
            if (direction == "to-gw") {
                InvariantTable t(data.preset, caps.genus, caps.degree);
                for (const auto& [key, value] : data.table.entries()) {
                    if (key.kind == InvariantKind::GvLocal && key.genus <= caps.genus &&
                        cc_degree(data.preset, key.cls) <= caps.degree) {
                        t.set(key.kind, key.cls, key.genus, value);
                    }
                }
                NovikovSeries F = gv_to_gw(t);
                for (const auto& [cls, s] : F.terms()) {
                    for (int p = s.min_upow(); p <= s.cap(); ++p) {
                        rows.push_back({to_string(cls), std::to_string(p), to_string(s.coefficient(p))});
                    }
                }
                out.table({"class", "upow", "value"}, rows);
            } else {
                NovikovSeries F(data.preset, caps.degree, caps.genus - 1);
                for (const auto& [key, value] : data.table.entries()) {
                    if (key.kind == InvariantKind::GwLocal && key.genus <= caps.genus) {
                        F.add(key.cls, GenusSeries::monomial(value, key.genus - 1, caps.genus - 1));
                    }
                }
                InvariantTable n = gw_to_gv(F);
                for (const auto& [key, value] : n.entries()) {
                    rows.push_back({to_string(key.cls), std::to_string(key.genus), to_string(value)});
                }
                out.table({"class", "genus", "value"}, rows);
            }
            return 0;
        }
        if (d1->parsed()) {
            CurveClass beta = parse_class(class_arg);
            std::vector<Delta1Term> trace;
            Rational v = delta1(beta, data.lookup(), &trace);
            std::vector<std::string> lines;
            if (flags.verbose) {
                for (const auto& t : trace) {
                    lines.push_back("n=" + std::to_string(t.n) + " sigma=" + to_string(t.divisor_sum) +
                                    " sign=" + std::to_string(t.sign) + " exp_coeff=" + to_string(t.exp_coefficient));
                }
            }
            print_value(out, "delta1", beta, v, lines);
            return 0;
        }
        if (delta->parsed()) {
            CurveClass beta = parse_class(class_arg);
            DeltaOptions opts;
            opts.aut = mode;
            opts.k1 = data.k1_override;
            std::vector<DeltaTerm> trace;
            GenusSeries s = delta_series(beta, genus_arg, data.lookup(), opts, flags.verbose ? &trace : nullptr);
            std::vector<std::string> lines;
            for (const auto& t : trace) {
                lines.push_back(to_string(t));
            }
            print_value(out, "delta_g" + std::to_string(genus_arg), beta, s.coefficient(genus_arg), lines);
            return 0;
        }
        if (check->parsed()) {
            CheckOptions opts;
            opts.caps = caps;
            opts.aut = mode;
            for (const auto& c : check_classes) {
                opts.classes.push_back(parse_class(c));
            }
            CheckReport report = run_check(identity, data, opts);
            print_report(out, report, flags.verbose);
            return report.pass ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "gwseries: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "gwseries: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return cli_main(args, std::cout, std::cerr);
}

} // namespace gwseries
