#pragma once

#include "gwseries/genus_series.hpp"
#include "gwseries/invariant_store.hpp"
#include "gwseries/loglocal.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gwseries {

struct Caps {
    int genus = 0;
    int degree = 0;
};

struct Residual {
    CurveClass cls;
    int genus = 0;
    Rational value;
    std::string part; // which identity produced it when a check has several
};

struct CheckReport {
    std::string identity;
    std::string preset;
    Caps caps;
    std::vector<Residual> residuals;
    std::vector<std::string> queried;
    bool pass = true;
};

struct CheckOptions {
    std::optional<Caps> caps;          // defaults to the dataset caps
    std::vector<CurveClass> classes;   // restricts the subject classes when nonempty
    Exec exec = Exec::parallel;
    AutMode aut = AutMode::at_most;
};

// (-1)^e (e-1)^2 V2(e) V3
GenusSeries c_series(int e, int cap);

// Classes of the blow-up carrying GwZ or LogTwoPoint data, within the caps.
std::vector<CurveClass> subject_classes(const Dataset& data, const Caps& caps);

// N_{g,1}(Z) through u^genus_cap: GwZ entries when present, otherwise
// assembled from the LogTwoPoint entries.
GenusSeries gwz_series(const CurveClass& gamma, int genus_cap, const Lookup& lookup);

CheckReport check_theorem_main(const Dataset& data, const CheckOptions& opts = {});
CheckReport check_maing1(const Dataset& data, const CheckOptions& opts = {});
CheckReport check_blowup(const Dataset& data, const CheckOptions& opts = {});
// Per-key sign relation between GvLocal and OpenBps, plus the open series
// identity at every subject class.
CheckReport check_open_closed(const Dataset& data, const CheckOptions& opts = {});
CheckReport check_theorem_op(const Dataset& data, const CheckOptions& opts = {});
CheckReport check_loglocal_g1(const Dataset& data, const CheckOptions& opts = {});

CheckReport run_check(const std::string& identity, const Dataset& data, const CheckOptions& opts = {});

Rational theta_structure(int p_ord, int q_ord, int r_ord, const CurveClass& beta, const TwoPointTable& table);

std::string report_to_json(const CheckReport& report);

int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gwseries
