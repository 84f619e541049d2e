#pragma once

#include <string>

#include "json.hpp"
#include "workbench/linalg.hpp"

namespace wb {

// Options shared by every job kind. Explicit command-line flags win over
// values carried in the document; document values win over the defaults.
struct RunOptions {
    int order = 3;
    LinField field{0};
    bool json_output = false;
    bool order_set = false;
    bool field_set = false;
};

LinField parse_field(const std::string& spec);  // Q | F2 | Fp:<p>

struct Report {
    std::string text;
    nlohmann::json data;

    std::string render(bool json_output) const {
        return json_output ? data.dump(2) + "\n" : text;
    }
};

// Dispatch a parsed job document (kinds: vpp, real-vb, stringy, weight-ss,
// elliptic, charnum). Schema violations throw input_error, mathematical
// precondition failures precondition_error, breached internal checks
// internal_error.
Report run_job(const nlohmann::json& doc, const RunOptions& opt);

// Parse a JSON text, then run.
Report run_job_text(const std::string& text, const RunOptions& opt);

}  // namespace wb
