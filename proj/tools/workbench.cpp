#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "workbench/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"workbench: exact invariants of singular spaces from job documents"};
    std::string job_path, field_spec = "Q", format = "text";
    int order = 3;
    app.add_option("job", job_path, "path to a JSON job document")->required();
    auto* order_opt = app.add_option("--order", order, "series truncation order Q (default 3)");
    auto* field_opt =
        app.add_option("--field", field_spec, "coefficient field: Q, F2, or Fp:<p>");
    app.add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::ifstream in(job_path);
        if (!in) throw wb::input_error("cannot open job document: " + job_path);
        std::ostringstream buf;
        buf << in.rdbuf();

        wb::RunOptions opt;
        opt.order = order;
        opt.order_set = order_opt->count() > 0;
        opt.field = wb::parse_field(field_spec);
        opt.field_set = field_opt->count() > 0;
        opt.json_output = format == "json";

        wb::Report report = wb::run_job_text(buf.str(), opt);
        std::cout << report.render(opt.json_output);
        return 0;
    } catch (const wb::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const wb::precondition_error& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const wb::internal_error& e) {
        std::cerr << "internal invariant breached: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
