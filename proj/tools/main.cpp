#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "germnf/io.hpp"

namespace {

std::string read_all(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact formal normal forms for plane germs tangent to the identity "
                 "along the fixed line {z1=0}"};

    std::string input_path = "-";
    std::string format = "json";
    germnf::RunOptions options;
    bool no_verify = false;

    app.add_option("input", input_path, "input JSON file ('-' for stdin)")
        ->capture_default_str();
    app.add_option("--degree", options.degree,
                   "working truncation degree; everything is exact modulo this total degree")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    app.add_flag("--case-only", options.case_only,
                 "stop after classification and the exceptional-set verdict");
    app.add_flag("--permissive-scale", options.permissive_scale,
                 "keep going when a scaling root is missing from Q(i), reporting the "
                 "residual diagonal factor");
    app.add_flag("--no-verify", no_verify, "skip the conjugacy certificate");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    options.verify = !no_verify;
    options.text_format = format == "text";

    std::string bytes;
    if (input_path == "-") {
        bytes = read_all(std::cin);
    } else {
        std::ifstream file(input_path, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open input file: " << input_path << "\n";
            return 2;
        }
        bytes = read_all(file);
    }

    germnf::RunResult result = germnf::run_document(bytes, options);
    std::cout << result.output;
    std::cerr << result.diagnostics;
    return result.exit_code;
}
