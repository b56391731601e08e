#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lqf/harness.hpp"

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) lqf::fail(lqf::ErrorCode::ParseError, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        lqf::fail(lqf::ErrorCode::ParseError, path + ": " + ex.what());
    }
}

void emit(const nlohmann::json& report, const std::string& out) {
    std::string text = report.dump(2);
    if (out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) lqf::fail(lqf::ErrorCode::ParseError, "cannot write " + out);
    f << text << "\n";
}

std::string summary_line(const nlohmann::json& r) {
    std::string s = r.value("verdict", "?");
    if (r.contains("lhs")) s += "  lhs=" + r["lhs"].get<std::string>() + "  rhs=" + r["rhs"].get<std::string>();
    if (r.contains("error")) s += "  " + r["error"].get<std::string>();
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil index versus epsilon factor verifier"};
    app.require_subcommand(1);
    std::optional<int> precision, psi_level;
    bool inter = false;
    std::string json_out, path;

    auto* verify = app.add_subcommand("verify", "check the identity for one torus instance");
    verify->add_option("instance", path, "instance JSON file")->required();
    verify->add_option("--precision", precision, "working precision in digits of pi");
    verify->add_option("--psi-level", psi_level, "level of the additive character");
    verify->add_flag("--intermediates", inter, "also check the intermediate identities");
    verify->add_option("--json", json_out, "write the report here instead of stdout");

    auto* suite = app.add_subcommand("suite", "run the suites listed in a config file");
    suite->add_option("config", path, "suite config JSON file")->required();
    suite->add_option("--precision", precision, "working precision for frames and descent");
    suite->add_option("--psi-level", psi_level, "restrict to one psi level");
    suite->add_option("--json", json_out, "write the report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            auto spec = lqf::instance_from_json(read_json(path));
            if (precision) spec.precision = *precision;
            if (psi_level) spec.psi_level = *psi_level;
            if (inter) spec.intermediates = true;
            auto report = lqf::verify_main_theorem(spec);
            emit(report, json_out);
            if (!json_out.empty()) std::cout << summary_line(report) << "\n";
            return lqf::exit_code_for(report);
        }
        auto config = read_json(path);
        if (precision) config["precision"] = *precision;
        if (psi_level) config["psi_levels"] = {*psi_level};
        auto report = lqf::run_suite(config);
        emit(report, json_out);
        if (!json_out.empty())
            for (auto& [name, r] : report["suites"].items())
                std::cout << name << ": " << (r.value("pass", false) ? "PASS" : "FAIL") << "\n";
        return report.value("pass", false) ? 0 : 1;
    } catch (const lqf::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
