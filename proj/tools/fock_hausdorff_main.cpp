#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <fock_hausdorff/cli.hpp>

namespace fh  = fock_hausdorff;
namespace cli = fock_hausdorff::cli;

int main(int argc, char ** argv)
{
    CLI::App app{"Hausdorff operators on Fock spaces"};
    app.name("fock-hausdorff");

    cli::RunConfig config;
    std::string    command;
    std::string    p_text = "2";
    std::string    format = "text";

    app.add_option("command", command, "moments | apply | norm | opnorm | compact | schatten | spectrum | report | verify")
        ->required()
        ->check(CLI::IsMember({"moments", "apply", "norm", "opnorm", "compact", "schatten", "spectrum", "report",
                               "verify"}));
    app.add_option("-m,--measure", config.measure_path, "measure-spec JSON file")->required();
    app.add_option("-f,--function", config.function_path, "polynomial JSON file (apply, norm)");
    app.add_option("-N", config.N, "highest moment index")->capture_default_str();
    app.add_option("-p", p_text, "Fock exponent (REAL or inf); Schatten exponent for schatten")
        ->capture_default_str();
    app.add_option("--alpha", config.alpha, "Fock weight parameter")->capture_default_str();
    app.add_option("--tol", config.tol, "moment quadrature tolerance")->capture_default_str();
    app.add_option("--seed", config.seed, "seed for the verify suite")->capture_default_str();
    app.add_option("--schatten-p", config.schatten_p, "Schatten exponent used by report")->capture_default_str();
    app.add_option("-o", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    } catch (const CLI::ParseError & e) {
        app.exit(e);
        return cli::invalid_input;
    }

    try {
        config.p = cli::parse_exponent(p_text);
    } catch (const fh::ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::invalid_input;
    }
    config.command       = *cli::command_from_string(command);
    config.output_format = format == "json" ? cli::Format::Json : format == "csv" ? cli::Format::Csv : cli::Format::Text;

    return cli::run(config, std::cout, std::cerr);
}
