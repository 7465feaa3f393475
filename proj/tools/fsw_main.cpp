// Command-line front end for the square-well toolkit. Emits the spectrum,
// plot-ready figure datasets, moment comparisons and the verification report
// as CSV or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fsw/cli.hpp"

namespace {

int write_output(const fsw::cli::RunConfig& config, const std::string& text) {
    if (config.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(config.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << config.output << "'\n";
        return 1;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite square well toolkit"};
    app.require_subcommand(1);

    fsw::cli::RunConfig config;
    std::string format = "csv";
    std::string which = "fig1";
    int order = 2;
    int sweep_points = 40;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--v0", config.v0, "well depth")->envname("FSW_V0");
        cmd->add_option("--a", config.a, "well width")->envname("FSW_A");
        cmd->add_option("--mass", config.mass, "particle mass (default 0.5 so 2m = 1)")
            ->envname("FSW_MASS");
        cmd->add_option("--hbar", config.hbar, "action quantum")->envname("FSW_HBAR");
        cmd->add_option("--state", config.state_index, "restrict to one state index")
            ->envname("FSW_STATE");
        cmd->add_option("--pmax", config.pmax, "momentum truncation half-width")
            ->envname("FSW_PMAX");
        cmd->add_option("--samples", config.samples, "grid points per dataset")
            ->envname("FSW_SAMPLES");
        cmd->add_option("--tol", config.tol, "quadrature tolerance")->envname("FSW_TOL");
        cmd->add_option("--format", format, "output format: csv or json")
            ->envname("FSW_FORMAT")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", config.output, "output path (default stdout)")
            ->envname("FSW_OUTPUT");
    };

    auto* spectrum = app.add_subcommand("spectrum", "bound-state table");
    add_common(spectrum);

    auto* figure = app.add_subcommand("figure", "figure dataset (fig1..fig6)");
    add_common(figure);
    figure->add_option("--which", which, "figure id: fig1..fig6")->required();
    figure->add_option("--sweep-points", sweep_points, "v0 sweep points for fig5/fig6")
        ->envname("FSW_SWEEP_POINTS");

    auto* verify = app.add_subcommand("verify", "run all verification checks");
    add_common(verify);

    auto* moments = app.add_subcommand("moments", "closed form vs momentum integral");
    add_common(moments);
    moments->add_option("--s", order, "moment order")->required()->check(CLI::IsMember({2, 4}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    config.format = format == "json" ? fsw::cli::Format::Json : fsw::cli::Format::Csv;
    // --samples, when given, also sets the fig5/fig6 sweep resolution
    if (figure->parsed() && figure->count("--samples") > 0 &&
        figure->count("--sweep-points") == 0)
        sweep_points = config.samples;

    try {
        if (spectrum->parsed()) return write_output(config, fsw::cli::cmd_spectrum(config));
        if (figure->parsed())
            return write_output(config, fsw::cli::cmd_figure(config, which, sweep_points));
        if (moments->parsed()) return write_output(config, fsw::cli::cmd_moments(config, order));
        if (verify->parsed()) {
            const auto outcome = fsw::cli::cmd_verify(config);
            const int rc = write_output(config, outcome.text);
            if (rc != 0) return rc;
            if (!outcome.all_passed) {
                std::cerr << "verification failed:\n";
                for (const auto& name : outcome.failing) std::cerr << "  " << name << "\n";
                return 2;
            }
            return 0;
        }
    } catch (const fsw::convergence_error& e) {
        std::cerr << "numerical non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const fsw::bracket_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
