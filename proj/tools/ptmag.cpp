#include <iostream>

#include <CLI11.hpp>

#include "ptmag/cli.hpp"

using namespace ptmag::cli;

int main(int argc, char **argv) {
  CLI::App app{"Ground-state cooling of a magnomechanical resonator next to a gain cavity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PTMAG_VERSION);

  RunConfig rc;
  std::string grid_text;

  struct Sub {
    Command command;
    const char *help;
  };
  const Sub subs[] = {
      {Command::EigenSweep, "supermode eigenfrequencies versus J or kappa_a"},
      {Command::Spectrum, "force noise spectrum versus omega"},
      {Command::CoolingRate, "A+, A- and net cooling rate versus drive detuning"},
      {Command::PhononVsNth, "final phonon number versus bath occupancy"},
      {Command::PhononVsDetuning, "final phonon number versus drive detuning"},
      {Command::FieldSweep, "final phonon number versus bias field"},
      {Command::Evolve, "covariance time evolution"},
      {Command::Check, "run the invariant self-test on a configuration"},
  };
  for (const Sub &s : subs) {
    CLI::App *sub = app.add_subcommand(command_name(s.command), s.help);
    sub->add_option("--config", rc.params_file, "parameter file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", rc.overrides, "KEY=VALUE override, applied after the file");
    sub->add_option("--out", rc.output, "output path (default stdout)");
    if (s.command != Command::Check) {
      sub->add_option("--grid", grid_text, "AXIS:START:STOP:N");
    }
    if (s.command == Command::Evolve) {
      sub->add_flag("--full-covariance", rc.full_covariance, "also write the 21 covariance entries");
    }
    sub->callback([&rc, c = s.command] { rc.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  if (!grid_text.empty()) {
    try {
      rc.grid = parse_grid(grid_text);
    } catch (const std::invalid_argument &e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kUsage;
    }
  }
  return run(rc, std::cout, std::cerr);
}
