// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#include <isacsim/cli.hpp>

int main(int argc, char** argv) { return isacsim::cli::run_cli(argc, argv); }
