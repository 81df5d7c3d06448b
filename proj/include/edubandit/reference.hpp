#pragma once

#include <span>
#include <vector>

#include "edubandit/experiment.hpp"
#include "edubandit/report.hpp"

/// Straight-line serial versions of the parallel kernels. Kept for tests and
/// benchmarks; they retain every run and sort samples instead of using
/// histograms.
namespace edubandit::reference {

std::vector<Trajectory> run_experiment_serial(const ExperimentSpec& spec);

AggregateResult aggregate_serial(std::span<const Trajectory> trajectories,
                                 const ExperimentSpec& spec);

}  // namespace edubandit::reference
