#pragma once

#include <string>
#include <vector>

#include "zer/bounds.hpp"
#include "zer/distiller.hpp"
#include "zer/model.hpp"
#include "zer/types.hpp"

namespace zer {

struct RGConfig {
  std::vector<double> epsilon_schedule;  // per step; last entry repeats
  int region_width_cells = 2;
  int blocking_factor = 2;
  double delta_null = 1e-6;
  double gap_min = 0.1;
  int max_steps = 64;
  int core_size_threshold = 8;
  double residual_abort_multiplier = 10.0;
};

void validate_rg_config(const RGConfig& config);

enum class StepStatus {
  accepted,
  trivial,             // no local mode passed the threshold
  rejected_nonuniform, // band counts differ between momenta
  rejected_gap,        // frozen bands too close to zero
  rejected_residual,   // rotated frozen blocks too far from projectors
};

const char* to_string(StepStatus s);

struct StepRecord {
  int step = 0;
  int cells = 0;     // lattice shape the distiller saw (after any blocking)
  int orbitals = 0;
  double epsilon = 0.0;
  bool blocked = false;  // a blocking happened at the start of this step
  StepStatus status = StepStatus::trivial;
  int z_f_local = 0;
  int z_e_local = 0;
  int z_f = 0;
  int n_courier = 0;
  int z_e = 0;
  double gap = 0.0;
  double unitarity_residual = 0.0;
  double isometry_residual = 0.0;   // |V^dag V - 1|_max after this step
  double residual_offblock = 0.0;
  double residual_frozen = 0.0;
  double S_courier_exact = 0.0;
  double courier_xi_min = 0.0;  // courier-block eigenvalue range before
  double courier_xi_max = 0.0;  // the projector rounding
  BoundReport bound;
  // band structure of the global distiller at this step (empty when trivial)
  RealMatrix band_eigenvalues;                 // L x m
  std::vector<std::vector<BandLabel>> band_labels;
  // localization report per group (accepted steps)
  RealVector centers_filled, centers_courier, centers_empty;
  double decay_filled = 0.0, decay_courier = 0.0, decay_empty = 0.0;
};

struct RGTrace {
  ModelSpec spec;
  RGConfig config;
  int n_filled = 0;
  bool fermi_tie = false;
  std::vector<ModeLabel> tie_filled, tie_unfilled;
  std::vector<StepRecord> steps;
  // filled-mode embeddings into the original basis, one per accepted step
  std::vector<Matrix> phi;
  std::vector<int> phi_step;  // originating step index per phi entry
  Matrix V;  // isometry from the terminal courier space to the original basis
  CorrelationMatrix core;
  std::string termination_reason;  // core_threshold | fully_distilled
                                   // | max_steps | consecutive_rejections
  int nontrivial_steps = 0;  // steps where the local distiller found modes
  int accepted_steps = 0;
};

RGTrace run_zer(const ModelSpec& spec, const RGConfig& config);

// C_approx = sum_i Phi_i Phi_i^dag + V C_core V^dag, in the original basis
CorrelationMatrix reconstruct(const RGTrace& trace);

// the per-level terms of the reconstruction; last entry is the core term,
// their sum equals reconstruct(trace) exactly
std::vector<Matrix> level_decomposition(const RGTrace& trace);

struct MomentumOccupation {
  RealVector k;                         // L0 momenta
  std::vector<std::string> level_names; // "level <step>" entries then "core"
  std::vector<RealVector> occupation;   // n_k per level, summed over orbitals
};

MomentumOccupation momentum_occupation(const RGTrace& trace);

// n_k of a state on the original lattice, summed over orbitals
RealVector momentum_occupation_exact(const CorrelationMatrix& C, int cells,
                                     int orbitals);

}  // namespace zer
