#include "zer/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zer/gaussian.hpp"

namespace zer {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {
constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json json_real(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;  // JSON has no infinities
}

// write-then-rename so a crash never leaves a half-written artifact
void commit_file(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("artifacts: cannot write " + tmp.string());
    out << contents;
    if (!out.good())
      throw std::runtime_error("artifacts: short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

const char* label_name(BandLabel l) {
  switch (l) {
    case BandLabel::filled: return "filled";
    case BandLabel::courier: return "courier";
    case BandLabel::empty: return "empty";
  }
  return "unknown";
}

json step_to_json(const StepRecord& rec) {
  json s;
  s["step"] = rec.step;
  s["cells"] = rec.cells;
  s["orbitals"] = rec.orbitals;
  s["epsilon"] = rec.epsilon;
  s["blocked"] = rec.blocked;
  s["status"] = to_string(rec.status);
  s["z_f_local"] = rec.z_f_local;
  s["z_e_local"] = rec.z_e_local;
  if (rec.status != StepStatus::trivial) {
    s["z_f"] = rec.z_f;
    s["n_courier"] = rec.n_courier;
    s["z_e"] = rec.z_e;
    s["gap"] = json_real(rec.gap);
  }
  if (rec.status == StepStatus::accepted ||
      rec.status == StepStatus::rejected_residual) {
    s["unitarity_residual"] = rec.unitarity_residual;
    s["residual_offblock"] = rec.residual_offblock;
    s["residual_frozen"] = rec.residual_frozen;
  }
  if (rec.status == StepStatus::accepted) {
    s["isometry_residual"] = rec.isometry_residual;
    s["S_courier"] = rec.S_courier_exact;
    s["courier_xi_min"] = rec.courier_xi_min;
    s["courier_xi_max"] = rec.courier_xi_max;
    json b;
    b["z_e"] = rec.bound.z_e;
    b["z_f"] = rec.bound.z_f;
    b["lambda_min_sq"] = rec.bound.lambda_min_sq;
    b["mu_min_sq"] = rec.bound.mu_min_sq;
    b["eps_e"] = rec.bound.eps_e;
    b["eps_f"] = rec.bound.eps_f;
    b["bound_e"] = rec.bound.bound_e;
    b["bound_f"] = rec.bound.bound_f;
    b["bound_total"] = rec.bound.bound_total;
    b["bound_total_raw"] = rec.bound.bound_total_raw;
    b["applicable_e"] = rec.bound.applicable_e;
    b["applicable_f"] = rec.bound.applicable_f;
    b["S_courier_measured"] = rec.bound.S_courier_measured;
    s["bound"] = b;
    // one representative center per Wannier family (cell-0 columns)
    auto family_centers = [](const RealVector& centers, int per_cell) {
      json arr = json::array();
      for (int j = 0; j < per_cell && j < centers.size(); ++j)
        arr.push_back(centers(j));
      return arr;
    };
    s["wannier"] = {
        {"centers_filled", family_centers(rec.centers_filled, rec.z_f)},
        {"centers_courier", family_centers(rec.centers_courier, rec.n_courier)},
        {"centers_empty", family_centers(rec.centers_empty, rec.z_e)},
        {"decay_filled", json_real(rec.decay_filled)},
        {"decay_courier", json_real(rec.decay_courier)},
        {"decay_empty", json_real(rec.decay_empty)}};
  }
  return s;
}

std::string render_trace_json(const RGTrace& trace, const RunConfig& config) {
  json j;
  j["config"] = config_to_json(config);
  j["n_filled"] = trace.n_filled;
  j["fermi_tie"] = trace.fermi_tie;
  if (trace.fermi_tie) {
    json kept = json::array(), dropped = json::array();
    for (const auto& [t, b] : trace.tie_filled) kept.push_back({t, b});
    for (const auto& [t, b] : trace.tie_unfilled) dropped.push_back({t, b});
    j["fermi_tie_filled"] = kept;
    j["fermi_tie_unfilled"] = dropped;
  }
  j["termination_reason"] = trace.termination_reason;
  j["nontrivial_steps"] = trace.nontrivial_steps;
  j["accepted_steps"] = trace.accepted_steps;
  j["core_modes"] = trace.core.size();
  j["core_particle_number"] =
      trace.core.size() > 0 ? std::real(trace.core.data.trace()) : 0.0;
  j["core_lattice_constant_exponent"] = trace.core.lattice_constant_exponent;
  json steps = json::array();
  for (const auto& rec : trace.steps) steps.push_back(step_to_json(rec));
  j["steps"] = steps;
  return j.dump(2) + "\n";
}

std::string render_band_structure(const RGTrace& trace) {
  std::ostringstream out;
  out << "step,k_index,k,band,eigenvalue,label\n";
  for (const auto& rec : trace.steps) {
    if (rec.band_eigenvalues.size() == 0) continue;
    const int L = static_cast<int>(rec.band_eigenvalues.rows());
    const int m = static_cast<int>(rec.band_eigenvalues.cols());
    for (int t = 0; t < L; ++t)
      for (int b = 0; b < m; ++b)
        out << rec.step << "," << t << "," << fmt(2.0 * kPi * t / L) << ","
            << b << "," << fmt(rec.band_eigenvalues(t, b)) << ","
            << label_name(rec.band_labels[t][b]) << "\n";
  }
  return out.str();
}

std::string render_correlations(const CorrelationMatrix& exact,
                                const CorrelationMatrix& approx, int cells,
                                int orbitals) {
  std::ostringstream out;
  out << "x,re_exact,im_exact,re_zer,im_zer,abs_err\n";
  for (int x = 0; x < cells; ++x) {
    const Complex e = exact.data(x * orbitals, 0);
    const Complex a = approx.data(x * orbitals, 0);
    out << x << "," << fmt(e.real()) << "," << fmt(e.imag()) << ","
        << fmt(a.real()) << "," << fmt(a.imag()) << "," << fmt(std::abs(e - a))
        << "\n";
  }
  return out.str();
}

std::string render_level_decomposition(const RGTrace& trace,
                                       const std::vector<Matrix>& levels,
                                       int cells, int orbitals) {
  std::ostringstream out;
  out << "x";
  for (size_t i = 0; i + 1 < levels.size(); ++i)
    out << ",re_level_" << trace.phi_step[i] << ",im_level_"
        << trace.phi_step[i];
  out << ",re_core,im_core\n";
  for (int x = 0; x < cells; ++x) {
    out << x;
    for (const auto& lvl : levels) {
      const Complex v = lvl(x * orbitals, 0);
      out << "," << fmt(v.real()) << "," << fmt(v.imag());
    }
    out << "\n";
  }
  return out.str();
}

std::string render_momentum_occupation(const MomentumOccupation& mo,
                                       const RealVector& exact) {
  std::ostringstream out;
  out << "k_index,k,level,n_k\n";
  const int L = static_cast<int>(mo.k.size());
  for (int t = 0; t < L; ++t)
    out << t << "," << fmt(mo.k(t)) << ",exact," << fmt(exact(t)) << "\n";
  for (size_t lvl = 0; lvl < mo.occupation.size(); ++lvl)
    for (int t = 0; t < L; ++t)
      out << t << "," << fmt(mo.k(t)) << "," << mo.level_names[lvl] << ","
          << fmt(mo.occupation[lvl](t)) << "\n";
  return out.str();
}

std::string render_bounds(const RGTrace& trace) {
  std::ostringstream out;
  out << "step,cells,S_courier,bound_total,S_per_cell,bound_per_cell,"
         "bound_total_raw,z_f,z_e,lambda_min_sq,mu_min_sq,eps_e,eps_f,"
         "applicable\n";
  for (const auto& rec : trace.steps) {
    if (rec.status != StepStatus::accepted) continue;
    const auto& b = rec.bound;
    const bool applicable = b.applicable_e && b.applicable_f;
    out << rec.step << "," << rec.cells << "," << fmt(rec.S_courier_exact)
        << "," << fmt(b.bound_total) << ","
        << fmt(rec.S_courier_exact / rec.cells) << ","
        << fmt(b.bound_total / rec.cells) << "," << fmt(b.bound_total_raw)
        << "," << b.z_f << "," << b.z_e << "," << fmt(b.lambda_min_sq) << ","
        << fmt(b.mu_min_sq) << "," << fmt(b.eps_e) << "," << fmt(b.eps_f)
        << "," << (applicable ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string render_matrix(const Matrix& A) {
  std::ostringstream out;
  out << "i,j,re,im\n";
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out << i << "," << j << "," << fmt(A(i, j).real()) << ","
          << fmt(A(i, j).imag()) << "\n";
  return out.str();
}

}  // namespace

void prepare_output_directory(const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec || !fs::is_directory(directory)) {
    std::ostringstream msg;
    msg << "config: output directory '" << directory << "' is not usable";
    if (ec) msg << " (" << ec.message() << ")";
    throw ConfigError(msg.str());
  }
}

void write_artifacts(const RGTrace& trace, const RunConfig& config) {
  const fs::path dir = config.outputs.directory;
  const auto& wanted = config.outputs.artifacts;
  auto has = [&](const char* name) {
    return std::find(wanted.begin(), wanted.end(), name) != wanted.end();
  };

  if (has("trace"))
    commit_file(dir / "trace.json", render_trace_json(trace, config));
  if (has("band_structure"))
    commit_file(dir / "band_structure.csv", render_band_structure(trace));

  const bool needs_exact = has("correlations") || has("momentum_occupation");
  CorrelationMatrix exact;
  if (needs_exact) exact = ground_state_correlation(trace.spec).C;

  if (has("correlations")) {
    const CorrelationMatrix approx = reconstruct(trace);
    commit_file(dir / "correlations.csv",
                render_correlations(exact, approx, trace.spec.cells,
                                    trace.spec.orbitals_per_cell));
  }
  if (has("level_decomposition")) {
    const std::vector<Matrix> levels = level_decomposition(trace);
    commit_file(dir / "level_decomposition.csv",
                render_level_decomposition(trace, levels, trace.spec.cells,
                                           trace.spec.orbitals_per_cell));
  }
  if (has("momentum_occupation")) {
    const MomentumOccupation mo = momentum_occupation(trace);
    const RealVector nk_exact = momentum_occupation_exact(
        exact, trace.spec.cells, trace.spec.orbitals_per_cell);
    commit_file(dir / "momentum_occupation.csv",
                render_momentum_occupation(mo, nk_exact));
  }
  if (has("bounds")) commit_file(dir / "bounds.csv", render_bounds(trace));
  if (has("matrices")) {
    prepare_output_directory((dir / "matrices").string());
    commit_file(dir / "matrices" / "core.csv", render_matrix(trace.core.data));
    commit_file(dir / "matrices" / "embedding.csv", render_matrix(trace.V));
  }
}

}  // namespace zer
