// Copyright 2026 The gmeact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "criteria.hpp"
#include "errors.hpp"
#include "graphs.hpp"
#include "ice.hpp"
#include "io.hpp"
#include "maps.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "ppt.hpp"
#include "sampling.hpp"
#include "states.hpp"

namespace gmeact::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitInternal = 3;

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "-" or empty writes to the fallback stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw OutputError("cannot open '" + path + "' for writing");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw OutputError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

// Comma-separated doubles; "inf" accepted where allowed.
inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// Grid parameters shared by the scans.
struct ScanConfig {
  std::string state;
  double step = 0.05;
  std::string noise = "1.0";
  std::string stages = "all";
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  std::string out = "-";
  std::string certificates;
  std::size_t starts = 10;
  std::size_t iterations = 30;
  bool fidelity = false;
};

inline GhzDiagCoeffs require_ghz_diagonal(const ComplexMatrix& rho) {
  if (rho.rows() != 8) throw std::invalid_argument("state must be a three-qubit operator");
  const GhzDiagCoeffs c = ghz_weights(rho);
  if (frobenius_norm(ghz_diagonal_matrix(c) - rho) > 1e-9) throw std::invalid_argument("state is not GHZ-diagonal");
  return c;
}

inline double two_copy_pptmix_t(const GhzDiagCoeffs& c) {
  const auto r = product_coefficients({as_vector(c), as_vector(c)});
  return pptmix_lp(r, ghz_copy_maps(2)).t;
}

// ---------------------------------------------------------------------------
// scan-chi

inline const char* criterion_name(ClassificationLabel l) {
  switch (l) {
    case ClassificationLabel::PartitionSeparable: return "chi(1,1,y,y) is separable for a fixed bipartition";
    case ClassificationLabel::NotDetectedGME: return "no PPT-mixture witness for two copies";
    case ClassificationLabel::HadamardDetected: return "Hadamard map then X-state GME criterion";
    case ClassificationLabel::ProjectionFound: return "local projections then GHZ fidelity witness";
    case ClassificationLabel::NoProjectionExists: return "PPT relaxation of the projection search";
    case ClassificationLabel::Undecided: return "none";
  }
  return "";
}

inline int run_scan_chi(const ScanConfig& cfg, std::ostream& out, std::ostream& log) {
  auto grid = chi_grid(cfg.step);
  auto noise = parse_list(cfg.noise);
  for (double p : noise)
    if (p < 0 || p > 1) throw std::invalid_argument("--noise values must lie in [0, 1]");
  std::sort(noise.begin(), noise.end());
  ClassifyOptions base;
  base.stages = parse_stages(cfg.stages);
  base.seesaw.starts = cfg.starts;
  base.seesaw.iterations = cfg.iterations;
  const std::size_t n = grid.size() * noise.size();
  struct Row {
    std::array<double, 4> lambda;
    double p;
    PointResult r;
    double fidelity;
  };
  auto work = [&](std::size_t i) {
    Row row{grid[i / noise.size()], noise[i % noise.size()], {}, std::numeric_limits<double>::quiet_NaN()};
    ClassifyOptions opt = base;
    opt.seesaw.seed = derive_seed(cfg.seed, i);
    row.r = classify_point(row.lambda, row.p, opt);
    if (cfg.fidelity) {
      FidelityBoundOptions fo;
      fo.seesaw = opt.seesaw;
      row.fidelity = fidelity_bound(two_copies(noisy_chi(row.lambda, row.p)), fo).value;
    }
    return row;
  };
  const auto rows = parallel_map(n, work, cfg.workers);
  Output o(cfg.out, out);
  CsvWriter csv(o.stream(), {"x", "y", "z", "p", "label", "t", "p_wnr", "fidelity_bound", "seesaw_C"},
                {"scan-chi step=" + format_number(cfg.step) + " stages=" + cfg.stages + " seed=" + std::to_string(cfg.seed)});
  Json certs = Json::array();
  std::size_t counts[6] = {};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto& r = row.r;
    csv.write_row({format_number(row.lambda[1]), format_number(row.lambda[2]), format_number(row.lambda[3]),
                   format_number(row.p), to_string(r.label), format_number(r.t), format_number(r.p_wnr),
                   format_number(row.fidelity), format_number(r.seesaw_value)});
    ++counts[static_cast<int>(r.label)];
    if (!cfg.certificates.empty()) {
      Json c{{"index", i}, {"lambda", row.lambda}, {"p", row.p}, {"label", to_string(r.label)},
             {"criterion", criterion_name(r.label)}};
      if (r.pptmix) c["pptmix"] = to_json(*r.pptmix);
      if (r.label == ClassificationLabel::ProjectionFound && r.seesaw) c["seesaw"] = to_json(*r.seesaw);
      if (r.label == ClassificationLabel::NoProjectionExists && r.relax) c["relax"] = to_json(*r.relax);
      if (r.relax) c["relax_value"] = r.relax_value;
      certs.push_back(c);
    }
  }
  o.finish();
  if (!cfg.certificates.empty()) {
    std::ofstream f(cfg.certificates);
    if (!f) throw OutputError("cannot open '" + cfg.certificates + "' for writing");
    f << Json{{"schema", kSchemaVersion}, {"kind", "scan-chi"}, {"rows", certs}}.dump(1) << '\n';
    if (!f) throw OutputError("write failed");
  }
  log << "points " << n;
  for (int l = 0; l < 6; ++l) log << ' ' << to_string(static_cast<ClassificationLabel>(l)) << '=' << counts[l];
  log << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: re-checks certificates without the LP or seesaw.

struct VerifyOutcome {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> messages;
};

inline VerifyOutcome verify_certificates(const Json& doc) {
  VerifyOutcome v;
  const auto maps = ghz_copy_maps(2);
  const ComplexMatrix w = ghz_fidelity_witness();
  for (const auto& c : doc.at("rows")) {
    const auto lambda = c.at("lambda").get<std::array<double, 4>>();
    const double p = c.at("p").get<double>();
    const auto label = parse_label(c.at("label").get<std::string>());
    if (!label) throw std::invalid_argument("unknown label in certificate file");
    std::string problem;
    const ComplexMatrix rho = noisy_chi(lambda, p);
    const auto weights = ghz_weights(rho);
    auto check_pptmix = [&]() {
      if (!c.contains("pptmix")) return std::string("missing PPT-mixture witness");
      const auto& j = c["pptmix"];
      const auto wv = j.at("w").get<std::vector<double>>();
      const auto pv = j.at("p").get<std::vector<std::vector<double>>>();
      const auto qv = j.at("q").get<std::vector<std::vector<double>>>();
      if (pptmix_certificate_defect(wv, pv, qv, maps) > 1e-7) return std::string("witness decomposition does not hold");
      const auto r = product_coefficients({as_vector(weights), as_vector(weights)});
      double val = 0;
      for (std::size_t i = 0; i < r.size(); ++i) val += r[i] * wv[i];
      if (!(val < 0)) return std::string("witness value is not negative");
      return std::string();
    };
    switch (*label) {
      case ClassificationLabel::PartitionSeparable:
        if (!chi_partition_separable(lambda)) problem = "parameters are not of the form (1,1,y,y)";
        break;
      case ClassificationLabel::NotDetectedGME:
      case ClassificationLabel::Undecided:
        break;
      case ClassificationLabel::HadamardDetected: {
        problem = check_pptmix();
        if (!problem.empty()) break;
        const auto img = apply_projection(two_copies(rho), hadamard_projections(2));
        const auto x = XState::from_weights(ghz_weights(img.op));
        if (!x_state_is_gme(x.lambda, x.mu)) problem = "Hadamard image is not GME";
        break;
      }
      case ClassificationLabel::ProjectionFound: {
        problem = check_pptmix();
        if (!problem.empty()) break;
        if (!c.contains("seesaw")) {
          problem = "missing projections";
          break;
        }
        const auto proj = projection_set_from_json(c["seesaw"].at("projections"));
        const auto img = apply_projection(two_copies(rho), proj);
        if (!(trace_product(img.op, w).real() < 0)) problem = "projected state does not violate the fidelity witness";
        break;
      }
      case ClassificationLabel::NoProjectionExists: {
        if (!c.contains("relax")) {
          problem = "missing relaxation certificate";
          break;
        }
        PptRelaxResult rr;
        rr.value = c["relax"].at("value").get<double>();
        rr.slack = c["relax"].at("slack").get<std::vector<double>>();
        rr.y = c["relax"].at("y").get<std::vector<std::vector<double>>>();
        if (ppt_relax_certificate_defect(weights, ghz_weights(w), rr) > 1e-7) problem = "dual certificate does not hold";
        else if (rr.value < -tol::kLpOptimality) problem = "relaxation bound is negative";
        break;
      }
    }
    ++v.checked;
    if (!problem.empty()) {
      ++v.failed;
      v.messages.push_back("row " + std::to_string(c.value("index", 0)) + ": " + problem);
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

inline std::string fmt(double x) { return format_number(x); }

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gmeact: multi-copy GME activation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gmeact 0.1.0");

  ScanConfig scan;
  auto* scan_cmd = app.add_subcommand("scan-chi", "classify the biseparable chi(1,x,y,z) grid");
  scan_cmd->add_option("--step", scan.step, "grid step")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--noise", scan.noise, "comma-separated weights p of the state in p*rho + (1-p)*I/8");
  scan_cmd->add_option("--stages", scan.stages, "partition,pptmix,hadamard,seesaw,relax or all");
  scan_cmd->add_option("--seed", scan.seed);
  scan_cmd->add_option("--workers", scan.workers, "worker threads (default: GMEACT_WORKERS or hardware)");
  scan_cmd->add_option("--out", scan.out, "CSV output path, - for stdout");
  scan_cmd->add_option("--certificates", scan.certificates, "JSON certificate sidecar path");
  scan_cmd->add_option("--starts", scan.starts, "seesaw random starts")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--iters", scan.iterations, "seesaw iterations")->check(CLI::PositiveNumber);
  scan_cmd->add_flag("--fidelity", scan.fidelity, "also compute the projected-fidelity bound per point");

  std::string rob_state, rob_out = "-";
  double rob_step = 0;
  std::size_t rob_workers = 0;
  auto* rob_cmd = app.add_subcommand("robustness", "two-copy PPT-mixture white-noise robustness");
  rob_cmd->add_option("--state", rob_state, "GHZ-diagonal state, e.g. chi:5,4,3,0");
  rob_cmd->add_option("--step", rob_step, "scan the chi grid with this step instead of one state");
  rob_cmd->add_option("--workers", rob_workers);
  rob_cmd->add_option("--out", rob_out);

  std::string fid_state, fid_out = "-", fid_proj;
  double fid_step = 0;
  std::uint64_t fid_seed = 1;
  std::size_t fid_workers = 0;
  auto* fid_cmd = app.add_subcommand("fidelity", "best GHZ fidelity after local projections of two copies");
  fid_cmd->add_option("--state", fid_state);
  fid_cmd->add_option("--step", fid_step, "scan the chi grid with this step instead of one state");
  fid_cmd->add_option("--seed", fid_seed);
  fid_cmd->add_option("--workers", fid_workers);
  fid_cmd->add_option("--out", fid_out);
  fid_cmd->add_option("--projections", fid_proj, "write the best projection set as JSON");

  std::string ss_state, ss_out = "-";
  double ss_kappa = 0.5;
  std::size_t ss_starts = 10, ss_iters = 30;
  std::uint64_t ss_seed = 1;
  auto* ss_cmd = app.add_subcommand("seesaw", "projection search for two copies and a GHZ fidelity witness");
  ss_cmd->add_option("--state", ss_state)->required();
  ss_cmd->add_option("--kappa", ss_kappa, "witness kappa*I - |GHZ><GHZ|");
  ss_cmd->add_option("--starts", ss_starts)->check(CLI::PositiveNumber);
  ss_cmd->add_option("--iters", ss_iters)->check(CLI::PositiveNumber);
  ss_cmd->add_option("--seed", ss_seed);
  ss_cmd->add_option("--out", ss_out, "JSON output");

  std::string ghh_family = "rho1", ghh_k = "1,2,3,4,5", ghh_out = "-";
  double ghh_step = 0.02;
  auto* ghh_cmd = app.add_subcommand("ghh", "k-copy GHH detection regions for rho1 / rho2");
  ghh_cmd->add_option("--family", ghh_family)->check(CLI::IsMember({"rho1", "rho2"}));
  ghh_cmd->add_option("--k", ghh_k, "comma-separated copy numbers; 0 means the k -> infinity limit");
  ghh_cmd->add_option("--step", ghh_step)->check(CLI::PositiveNumber);
  ghh_cmd->add_option("--out", ghh_out);

  std::string gs_state = "rho-act", gs_out = "-";
  std::size_t gs_k = 6;
  auto* gs_cmd = app.add_subcommand("ghz-symmetric", "GHZ-symmetric coordinates of Schur powers");
  gs_cmd->add_option("--state", gs_state);
  gs_cmd->add_option("--k", gs_k, "largest Schur power")->check(CLI::PositiveNumber);
  gs_cmd->add_option("--out", gs_out);

  double sim_p = 3.0 / 7.0;
  std::uint64_t sim_shots = 10000, sim_seed = 1;
  std::size_t sim_reps = 500, sim_copies = 2, sim_workers = 1;
  bool sim_unbiased = false;
  std::string sim_out = "-", sim_hist;
  auto* sim_cmd = app.add_subcommand("simulate-witness", "shot-noise model of the lifted fidelity witness");
  sim_cmd->add_option("--p", sim_p, "weight of GHZ in p GHZ + (1-p) I/8")->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--shots", sim_shots)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", sim_reps)->check(CLI::Range(2, 1000000));
  sim_cmd->add_option("--copies", sim_copies)->check(CLI::Range(1, 6));
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_option("--workers", sim_workers);
  sim_cmd->add_flag("--unbiased", sim_unbiased, "use the falling-factorial estimator of k-th powers");
  sim_cmd->add_option("--out", sim_out, "JSON report");
  sim_cmd->add_option("--histogram", sim_hist, "CSV histogram of the k-copy witness values");

  std::string gf_graph, gf_out = "-", gf_dot;
  std::size_t gf_copies = 2;
  auto* gf_cmd = app.add_subcommand("graph-fuse", "fuse copies of a two-colorable graph state");
  gf_cmd->add_option("--graph", gf_graph, "edge list file")->required();
  gf_cmd->add_option("--copies", gf_copies)->check(CLI::Range(1, 4));
  gf_cmd->add_option("--out", gf_out);
  gf_cmd->add_option("--dot", gf_dot, "write the fused graph as DOT");

  std::string ice_family = "ice-s", ice_out = "-";
  std::size_t ice_party = 0;
  double ice_step = 0.01;
  std::uint64_t ice_seed = 1;
  auto* ice_cmd = app.add_subcommand("ice", "partial-projection NPT checks for the Werner-based families");
  ice_cmd->add_option("--family", ice_family)->check(CLI::IsMember({"ice-s", "ice-u"}));
  ice_cmd->add_option("--party", ice_party, "projected party 0, 1 or 2")->check(CLI::Range(0, 2));
  ice_cmd->add_option("--step", ice_step)->check(CLI::PositiveNumber);
  ice_cmd->add_option("--seed", ice_seed);
  ice_cmd->add_option("--out", ice_out);

  std::string ver_in;
  auto* ver_cmd = app.add_subcommand("verify", "re-validate a scan-chi certificate file");
  ver_cmd->add_option("certificates", ver_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidConfig;
  }

  try {
    if (*scan_cmd) return run_scan_chi(scan, out, err);

    if (*rob_cmd) {
      Output o(rob_out, out);
      if (rob_step > 0) {
        const auto grid = chi_grid(rob_step);
        const auto ts = parallel_map(
            grid.size(), [&](std::size_t i) { return two_copy_pptmix_t(ghz_weights(make_chi(grid[i]))); }, rob_workers);
        CsvWriter csv(o.stream(), {"x", "y", "z", "t", "p_wnr"}, {"robustness step=" + fmt(rob_step)});
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double t = ts[i];
          const double p = t < -tol::kLpOptimality ? white_noise_robustness(t, 64) : std::numeric_limits<double>::quiet_NaN();
          csv.write_row({fmt(grid[i][1]), fmt(grid[i][2]), fmt(grid[i][3]), fmt(t), fmt(p)});
        }
      } else {
        if (rob_state.empty()) throw std::invalid_argument("robustness needs --state or --step");
        const auto s = parse_state_spec(rob_state);
        const double t = two_copy_pptmix_t(require_ghz_diagonal(s.rho));
        CsvWriter csv(o.stream(), {"state", "t", "p_wnr"});
        const double p = t < -tol::kLpOptimality ? white_noise_robustness(t, 64) : std::numeric_limits<double>::quiet_NaN();
        csv.write_row({rob_state, fmt(t), fmt(p)});
      }
      o.finish();
      return kExitOk;
    }

    if (*fid_cmd) {
      Output o(fid_out, out);
      FidelityBoundOptions fo;
      fo.seesaw.seed = fid_seed;
      if (fid_step > 0) {
        const auto grid = chi_grid(fid_step);
        const auto vals = parallel_map(
            grid.size(),
            [&](std::size_t i) {
              FidelityBoundOptions local = fo;
              local.seesaw.seed = derive_seed(fid_seed, i);
              return fidelity_bound(two_copies(make_chi(grid[i])), local).value;
            },
            fid_workers);
        CsvWriter csv(o.stream(), {"x", "y", "z", "fidelity_bound"}, {"fidelity step=" + fmt(fid_step)});
        for (std::size_t i = 0; i < grid.size(); ++i)
          csv.write_row({fmt(grid[i][1]), fmt(grid[i][2]), fmt(grid[i][3]), fmt(vals[i])});
      } else {
        if (fid_state.empty()) throw std::invalid_argument("fidelity needs --state or --step");
        const auto s = parse_state_spec(fid_state);
        if (s.rho.rows() != 8) throw std::invalid_argument("fidelity needs a three-qubit state");
        const auto fb = fidelity_bound(two_copies(s.rho), fo);
        CsvWriter csv(o.stream(), {"state", "fidelity_bound"});
        csv.write_row({fid_state, fmt(fb.value)});
        if (!fid_proj.empty() && fb.projections) {
          std::ofstream f(fid_proj);
          if (!f) throw OutputError("cannot open '" + fid_proj + "' for writing");
          f << to_json(*fb.projections).dump(1) << '\n';
        }
      }
      o.finish();
      return kExitOk;
    }

    if (*ss_cmd) {
      const auto s = parse_state_spec(ss_state);
      if (s.rho.rows() != 8) throw std::invalid_argument("seesaw needs a three-qubit state");
      SeesawOptions so;
      so.starts = ss_starts;
      so.iterations = ss_iters;
      so.seed = ss_seed;
      const auto res = seesaw(two_copy_search_operator(s.rho, ghz_fidelity_witness(ss_kappa)), two_copy_search_structure(), so);
      Json j = to_json(res);
      j["schema"] = kSchemaVersion;
      j["state"] = ss_state;
      j["kappa"] = ss_kappa;
      if (res.value < 0) {
        const auto img = apply_projection(two_copies(s.rho), res.projections());
        j["projected_fidelity"] = ghz_fidelity(img.op);
      }
      Output o(ss_out, out);
      o.stream() << j.dump(1) << '\n';
      o.finish();
      return kExitOk;
    }

    if (*ghh_cmd) {
      const auto ks = parse_list(ghh_k);
      Output o(ghh_out, out);
      const bool r1 = ghh_family == "rho1";
      CsvWriter csv(o.stream(), {"p_plus1", r1 ? "p_minus1" : "p_plus2", "k", "detected"}, {"ghh family=" + ghh_family});
      const long n = std::lround(1.0 / ghh_step);
      for (double kd : ks) {
        if (kd < 0 || kd != std::floor(kd)) throw std::invalid_argument("--k entries must be non-negative integers");
        const auto k = static_cast<std::size_t>(kd);
        for (long a = 0; a <= n; ++a)
          for (long b = 0; b <= a && a + b <= n; ++b) {
            const double p1 = static_cast<double>(a) / static_cast<double>(n), p2 = static_cast<double>(b) / static_cast<double>(n);
            bool det;
            if (k == 0) det = r1 ? p1 > rho1_limit_boundary(p2) : rho2_limit_detect(p1, p2);
            else det = r1 ? rho1_detect(p1, p2, k) : rho2_detect(p1, p2, k);
            csv.write_row({fmt(p1), fmt(p2), k == 0 ? "inf" : std::to_string(k), det ? "1" : "0"});
          }
      }
      o.finish();
      return kExitOk;
    }

    if (*gs_cmd) {
      const auto s = parse_state_spec(gs_state);
      if (s.rho.rows() != 8) throw std::invalid_argument("ghz-symmetric needs a three-qubit state");
      Output o(gs_out, out);
      CsvWriter csv(o.stream(), {"k", "x", "y", "ghz_fidelity"}, {"ghz-symmetric state=" + gs_state});
      for (std::size_t k = 1; k <= gs_k; ++k) {
        const ComplexMatrix sk = schur_power(s.rho, k);
        const auto pt = ghz_symmetric_coords(sk);
        csv.write_row({std::to_string(k), fmt(pt.x), fmt(pt.y), fmt(ghz_fidelity(sk))});
      }
      o.finish();
      return kExitOk;
    }

    if (*sim_cmd) {
      ReplicateOptions ro;
      ro.copies = sim_copies;
      ro.workers = sim_workers;
      ro.estimator = sim_unbiased ? Estimator::Unbiased : Estimator::PlugIn;
      const ComplexMatrix rho = ghz_with_noise(sim_p);
      const auto rep = replicate(rho, sim_shots, sim_reps, sim_seed, ro);
      Json j{{"schema", kSchemaVersion},
             {"p", sim_p},
             {"copies", sim_copies},
             {"settings", 1 + 3 * sim_copies},
             {"shots", sim_shots},
             {"reps", sim_reps},
             {"seed", sim_seed},
             {"estimator", sim_unbiased ? "unbiased" : "plug-in"},
             {"exact", lifted_witness_value(rho, sim_copies)},
             {"witness", {{"mean", rep.witness.mean}, {"std", rep.witness.std}, {"values", rep.values}}},
             {"single_copy", {{"mean", rep.single.mean}, {"std", rep.single.std}, {"values", rep.single_values}}}};
      Output o(sim_out, out);
      o.stream() << j.dump(1) << '\n';
      o.finish();
      if (!sim_hist.empty()) {
        Output h(sim_hist, out);
        const auto hist = histogram(rep.values);
        CsvWriter csv(h.stream(), {"bin_low", "bin_high", "count"});
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
          const double lo = hist.low + static_cast<double>(b) * hist.width;
          csv.write_row({fmt(lo), fmt(lo + hist.width), std::to_string(hist.counts[b])});
        }
        h.finish();
      }
      return kExitOk;
    }

    if (*gf_cmd) {
      std::ifstream in(gf_graph);
      if (!in) throw std::invalid_argument("cannot read graph file '" + gf_graph + "'");
      Graph g = read_edge_list(in);
      if (!g.coloring()) {
        const auto c = find_two_coloring(g);
        if (!c) throw std::invalid_argument("graph is not two-colorable");
        g.set_coloring(*c);
      }
      if (!g.coloring_is_proper()) throw std::invalid_argument("graph coloring is not proper");
      const auto fused = two_color_fuse(g);
      if (!(fused.graph == g)) throw InvariantViolation("graphical fusion did not return the input graph");
      const auto vec = fuse_copies_vector(g, gf_copies);
      const auto pr = proportionality(graph_state(g), vec);
      const bool ok = pr.residual <= 1e-10;
      Output o(gf_out, out);
      o.stream() << "# schema=" << kSchemaVersion << "\n# graph-fuse copies=" << gf_copies << "\n";
      write_edge_list(o.stream(), fused.graph);
      o.stream() << "# state-vector residual " << fmt(pr.residual) << (ok ? " fixed point" : " MISMATCH") << '\n';
      o.finish();
      if (!gf_dot.empty()) {
        Output d(gf_dot, out);
        d.stream() << to_dot(fused.graph);
        d.finish();
      }
      if (!ok) throw InvariantViolation("fused state is not proportional to the graph state");
      return kExitOk;
    }

    if (*ice_cmd) {
      const IceFamily f = parse_ice_family(ice_family);
      const long n = std::lround(1.0 / ice_step);
      std::vector<double> grid;
      for (long i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(n));
      IceOptions io;
      io.seed = ice_seed;
      const auto rep = ice_pipeline(f, grid, ice_party, io);
      std::vector<std::string> comments = {"ice family=" + ice_family + " party=" + std::to_string(ice_party)};
      const char* cuts[3] = {"A|BC", "B|AC", "C|AB"};
      for (int c = 0; c < 3; ++c) {
        comments.push_back(std::string("npt threshold ") + cuts[c] + " two-copy=" +
                           (rep.threshold_before[c] ? fmt(*rep.threshold_before[c]) : "none") +
                           " projected=" + (rep.threshold_after[c] ? fmt(*rep.threshold_after[c]) : "none"));
      }
      if (rep.reference) {
        comments.push_back("reference two-copy GME for p >= " + fmt(rep.reference->gme_from) +
                           ", projected PPT mixture for p <= " + fmt(rep.reference->pptmix_until));
      }
      comments.push_back(std::string("npt onset monotone: ") + (rep.npt_monotone ? "yes" : "no"));
      Output o(ice_out, out);
      CsvWriter csv(o.stream(), {"p", "invariance_defect", "pt_min_A", "pt_min_B", "pt_min_C", "proj_pt_min_A", "proj_pt_min_B", "proj_pt_min_C"},
                    comments);
      for (const auto& r : rep.rows)
        csv.write_row({fmt(r.p), fmt(r.invariance_defect), fmt(r.before[0]), fmt(r.before[1]), fmt(r.before[2]),
                       fmt(r.after[0]), fmt(r.after[1]), fmt(r.after[2])});
      o.finish();
      return kExitOk;
    }

    if (*ver_cmd) {
      std::ifstream in(ver_in);
      if (!in) throw std::invalid_argument("cannot read certificate file '" + ver_in + "'");
      Json doc;
      try {
        doc = Json::parse(in);
      } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("certificate file is not valid JSON: ") + e.what());
      }
      const auto v = verify_certificates(doc);
      for (const auto& m : v.messages) err << m << '\n';
      out << "checked " << v.checked << " failed " << v.failed << '\n';
      return v.failed == 0 ? kExitOk : kExitInternal;
    }
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kExitInternal;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::out_of_range& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalidConfig;
}

}  // namespace gmeact::cli
