#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anyon/collision.hpp"
#include "anyon/field.hpp"
#include "anyon/grid.hpp"
#include "anyon/solver.hpp"
#include "anyon/util.hpp"

namespace anyon {

// Quadratic interaction functional (Bony type):
//   Int |v - v*|^2 B chi f f* F_j(f') F_j(f'*) dv dv* dtheta dx.
// Its time integral grows at most affinely for the truncated dynamics.
double bony_functional(const DistributionField& f, const PhaseGrid& g,
                       const CollisionKernel& k, const PairTable& t, double alpha);

// Velocity integral of the running sup over (time, x) of the occupancy.
// On the periodic slab the free-streaming shift is a bijection in x, so the
// sup over x absorbs the characteristic transform.
double sup_density(const std::vector<double>& running_max_v, const PhaseGrid& g);

struct TailMass {
  double plain = 0.0;     // Int_{|v|>lambda}      sup f dv
  double weighted = 0.0;  // Int_{|v|>lambda} |v|  sup f dv
};
TailMass tail_mass(const std::vector<double>& running_max_v, const PhaseGrid& g,
                   double lambda);

// Least-squares fit of (1/alpha - max f) on the initial window where max f
// stays in the upper band (1/alpha - band_width, 1/alpha]. b1_hat > 0 means
// the maximum decays linearly out of the band; t_m_hat is the measured exit
// time (absent if the run never leaves the band).
struct EnvelopeFit {
  bool applicable = false;   // false when the run never entered the band
  double b1_hat = 0.0;
  std::optional<double> t_m_hat;
  int window_points = 0;
};
EnvelopeFit envelope_fit(const std::vector<double>& times,
                         const std::vector<double>& max_f, double alpha,
                         double band_width);

// One diagnostics row per completed step (plus the initial row).
struct StepRecord {
  int step = 0;
  double time = 0.0;
  Moments moments;
  double entropy = 0.0;
  double entropy_production = 0.0;  // (S_now - S_prev)/dt, 0 on the initial row
  double max_f = 0.0;
  double min_f = 0.0;
  double picard_residual = 0.0;
  double defect[4] = {0, 0, 0, 0};
  double projection_l1 = 0.0;
  double bony = 0.0;
  double bony_integral = 0.0;       // trapezoid in time
  double sup_density = 0.0;
  std::vector<double> tail_plain;
  std::vector<double> tail_weighted;
  double station_mom_integral = 0.0;   // Int_0^t Int v1 f(., x=0, .) dv ds
  double station_en_integral = 0.0;    // Int_0^t Int v1^2 f(., x=0, .) dv ds
};

struct RecorderOptions {
  bool record_bony = true;
  bool record_tails = true;
  bool record_flux = true;
  std::vector<double> lambdas;      // tail thresholds; default {j/4, j/2, 3j/4}
  double band_width = 0.0;          // envelope band; 0 = auto (2/j)
  double window_delta = 0.0;        // half-width of the local sup-density window; 0 = off
};

// Accumulated state a resumed run must inherit to reproduce its rows.
struct RecorderState {
  std::vector<double> running_max_v;   // nv*nv
  double bony_integral = 0.0;
  double prev_bony = 0.0;
  double station_mom_integral = 0.0;
  double prev_station_mom = 0.0;
  double station_en_integral = 0.0;
  double prev_station_en = 0.0;
  double prev_entropy = 0.0;
  std::vector<double> running_max_sharp;  // nx*nv*nv, only when window probe is on
};

struct DiagnosticsSummary {
  LinearFit bony_fit;               // bony_integral vs time
  std::vector<double> final_tail_plain;
  std::vector<double> final_tail_weighted;
  LogLogSlope tail_plain_slope;
  LogLogSlope tail_weighted_slope;
  EnvelopeFit envelope;
  double max_entropy_production = 0.0;
  double max_abs_defect[4] = {0, 0, 0, 0};
  double conservation_drift[4] = {0, 0, 0, 0};  // relative to the initial row
  double global_min_f = 0.0;
  double global_max_f = 0.0;
  bool range_ok = true;
  bool mask_ok = true;
  bool entropy_monotone = true;     // production <= +1e-8 every step
  double l1_drift_from_initial = 0.0;
  std::vector<double> window_profile;  // windowed sup-density per x node (optional probe)
};

// Observes solver steps, maintains running history, and produces rows +
// summary. Bind its hook to solver::run.
class Recorder {
 public:
  Recorder(const PhaseGrid& g, const CollisionKernel& k, const PairTable& t,
           double alpha, RecorderOptions opt);

  // Seeds history with the initial state and returns the step-0 row.
  StepRecord start(const DistributionField& f0, int step0 = 0, double time0 = 0.0);
  // Same, but inheriting accumulated state from a checkpoint.
  StepRecord resume(const DistributionField& f0, const RecorderState& st,
                    int step0, double time0);

  StepRecord observe(const StepInfo& info);

  DiagnosticsSummary finalize(const DistributionField& final_field) const;

  const std::vector<double>& lambdas() const { return lambdas_; }
  const RecorderState& state() const { return state_; }
  const std::vector<StepRecord>& rows() const { return rows_; }
  double band_width() const { return band_; }

 private:
  StepRecord make_row(const DistributionField& f, int step, double time,
                      const StepInfo* info);

  const PhaseGrid& g_;
  const CollisionKernel& k_;
  const PairTable& t_;
  double alpha_;
  RecorderOptions opt_;
  std::vector<double> lambdas_;
  double band_;
  RecorderState state_;
  std::vector<StepRecord> rows_;
  DistributionField initial_;
  bool started_ = false;
};

}  // namespace anyon
