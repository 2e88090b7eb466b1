#include "anyon/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anyon/haldane.hpp"

namespace anyon {

double bony_functional(const DistributionField& f, const PhaseGrid& g,
                       const CollisionKernel& k, const PairTable& t, double alpha) {
  (void)k;  // kernel values are folded into the table
  const int nv = g.nv;
  const double inv_dv = 1.0 / g.dv;
  const double center = 0.5 * (nv - 1);
  const double j2 = g.j * g.j;
  const double invj = 1.0 / g.j;
  const double oma = 1.0 - alpha;
  const bool linear_stats = (alpha == 1.0);

  auto fetch = [&](const double* fs, int i, int kk) -> double {
    return (static_cast<unsigned>(i) < static_cast<unsigned>(nv) &&
            static_cast<unsigned>(kk) < static_cast<unsigned>(nv))
               ? fs[static_cast<size_t>(i) * nv + kk]
               : 0.0;
  };
  auto bilerp = [&](const double* fs, double vx, double vy) -> double {
    const double gx = vx * inv_dv + center;
    const double gy = vy * inv_dv + center;
    const int i0 = static_cast<int>(std::floor(gx));
    const int k0 = static_cast<int>(std::floor(gy));
    const double tx = gx - i0, ty = gy - k0;
    const double f00 = fetch(fs, i0, k0), f10 = fetch(fs, i0 + 1, k0);
    const double f01 = fetch(fs, i0, k0 + 1), f11 = fetch(fs, i0 + 1, k0 + 1);
    const double lo = f00 + tx * (f10 - f00);
    const double hi = f01 + tx * (f11 - f01);
    return lo + ty * (hi - lo);
  };

  double total = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    double slab = 0.0;
    for (int id : g.ball_ids) {
      const double f_here = fs[id];
      if (f_here == 0.0) continue;
      const int i = id / nv, kk = id % nv;
      const double vx = g.v_coords[i], vy = g.v_coords[kk];
      double acc = 0.0;
      for (int qid : g.ball_ids) {
        const double f_there = fs[qid];
        if (f_there == 0.0) continue;
        const int a = qid / nv, b = qid % nv;
        const int r = t.row(i - a, kk - b);
        const int e0 = t.row_begin[r], e1 = t.row_begin[r + 1];
        if (e0 == e1) continue;
        double row_sum = 0.0;
        for (int e = e0; e < e1; ++e) {
          const PairTable::Entry& en = t.entries[e];
          const double px = vx + en.dpx, py = vy + en.dpy;
          if (px * px + py * py > j2) continue;
          const double qx = vx + en.dqx, qy = vy + en.dqy;
          if (qx * qx + qy * qy > j2) continue;
          const double fp = bilerp(fs, px, py);
          const double fq = bilerp(fs, qx, qy);
          const double t1 = std::max(0.0, 1.0 - alpha * fp);
          const double t2 = std::max(0.0, 1.0 - alpha * fq);
          double block2;
          if (linear_stats) {
            block2 = t1 * t2;
          } else if (t1 <= 0.0 || t2 <= 0.0) {
            block2 = 0.0;
          } else {
            const double ratio = ((1.0 + oma * fp) * (1.0 + oma * fq)) /
                                 ((invj + t1) * (invj + t2));
            block2 = t1 * t2 * std::exp(oma * std::log(ratio));
          }
          row_sum += en.bw * block2;
        }
        acc += row_sum * t.rel2[r] * f_there;
      }
      slab += acc * f_here;
    }
    total += slab;
  }
  return total * g.vweight * g.vweight * g.dx;
}

double sup_density(const std::vector<double>& running_max_v, const PhaseGrid& g) {
  double s = 0.0;
  for (int id : g.ball_ids) s += running_max_v[id];
  return s * g.vweight;
}

TailMass tail_mass(const std::vector<double>& running_max_v, const PhaseGrid& g,
                   double lambda) {
  TailMass tm;
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    const double speed = std::sqrt(g.v_coords[i] * g.v_coords[i] +
                                   g.v_coords[k] * g.v_coords[k]);
    if (speed > lambda) {
      const double m = running_max_v[id];
      tm.plain += m;
      tm.weighted += speed * m;
    }
  }
  tm.plain *= g.vweight;
  tm.weighted *= g.vweight;
  return tm;
}

EnvelopeFit envelope_fit(const std::vector<double>& times,
                         const std::vector<double>& max_f, double alpha,
                         double band_width) {
  if (times.size() != max_f.size())
    throw std::invalid_argument("envelope_fit: times and max_f must have equal length");
  EnvelopeFit out;
  const double cap = 1.0 / alpha;
  const double band_edge = cap - band_width;

  size_t w = 0;
  while (w < max_f.size() && max_f[w] > band_edge) ++w;
  out.window_points = static_cast<int>(w);
  if (w < max_f.size()) out.t_m_hat = times[w];

  if (w >= 2) {
    std::vector<double> ts(times.begin(), times.begin() + w);
    std::vector<double> gap(w);
    for (size_t n = 0; n < w; ++n) gap[n] = cap - max_f[n];
    out.b1_hat = linear_fit(ts, gap).slope;
    out.applicable = true;
  }
  return out;
}

Recorder::Recorder(const PhaseGrid& g, const CollisionKernel& k, const PairTable& t,
                   double alpha, RecorderOptions opt)
    : g_(g), k_(k), t_(t), alpha_(alpha), opt_(std::move(opt)) {
  lambdas_ = opt_.lambdas;
  if (lambdas_.empty())
    lambdas_ = {0.25 * g.j, 0.5 * g.j, 0.75 * g.j};
  band_ = opt_.band_width > 0.0 ? opt_.band_width : 2.0 / g.j;
}

StepRecord Recorder::start(const DistributionField& f0, int step0, double time0) {
  state_ = RecorderState{};
  state_.running_max_v.assign(static_cast<size_t>(g_.nv) * g_.nv, 0.0);
  if (opt_.window_delta > 0.0)
    state_.running_max_sharp.assign(f0.a.size(), 0.0);
  rows_.clear();
  initial_ = f0;
  started_ = true;
  return make_row(f0, step0, time0, nullptr);
}

StepRecord Recorder::resume(const DistributionField& f0, const RecorderState& st,
                            int step0, double time0) {
  if (st.running_max_v.size() != static_cast<size_t>(g_.nv) * g_.nv)
    throw std::invalid_argument("Recorder::resume: recorder state does not match the grid");
  if (opt_.window_delta > 0.0 && st.running_max_sharp.size() != f0.a.size())
    throw std::invalid_argument("Recorder::resume: window probe state does not match the grid");
  state_ = st;
  rows_.clear();
  initial_ = f0;
  started_ = true;
  // make_row only re-maxes and re-derives the prev_* scalars from the same
  // bits, so seeding through it is idempotent on the inherited state.
  return make_row(f0, step0, time0, nullptr);
}

StepRecord Recorder::observe(const StepInfo& info) {
  if (!started_)
    throw std::logic_error("Recorder::observe before start/resume");
  return make_row(*info.post, info.step, info.time, &info);
}

StepRecord Recorder::make_row(const DistributionField& f, int step, double time,
                              const StepInfo* info) {
  StepRecord row;
  row.step = step;
  row.time = time;
  row.moments = compute_moments(f, g_);
  row.entropy = entropy(f, g_, alpha_);
  if (info) row.entropy_production = (row.entropy - state_.prev_entropy) / info->dt;
  state_.prev_entropy = row.entropy;
  row.max_f = max_unmasked(f, g_);
  row.min_f = min_unmasked(f, g_);
  if (info) {
    row.picard_residual = info->picard_residual;
    for (int d = 0; d < 4; ++d) row.defect[d] = info->defect[d];
    row.projection_l1 = info->projection_l1;
  }

  // Running sup over (time, x) per velocity node.
  for (int id : g_.ball_ids) {
    double m = state_.running_max_v[id];
    for (int ix = 0; ix < g_.nx; ++ix)
      m = std::max(m, f.a[static_cast<size_t>(ix) * g_.nv * g_.nv + id]);
    state_.running_max_v[id] = m;
  }

  // Characteristic-shifted running max for the local x-window probe.
  if (opt_.window_delta > 0.0) {
    const DistributionField sharp = transport_shift(f, g_, -time);
    for (size_t n = 0; n < sharp.a.size(); ++n)
      state_.running_max_sharp[n] = std::max(state_.running_max_sharp[n], sharp.a[n]);
  }

  if (opt_.record_bony) {
    row.bony = bony_functional(f, g_, k_, t_, alpha_);
    if (info)
      state_.bony_integral += 0.5 * info->dt * (state_.prev_bony + row.bony);
    state_.prev_bony = row.bony;
    row.bony_integral = state_.bony_integral;
  }

  row.sup_density = sup_density(state_.running_max_v, g_);

  if (opt_.record_tails) {
    row.tail_plain.reserve(lambdas_.size());
    row.tail_weighted.reserve(lambdas_.size());
    for (double lam : lambdas_) {
      const TailMass tm = tail_mass(state_.running_max_v, g_, lam);
      row.tail_plain.push_back(tm.plain);
      row.tail_weighted.push_back(tm.weighted);
    }
  }

  if (opt_.record_flux) {
    const double* fs = f.slice(0);
    double mom = 0.0, en = 0.0;
    for (int id : g_.ball_ids) {
      const int i = id / g_.nv;
      const double v1 = g_.v_coords[i];
      mom += v1 * fs[id];
      en += v1 * v1 * fs[id];
    }
    mom *= g_.vweight;
    en *= g_.vweight;
    if (info) {
      state_.station_mom_integral += 0.5 * info->dt * (state_.prev_station_mom + mom);
      state_.station_en_integral += 0.5 * info->dt * (state_.prev_station_en + en);
    }
    state_.prev_station_mom = mom;
    state_.prev_station_en = en;
    row.station_mom_integral = state_.station_mom_integral;
    row.station_en_integral = state_.station_en_integral;
  }

  rows_.push_back(row);
  return row;
}

DiagnosticsSummary Recorder::finalize(const DistributionField& final_field) const {
  if (rows_.empty())
    throw std::logic_error("Recorder::finalize with no recorded rows");
  DiagnosticsSummary s;
  const StepRecord& first = rows_.front();
  const StepRecord& last = rows_.back();

  std::vector<double> times, maxes;
  times.reserve(rows_.size());
  maxes.reserve(rows_.size());
  for (const StepRecord& r : rows_) {
    times.push_back(r.time);
    maxes.push_back(r.max_f);
  }

  if (opt_.record_bony && rows_.size() >= 2) {
    std::vector<double> integ;
    integ.reserve(rows_.size());
    for (const StepRecord& r : rows_) integ.push_back(r.bony_integral);
    s.bony_fit = linear_fit(times, integ);
  }

  if (opt_.record_tails) {
    s.final_tail_plain = last.tail_plain;
    s.final_tail_weighted = last.tail_weighted;
    s.tail_plain_slope = loglog_slope(lambdas_, last.tail_plain);
    s.tail_weighted_slope = loglog_slope(lambdas_, last.tail_weighted);
  }

  s.envelope = envelope_fit(times, maxes, alpha_, band_);

  const double cap = 1.0 / alpha_;
  s.global_min_f = first.min_f;
  s.global_max_f = first.max_f;
  if (rows_.size() > 1)
    s.max_entropy_production = -std::numeric_limits<double>::infinity();
  for (size_t n = 1; n < rows_.size(); ++n) {
    const StepRecord& r = rows_[n];
    s.max_entropy_production = std::max(s.max_entropy_production, r.entropy_production);
    if (r.entropy_production > 1e-8) s.entropy_monotone = false;
    for (int d = 0; d < 4; ++d)
      s.max_abs_defect[d] = std::max(s.max_abs_defect[d], std::fabs(r.defect[d]));
    s.global_min_f = std::min(s.global_min_f, r.min_f);
    s.global_max_f = std::max(s.global_max_f, r.max_f);
  }
  s.range_ok = s.global_min_f >= 0.0 && s.global_max_f <= cap;
  s.mask_ok = masked_nodes_zero(final_field, g_);

  const double m0 = first.moments.mass;
  const double mom_scale = std::max(std::fabs(m0) * g_.j, 1e-300);
  s.conservation_drift[0] =
      std::fabs(last.moments.mass - m0) / std::max(std::fabs(m0), 1e-300);
  s.conservation_drift[1] = std::fabs(last.moments.mom1 - first.moments.mom1) /
                            std::max(std::fabs(first.moments.mom1), mom_scale);
  s.conservation_drift[2] = std::fabs(last.moments.mom2 - first.moments.mom2) /
                            std::max(std::fabs(first.moments.mom2), mom_scale);
  s.conservation_drift[3] = std::fabs(last.moments.energy - first.moments.energy) /
                            std::max(std::fabs(first.moments.energy), 1e-300);

  s.l1_drift_from_initial = l1_distance(final_field, initial_, g_);

  if (opt_.window_delta > 0.0 && !state_.running_max_sharp.empty()) {
    s.window_profile.resize(g_.nx, 0.0);
    const int reach = static_cast<int>(std::floor(opt_.window_delta / g_.dx));
    for (int cx = 0; cx < g_.nx; ++cx) {
      double dens = 0.0;
      for (int id : g_.ball_ids) {
        double m = 0.0;
        for (int off = -reach; off <= reach; ++off) {
          const int ix = ((cx + off) % g_.nx + g_.nx) % g_.nx;
          m = std::max(m, state_.running_max_sharp[static_cast<size_t>(ix) * g_.nv * g_.nv + id]);
        }
        dens += m;
      }
      s.window_profile[cx] = dens * g_.vweight;
    }
  }
  return s;
}

}  // namespace anyon
